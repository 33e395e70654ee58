////////////////////////////////////////////////////////////////////////////////
// tensor_core.hpp
////////////////////////////////////////////////////////////////////////////////
// Dense tensor algebra for the second-, fourth- and sixth-order tensors used
// by the second-gradient homogenization pipeline, for N in {2, 3}:
//
//   SymMatrix          N x N symmetric           (inertia tensors B)
//   ElasticTensor      N^4, minor+major symmetry (local stiffness C)
//   GradElasticTensor  N^6, Mindlin symmetry     (nonlocal stiffness A)
//
// Index symmetries are enforced exactly on construction: components are
// checked against a relative tolerance and then projected onto the symmetric
// subspace so that symmetric index tuples hold bitwise-equal values.
//
// Also provides the symmetrization operator S and its inverse on sixth-order
// arrays, orthogonal transformations, condensed (Mandel-weighted) matrix
// representations, eigenvalue-based definiteness tests and probe-based
// symmetry-class detection.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgehom {

constexpr double kConstructionTol = 1e-12;  // symmetry enforcement
constexpr double kClassifyTol = 1e-9;       // symmetry-class detection

void require_dim(int dim);  // throws std::invalid_argument unless dim is 2 or 3

////////////////////////////////////////////////////////////////////////////////
// Raw dense component arrays (no symmetry invariant). Used as construction
// input and as the codomain of the inverse symmetrization operator.
////////////////////////////////////////////////////////////////////////////////

class Array4 {
public:
    explicit Array4(int dim);

    int dim() const { return m_dim; }
    double &at(int i, int j, int h, int k) {
        return m_c[size_t(((i * m_dim + j) * m_dim + h) * m_dim + k)];
    }
    double at(int i, int j, int h, int k) const {
        return m_c[size_t(((i * m_dim + j) * m_dim + h) * m_dim + k)];
    }
    const std::vector<double> &components() const { return m_c; }
    std::vector<double> &components() { return m_c; }
    double max_abs() const;

private:
    int m_dim;
    std::vector<double> m_c;
};

class Array6 {
public:
    explicit Array6(int dim);

    int dim() const { return m_dim; }
    double &at(int i, int j, int h, int l, int m, int n) {
        return m_c[size_t(((((i * m_dim + j) * m_dim + h) * m_dim + l) * m_dim + m) * m_dim + n)];
    }
    double at(int i, int j, int h, int l, int m, int n) const {
        return m_c[size_t(((((i * m_dim + j) * m_dim + h) * m_dim + l) * m_dim + m) * m_dim + n)];
    }
    const std::vector<double> &components() const { return m_c; }
    std::vector<double> &components() { return m_c; }
    double max_abs() const;

private:
    int m_dim;
    std::vector<double> m_c;
};

////////////////////////////////////////////////////////////////////////////////
// Symmetric second-order tensor.
////////////////////////////////////////////////////////////////////////////////

class SymMatrix {
public:
    explicit SymMatrix(const Eigen::MatrixXd &m, double tol = kConstructionTol);
    static SymMatrix zero(int dim);
    static SymMatrix diagonal(const Eigen::VectorXd &d);
    static SymMatrix spherical(double value, int dim);  // value * identity

    int dim() const { return int(m_m.rows()); }
    double operator()(int i, int j) const { return m_m(i, j); }
    const Eigen::MatrixXd &mat() const { return m_m; }
    double max_abs() const { return m_m.cwiseAbs().maxCoeff(); }

    SymMatrix operator+(const SymMatrix &o) const;
    SymMatrix operator-(const SymMatrix &o) const;
    SymMatrix operator*(double s) const;

private:
    Eigen::MatrixXd m_m;
};

////////////////////////////////////////////////////////////////////////////////
// Orthogonal transformation Q, checked QᵀQ = I within 1e-12.
////////////////////////////////////////////////////////////////////////////////

class OrthogonalTransform {
public:
    explicit OrthogonalTransform(const Eigen::MatrixXd &q, double tol = kConstructionTol);

    static OrthogonalTransform identity(int dim);
    static OrthogonalTransform rotation_2d(double angle);
    // Reflection that negates coordinate `axis`.
    static OrthogonalTransform reflection(int axis, int dim);
    // Right-handed rotation about coordinate axis `axis` (3D).
    static OrthogonalTransform rotation_about_axis(int axis, double angle);
    // Rotation about an arbitrary axis (3D); the axis is normalized.
    static OrthogonalTransform axis_angle(const Eigen::Vector3d &axis, double angle);

    int dim() const { return int(m_q.rows()); }
    double operator()(int i, int j) const { return m_q(i, j); }
    const Eigen::MatrixXd &mat() const { return m_q; }

private:
    Eigen::MatrixXd m_q;
};

////////////////////////////////////////////////////////////////////////////////
// Fourth-order stiffness with C_ijhk = C_jihk = C_ijkh = C_hkij.
////////////////////////////////////////////////////////////////////////////////

class ElasticTensor {
public:
    static ElasticTensor zero(int dim);
    // C_ijhk = lambda d_ij d_hk + mu (d_ih d_jk + d_ik d_jh)
    static ElasticTensor isotropic(double lambda, double mu, int dim);
    static ElasticTensor from_components(const Array4 &raw, double tol = kConstructionTol);

    int dim() const { return m_raw.dim(); }
    double operator()(int i, int j, int h, int k) const { return m_raw.at(i, j, h, k); }
    const Array4 &raw() const { return m_raw; }
    double max_abs() const { return m_raw.max_abs(); }

    ElasticTensor operator+(const ElasticTensor &o) const;
    ElasticTensor operator-(const ElasticTensor &o) const;
    ElasticTensor operator*(double s) const;

private:
    struct Trusted {};
    ElasticTensor(Array4 raw, Trusted) : m_raw(std::move(raw)) {}
    Array4 m_raw;
};

ElasticTensor make_isotropic_elastic(double lambda, double mu, int dim);

////////////////////////////////////////////////////////////////////////////////
// Sixth-order nonlocal stiffness with the Mindlin symmetries
// A_ijhlmn = A_lmnijh = A_jihlmn = A_ijhmln.
////////////////////////////////////////////////////////////////////////////////

class GradElasticTensor {
public:
    static GradElasticTensor zero(int dim);
    static GradElasticTensor from_components(const Array6 &raw, double tol = kConstructionTol);

    int dim() const { return m_raw.dim(); }
    double operator()(int i, int j, int h, int l, int m, int n) const {
        return m_raw.at(i, j, h, l, m, n);
    }
    const Array6 &raw() const { return m_raw; }
    double max_abs() const { return m_raw.max_abs(); }

    GradElasticTensor operator+(const GradElasticTensor &o) const;
    GradElasticTensor operator-(const GradElasticTensor &o) const;
    GradElasticTensor operator*(double s) const;

private:
    struct Trusted {};
    GradElasticTensor(Array6 raw, Trusted) : m_raw(std::move(raw)) {}
    Array6 m_raw;
};

////////////////////////////////////////////////////////////////////////////////
// Coefficients of the quadratic displacement term, beta_ijk = beta_ikj.
////////////////////////////////////////////////////////////////////////////////

class QuadraticCoefficients {
public:
    static QuadraticCoefficients zero(int dim);
    // Row-major (i, j, k) components; checked and projected like the tensors.
    static QuadraticCoefficients from_components(int dim, const std::vector<double> &c,
                                                 double tol = kConstructionTol);

    int dim() const { return m_dim; }
    double operator()(int i, int j, int k) const {
        return m_c[size_t((i * m_dim + j) * m_dim + k)];
    }
    const std::vector<double> &components() const { return m_c; }
    double norm_sq() const;

private:
    QuadraticCoefficients(int dim, std::vector<double> c) : m_dim(dim), m_c(std::move(c)) {}
    int m_dim;
    std::vector<double> m_c;
};

////////////////////////////////////////////////////////////////////////////////
// Orthogonal actions: every index contracted with one Q.
////////////////////////////////////////////////////////////////////////////////

SymMatrix rotate(const SymMatrix &b, const OrthogonalTransform &q);
ElasticTensor rotate(const ElasticTensor &c, const OrthogonalTransform &q);
GradElasticTensor rotate(const GradElasticTensor &a, const OrthogonalTransform &q);
Array6 rotate(const Array6 &d, const OrthogonalTransform &q);

////////////////////////////////////////////////////////////////////////////////
// Symmetrization operator and its inverse on sixth-order arrays.
////////////////////////////////////////////////////////////////////////////////

// Residual of the precursor symmetries D_ijhlmn = D_lmnijh = D_hjilmn = D_ijhnml.
double precursor_symmetry_residual(const Array6 &d);

// A = S(D): averages the (i,j) and (l,m) index swaps. The input must satisfy
// the precursor symmetries within `tol` (relative), otherwise throws.
GradElasticTensor symmetrize(const Array6 &d, double tol = kConstructionTol);

// D = S^{-1}(A): nine-term cyclic-shift combination; S(desymmetrize(A)) == A.
Array6 desymmetrize(const GradElasticTensor &a);

////////////////////////////////////////////////////////////////////////////////
// Quadratic form of A on quadratic-displacement coefficients:
//   Phi_A(beta) = A_jlikmh beta_ijl beta_hkm .
////////////////////////////////////////////////////////////////////////////////

double grad_quadratic_form(const GradElasticTensor &a, const QuadraticCoefficients &beta);
double grad_quadratic_form(const Array6 &a, const QuadraticCoefficients &beta);

// Condensed (Mandel-weighted) matrix of the quadratic form on the space of
// arrays with one free index and one symmetric pair; off-diagonal pairs carry
// weight sqrt(2) so that x'Gx == Phi_A(beta(x)) isometrically. Size 6 (N=2)
// or 18 (N=3). Pair order: diagonal pairs first, then (1,2),(0,2),(0,1).
Eigen::MatrixXd condensed_matrix(const GradElasticTensor &a);

// Mandel matrix of a fourth-order stiffness; size 3 (N=2) or 6 (N=3).
Eigen::MatrixXd condensed_matrix(const ElasticTensor &c);

// Index pairs of the condensed bases, in order.
std::vector<std::array<int, 2>> condensed_pairs(int dim);

struct DefinitenessResult {
    bool positive_definite;
    double min_eigenvalue;
    double tolerance;  // 1e-12 x mean |diagonal| of the condensed matrix
};

DefinitenessResult is_positive_definite(const ElasticTensor &c);
DefinitenessResult is_positive_definite(const GradElasticTensor &a);
DefinitenessResult is_positive_definite(const Eigen::MatrixXd &condensed);

////////////////////////////////////////////////////////////////////////////////
// Probe-based symmetry-class detection.
////////////////////////////////////////////////////////////////////////////////

enum class SymmetryClass { Isotropic, CubicSquare, Orthotropic, Generic };

std::string to_string(SymmetryClass c);

// Intersection of symmetry groups on the probe lattice
// isotropic > cubic/square > orthotropic > generic (the coarser label wins).
SymmetryClass intersect(SymmetryClass a, SymmetryClass b);

// Canonical probe set: reflections about each axis, 90-degree axis rotations,
// and 8 pseudo-random rotations drawn from a fixed seed.
struct ProbeSet {
    std::vector<OrthogonalTransform> reflections;
    std::vector<OrthogonalTransform> quarter_turns;
    std::vector<OrthogonalTransform> generic;
};

const ProbeSet &canonical_probes(int dim);

SymmetryClass classify_symmetry(const SymMatrix &b, double tol = kClassifyTol);
SymmetryClass classify_symmetry(const ElasticTensor &c, double tol = kClassifyTol);
SymmetryClass classify_symmetry(const GradElasticTensor &a, double tol = kClassifyTol);
SymmetryClass classify_symmetry(const SymMatrix &b, const ProbeSet &probes, double tol);
SymmetryClass classify_symmetry(const ElasticTensor &c, const ProbeSet &probes, double tol);
SymmetryClass classify_symmetry(const GradElasticTensor &a, const ProbeSet &probes, double tol);

}  // namespace sgehom
