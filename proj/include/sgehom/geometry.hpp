////////////////////////////////////////////////////////////////////////////////
// geometry.hpp
////////////////////////////////////////////////////////////////////////////////
// Shape catalog with closed-form measures, static moments and Euler inertia
// tensors, a seeded Monte-Carlo estimator used as an independent oracle, and
// the microstructure type (RVE outer contour + centered inclusion) with its
// normalized-inertia decomposition B_rve = B_matrix + B_inclusion.
//
// All shapes are centered at the origin by construction; polygons are
// validated against a centroid tolerance and rejected otherwise.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sgehom/tensor_core.hpp"

namespace sgehom {

////////////////////////////////////////////////////////////////////////////////
// Shape catalog. Lengths are full edge lengths for rectangles/boxes and
// semi-axes for ellipses/ellipsoids.
////////////////////////////////////////////////////////////////////////////////

struct Rectangle {
    double h1, h2;
};
struct Box {
    double h1, h2, h3;
};
struct Circle {
    double r;
};
struct Ellipse {
    double b1, b2;
};
struct Sphere {
    double r;
};
struct Ellipsoid {
    double b1, b2, b3;
};
struct Polygon {
    std::vector<Eigen::Vector2d> vertices;  // counter-clockwise
};

class Shape {
public:
    using Variant = std::variant<Rectangle, Box, Circle, Ellipse, Sphere, Ellipsoid, Polygon>;

    // Validates positive measure and (for polygons) counter-clockwise order
    // and centroid at the origin within 1e-9 of the polygon diameter.
    explicit Shape(Variant v);

    int dim() const { return m_dim; }
    double measure() const { return m_measure; }
    const Variant &value() const { return m_v; }
    std::string kind() const;

    bool contains(const Eigen::VectorXd &x) const;
    // Axis-aligned bounding box (lo, hi).
    std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box() const;

private:
    Variant m_v;
    int m_dim;
    double m_measure;
};

Shape scaled(const Shape &s, double c);

////////////////////////////////////////////////////////////////////////////////
// Moments
////////////////////////////////////////////////////////////////////////////////

// First moment over the shape; identically zero for the centered catalog
// shapes, exact Green-theorem value for polygons.
Eigen::VectorXd static_moment(const Shape &s);

// Second moment  E = integral of x (x) x  (unnormalized).
SymMatrix euler_tensor(const Shape &s);

// B = E / omega_rve.
SymMatrix normalized_inertia(const Shape &s, double omega_rve);

struct PrincipalInertia {
    Eigen::VectorXd rho_sq;   // eigenvalues, sorted descending
    Eigen::MatrixXd axes;     // columns e_[k], right-handed
    bool spherical;           // degenerate spectrum within 1e-9 relative
};

// Eigen-decomposition of a normalized inertia tensor. Eigenvalues below
// -1e-13 x scale signal invalid input and throw.
PrincipalInertia principal_inertia(const SymMatrix &b);

struct InertiaSummary {
    double measure;
    Eigen::VectorXd static_moment;
    Eigen::MatrixXd euler;
    Eigen::MatrixXd normalized;  // B
    Eigen::VectorXd rho;         // radii of gyration, descending
    Eigen::MatrixXd axes;
    bool spherical;
};

InertiaSummary inertia_summary(const Shape &s, double omega_rve);

struct MonteCarloInertia {
    InertiaSummary estimate;
    double measure_stderr;
    Eigen::MatrixXd euler_stderr;
    std::size_t samples;
    std::uint64_t seed;
};

// Unbiased sampling estimate of measure, static moment and Euler tensor;
// bit-reproducible for a fixed seed. Requires samples >= 1e4.
MonteCarloInertia monte_carlo_inertia(const Shape &s, std::size_t samples, std::uint64_t seed,
                                      std::optional<double> omega_rve = std::nullopt);

////////////////////////////////////////////////////////////////////////////////
// Microstructure
////////////////////////////////////////////////////////////////////////////////

struct Material {
    double lambda, mu;
};
struct VoidPhase {};
using InclusionMaterial = std::variant<Material, VoidPhase>;

// 2D (plane strain) bulk modulus lambda + mu; 3D bulk modulus lambda + 2mu/3.
double bulk_modulus(const Material &m, int dim);

constexpr double kDefaultDiluteThreshold = 0.1;

class Microstructure {
public:
    // `f_explicit`, when given, must agree with the measure ratio within 1e-9
    // relative; otherwise the job is rejected naming both values.
    static Microstructure create(Shape rve, Shape inclusion, Material matrix,
                                 InclusionMaterial inclusion_material,
                                 std::optional<double> f_explicit = std::nullopt,
                                 double dilute_threshold = kDefaultDiluteThreshold);

    int dim() const { return m_rve.dim(); }
    const Shape &rve() const { return m_rve; }
    const Shape &inclusion() const { return m_inclusion; }
    const Material &matrix() const { return m_matrix; }
    const InclusionMaterial &inclusion_material() const { return m_inclusion_material; }
    double f() const { return m_f; }
    double dilute_threshold() const { return m_dilute_threshold; }
    bool exceeds_dilute_threshold() const { return m_f > m_dilute_threshold; }

private:
    Microstructure(Shape rve, Shape inc, Material mat, InclusionMaterial im, double f,
                   double thr)
        : m_rve(std::move(rve)), m_inclusion(std::move(inc)), m_matrix(mat),
          m_inclusion_material(im), m_f(f), m_dilute_threshold(thr) {}

    Shape m_rve, m_inclusion;
    Material m_matrix;
    InclusionMaterial m_inclusion_material;
    double m_f;
    double m_dilute_threshold;
};

struct InertiaDecomposition {
    SymMatrix b_matrix;     // B^(1) = B^RVE - B^(2)
    SymMatrix b_inclusion;  // B^(2)
    SymMatrix b_rve;        // inertia of the region enclosed by the outer contour
};

// Throws when B^(1) has an eigenvalue below -1e-12 x scale (the inclusion
// cannot be contained in the RVE).
InertiaDecomposition rve_inertia_decomposition(const Microstructure &m);

}  // namespace sgehom
