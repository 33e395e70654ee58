#include "sgehom/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sgehom {

void require_dim(int dim) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("dimension must be 2 or 3, got " + std::to_string(dim));
}

namespace {

size_t pow_int(int base, int exp) {
    size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= size_t(base);
    return r;
}

double vec_max_abs(const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// ---------------------------------------------------------------------------
// Index-permutation groups. A permutation p maps component index tuple t to
// the tuple s with s[a] = t[p[a]]; e.g. for the (i,j) swap on a fourth-order
// tensor p = {1,0,2,3}.
// ---------------------------------------------------------------------------

template <size_t K>
using Perm = std::array<int, K>;

template <size_t K>
Perm<K> compose(const Perm<K> &a, const Perm<K> &b) {
    Perm<K> r{};
    for (size_t i = 0; i < K; ++i) r[i] = a[size_t(b[i])];
    return r;
}

template <size_t K>
std::vector<Perm<K>> group_closure(std::vector<Perm<K>> gens) {
    Perm<K> id{};
    for (size_t i = 0; i < K; ++i) id[i] = int(i);
    std::vector<Perm<K>> g{id};
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t a = 0; a < g.size(); ++a)
            for (const auto &b : gens) {
                Perm<K> c = compose(g[a], b);
                if (std::find(g.begin(), g.end(), c) == g.end()) {
                    g.push_back(c);
                    grew = true;
                }
            }
    }
    return g;
}

// Full symmetry group of an elasticity tensor: both minor swaps + major swap.
const std::vector<Perm<4>> &elastic_group() {
    static const std::vector<Perm<4>> g = group_closure<4>(
        {{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 3, 0, 1}});
    return g;
}

// Mindlin group: (i,j) swap, (l,m) swap, block swap (ijh)<->(lmn).
const std::vector<Perm<6>> &mindlin_group() {
    static const std::vector<Perm<6>> g = group_closure<6>(
        {{1, 0, 2, 3, 4, 5}, {0, 1, 2, 4, 3, 5}, {3, 4, 5, 0, 1, 2}});
    return g;
}

// Precursor group: (i,h) swap, (l,n) swap, block swap.
const std::vector<Perm<6>> &precursor_group() {
    static const std::vector<Perm<6>> g = group_closure<6>(
        {{2, 1, 0, 3, 4, 5}, {0, 1, 2, 5, 4, 3}, {3, 4, 5, 0, 1, 2}});
    return g;
}

template <size_t K>
size_t linear_index(const std::array<int, K> &t, int dim) {
    size_t idx = 0;
    for (size_t a = 0; a < K; ++a) idx = idx * size_t(dim) + size_t(t[a]);
    return idx;
}

template <size_t K>
void next_tuple(std::array<int, K> &t, int dim, bool &done) {
    for (size_t a = K; a-- > 0;) {
        if (++t[a] < dim) return;
        t[a] = 0;
    }
    done = true;
}

// Residual of `v` against the symmetry group: max over orbits of the spread
// around the orbit mean.
template <size_t K>
double group_residual(const std::vector<double> &v, int dim, const std::vector<Perm<K>> &group) {
    double worst = 0.0;
    std::array<int, K> t{};
    bool done = false;
    std::vector<size_t> orbit;
    while (!done) {
        size_t self = linear_index<K>(t, dim);
        orbit.clear();
        for (const auto &p : group) {
            std::array<int, K> s;
            for (size_t a = 0; a < K; ++a) s[a] = t[size_t(p[a])];
            size_t idx = linear_index<K>(s, dim);
            if (std::find(orbit.begin(), orbit.end(), idx) == orbit.end()) orbit.push_back(idx);
        }
        const double v0 = v[self];
        for (size_t idx : orbit) worst = std::max(worst, std::abs(v[idx] - v0));
        next_tuple<K>(t, dim, done);
    }
    return worst;
}

// Checks the symmetry within tol (relative to the max component) and projects
// each orbit onto its mean. The mean is centered at the first orbit value so
// that already-symmetric inputs pass through bitwise unchanged.
template <size_t K>
void enforce_group(std::vector<double> &v, int dim, const std::vector<Perm<K>> &group,
                   double tol, const char *what) {
    const double scale = vec_max_abs(v);
    std::vector<char> seen(v.size(), 0);
    std::array<int, K> t{};
    bool done = false;
    std::vector<size_t> orbit;
    while (!done) {
        size_t self = linear_index<K>(t, dim);
        if (!seen[self]) {
            orbit.clear();
            for (const auto &p : group) {
                std::array<int, K> s;
                for (size_t a = 0; a < K; ++a) s[a] = t[size_t(p[a])];
                size_t idx = linear_index<K>(s, dim);
                if (std::find(orbit.begin(), orbit.end(), idx) == orbit.end()) orbit.push_back(idx);
            }
            const double v0 = v[orbit.front()];
            double spread = 0.0, centered = 0.0;
            for (size_t idx : orbit) {
                spread = std::max(spread, std::abs(v[idx] - v0));
                centered += v[idx] - v0;
            }
            if (spread > tol * std::max(scale, 1e-300))
                throw std::invalid_argument(std::string(what) +
                                            ": index symmetry violated (deviation " +
                                            std::to_string(spread) + ")");
            const double mean = v0 + centered / double(orbit.size());
            for (size_t idx : orbit) {
                v[idx] = mean;
                seen[idx] = 1;
            }
        }
        next_tuple<K>(t, dim, done);
    }
}

// One-index contraction passes of the orthogonal action.
std::vector<double> rotate_raw(const std::vector<double> &v, int dim, int order,
                               const Eigen::MatrixXd &q) {
    std::vector<double> cur = v, nxt(v.size());
    const size_t total = v.size();
    for (int pos = 0; pos < order; ++pos) {
        // stride of index `pos` in row-major layout
        const size_t stride = pow_int(dim, order - 1 - pos);
        const size_t block = stride * size_t(dim);
        for (size_t base = 0; base < total; base += block)
            for (size_t off = 0; off < stride; ++off)
                for (int i = 0; i < dim; ++i) {
                    double acc = 0.0;
                    for (int p = 0; p < dim; ++p)
                        acc += q(i, p) * cur[base + size_t(p) * stride + off];
                    nxt[base + size_t(i) * stride + off] = acc;
                }
        cur.swap(nxt);
    }
    return cur;
}

void require_same_dim(int a, int b, const char *what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// Raw arrays
// ---------------------------------------------------------------------------

Array4::Array4(int dim) : m_dim(dim), m_c(pow_int(dim, 4), 0.0) { require_dim(dim); }
Array6::Array6(int dim) : m_dim(dim), m_c(pow_int(dim, 6), 0.0) { require_dim(dim); }

double Array4::max_abs() const { return vec_max_abs(m_c); }
double Array6::max_abs() const { return vec_max_abs(m_c); }

// ---------------------------------------------------------------------------
// SymMatrix
// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(const Eigen::MatrixXd &m, double tol) {
    require_dim(int(m.rows()));
    if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix: non-square input");
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
        throw std::invalid_argument("SymMatrix: input is not symmetric");
    m_m = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double v = m(i, j) + 0.5 * (m(j, i) - m(i, j));
            m_m(i, j) = v;
            m_m(j, i) = v;
        }
}

SymMatrix SymMatrix::zero(int dim) {
    require_dim(dim);
    return SymMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd &d) {
    require_dim(int(d.size()));
    return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

SymMatrix SymMatrix::spherical(double value, int dim) {
    require_dim(dim);
    return SymMatrix(value * Eigen::MatrixXd::Identity(dim, dim));
}

SymMatrix SymMatrix::operator+(const SymMatrix &o) const { return SymMatrix(m_m + o.m_m); }
SymMatrix SymMatrix::operator-(const SymMatrix &o) const { return SymMatrix(m_m - o.m_m); }
SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(m_m * s); }

// ---------------------------------------------------------------------------
// OrthogonalTransform
// ---------------------------------------------------------------------------

OrthogonalTransform::OrthogonalTransform(const Eigen::MatrixXd &q, double tol) : m_q(q) {
    require_dim(int(q.rows()));
    if (q.rows() != q.cols()) throw std::invalid_argument("OrthogonalTransform: non-square input");
    const Eigen::MatrixXd gram = q.transpose() * q;
    const double dev = (gram - Eigen::MatrixXd::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
    if (dev > tol)
        throw std::invalid_argument("OrthogonalTransform: Q'Q deviates from identity by " +
                                    std::to_string(dev));
}

OrthogonalTransform OrthogonalTransform::identity(int dim) {
    require_dim(dim);
    return OrthogonalTransform(Eigen::MatrixXd::Identity(dim, dim));
}

OrthogonalTransform OrthogonalTransform::rotation_2d(double angle) {
    Eigen::Matrix2d q;
    const double c = std::cos(angle), s = std::sin(angle);
    q << c, -s, s, c;
    return OrthogonalTransform(q);
}

OrthogonalTransform OrthogonalTransform::reflection(int axis, int dim) {
    require_dim(dim);
    if (axis < 0 || axis >= dim) throw std::invalid_argument("reflection: axis out of range");
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
    q(axis, axis) = -1.0;
    return OrthogonalTransform(q);
}

OrthogonalTransform OrthogonalTransform::rotation_about_axis(int axis, double angle) {
    if (axis < 0 || axis >= 3) throw std::invalid_argument("rotation_about_axis: axis out of range");
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    u(axis) = 1.0;
    return axis_angle(u, angle);
}

OrthogonalTransform OrthogonalTransform::axis_angle(const Eigen::Vector3d &axis, double angle) {
    const double n = axis.norm();
    if (n == 0.0) throw std::invalid_argument("axis_angle: zero axis");
    Eigen::Matrix3d q(Eigen::AngleAxisd(angle, axis / n));
    return OrthogonalTransform(q);
}

// ---------------------------------------------------------------------------
// ElasticTensor
// ---------------------------------------------------------------------------

ElasticTensor ElasticTensor::zero(int dim) { return ElasticTensor(Array4(dim), Trusted{}); }

ElasticTensor ElasticTensor::isotropic(double lambda, double mu, int dim) {
    Array4 raw(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int h = 0; h < dim; ++h)
                for (int k = 0; k < dim; ++k)
                    // + 0.0 normalizes the negative zeros of scaled indicators
                    raw.at(i, j, h, k) = lambda * (i == j) * (h == k) +
                                         mu * ((i == h) * (j == k) + (i == k) * (j == h)) + 0.0;
    return ElasticTensor(std::move(raw), Trusted{});
}

ElasticTensor ElasticTensor::from_components(const Array4 &raw, double tol) {
    Array4 r = raw;
    enforce_group<4>(r.components(), r.dim(), elastic_group(), tol, "ElasticTensor");
    return ElasticTensor(std::move(r), Trusted{});
}

ElasticTensor ElasticTensor::operator+(const ElasticTensor &o) const {
    require_same_dim(dim(), o.dim(), "ElasticTensor::operator+");
    Array4 r = m_raw;
    for (size_t i = 0; i < r.components().size(); ++i) r.components()[i] += o.m_raw.components()[i];
    return ElasticTensor(std::move(r), Trusted{});
}

ElasticTensor ElasticTensor::operator-(const ElasticTensor &o) const {
    require_same_dim(dim(), o.dim(), "ElasticTensor::operator-");
    Array4 r = m_raw;
    for (size_t i = 0; i < r.components().size(); ++i) r.components()[i] -= o.m_raw.components()[i];
    return ElasticTensor(std::move(r), Trusted{});
}

ElasticTensor ElasticTensor::operator*(double s) const {
    Array4 r = m_raw;
    for (double &x : r.components()) x *= s;
    return ElasticTensor(std::move(r), Trusted{});
}

ElasticTensor make_isotropic_elastic(double lambda, double mu, int dim) {
    return ElasticTensor::isotropic(lambda, mu, dim);
}

// ---------------------------------------------------------------------------
// GradElasticTensor
// ---------------------------------------------------------------------------

GradElasticTensor GradElasticTensor::zero(int dim) {
    return GradElasticTensor(Array6(dim), Trusted{});
}

GradElasticTensor GradElasticTensor::from_components(const Array6 &raw, double tol) {
    Array6 r = raw;
    enforce_group<6>(r.components(), r.dim(), mindlin_group(), tol, "GradElasticTensor");
    return GradElasticTensor(std::move(r), Trusted{});
}

GradElasticTensor GradElasticTensor::operator+(const GradElasticTensor &o) const {
    require_same_dim(dim(), o.dim(), "GradElasticTensor::operator+");
    Array6 r = m_raw;
    for (size_t i = 0; i < r.components().size(); ++i) r.components()[i] += o.m_raw.components()[i];
    return GradElasticTensor(std::move(r), Trusted{});
}

GradElasticTensor GradElasticTensor::operator-(const GradElasticTensor &o) const {
    require_same_dim(dim(), o.dim(), "GradElasticTensor::operator-");
    Array6 r = m_raw;
    for (size_t i = 0; i < r.components().size(); ++i) r.components()[i] -= o.m_raw.components()[i];
    return GradElasticTensor(std::move(r), Trusted{});
}

GradElasticTensor GradElasticTensor::operator*(double s) const {
    Array6 r = m_raw;
    for (double &x : r.components()) x *= s;
    return GradElasticTensor(std::move(r), Trusted{});
}

// ---------------------------------------------------------------------------
// QuadraticCoefficients
// ---------------------------------------------------------------------------

QuadraticCoefficients QuadraticCoefficients::zero(int dim) {
    require_dim(dim);
    return QuadraticCoefficients(dim, std::vector<double>(pow_int(dim, 3), 0.0));
}

QuadraticCoefficients QuadraticCoefficients::from_components(int dim,
                                                             const std::vector<double> &c,
                                                             double tol) {
    require_dim(dim);
    if (c.size() != pow_int(dim, 3))
        throw std::invalid_argument("QuadraticCoefficients: wrong component count");
    std::vector<double> v = c;
    static const std::vector<Perm<3>> swap_last = group_closure<3>({{0, 2, 1}});
    enforce_group<3>(v, dim, swap_last, tol, "QuadraticCoefficients");
    return QuadraticCoefficients(dim, std::move(v));
}

double QuadraticCoefficients::norm_sq() const {
    double s = 0.0;
    for (double x : m_c) s += x * x;
    return s;
}

// ---------------------------------------------------------------------------
// Orthogonal actions
// ---------------------------------------------------------------------------

SymMatrix rotate(const SymMatrix &b, const OrthogonalTransform &q) {
    require_same_dim(b.dim(), q.dim(), "rotate(SymMatrix)");
    return SymMatrix(q.mat() * b.mat() * q.mat().transpose(), 1e-9);
}

ElasticTensor rotate(const ElasticTensor &c, const OrthogonalTransform &q) {
    require_same_dim(c.dim(), q.dim(), "rotate(ElasticTensor)");
    Array4 r(c.dim());
    r.components() = rotate_raw(c.raw().components(), c.dim(), 4, q.mat());
    // rotation preserves the symmetries analytically; re-enforce with a loose
    // tolerance to absorb rounding
    return ElasticTensor::from_components(r, 1e-9);
}

GradElasticTensor rotate(const GradElasticTensor &a, const OrthogonalTransform &q) {
    require_same_dim(a.dim(), q.dim(), "rotate(GradElasticTensor)");
    Array6 r(a.dim());
    r.components() = rotate_raw(a.raw().components(), a.dim(), 6, q.mat());
    return GradElasticTensor::from_components(r, 1e-9);
}

Array6 rotate(const Array6 &d, const OrthogonalTransform &q) {
    require_same_dim(d.dim(), q.dim(), "rotate(Array6)");
    Array6 r(d.dim());
    r.components() = rotate_raw(d.components(), d.dim(), 6, q.mat());
    return r;
}

// ---------------------------------------------------------------------------
// Symmetrization operator and inverse
// ---------------------------------------------------------------------------

double precursor_symmetry_residual(const Array6 &d) {
    return group_residual<6>(d.components(), d.dim(), precursor_group());
}

GradElasticTensor symmetrize(const Array6 &d, double tol) {
    const double res = precursor_symmetry_residual(d);
    if (res > tol * std::max(d.max_abs(), 1e-300))
        throw std::invalid_argument("symmetrize: input lacks the required precursor symmetries "
                                    "(deviation " + std::to_string(res) + ")");
    const int N = d.dim();
    Array6 out(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int h = 0; h < N; ++h)
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n)
                            out.at(i, j, h, l, m, n) =
                                0.25 * (d.at(i, j, h, l, m, n) + d.at(i, j, h, m, l, n) +
                                        d.at(j, i, h, l, m, n) + d.at(j, i, h, m, l, n));
    return GradElasticTensor::from_components(out, 1e-9);
}

Array6 desymmetrize(const GradElasticTensor &a) {
    const int N = a.dim();
    Array6 out(N);
    // cyclic shifts of (i,j,h) and (l,m,n) weighted by the sign pattern
    // u_s u_t with u = (+1, +1, -1)
    static constexpr double u[3] = {1.0, 1.0, -1.0};
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int h = 0; h < N; ++h) {
                const int b1[3][3] = {{i, j, h}, {j, h, i}, {h, i, j}};
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n) {
                            const int b2[3][3] = {{l, m, n}, {m, n, l}, {n, l, m}};
                            double acc = 0.0;
                            for (int s = 0; s < 3; ++s)
                                for (int t = 0; t < 3; ++t)
                                    acc += u[s] * u[t] *
                                           a(b1[s][0], b1[s][1], b1[s][2],
                                             b2[t][0], b2[t][1], b2[t][2]);
                            out.at(i, j, h, l, m, n) = acc;
                        }
            }
    return out;
}

// ---------------------------------------------------------------------------
// Quadratic form and condensed matrices
// ---------------------------------------------------------------------------

namespace {

template <class Tensor6>
double quadratic_form_impl(const Tensor6 &a, int N, const QuadraticCoefficients &beta) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                const double bl = beta(i, j, l);
                if (bl == 0.0) continue;
                for (int h = 0; h < N; ++h)
                    for (int k = 0; k < N; ++k)
                        for (int m = 0; m < N; ++m)
                            acc += a(j, l, i, k, m, h) * bl * beta(h, k, m);
            }
    return acc;
}

}  // namespace

double grad_quadratic_form(const GradElasticTensor &a, const QuadraticCoefficients &beta) {
    require_same_dim(a.dim(), beta.dim(), "grad_quadratic_form");
    return quadratic_form_impl([&a](int p, int q, int r, int s, int t, int u) {
        return a(p, q, r, s, t, u);
    }, a.dim(), beta);
}

double grad_quadratic_form(const Array6 &a, const QuadraticCoefficients &beta) {
    require_same_dim(a.dim(), beta.dim(), "grad_quadratic_form");
    return quadratic_form_impl([&a](int p, int q, int r, int s, int t, int u) {
        return a.at(p, q, r, s, t, u);
    }, a.dim(), beta);
}

std::vector<std::array<int, 2>> condensed_pairs(int dim) {
    require_dim(dim);
    if (dim == 2) return {{0, 0}, {1, 1}, {0, 1}};
    return {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
}

Eigen::MatrixXd condensed_matrix(const GradElasticTensor &a) {
    const int N = a.dim();
    const auto pairs = condensed_pairs(N);
    const int np = int(pairs.size());
    const int n = N * np;
    const double rt2 = std::sqrt(2.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < N; ++i)
        for (int p = 0; p < np; ++p) {
            const int j = pairs[size_t(p)][0], l = pairs[size_t(p)][1];
            const double w1 = (j == l) ? 1.0 : rt2;
            for (int h = 0; h < N; ++h)
                for (int q = 0; q < np; ++q) {
                    const int k = pairs[size_t(q)][0], m = pairs[size_t(q)][1];
                    const double w2 = (k == m) ? 1.0 : rt2;
                    g(i * np + p, h * np + q) = w1 * w2 * a(j, l, i, k, m, h);
                }
        }
    return g;
}

Eigen::MatrixXd condensed_matrix(const ElasticTensor &c) {
    const int N = c.dim();
    const auto pairs = condensed_pairs(N);
    const int n = int(pairs.size());
    const double rt2 = std::sqrt(2.0);
    Eigen::MatrixXd g(n, n);
    for (int p = 0; p < n; ++p) {
        const int i = pairs[size_t(p)][0], j = pairs[size_t(p)][1];
        const double w1 = (i == j) ? 1.0 : rt2;
        for (int q = 0; q < n; ++q) {
            const int h = pairs[size_t(q)][0], k = pairs[size_t(q)][1];
            const double w2 = (h == k) ? 1.0 : rt2;
            g(p, q) = w1 * w2 * c(i, j, h, k);
        }
    }
    return g;
}

DefinitenessResult is_positive_definite(const Eigen::MatrixXd &condensed) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(condensed);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double tol =
        1e-12 * condensed.diagonal().cwiseAbs().sum() / double(condensed.rows());
    return {min_eig > tol, min_eig, tol};
}

DefinitenessResult is_positive_definite(const ElasticTensor &c) {
    return is_positive_definite(condensed_matrix(c));
}

DefinitenessResult is_positive_definite(const GradElasticTensor &a) {
    return is_positive_definite(condensed_matrix(a));
}

// ---------------------------------------------------------------------------
// Symmetry-class detection
// ---------------------------------------------------------------------------

std::string to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Isotropic: return "isotropic";
        case SymmetryClass::CubicSquare: return "cubic/square";
        case SymmetryClass::Orthotropic: return "orthotropic";
        case SymmetryClass::Generic: return "generic";
    }
    return "generic";
}

SymmetryClass intersect(SymmetryClass a, SymmetryClass b) {
    return a > b ? a : b;  // enum order: isotropic < cubic/square < orthotropic < generic
}

namespace {

// deterministic uniform double in [0,1) independent of library distributions
double uniform01(std::mt19937_64 &rng) { return double(rng() >> 11) * 0x1.0p-53; }

constexpr std::uint64_t kProbeSeed = 0x5eedcafe01234567ull;

ProbeSet build_probes(int dim) {
    ProbeSet s;
    for (int a = 0; a < dim; ++a) s.reflections.push_back(OrthogonalTransform::reflection(a, dim));
    std::mt19937_64 rng(kProbeSeed);
    if (dim == 2) {
        s.quarter_turns.push_back(OrthogonalTransform::rotation_2d(M_PI / 2));
        for (int k = 0; k < 8; ++k)
            s.generic.push_back(
                OrthogonalTransform::rotation_2d(0.15 + 2.8 * uniform01(rng)));
    } else {
        for (int a = 0; a < 3; ++a)
            s.quarter_turns.push_back(OrthogonalTransform::rotation_about_axis(a, M_PI / 2));
        for (int k = 0; k < 8; ++k) {
            Eigen::Vector3d axis;
            double n2;
            do {
                axis = Eigen::Vector3d(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1,
                                       2 * uniform01(rng) - 1);
                n2 = axis.squaredNorm();
            } while (n2 < 1e-4 || n2 > 1.0);
            s.generic.push_back(
                OrthogonalTransform::axis_angle(axis, 0.15 + 2.8 * uniform01(rng)));
        }
    }
    return s;
}

const ProbeSet &probes_2d() {
    static const ProbeSet s = build_probes(2);
    return s;
}
const ProbeSet &probes_3d() {
    static const ProbeSet s = build_probes(3);
    return s;
}

template <class T, class RotateFn, class DiffFn>
SymmetryClass classify_impl(const T &t, const ProbeSet &probes, double tol, double scale,
                            RotateFn apply, DiffFn diff) {
    const double bound = tol * std::max(scale, 1e-300);
    auto invariant = [&](const OrthogonalTransform &q) { return diff(apply(t, q), t) <= bound; };
    bool refl = true, quarter = true, gen = true;
    for (const auto &q : probes.reflections) refl = refl && invariant(q);
    if (!refl) return SymmetryClass::Generic;
    for (const auto &q : probes.quarter_turns) quarter = quarter && invariant(q);
    if (!quarter) return SymmetryClass::Orthotropic;
    for (const auto &q : probes.generic) gen = gen && invariant(q);
    return gen ? SymmetryClass::Isotropic : SymmetryClass::CubicSquare;
}

double max_diff(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

const ProbeSet &canonical_probes(int dim) {
    require_dim(dim);
    return dim == 2 ? probes_2d() : probes_3d();
}

SymmetryClass classify_symmetry(const SymMatrix &b, const ProbeSet &probes, double tol) {
    return classify_impl(
        b, probes, tol, b.max_abs(),
        [](const SymMatrix &t, const OrthogonalTransform &q) { return rotate(t, q); },
        [](const SymMatrix &x, const SymMatrix &y) { return max_diff(x.mat(), y.mat()); });
}

SymmetryClass classify_symmetry(const ElasticTensor &c, const ProbeSet &probes, double tol) {
    return classify_impl(
        c, probes, tol, c.max_abs(),
        [](const ElasticTensor &t, const OrthogonalTransform &q) { return rotate(t, q); },
        [](const ElasticTensor &x, const ElasticTensor &y) {
            return max_diff(x.raw().components(), y.raw().components());
        });
}

SymmetryClass classify_symmetry(const GradElasticTensor &a, const ProbeSet &probes, double tol) {
    return classify_impl(
        a, probes, tol, a.max_abs(),
        [](const GradElasticTensor &t, const OrthogonalTransform &q) { return rotate(t, q); },
        [](const GradElasticTensor &x, const GradElasticTensor &y) {
            return max_diff(x.raw().components(), y.raw().components());
        });
}

SymmetryClass classify_symmetry(const SymMatrix &b, double tol) {
    return classify_symmetry(b, canonical_probes(b.dim()), tol);
}
SymmetryClass classify_symmetry(const ElasticTensor &c, double tol) {
    return classify_symmetry(c, canonical_probes(c.dim()), tol);
}
SymmetryClass classify_symmetry(const GradElasticTensor &a, double tol) {
    return classify_symmetry(a, canonical_probes(a.dim()), tol);
}

}  // namespace sgehom
