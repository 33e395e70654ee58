#include "sgehom/geometry.hpp"

#include <cmath>
#include <random>

#include "sgehom/errors.hpp"

namespace sgehom {

namespace {

void require_positive(double v, const char *what) {
    if (!(v > 0.0)) throw ModelError(std::string(what) + " must be positive");
}

struct PolygonMoments {
    double area;
    Eigen::Vector2d first;   // integral of x
    Eigen::Matrix2d second;  // integral of x (x) x
};

// Exact Green-theorem moments about the origin.
PolygonMoments polygon_moments(const Polygon &p) {
    PolygonMoments m{0.0, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()};
    const size_t n = p.vertices.size();
    double ixx = 0.0, iyy = 0.0, ixy = 0.0;
    for (size_t a = 0; a < n; ++a) {
        const Eigen::Vector2d &v0 = p.vertices[a];
        const Eigen::Vector2d &v1 = p.vertices[(a + 1) % n];
        const double cr = v0.x() * v1.y() - v1.x() * v0.y();
        m.area += cr / 2.0;
        m.first.x() += (v0.x() + v1.x()) * cr / 6.0;
        m.first.y() += (v0.y() + v1.y()) * cr / 6.0;
        ixx += (v0.x() * v0.x() + v0.x() * v1.x() + v1.x() * v1.x()) * cr / 12.0;
        iyy += (v0.y() * v0.y() + v0.y() * v1.y() + v1.y() * v1.y()) * cr / 12.0;
        ixy += (v0.x() * v1.y() + 2.0 * v0.x() * v0.y() + 2.0 * v1.x() * v1.y() +
                v1.x() * v0.y()) * cr / 24.0;
    }
    m.second << ixx, ixy, ixy, iyy;
    return m;
}

double polygon_diameter(const Polygon &p) {
    double d = 0.0;
    for (const auto &v : p.vertices) d = std::max(d, v.norm());
    return 2.0 * d;
}

bool polygon_contains(const Polygon &p, double x, double y) {
    // ray-crossing test
    bool inside = false;
    const size_t n = p.vertices.size();
    for (size_t a = 0, b = n - 1; a < n; b = a++) {
        const auto &va = p.vertices[a];
        const auto &vb = p.vertices[b];
        if ((va.y() > y) != (vb.y() > y)) {
            const double t = (y - va.y()) / (vb.y() - va.y());
            if (x < va.x() + t * (vb.x() - va.x())) inside = !inside;
        }
    }
    return inside;
}

double uniform01(std::mt19937_64 &rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

// ---------------------------------------------------------------------------
// Shape
// ---------------------------------------------------------------------------

Shape::Shape(Variant v) : m_v(std::move(v)) {
    std::visit(
        [this](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                require_positive(s.h1, "rectangle h1");
                require_positive(s.h2, "rectangle h2");
                m_dim = 2;
                m_measure = s.h1 * s.h2;
            } else if constexpr (std::is_same_v<T, Box>) {
                require_positive(s.h1, "box h1");
                require_positive(s.h2, "box h2");
                require_positive(s.h3, "box h3");
                m_dim = 3;
                m_measure = s.h1 * s.h2 * s.h3;
            } else if constexpr (std::is_same_v<T, Circle>) {
                require_positive(s.r, "circle radius");
                m_dim = 2;
                m_measure = M_PI * s.r * s.r;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                require_positive(s.b1, "ellipse b1");
                require_positive(s.b2, "ellipse b2");
                m_dim = 2;
                m_measure = M_PI * s.b1 * s.b2;
            } else if constexpr (std::is_same_v<T, Sphere>) {
                require_positive(s.r, "sphere radius");
                m_dim = 3;
                m_measure = 4.0 / 3.0 * M_PI * s.r * s.r * s.r;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                require_positive(s.b1, "ellipsoid b1");
                require_positive(s.b2, "ellipsoid b2");
                require_positive(s.b3, "ellipsoid b3");
                m_dim = 3;
                m_measure = 4.0 / 3.0 * M_PI * s.b1 * s.b2 * s.b3;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                if (s.vertices.size() < 3) throw ModelError("polygon needs at least 3 vertices");
                const PolygonMoments m = polygon_moments(s);
                if (!(m.area > 0.0))
                    throw ModelError("polygon must have positive area with "
                                     "counter-clockwise vertex order");
                const double diam = polygon_diameter(s);
                const Eigen::Vector2d centroid = m.first / m.area;
                if (centroid.norm() > 1e-9 * diam)
                    throw ModelError("polygon centroid must sit at the origin (offset " +
                                     std::to_string(centroid.norm()) + ")");
                m_dim = 2;
                m_measure = m.area;
            }
        },
        m_v);
}

std::string Shape::kind() const {
    return std::visit(
        [](const auto &s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) return "rectangle";
            else if constexpr (std::is_same_v<T, Box>) return "box";
            else if constexpr (std::is_same_v<T, Circle>) return "circle";
            else if constexpr (std::is_same_v<T, Ellipse>) return "ellipse";
            else if constexpr (std::is_same_v<T, Sphere>) return "sphere";
            else if constexpr (std::is_same_v<T, Ellipsoid>) return "ellipsoid";
            else return "polygon";
        },
        m_v);
}

bool Shape::contains(const Eigen::VectorXd &x) const {
    return std::visit(
        [&x](const auto &s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return std::abs(x(0)) <= s.h1 / 2 && std::abs(x(1)) <= s.h2 / 2;
            } else if constexpr (std::is_same_v<T, Box>) {
                return std::abs(x(0)) <= s.h1 / 2 && std::abs(x(1)) <= s.h2 / 2 &&
                       std::abs(x(2)) <= s.h3 / 2;
            } else if constexpr (std::is_same_v<T, Circle>) {
                return x.squaredNorm() <= s.r * s.r;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const double u = x(0) / s.b1, v = x(1) / s.b2;
                return u * u + v * v <= 1.0;
            } else if constexpr (std::is_same_v<T, Sphere>) {
                return x.squaredNorm() <= s.r * s.r;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                const double u = x(0) / s.b1, v = x(1) / s.b2, w = x(2) / s.b3;
                return u * u + v * v + w * w <= 1.0;
            } else {
                return polygon_contains(s, x(0), x(1));
            }
        },
        m_v);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> Shape::bounding_box() const {
    Eigen::VectorXd lo(m_dim), hi(m_dim);
    std::visit(
        [&](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                lo << -s.h1 / 2, -s.h2 / 2;
                hi << s.h1 / 2, s.h2 / 2;
            } else if constexpr (std::is_same_v<T, Box>) {
                lo << -s.h1 / 2, -s.h2 / 2, -s.h3 / 2;
                hi << s.h1 / 2, s.h2 / 2, s.h3 / 2;
            } else if constexpr (std::is_same_v<T, Circle>) {
                lo << -s.r, -s.r;
                hi << s.r, s.r;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                lo << -s.b1, -s.b2;
                hi << s.b1, s.b2;
            } else if constexpr (std::is_same_v<T, Sphere>) {
                lo << -s.r, -s.r, -s.r;
                hi << s.r, s.r, s.r;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                lo << -s.b1, -s.b2, -s.b3;
                hi << s.b1, s.b2, s.b3;
            } else {
                lo << s.vertices.front().x(), s.vertices.front().y();
                hi = lo;
                for (const auto &v : s.vertices) {
                    lo(0) = std::min(lo(0), v.x());
                    lo(1) = std::min(lo(1), v.y());
                    hi(0) = std::max(hi(0), v.x());
                    hi(1) = std::max(hi(1), v.y());
                }
            }
        },
        m_v);
    return {lo, hi};
}

Shape scaled(const Shape &s, double c) {
    require_positive(c, "scale factor");
    return std::visit(
        [c](const auto &v) -> Shape {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rectangle>) return Shape(Rectangle{c * v.h1, c * v.h2});
            else if constexpr (std::is_same_v<T, Box>)
                return Shape(Box{c * v.h1, c * v.h2, c * v.h3});
            else if constexpr (std::is_same_v<T, Circle>) return Shape(Circle{c * v.r});
            else if constexpr (std::is_same_v<T, Ellipse>) return Shape(Ellipse{c * v.b1, c * v.b2});
            else if constexpr (std::is_same_v<T, Sphere>) return Shape(Sphere{c * v.r});
            else if constexpr (std::is_same_v<T, Ellipsoid>)
                return Shape(Ellipsoid{c * v.b1, c * v.b2, c * v.b3});
            else {
                Polygon p = v;
                for (auto &vert : p.vertices) vert *= c;
                return Shape(std::move(p));
            }
        },
        s.value());
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

Eigen::VectorXd static_moment(const Shape &s) {
    if (const auto *p = std::get_if<Polygon>(&s.value())) return polygon_moments(*p).first;
    return Eigen::VectorXd::Zero(s.dim());
}

SymMatrix euler_tensor(const Shape &s) {
    return std::visit(
        [](const auto &v) -> SymMatrix {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                Eigen::Vector2d d(v.h1 * v.h1 * v.h1 * v.h2 / 12.0,
                                  v.h1 * v.h2 * v.h2 * v.h2 / 12.0);
                return SymMatrix::diagonal(d);
            } else if constexpr (std::is_same_v<T, Box>) {
                const double vol = v.h1 * v.h2 * v.h3;
                Eigen::Vector3d d(vol * v.h1 * v.h1 / 12.0, vol * v.h2 * v.h2 / 12.0,
                                  vol * v.h3 * v.h3 / 12.0);
                return SymMatrix::diagonal(d);
            } else if constexpr (std::is_same_v<T, Circle>) {
                return SymMatrix::spherical(M_PI * std::pow(v.r, 4) / 4.0, 2);
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const double c = M_PI * v.b1 * v.b2 / 4.0;
                return SymMatrix::diagonal(Eigen::Vector2d(c * v.b1 * v.b1, c * v.b2 * v.b2));
            } else if constexpr (std::is_same_v<T, Sphere>) {
                return SymMatrix::spherical(4.0 * M_PI * std::pow(v.r, 5) / 15.0, 3);
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                const double c = 4.0 * M_PI * v.b1 * v.b2 * v.b3 / 15.0;
                return SymMatrix::diagonal(
                    Eigen::Vector3d(c * v.b1 * v.b1, c * v.b2 * v.b2, c * v.b3 * v.b3));
            } else {
                return SymMatrix(polygon_moments(v).second);
            }
        },
        s.value());
}

SymMatrix normalized_inertia(const Shape &s, double omega_rve) {
    if (!(omega_rve > 0.0)) throw ModelError("normalizing volume must be positive");
    return euler_tensor(s) * (1.0 / omega_rve);
}

PrincipalInertia principal_inertia(const SymMatrix &b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.mat());
    const int n = b.dim();
    const double scale = std::max(b.max_abs(), 1e-300);
    if (solver.eigenvalues().minCoeff() < -1e-13 * scale)
        throw ModelError("inertia tensor has a negative eigenvalue (" +
                         std::to_string(solver.eigenvalues().minCoeff()) + ")");
    PrincipalInertia out;
    out.rho_sq = solver.eigenvalues().reverse();
    out.axes = solver.eigenvectors().rowwise().reverse();
    if (out.axes.determinant() < 0.0) out.axes.col(n - 1) *= -1.0;
    out.spherical =
        (out.rho_sq(0) - out.rho_sq(n - 1)) <= kClassifyTol * std::max(out.rho_sq(0), 1e-300);
    return out;
}

InertiaSummary inertia_summary(const Shape &s, double omega_rve) {
    InertiaSummary out;
    out.measure = s.measure();
    out.static_moment = static_moment(s);
    out.euler = euler_tensor(s).mat();
    SymMatrix b = normalized_inertia(s, omega_rve);
    out.normalized = b.mat();
    PrincipalInertia p = principal_inertia(b);
    out.rho = p.rho_sq.cwiseMax(0.0).cwiseSqrt();
    out.axes = p.axes;
    out.spherical = p.spherical;
    return out;
}

MonteCarloInertia monte_carlo_inertia(const Shape &s, std::size_t samples, std::uint64_t seed,
                                      std::optional<double> omega_rve) {
    if (samples < 10000) throw ModelError("monte_carlo_inertia requires at least 1e4 samples");
    const int n = s.dim();
    const auto [lo, hi] = s.bounding_box();
    double box_vol = 1.0;
    for (int i = 0; i < n; ++i) box_vol *= hi(i) - lo(i);

    std::mt19937_64 rng(seed);
    Eigen::VectorXd x(n);
    std::size_t hits = 0;
    Eigen::VectorXd sum1 = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd sum2sq = Eigen::MatrixXd::Zero(n, n);  // of the per-sample integrand
    for (std::size_t k = 0; k < samples; ++k) {
        for (int i = 0; i < n; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * uniform01(rng);
        if (!s.contains(x)) continue;
        ++hits;
        sum1 += x;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = x(i) * x(j);
                sum2(i, j) += v;
                sum2sq(i, j) += v * v;
            }
    }
    const double inv = 1.0 / double(samples);
    const double p_hit = double(hits) * inv;

    MonteCarloInertia out;
    out.samples = samples;
    out.seed = seed;
    out.estimate.measure = box_vol * p_hit;
    out.estimate.static_moment = box_vol * inv * sum1;
    out.estimate.euler = box_vol * inv * sum2;
    out.measure_stderr = box_vol * std::sqrt(std::max(0.0, p_hit * (1.0 - p_hit)) * inv);
    out.euler_stderr.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double mean = sum2(i, j) * inv;
            const double var = std::max(0.0, sum2sq(i, j) * inv - mean * mean);
            out.euler_stderr(i, j) = box_vol * std::sqrt(var * inv);
        }

    const double norm = omega_rve.value_or(s.measure());
    out.estimate.normalized = out.estimate.euler / norm;
    // principal data from the symmetrized estimate
    Eigen::MatrixXd bsym = 0.5 * (out.estimate.normalized + out.estimate.normalized.transpose());
    PrincipalInertia p = principal_inertia(SymMatrix(bsym, 1.0));
    out.estimate.rho = p.rho_sq.cwiseMax(0.0).cwiseSqrt();
    out.estimate.axes = p.axes;
    out.estimate.spherical = p.spherical;
    return out;
}

// ---------------------------------------------------------------------------
// Microstructure
// ---------------------------------------------------------------------------

double bulk_modulus(const Material &m, int dim) {
    require_dim(dim);
    return dim == 2 ? m.lambda + m.mu : m.lambda + 2.0 * m.mu / 3.0;
}

Microstructure Microstructure::create(Shape rve, Shape inclusion, Material matrix,
                                      InclusionMaterial inclusion_material,
                                      std::optional<double> f_explicit, double dilute_threshold) {
    if (rve.dim() != inclusion.dim())
        throw ModelError("RVE and inclusion dimensions differ");
    const double f_geom = inclusion.measure() / rve.measure();
    double f = f_geom;
    if (f_explicit) {
        if (std::abs(*f_explicit - f_geom) > 1e-9 * f_geom) {
            std::vector<std::string> issues;
            issues.push_back("volume fraction mismatch: explicit f = " +
                             std::to_string(*f_explicit) + " but the shape measures give f = " +
                             std::to_string(f_geom) + " (relative tolerance 1e-9)");
            throw ConfigError(std::move(issues));
        }
        f = *f_explicit;
    }
    if (!(f < 1.0)) throw ModelError("inclusion measure must be smaller than the RVE measure");
    return Microstructure(std::move(rve), std::move(inclusion), matrix, inclusion_material, f,
                          dilute_threshold);
}

InertiaDecomposition rve_inertia_decomposition(const Microstructure &m) {
    const double omega = m.rve().measure();
    SymMatrix b_rve = normalized_inertia(m.rve(), omega);
    SymMatrix b_inc = normalized_inertia(m.inclusion(), omega);
    SymMatrix b_mat = b_rve - b_inc;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b_mat.mat());
    const double scale = std::max(b_rve.max_abs(), 1e-300);
    if (solver.eigenvalues().minCoeff() < -1e-12 * scale)
        throw ModelError("matrix inertia B^(1) is not positive semidefinite; the inclusion "
                         "cannot be contained in the RVE");
    return {b_mat, b_inc, b_rve};
}

}  // namespace sgehom
