#include "sgehom/homogenization.hpp"

#include <cmath>

#include "sgehom/errors.hpp"

namespace sgehom {

namespace {

double kd(int a, int b) { return a == b ? 1.0 : 0.0; }

// Structural kernels of the orthotropic parameterization. The per-axis
// kernels carry one distinguished axis k; the coupling kernels are the
// in-plane orthotropic terms of the 2D five-parameter form.
void add_axis_kernels(Array6 &t2, Array6 &t4, Array6 &t5, int k) {
    const int N = t2.dim();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int h = 0; h < N; ++h)
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n) {
                            const double dkj = kd(k, j), dki = kd(k, i), dkl = kd(k, l),
                                         dkm = kd(k, m);
                            t2.at(i, j, h, l, m, n) +=
                                0.5 * (kd(i, h) * dkj + kd(j, h) * dki) *
                                (kd(l, n) * dkm + kd(m, n) * dkl);
                            t4.at(i, j, h, l, m, n) +=
                                0.5 * kd(h, n) *
                                (dkj * (kd(i, m) * dkl + kd(i, l) * dkm) +
                                 dki * (kd(j, l) * dkm + kd(j, m) * dkl));
                            t5.at(i, j, h, l, m, n) +=
                                0.5 * (kd(i, n) * dkj * (kd(h, l) * dkm + kd(h, m) * dkl) +
                                       kd(j, n) * dki * (kd(h, m) * dkl + kd(h, l) * dkm));
                        }
}

Array6 coupling_kernel_a6() {
    Array6 g(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n) {
                            const double swap_ih = kd(i, 0) * kd(h, 1) + kd(i, 1) * kd(h, 0);
                            const double swap_jh = kd(j, 0) * kd(h, 1) + kd(j, 1) * kd(h, 0);
                            const double swap_ln = kd(l, 0) * kd(n, 1) + kd(l, 1) * kd(n, 0);
                            const double swap_mn = kd(m, 0) * kd(n, 1) + kd(m, 1) * kd(n, 0);
                            g.at(i, j, h, l, m, n) =
                                0.5 * (swap_ih * (swap_ln * kd(j, m) + swap_mn * kd(j, l)) +
                                       swap_jh * (swap_ln * kd(i, m) + swap_mn * kd(i, l)));
                        }
    return g;
}

Array6 coupling_kernel_a9() {
    Array6 g(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            g.at(i, j, h, l, m, n) =
                                0.5 *
                                (kd(i, 0) * (kd(l, 0) * kd(j, m) + kd(m, 0) * kd(j, l)) +
                                 kd(j, 0) * (kd(l, 0) * kd(i, m) + kd(m, 0) * kd(i, l))) *
                                kd(h, 0) * kd(n, 0);
    return g;
}

// Basis tensors in a fixed order: a2 per axis, a4 per axis, a5 per axis,
// then (N = 2 only) a6 and a9.
std::vector<Array6> structural_basis(int dim) {
    std::vector<Array6> out;
    for (int family = 0; family < 3; ++family)
        for (int k = 0; k < dim; ++k) {
            Array6 t2(dim), t4(dim), t5(dim);
            add_axis_kernels(t2, t4, t5, k);
            out.push_back(family == 0 ? t2 : family == 1 ? t4 : t5);
        }
    if (dim == 2) {
        out.push_back(coupling_kernel_a6());
        out.push_back(coupling_kernel_a9());
    }
    return out;
}

bool is_identity(const Eigen::MatrixXd &m) {
    return (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Core assembly
// ---------------------------------------------------------------------------

namespace {

GradElasticTensor assemble_eq13(const ElasticTensor &ct, const Eigen::MatrixXd &b, double f) {
    const int N = ct.dim();
    Array6 raw(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int h = 0; h < N; ++h)
                for (int l = 0; l < N; ++l)
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n)
                            raw.at(i, j, h, l, m, n) =
                                -(f / 4.0) *
                                    (ct(i, h, l, n) * b(j, m) + ct(i, h, m, n) * b(j, l) +
                                     ct(j, h, l, n) * b(i, m) + ct(j, h, m, n) * b(i, l)) +
                                0.0;
    return GradElasticTensor::from_components(raw, 1e-9);
}

}  // namespace

GradElasticTensor effective_grad_tensor(const ElasticTensor &ctilde, const SymMatrix &b_rve,
                                        double f) {
    if (ctilde.dim() != b_rve.dim())
        throw ModelError("discrepancy tensor and inertia tensor dimensions differ");
    if (f < 0.0) throw ModelError("volume fraction must be non-negative");
    return assemble_eq13(ctilde, b_rve.mat(), f);
}

GradElasticTensor spherical_case(const ElasticTensor &ctilde, double rho, double f) {
    if (f < 0.0) throw ModelError("volume fraction must be non-negative");
    // Kronecker-delta form of the spherical-inertia reduction, evaluated with
    // the same product ordering as the general assembly so the two code paths
    // agree bitwise.
    const int N = ctilde.dim();
    Eigen::MatrixXd b = rho * rho * Eigen::MatrixXd::Identity(N, N);
    return assemble_eq13(ctilde, b, f);
}

// ---------------------------------------------------------------------------
// Nonlocal parameters
// ---------------------------------------------------------------------------

NonlocalParams extract_ortho_params(const GradElasticTensor &a,
                                    std::optional<Eigen::MatrixXd> axes) {
    const int N = a.dim();
    NonlocalParams p;
    p.dim = N;
    p.axes = axes.value_or(Eigen::MatrixXd::Identity(N, N));

    GradElasticTensor a_frame = a;
    if (!is_identity(p.axes))
        a_frame = rotate(a, OrthogonalTransform(p.axes.transpose()));

    const std::vector<Array6> basis = structural_basis(N);
    const Eigen::Index rows = Eigen::Index(a_frame.raw().components().size());
    Eigen::MatrixXd M(rows, Eigen::Index(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            M(r, Eigen::Index(c)) = basis[c].components()[size_t(r)];
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) rhs(r) = a_frame.raw().components()[size_t(r)];

    Eigen::VectorXd coef = M.colPivHouseholderQr().solve(rhs);
    const double rhs_norm = rhs.norm();
    p.fit_residual = rhs_norm == 0.0 ? 0.0 : (M * coef - rhs).norm() / rhs_norm;

    p.a2.assign(coef.data(), coef.data() + N);
    p.a4.assign(coef.data() + N, coef.data() + 2 * N);
    p.a5.assign(coef.data() + 2 * N, coef.data() + 3 * N);
    if (N == 2) {
        p.a6 = coef(6);
        p.a9 = coef(7);
    }
    return p;
}

GradElasticTensor assemble_from_params(const NonlocalParams &p) {
    require_dim(p.dim);
    const int N = p.dim;
    if (int(p.a2.size()) != N || int(p.a4.size()) != N || int(p.a5.size()) != N)
        throw ModelError("nonlocal parameter set has the wrong arity");
    if (N == 3 && (p.a6 || p.a9))
        throw ModelError("a6/a9 couplings are only defined in plane strain");

    const std::vector<Array6> basis = structural_basis(N);
    Array6 raw(N);
    auto add = [&raw](const Array6 &k, double w) {
        for (size_t i = 0; i < raw.components().size(); ++i)
            raw.components()[i] += w * k.components()[i];
    };
    for (int k = 0; k < N; ++k) {
        add(basis[size_t(k)], p.a2[size_t(k)]);
        add(basis[size_t(N + k)], p.a4[size_t(k)]);
        add(basis[size_t(2 * N + k)], p.a5[size_t(k)]);
    }
    if (N == 2) {
        if (p.a6) add(basis[6], *p.a6);
        if (p.a9) add(basis[7], *p.a9);
    }
    GradElasticTensor out = GradElasticTensor::from_components(raw);
    if (!is_identity(p.axes)) out = rotate(out, OrthogonalTransform(p.axes));
    return out;
}

AnisotropyRatios anisotropy_ratios(const NonlocalParams &p) {
    const int N = p.dim;
    double scale = 0.0;
    for (int k = 0; k < N; ++k)
        scale = std::max({scale, std::abs(p.a2[size_t(k)]), std::abs(p.a4[size_t(k)])});
    const double lead2 = p.a2[0], lead4 = p.a4[0];
    if (scale == 0.0 || (std::abs(lead2) <= 1e-14 * scale && std::abs(lead4) <= 1e-14 * scale))
        throw ModelError("anisotropy ratios need a nonzero leading a2 or a4 parameter");

    AnisotropyRatios out;
    out.max_mismatch = 0.0;
    const bool use2 = std::abs(lead2) > 1e-14 * scale;
    for (int k = 0; k < N; ++k) {
        out.ratio.push_back(use2 ? p.a2[size_t(k)] / lead2 : p.a4[size_t(k)] / lead4);
        // the two families must give the same ratio: a2[k] a4[0] == a4[k] a2[0]
        const double cross = p.a2[size_t(k)] * lead4 - p.a4[size_t(k)] * lead2;
        out.max_mismatch = std::max(out.max_mismatch, std::abs(cross) / (scale * scale));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Energy annihilation
// ---------------------------------------------------------------------------

double annihilation_residual(const ElasticTensor &ctilde, const SymMatrix &b_rve, double f,
                             const GradElasticTensor &a, const QuadraticCoefficients &beta) {
    const int N = ctilde.dim();
    if (b_rve.dim() != N || a.dim() != N || beta.dim() != N)
        throw ModelError("annihilation_residual: dimension mismatch");
    double local = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l) {
                const double bl = beta(i, j, l);
                if (bl == 0.0) continue;
                for (int h = 0; h < N; ++h)
                    for (int k = 0; k < N; ++k)
                        for (int m = 0; m < N; ++m)
                            local += b_rve(l, m) * ctilde(i, j, h, k) * bl * beta(h, k, m);
            }
    return f * local + grad_quadratic_form(a, beta);
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

namespace {

void classify_result(HomogenizationResult &r, double tol = kClassifyTol) {
    r.aeq_class = classify_symmetry(r.aeq, tol);
    if (r.ctilde) r.ctilde_class = classify_symmetry(*r.ctilde, tol);
    if (r.b_rve) r.b_class = classify_symmetry(*r.b_rve, tol);
    if (r.ctilde_class && r.b_class && r.aeq.max_abs() > 0.0)
        r.symmetry_intersection_consistent =
            r.aeq_class == intersect(*r.ctilde_class, *r.b_class);
}

}  // namespace

HomogenizationResult homogenize_ctilde(const ElasticTensor &ctilde, const SymMatrix &b_rve,
                                       double f, double classify_tol) {
    HomogenizationResult r;
    r.dim = ctilde.dim();
    r.f = f;
    r.ctilde = ctilde;
    r.ctilde_params = identify_structure(ctilde);
    r.ctilde_definiteness = is_negative_definite(ctilde);
    r.b_rve = b_rve;
    r.aeq = effective_grad_tensor(ctilde, b_rve, f);
    r.params = extract_ortho_params(r.aeq);
    r.definiteness = is_positive_definite(r.aeq);
    classify_result(r, classify_tol);
    return r;
}

HomogenizationResult analyze(const Microstructure &m, const AnalyzeOptions &opts) {
    const int N = m.dim();
    InertiaDecomposition dec = rve_inertia_decomposition(m);

    // phase moduli: voids enter as zero-stiffness materials
    const Material &mat = m.matrix();
    double K2 = 0.0, mu2 = 0.0;
    bool is_void = std::holds_alternative<VoidPhase>(m.inclusion_material());
    if (!is_void) {
        const Material &inc = std::get<Material>(m.inclusion_material());
        K2 = bulk_modulus(inc, N);
        mu2 = inc.mu;
    }
    const double K1 = bulk_modulus(mat, N);
    const double mu1 = mat.mu;

    ElasticTensor ctilde = ElasticTensor::zero(N);
    bool softer_both = K2 < K1 && mu2 < mu1;
    bool literal_3d = false;
    if (const auto *circ = std::get_if<Circle>(&m.inclusion().value())) {
        (void)circ;
        ctilde = to_full_tensor(circular_inclusion(K1, mu1, K2, mu2));
    } else if (std::holds_alternative<Sphere>(m.inclusion().value())) {
        ctilde = to_full_tensor(spherical_inclusion(K1, mu1, K2, mu2, opts.erratum_sign_3d));
        literal_3d = !opts.erratum_sign_3d;
    } else if (const auto *ell = std::get_if<Ellipse>(&m.inclusion().value())) {
        if (!is_void)
            throw ModelError("elliptical inclusions are only supported as holes; supply an "
                             "explicit discrepancy tensor for elastic ellipses");
        if (ell->b2 > ell->b1)
            throw ModelError("elliptical hole must have b1 >= b2; reorient the axes");
        ctilde = to_full_tensor(elliptic_hole(mat.lambda, mu1, ell->b2 / ell->b1));
    } else {
        throw ModelError("no closed-form discrepancy for a " + m.inclusion().kind() +
                         " inclusion; supply an explicit discrepancy tensor or effective moduli");
    }

    HomogenizationResult r = homogenize_ctilde(ctilde, dec.b_rve, m.f(), opts.classify_tol);
    r.inertia = dec;
    if (m.exceeds_dilute_threshold())
        r.warnings.push_back({"dilute_threshold_exceeded",
                              "volume fraction " + std::to_string(m.f()) +
                                  " exceeds the dilute threshold " +
                                  std::to_string(m.dilute_threshold())});
    if (softer_both && r.ctilde_definiteness && !r.ctilde_definiteness->negative_definite) {
        std::string msg = "the discrepancy tensor of a softer inclusion is not negative "
                          "definite, so the nonlocal stiffness is not positive definite";
        if (literal_3d)
            msg += "; this follows the published spherical-inclusion expression literally — "
                   "rerun with the erratum sign flag to flip the bracket sign";
        r.warnings.push_back({"negative_definiteness_conflict", msg});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Closed-form cases
// ---------------------------------------------------------------------------

namespace {

void require_positive_case(double v, const char *what) {
    if (!(v > 0.0)) throw ModelError(std::string(what) + " must be positive");
}

NonlocalParams spherical_five_params(double a2, double a4, double a6, double a9) {
    NonlocalParams p;
    p.dim = 2;
    p.a2 = {a2, a2};
    p.a4 = {a4, a4};
    p.a5 = {a4, a4};
    p.a6 = a6;
    p.a9 = a9;
    p.axes = Eigen::MatrixXd::Identity(2, 2);
    return p;
}

double param_diff(const NonlocalParams &a, const NonlocalParams &b) {
    double scale = 0.0, diff = 0.0;
    auto upd = [&](double x, double y) {
        scale = std::max({scale, std::abs(x), std::abs(y)});
        diff = std::max(diff, std::abs(x - y));
    };
    for (int k = 0; k < a.dim; ++k) {
        upd(a.a2[size_t(k)], b.a2[size_t(k)]);
        upd(a.a4[size_t(k)], b.a4[size_t(k)]);
        upd(a.a5[size_t(k)], b.a5[size_t(k)]);
    }
    upd(a.a6.value_or(0.0), b.a6.value_or(0.0));
    upd(a.a9.value_or(0.0), b.a9.value_or(0.0));
    return scale == 0.0 ? diff : diff / scale;
}

}  // namespace

NonlocalParams rect_circle_params(const RectCircleCase &c) {
    require_positive_case(c.r, "inclusion radius");
    require_positive_case(c.h1, "RVE edge h1");
    require_positive_case(c.h2, "RVE edge h2");
    if (2.0 * c.r > std::min(c.h1, c.h2))
        throw ModelError("inclusion radius too large for the RVE");
    const double den_bulk = c.K2 + c.mu1;
    const double den_shear = 2.0 * c.mu1 * c.mu2 + c.K1 * (c.mu1 + c.mu2);
    if (!(c.K1 > 0.0) || !(c.mu1 > 0.0)) throw ModelError("matrix moduli must be positive");
    if (den_bulk == 0.0 || den_shear == 0.0) throw ModelError("singular closed-form denominator");
    const double pref = M_PI * c.r * c.r / 24.0 * c.h1 / c.h2;
    const double bulk_term = (c.K1 - c.K2) * (c.K1 + c.mu1) / den_bulk;
    const double shear_term = c.mu1 * (c.mu1 - c.mu2) * (c.K1 + c.mu1) / den_shear;
    const double a2_1 = pref * (bulk_term - shear_term);
    const double a4_1 = pref * shear_term;
    const double ratio = (c.h2 / c.h1) * (c.h2 / c.h1);
    NonlocalParams p;
    p.dim = 2;
    p.a2 = {a2_1, ratio * a2_1};
    p.a4 = {a4_1, ratio * a4_1};
    p.a5 = p.a4;
    p.axes = Eigen::MatrixXd::Identity(2, 2);
    return p;
}

NonlocalParams box_sphere_params(const BoxSphereCase &c) {
    require_positive_case(c.r, "inclusion radius");
    require_positive_case(c.h1, "RVE edge h1");
    require_positive_case(c.h2, "RVE edge h2");
    require_positive_case(c.h3, "RVE edge h3");
    if (2.0 * c.r > std::min({c.h1, c.h2, c.h3}))
        throw ModelError("inclusion radius too large for the RVE");
    if (!(c.K1 > 0.0) || !(c.mu1 > 0.0)) throw ModelError("matrix moduli must be positive");
    const double den_bulk = 3.0 * c.K2 + 4.0 * c.mu1;
    const double den_shear = c.mu1 * (3.0 * c.K1 + 4.0 * c.mu2) +
                             2.0 * (3.0 * c.K1 + 4.0 * c.mu1) * (c.mu2 + c.mu1);
    if (den_bulk == 0.0 || den_shear == 0.0) throw ModelError("singular closed-form denominator");
    double bulk_term = (3.0 * c.K1 + 4.0 * c.mu1) * (c.K2 - c.K1) / den_bulk;
    double shear_term =
        5.0 * c.mu1 * (c.mu2 - c.mu1) * (3.0 * c.K1 + 4.0 * c.mu1) / den_shear;
    if (c.erratum_sign) {
        bulk_term = -bulk_term;
        shear_term = -shear_term;
    }
    const double pref = M_PI * c.r * c.r * c.r / 18.0 * c.h1 / (c.h2 * c.h3);
    const double a2_1 = pref * (bulk_term - 2.0 / 3.0 * shear_term);
    const double a4_1 = pref * shear_term;
    NonlocalParams p;
    p.dim = 3;
    const double r2 = (c.h2 / c.h1) * (c.h2 / c.h1);
    const double r3 = (c.h3 / c.h1) * (c.h3 / c.h1);
    p.a2 = {a2_1, r2 * a2_1, r3 * a2_1};
    p.a4 = {a4_1, r2 * a4_1, r3 * a4_1};
    p.a5 = p.a4;
    p.axes = Eigen::MatrixXd::Identity(3, 3);
    return p;
}

NonlocalParams square_ellipse_params(const SquareEllipseCase &c) {
    require_positive_case(c.b1, "semi-axis b1");
    require_positive_case(c.h, "RVE side");
    if (!(c.mu1 > 0.0) || !(c.lambda1 + c.mu1 > 0.0))
        throw ModelError("matrix moduli must satisfy mu1 > 0 and lambda1 + mu1 > 0");
    if (c.Lambda <= 0.0 || c.Lambda > 1.0)
        throw ModelError("aspect ratio must lie in (0, 1]; reorient the axes or use the crack "
                         "limit");
    if (2.0 * c.b1 > c.h) throw ModelError("ellipse too large for the RVE");
    const double p0 = c.lambda1 + 2.0 * c.mu1;
    const double pref = M_PI * c.b1 * c.b1 / 48.0;
    const double a2 =
        pref * (c.lambda1 * p0 * (1.0 + c.Lambda * c.Lambda) - 2.0 * c.Lambda * c.mu1 * c.mu1) /
        (c.mu1 * (c.lambda1 + c.mu1)) * p0;
    const double a4 = pref * (c.lambda1 * (1.0 - c.Lambda) + 2.0 * c.mu1) /
                      (c.lambda1 + c.mu1) * (1.0 + c.Lambda) * p0;
    const double a6 = -pref * (1.0 - c.Lambda * c.Lambda) * p0;
    const double a9 = -2.0 * pref * (1.0 - c.Lambda * c.Lambda) * p0;
    return spherical_five_params(a2, a4, a6, a9);
}

NonlocalParams square_crack_params(const SquareCrackCase &c) {
    CrackProducts cp = crack_products(c.lambda1, c.mu1, c.b1);
    return spherical_five_params(cp.a2, cp.a4, cp.a6, cp.a9);
}

HomogenizationResult closed_form_case(const ClosedFormCase &c, double classify_tol) {
    if (const auto *rc = std::get_if<RectCircleCase>(&c)) {
        NonlocalParams literal = rect_circle_params(*rc);
        const double lambda1 = rc->K1 - rc->mu1;  // plane strain
        InclusionMaterial im = VoidPhase{};
        if (rc->K2 != 0.0 || rc->mu2 != 0.0) im = Material{rc->K2 - rc->mu2, rc->mu2};
        auto m = Microstructure::create(Shape(Rectangle{rc->h1, rc->h2}), Shape(Circle{rc->r}),
                                        Material{lambda1, rc->mu1}, im);
        HomogenizationResult r = analyze(m, {false, classify_tol});
        r.dual_route_max_rel = param_diff(literal, *r.params);
        return r;
    }
    if (const auto *bs = std::get_if<BoxSphereCase>(&c)) {
        NonlocalParams literal = box_sphere_params(*bs);
        const double lambda1 = bs->K1 - 2.0 * bs->mu1 / 3.0;
        InclusionMaterial im = VoidPhase{};
        if (bs->K2 != 0.0 || bs->mu2 != 0.0)
            im = Material{bs->K2 - 2.0 * bs->mu2 / 3.0, bs->mu2};
        auto m = Microstructure::create(Shape(Box{bs->h1, bs->h2, bs->h3}), Shape(Sphere{bs->r}),
                                        Material{lambda1, bs->mu1}, im);
        HomogenizationResult r = analyze(m, {bs->erratum_sign, classify_tol});
        r.dual_route_max_rel = param_diff(literal, *r.params);
        return r;
    }
    if (const auto *se = std::get_if<SquareEllipseCase>(&c)) {
        NonlocalParams literal = square_ellipse_params(*se);
        auto m = Microstructure::create(Shape(Rectangle{se->h, se->h}),
                                        Shape(Ellipse{se->b1, se->Lambda * se->b1}),
                                        Material{se->lambda1, se->mu1}, VoidPhase{});
        HomogenizationResult r = analyze(m, {false, classify_tol});
        r.dual_route_max_rel = param_diff(literal, *r.params);
        return r;
    }
    const auto &sc = std::get<SquareCrackCase>(c);
    NonlocalParams literal = square_crack_params(sc);
    HomogenizationResult r;
    r.dim = 2;
    r.f = 0.0;  // cracks carry no volume; only the nonlocal products stay finite
    r.aeq = assemble_from_params(literal);
    r.params = extract_ortho_params(r.aeq);
    r.definiteness = is_positive_definite(r.aeq);
    if (sc.h) {
        require_positive_case(*sc.h, "RVE side");
        if (2.0 * sc.b1 > *sc.h) throw ModelError("crack too long for the RVE");
        r.b_rve = SymMatrix::spherical(*sc.h * *sc.h / 12.0, 2);
    }
    classify_result(r, classify_tol);
    // cross-check against the thin-ellipse chain evaluated near the limit
    {
        const double L = 1e-8;
        OrthotropicDiscrepancy d = elliptic_hole(sc.lambda1, sc.mu1, L);
        const double pref = -M_PI * L * sc.b1 * sc.b1 / 24.0;
        NonlocalParams chain = spherical_five_params(pref * d.lambda_t, pref * d.mu_t,
                                                     pref * d.xi_t, pref * d.omega_t);
        // the a5 slots of the chain mirror a4 by construction
        r.dual_route_max_rel = param_diff(literal, chain);
    }
    return r;
}

}  // namespace sgehom
