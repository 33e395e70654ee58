#include "sgehom/verify.hpp"

#include <cmath>
#include <ostream>

#include "sgehom/homogenization.hpp"
#include "sgehom/report.hpp"
#include "sgehom/sampling.hpp"

namespace sgehom {

namespace {

double rel_diff6(const GradElasticTensor &a, const GradElasticTensor &b) {
    double d = 0.0;
    const double s = std::max(a.max_abs(), b.max_abs());
    for (size_t i = 0; i < a.raw().components().size(); ++i)
        d = std::max(d, std::abs(a.raw().components()[i] - b.raw().components()[i]));
    return s == 0.0 ? d : d / s;
}

double diff6(const Array6 &a, const Array6 &b) {
    double d = 0.0;
    for (size_t i = 0; i < a.components().size(); ++i)
        d = std::max(d, std::abs(a.components()[i] - b.components()[i]));
    return d;
}

struct Runner {
    VerifyReport report;
    void add(const std::string &name, double residual, double tol) {
        const bool ok = residual <= tol;
        report.checks.push_back({name, residual, tol, ok});
        report.all_passed = report.all_passed && ok;
    }
};

}  // namespace

VerifyReport run_verify(const VerifyOptions &opts) {
    Runner r;

    // reduction to the spherical-inertia expression
    {
        Sampler s(opts.seed);
        double worst = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 50; ++it) {
                auto ct = ElasticTensor::isotropic(s.uniform(-2, 2), s.uniform(-2, 2), dim);
                const double rho = s.uniform(0.05, 0.8), f = s.uniform(0.0, 0.05);
                worst = std::max(worst, rel_diff6(spherical_case(ct, rho, f),
                                                  effective_grad_tensor(
                                                      ct, SymMatrix::spherical(rho * rho, dim),
                                                      f)));
            }
        r.add("spherical_reduction", worst, 1e-12);
    }

    // energy annihilation (carries the perturbation hook)
    {
        Sampler s(opts.seed + 1);
        double worst = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 250; ++it) {
                auto ct = s.elastic_tensor(dim);
                auto b = s.spd_matrix(dim);
                const double f = s.uniform(0.001, 0.05);
                auto a = effective_grad_tensor(ct, b, f);
                if (opts.inject_aeq_perturbation) {
                    Array6 raw = a.raw();
                    raw.at(0, 0, 0, 0, 0, 0) *= 1.1;
                    a = GradElasticTensor::from_components(raw);
                }
                auto beta = s.beta(dim);
                const double scale = f * b.mat().norm() *
                                     std::sqrt(condensed_matrix(ct).squaredNorm()) *
                                     beta.norm_sq();
                worst = std::max(worst,
                                 std::abs(annihilation_residual(ct, b, f, a, beta)) / scale);
            }
        r.add("annihilation_identity", worst, 1e-12);
    }

    // symmetrization roundtrip and precursor symmetries of the inverse
    {
        Sampler s(opts.seed + 2);
        double worst_rt = 0.0, worst_pre = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 100; ++it) {
                auto a = s.mindlin_tensor(dim);
                Array6 d = desymmetrize(a);
                worst_pre = std::max(worst_pre,
                                     precursor_symmetry_residual(d) / std::max(d.max_abs(), 1e-300));
                worst_rt = std::max(worst_rt, rel_diff6(symmetrize(d), a));
            }
        r.add("symmetrization_roundtrip", worst_rt, 1e-13);
        r.add("desymmetrize_precursor_symmetry", worst_pre, 1e-13);
    }

    // rotations commute with both operators
    {
        Sampler s(opts.seed + 3);
        double worst = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 100; ++it) {
                Array6 d = s.precursor_array(dim);
                auto q = s.rotation(dim);
                worst = std::max(worst,
                                 rel_diff6(rotate(symmetrize(d), q), symmetrize(rotate(d, q),
                                                                                 1e-9)));
                auto a = s.mindlin_tensor(dim);
                Array6 lhs = desymmetrize(rotate(a, q));
                Array6 rhs = rotate(desymmetrize(a), q);
                worst = std::max(worst, diff6(lhs, rhs) / std::max(lhs.max_abs(), 1e-300));
            }
        r.add("rotation_commutation", worst, 1e-12);
    }

    // the symmetrized tensor carries the same quadratic form
    {
        Sampler s(opts.seed + 4);
        double worst = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 50; ++it) {
                Array6 d = s.precursor_array(dim);
                auto a = symmetrize(d);
                auto beta = s.beta(dim);
                const double pd = grad_quadratic_form(d, beta);
                worst = std::max(worst, std::abs(pd - grad_quadratic_form(a, beta)) /
                                            std::max(1.0, std::abs(pd)));
            }
        r.add("quadratic_form_consistency", worst, 1e-12);
    }

    // condensed matrix against the direct contraction
    {
        Sampler s(opts.seed + 5);
        double worst = 0.0;
        for (int dim : {2, 3}) {
            auto a = s.mindlin_tensor(dim);
            Eigen::MatrixXd g = condensed_matrix(a);
            const auto pairs = condensed_pairs(dim);
            for (int it = 0; it < 50; ++it) {
                Eigen::VectorXd x(g.rows());
                for (int i = 0; i < x.size(); ++i) x(i) = s.uniform(-1, 1);
                std::vector<double> c(size_t(dim * dim * dim), 0.0);
                int idx = 0;
                for (int i = 0; i < dim; ++i)
                    for (const auto &p : pairs) {
                        const double v = x(idx++);
                        if (p[0] == p[1]) {
                            c[size_t((i * dim + p[0]) * dim + p[1])] = v;
                        } else {
                            c[size_t((i * dim + p[0]) * dim + p[1])] = v / std::sqrt(2.0);
                            c[size_t((i * dim + p[1]) * dim + p[0])] = v / std::sqrt(2.0);
                        }
                    }
                auto beta = QuadraticCoefficients::from_components(dim, c);
                const double direct = grad_quadratic_form(a, beta);
                worst = std::max(worst, std::abs(x.dot(g * x) - direct) /
                                            std::max(1.0, std::abs(direct)));
            }
        }
        r.add("condensed_matrix_consistency", worst, 1e-12);
    }

    // Monte-Carlo geometry oracle against the closed forms
    {
        double worst = 0.0;
        auto check = [&](const Shape &shape, std::uint64_t seed) {
            auto mc = monte_carlo_inertia(shape, 1000000, seed);
            Eigen::MatrixXd exact = euler_tensor(shape).mat();
            for (int i = 0; i < exact.rows(); ++i)
                worst = std::max(worst, std::abs(mc.estimate.euler(i, i) - exact(i, i)) /
                                            exact(i, i));
        };
        check(Shape(Rectangle{2, 1}), opts.seed + 10);
        check(Shape(Circle{1}), opts.seed + 11);
        check(Shape(Ellipse{1.5, 0.7}), opts.seed + 12);
        check(Shape(Box{1.2, 1.0, 0.9}), opts.seed + 13);
        check(Shape(Sphere{0.8}), opts.seed + 14);
        r.add("geometry_monte_carlo", worst, 0.005);
    }

    // inertia sum rule is exact on the analytic path
    {
        double worst = 0.0;
        auto check = [&](Shape rve, Shape inc) {
            auto m = Microstructure::create(std::move(rve), std::move(inc), Material{1.0, 1.0},
                                            VoidPhase{}, std::nullopt, 1.0);
            auto d = rve_inertia_decomposition(m);
            worst = std::max(worst, ((d.b_matrix + d.b_inclusion) - d.b_rve).max_abs());
        };
        check(Shape(Rectangle{2, 1}), Shape(Circle{0.1}));
        check(Shape(Box{1.2, 1.0, 0.9}), Shape(Sphere{0.1}));
        check(Shape(Rectangle{2.0, 1.5}), Shape(Ellipse{0.3, 0.2}));
        r.add("inertia_sum_rule", worst, 0.0);
    }

    // closed forms against the generic pipeline
    {
        auto rc = closed_form_case(RectCircleCase{2.0, 1.0, 1.0, 0.5, 0.1, 2.0, 1.0});
        r.add("closed_form_rect_circle", *rc.dual_route_max_rel, 1e-12);
        auto bs = closed_form_case(BoxSphereCase{2.0, 1.0, 1.0, 0.5, 0.1, 1.0, 1.0, 1.0, false});
        r.add("closed_form_box_sphere", *bs.dual_route_max_rel, 1e-12);
        auto se = closed_form_case(SquareEllipseCase{0.0, 1.0, 1.0, 0.5, 3.0});
        r.add("closed_form_square_ellipse", *se.dual_route_max_rel, 1e-12);
        auto sc = closed_form_case(SquareCrackCase{1.0, 1.0, 1.0, std::nullopt});
        r.add("crack_limit_continuity", *sc.dual_route_max_rel, 1e-6);
    }

    // unit coherence: lengths scale the parameters quadratically and leave
    // the discrepancy alone; moduli scale both linearly
    {
        const double c = 3.0;
        auto base = square_ellipse_params(SquareEllipseCase{1.0, 1.0, 1.0, 0.5, 3.0});
        auto scaled_len = square_ellipse_params(SquareEllipseCase{1.0, 1.0, c, 0.5, 3.0 * c});
        auto scaled_mod =
            square_ellipse_params(SquareEllipseCase{2.0 * 1.0, 2.0 * 1.0, 1.0, 0.5, 3.0});
        double worst_len = 0.0, worst_mod = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double scale = std::max({std::abs(base.a2[size_t(k)]),
                                           std::abs(base.a4[size_t(k)]), 1e-300});
            worst_len = std::max(worst_len,
                                 std::abs(scaled_len.a2[size_t(k)] - c * c * base.a2[size_t(k)]) /
                                     (c * c * scale));
            worst_len = std::max(worst_len,
                                 std::abs(scaled_len.a4[size_t(k)] - c * c * base.a4[size_t(k)]) /
                                     (c * c * scale));
            worst_mod = std::max(worst_mod,
                                 std::abs(scaled_mod.a2[size_t(k)] - 2.0 * base.a2[size_t(k)]) /
                                     (2.0 * scale));
            worst_mod = std::max(worst_mod,
                                 std::abs(scaled_mod.a4[size_t(k)] - 2.0 * base.a4[size_t(k)]) /
                                     (2.0 * scale));
        }
        // the discrepancy is insensitive to lengths and linear in the moduli
        auto d0 = elliptic_hole(1.0, 1.0, 0.5);
        auto d2 = elliptic_hole(2.0, 2.0, 0.5);
        const double dscale = std::max(std::abs(d0.lambda_t), std::abs(d0.mu_t));
        worst_mod = std::max(worst_mod, std::abs(d2.lambda_t - 2.0 * d0.lambda_t) / dscale);
        worst_mod = std::max(worst_mod, std::abs(d2.mu_t - 2.0 * d0.mu_t) / dscale);
        worst_mod = std::max(worst_mod, std::abs(d2.xi_t - 2.0 * d0.xi_t) / dscale);
        r.add("scaling_lengths", worst_len, 1e-12);
        r.add("scaling_moduli", worst_mod, 1e-12);
    }

    // definiteness is equivalent to a negative definite discrepancy
    {
        Sampler s(opts.seed + 6);
        int misclassified = 0;
        for (int dim : {2, 3}) {
            for (int it = 0; it < 50; ++it) {
                auto a = effective_grad_tensor(s.negdef_isotropic(dim), s.spd_matrix(dim),
                                               s.uniform(0.001, 0.05));
                if (!is_positive_definite(a).positive_definite) ++misclassified;
            }
            for (int it = 0; it < 50; ++it) {
                auto a = effective_grad_tensor(s.nonnegdef_isotropic(dim), s.spd_matrix(dim),
                                               s.uniform(0.001, 0.05));
                if (is_positive_definite(a).positive_definite) ++misclassified;
            }
        }
        r.add("definiteness_law", double(misclassified), 0.0);
    }

    // symmetry classes follow the intersection rule on the designed cases
    {
        int wrong = 0;
        auto iso_ct = ElasticTensor::isotropic(0.4, -1.0, 2);
        auto a1 = effective_grad_tensor(iso_ct, SymMatrix::spherical(0.1, 2), 0.01);
        if (classify_symmetry(a1) != SymmetryClass::Isotropic) ++wrong;
        auto a2 = effective_grad_tensor(
            iso_ct, SymMatrix::diagonal(Eigen::Vector2d(1.0 / 3, 1.0 / 12)), 0.01);
        if (classify_symmetry(a2) != SymmetryClass::Orthotropic) ++wrong;
        auto a3 = effective_grad_tensor(to_full_tensor(elliptic_hole(0.0, 1.0, 0.5)),
                                        SymMatrix::spherical(0.1, 2), 0.01);
        if (classify_symmetry(a3) != SymmetryClass::Orthotropic) ++wrong;
        r.add("symmetry_intersection", double(wrong), 0.0);
    }

    // parameter extraction inverts the structural assembly
    {
        Sampler s(opts.seed + 7);
        double worst = 0.0;
        for (int dim : {2, 3})
            for (int it = 0; it < 20; ++it) {
                NonlocalParams p;
                p.dim = dim;
                for (int k = 0; k < dim; ++k) {
                    p.a2.push_back(s.uniform(-1, 1));
                    p.a4.push_back(s.uniform(-1, 1));
                    p.a5.push_back(s.uniform(-1, 1));
                }
                if (dim == 2) {
                    p.a6 = s.uniform(-1, 1);
                    p.a9 = s.uniform(-1, 1);
                }
                p.axes = Eigen::MatrixXd::Identity(dim, dim);
                auto q = extract_ortho_params(assemble_from_params(p));
                for (int k = 0; k < dim; ++k) {
                    worst = std::max(worst, std::abs(q.a2[size_t(k)] - p.a2[size_t(k)]));
                    worst = std::max(worst, std::abs(q.a4[size_t(k)] - p.a4[size_t(k)]));
                    worst = std::max(worst, std::abs(q.a5[size_t(k)] - p.a5[size_t(k)]));
                }
            }
        r.add("extraction_roundtrip", worst, 1e-12);
    }

    // config-specific checks
    if (opts.config) {
        try {
            ReportDocument rep = run_homogenize(*opts.config);
            const auto &verification = rep.doc.at("verification");
            if (!verification.at("closed_form_vs_generic_max_rel").is_null())
                r.add("config_dual_route",
                      verification.at("closed_form_vs_generic_max_rel").get<double>(), 1e-12);
            if (!verification.at("annihilation_max_abs").is_null()) {
                const double worst = verification.at("annihilation_max_abs").get<double>();
                const double scale = verification.at("annihilation_scale").get<double>();
                r.add("config_annihilation", scale == 0.0 ? worst : worst / scale, 1e-12);
            }
        } catch (const std::exception &e) {
            r.add(std::string("config_run (") + e.what() + ")", 1.0, 0.0);
        }
    }

    return r.report;
}

void print_verify(const VerifyReport &report, std::ostream &os) {
    for (const auto &c : report.checks)
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
           << "  max residual = " << format_double(c.max_residual)
           << " (tolerance " << format_double(c.tolerance) << ")\n";
    os << (report.all_passed ? "all checks passed\n" : "VERIFICATION FAILED\n");
}

}  // namespace sgehom
