#include <doctest.h>

#include <cmath>

#include "sgehom/errors.hpp"
#include "sgehom/homogenization.hpp"
#include "sgehom/sampling.hpp"

using namespace sgehom;

namespace {

double rel_diff(const GradElasticTensor &a, const GradElasticTensor &b) {
    double d = 0.0;
    const double s = std::max(a.max_abs(), b.max_abs());
    for (size_t i = 0; i < a.raw().components().size(); ++i)
        d = std::max(d, std::abs(a.raw().components()[i] - b.raw().components()[i]));
    return s == 0.0 ? d : d / s;
}

}  // namespace

TEST_CASE("effective grad tensor: trivial and worked cases") {
    auto ct = make_isotropic_elastic(0.7, -1.2, 2);
    auto b = SymMatrix::diagonal(Eigen::Vector2d(0.3, 0.1));
    CHECK(effective_grad_tensor(ct, b, 0.0).max_abs() == 0.0);
    CHECK(effective_grad_tensor(ElasticTensor::zero(2), b, 0.01).max_abs() == 0.0);

    // isotropic discrepancy with diagonal inertia assembles to the per-axis
    // structure with a4 = a5 = {1/600, 1/2400}, a2 = 0
    auto a = effective_grad_tensor(make_isotropic_elastic(0.0, -1.0, 2),
                                   SymMatrix::diagonal(Eigen::Vector2d(1.0 / 3, 1.0 / 12)), 0.01);
    NonlocalParams expect;
    expect.dim = 2;
    expect.a2 = {0.0, 0.0};
    expect.a4 = {1.0 / 600, 1.0 / 2400};
    expect.a5 = expect.a4;
    expect.axes = Eigen::MatrixXd::Identity(2, 2);
    CHECK(rel_diff(a, assemble_from_params(expect)) <= 1e-14);
}

TEST_CASE("spherical reduction equals the general assembly bitwise") {
    Sampler s(101);
    for (int dim : {2, 3}) {
        for (int it = 0; it < 20; ++it) {
            auto ct = ElasticTensor::isotropic(s.uniform(-2, 2), s.uniform(-2, 2), dim);
            const double rho = s.uniform(0.05, 0.8), f = s.uniform(0.0, 0.05);
            auto a1 = spherical_case(ct, rho, f);
            auto a2 = effective_grad_tensor(ct, SymMatrix::spherical(rho * rho, dim), f);
            double d = 0.0;
            for (size_t i = 0; i < a1.raw().components().size(); ++i)
                d = std::max(d, std::abs(a1.raw().components()[i] - a2.raw().components()[i]));
            CHECK(d == 0.0);
        }
    }
    CHECK(spherical_case(make_isotropic_elastic(1, -1, 2), 0.0, 0.01).max_abs() == 0.0);
}

TEST_CASE("parameter extraction") {
    // zero tensor -> all parameters zero, zero residual
    auto p0 = extract_ortho_params(GradElasticTensor::zero(3));
    CHECK(p0.fit_residual == 0.0);
    for (double v : p0.a2) CHECK(v == 0.0);

    Sampler s(103);
    for (int dim : {2, 3}) {
        for (int it = 0; it < 10; ++it) {
            const double lam = s.uniform(-2, 2), mu = s.uniform(-2, 2), f = s.uniform(0.001, 0.05);
            Eigen::VectorXd rho2(dim);
            for (int k = 0; k < dim; ++k) rho2(k) = s.uniform(0.01, 0.5);
            auto a = effective_grad_tensor(ElasticTensor::isotropic(lam, mu, dim),
                                           SymMatrix::diagonal(rho2), f);
            auto p = extract_ortho_params(a);
            CHECK(p.fit_residual <= 1e-12);
            for (int k = 0; k < dim; ++k) {
                CHECK(p.a2[size_t(k)] ==
                      doctest::Approx(-f * rho2(k) / 2 * lam).epsilon(1e-11));
                CHECK(p.a4[size_t(k)] ==
                      doctest::Approx(-f * rho2(k) / 2 * mu).epsilon(1e-11));
                CHECK(p.a5[size_t(k)] == doctest::Approx(p.a4[size_t(k)]).epsilon(1e-11));
            }
        }
    }

    // elliptic-hole discrepancy with spherical inertia: couplings with a9 = 2 a6
    auto d = elliptic_hole(0.0, 1.0, 0.5);
    auto a = effective_grad_tensor(to_full_tensor(d), SymMatrix::spherical(1.0 / 12, 2), 0.02);
    auto p = extract_ortho_params(a);
    CHECK(p.fit_residual <= 1e-12);
    REQUIRE(p.a6.has_value());
    REQUIRE(p.a9.has_value());
    CHECK(*p.a9 == doctest::Approx(2.0 * *p.a6).epsilon(1e-11));
    CHECK(*p.a6 == doctest::Approx(-0.02 / 24.0 * d.xi_t).epsilon(1e-11));
}

TEST_CASE("assemble/extract roundtrip") {
    Sampler s(107);
    for (int dim : {2, 3}) {
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
            auto a = assemble_from_params(p);
            auto q = extract_ortho_params(a);
            CHECK(q.fit_residual <= 1e-13);
            for (int k = 0; k < dim; ++k) {
                CHECK(q.a2[size_t(k)] == doctest::Approx(p.a2[size_t(k)]).epsilon(1e-12));
                CHECK(q.a4[size_t(k)] == doctest::Approx(p.a4[size_t(k)]).epsilon(1e-12));
                CHECK(q.a5[size_t(k)] == doctest::Approx(p.a5[size_t(k)]).epsilon(1e-12));
            }
            if (dim == 2) {
                CHECK(*q.a6 == doctest::Approx(*p.a6).epsilon(1e-12));
                CHECK(*q.a9 == doctest::Approx(*p.a9).epsilon(1e-12));
            }
        }
    }

    // pure shear parameters along rho_k^2 equal the assembly from an
    // isotropic discrepancy with lambda_t = 0, mu_t = -2c/f
    const double c = 0.37, f = 0.01;
    Eigen::Vector2d rho2(0.3, 0.05);
    NonlocalParams p;
    p.dim = 2;
    p.a2 = {0.0, 0.0};
    p.a4 = {c * rho2(0), c * rho2(1)};
    p.a5 = p.a4;
    p.axes = Eigen::MatrixXd::Identity(2, 2);
    auto lhs = assemble_from_params(p);
    auto rhs = effective_grad_tensor(ElasticTensor::isotropic(0.0, -2.0 * c / f, 2),
                                     SymMatrix::diagonal(rho2), f);
    CHECK(rel_diff(lhs, rhs) <= 1e-13);

    // extraction in a rotated frame reproduces the parameters
    Sampler s2(109);
    auto q_rot = s2.rotation(2);
    auto rotated_a = rotate(lhs, q_rot);
    auto pr = extract_ortho_params(rotated_a, q_rot.mat());
    CHECK(pr.fit_residual <= 1e-11);
    CHECK(pr.a4[0] == doctest::Approx(p.a4[0]).epsilon(1e-10));
    CHECK(pr.a4[1] == doctest::Approx(p.a4[1]).epsilon(1e-10));
    CHECK(rel_diff(assemble_from_params(pr), rotated_a) <= 1e-11);
}

TEST_CASE("anisotropy ratios") {
    NonlocalParams p;
    p.dim = 2;
    p.a2 = {-0.6, -0.15};
    p.a4 = {0.9, 0.225};
    p.a5 = p.a4;
    p.axes = Eigen::MatrixXd::Identity(2, 2);
    auto r = anisotropy_ratios(p);
    CHECK(r.ratio[0] == 1.0);
    CHECK(r.ratio[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.max_mismatch <= 1e-14);

    p.a2 = {0.0, 0.0};
    auto r2 = anisotropy_ratios(p);
    CHECK(r2.ratio[1] == doctest::Approx(0.25).epsilon(1e-14));

    NonlocalParams z;
    z.dim = 2;
    z.a2 = {0.0, 0.0};
    z.a4 = {0.0, 0.0};
    z.a5 = {0.0, 0.0};
    z.axes = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(anisotropy_ratios(z), ModelError);
}

TEST_CASE("annihilation residual") {
    auto ct = make_isotropic_elastic(0.4, -0.9, 2);
    auto b = SymMatrix::diagonal(Eigen::Vector2d(0.2, 0.07));
    auto a = effective_grad_tensor(ct, b, 0.02);
    CHECK(annihilation_residual(ct, b, 0.02, a, QuadraticCoefficients::zero(2)) == 0.0);

    Sampler s(113);
    for (int dim : {2, 3}) {
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            auto ctr = s.elastic_tensor(dim);
            auto br = s.spd_matrix(dim);
            const double f = s.uniform(0.001, 0.05);
            auto ar = effective_grad_tensor(ctr, br, f);
            auto beta = s.beta(dim);
            const double scale = f * br.mat().norm() *
                                 std::sqrt(condensed_matrix(ctr).squaredNorm()) * beta.norm_sq();
            worst = std::max(worst,
                             std::abs(annihilation_residual(ctr, br, f, ar, beta)) / scale);
        }
        CHECK(worst <= 1e-12);
    }

    // a perturbed tensor is detected by probing
    auto bad_raw = a.raw();
    bad_raw.at(0, 0, 0, 0, 0, 0) *= 1.1;
    auto bad = GradElasticTensor::from_components(bad_raw);
    double best = 0.0;
    for (int it = 0; it < 50; ++it)
        best = std::max(best, std::abs(annihilation_residual(ct, b, 0.02, bad, s.beta(2))));
    CHECK(best > 1e-8);
}

TEST_CASE("linearity in the volume fraction") {
    Sampler s(127);
    auto ct = s.elastic_tensor(2);
    auto b = s.spd_matrix(2);
    auto a1 = effective_grad_tensor(ct, b, 0.01);
    auto a3 = effective_grad_tensor(ct, b, 0.03);
    CHECK(rel_diff(a3, a1 * 3.0) <= 1e-14);
}

TEST_CASE("definiteness law") {
    Sampler s(131);
    for (int dim : {2, 3}) {
        for (int it = 0; it < 60; ++it) {
            auto ct = s.negdef_isotropic(dim);
            auto b = s.spd_matrix(dim);
            auto a = effective_grad_tensor(ct, b, s.uniform(0.001, 0.05));
            CHECK(is_positive_definite(a).positive_definite);
        }
        for (int it = 0; it < 60; ++it) {
            auto ct = s.nonnegdef_isotropic(dim);
            auto b = s.spd_matrix(dim);
            auto a = effective_grad_tensor(ct, b, s.uniform(0.001, 0.05));
            CHECK_FALSE(is_positive_definite(a).positive_definite);
        }
    }
}

TEST_CASE("closed form: rectangle with circular inclusion") {
    RectCircleCase c{2.0, 1.0, 1.0, 0.5, 0.1, 2.0, 1.0};
    auto lit = rect_circle_params(c);
    // bulk term 1.5, shear term 0.375: a2^[1] = (pi 0.01 / 24) * 2 * 1.125
    CHECK(lit.a2[0] == doctest::Approx(M_PI * 0.01 / 24 * 2 * 1.125).epsilon(1e-14));
    CHECK(lit.a4[0] == doctest::Approx(M_PI * 0.01 / 24 * 2 * 0.375).epsilon(1e-14));
    CHECK(lit.a2[1] == doctest::Approx(0.25 * lit.a2[0]).epsilon(1e-14));
    CHECK(lit.a4[1] == doctest::Approx(0.25 * lit.a4[0]).epsilon(1e-14));

    auto r = closed_form_case(c);
    REQUIRE(r.dual_route_max_rel.has_value());
    CHECK(*r.dual_route_max_rel <= 1e-12);
    CHECK(r.aeq_class == SymmetryClass::Orthotropic);
    CHECK(r.definiteness.positive_definite);  // softer inclusion in both moduli
    CHECK(r.warnings.empty());

    CHECK_THROWS_AS(closed_form_case(RectCircleCase{2, 1, 1, 0.5, 0.8, 1.0, 1.0}), ModelError);
}

TEST_CASE("closed form: box with spherical inclusion") {
    BoxSphereCase c{2.0, 1.0, 1.0, 0.5, 0.1, 1.0, 1.0, 1.0, false};
    auto lit = box_sphere_params(c);
    const double bracket = -10.0 / 7.0 + 50.0 / 114.0;
    CHECK(lit.a2[0] == doctest::Approx(M_PI * 1e-3 / 18 * bracket).epsilon(1e-12));
    CHECK(lit.a2[0] == doctest::Approx(-1.7279e-4).epsilon(1e-4));

    auto r = closed_form_case(c);
    CHECK(*r.dual_route_max_rel <= 1e-12);
    // literal sign mode: softer inclusion fails negative definiteness -> warned
    REQUIRE(r.ctilde_definiteness.has_value());
    CHECK_FALSE(r.ctilde_definiteness->negative_definite);
    bool warned = false;
    for (const auto &w : r.warnings) warned |= w.code == "negative_definiteness_conflict";
    CHECK(warned);
    CHECK_FALSE(r.definiteness.positive_definite);

    BoxSphereCase ce = c;
    ce.erratum_sign = true;
    auto re = closed_form_case(ce);
    CHECK(*re.dual_route_max_rel <= 1e-12);
    CHECK(re.ctilde_definiteness->negative_definite);
    CHECK(re.definiteness.positive_definite);
    CHECK(re.warnings.empty());
    // spherical inertia of the cube: isotropic nonlocal response
    CHECK(re.aeq_class == SymmetryClass::Isotropic);
}

TEST_CASE("closed form: square with elliptical hole") {
    SquareEllipseCase c{0.0, 1.0, 1.0, 0.5, 3.0};
    auto lit = square_ellipse_params(c);
    CHECK(lit.a2[0] == doctest::Approx(-M_PI / 24).epsilon(1e-14));
    CHECK(lit.a4[0] == doctest::Approx(M_PI / 8).epsilon(1e-14));
    CHECK(lit.a5[0] == lit.a4[0]);
    CHECK(*lit.a6 == doctest::Approx(-M_PI / 32).epsilon(1e-14));
    CHECK(*lit.a9 == doctest::Approx(-M_PI / 16).epsilon(1e-14));

    auto r = closed_form_case(c);
    CHECK(*r.dual_route_max_rel <= 1e-12);
    CHECK(r.aeq_class == SymmetryClass::Orthotropic);
    CHECK(*r.b_class == SymmetryClass::Isotropic);
    CHECK(*r.ctilde_class == SymmetryClass::Orthotropic);
    CHECK(r.symmetry_intersection_consistent);

    CHECK_THROWS_AS(square_ellipse_params(SquareEllipseCase{0, 1, 1, 1.5, 3.0}), ModelError);
    CHECK_THROWS_AS(square_ellipse_params(SquareEllipseCase{0, 1, 2.0, 0.5, 3.0}), ModelError);
}

TEST_CASE("closed form: aligned cracks") {
    SquareCrackCase c{1.0, 1.0, 1.0, std::nullopt};
    auto lit = square_crack_params(c);
    CHECK(lit.a2[0] == doctest::Approx(3 * M_PI / 32).epsilon(1e-14));
    CHECK(lit.a4[0] == doctest::Approx(3 * M_PI / 32).epsilon(1e-14));
    CHECK(*lit.a6 == doctest::Approx(-M_PI / 16).epsilon(1e-14));
    CHECK(*lit.a9 == doctest::Approx(-M_PI / 8).epsilon(1e-14));

    auto r = closed_form_case(c);
    CHECK(r.f == 0.0);
    CHECK_FALSE(r.ctilde.has_value());
    REQUIRE(r.params.has_value());
    CHECK(r.params->fit_residual <= 1e-13);
    // thin-ellipse chain agrees with the limit values
    CHECK(*r.dual_route_max_rel <= 1e-6);
    CHECK(r.aeq_class == SymmetryClass::Orthotropic);
}

TEST_CASE("analyze: symmetry labels across microstructures") {
    // soft circular inclusion in a square: everything isotropic
    auto iso = analyze(Microstructure::create(Shape(Rectangle{1, 1}), Shape(Circle{0.1}),
                                              Material{1.0, 1.0},
                                              Material{0.2, 0.2}));
    CHECK(iso.aeq_class == SymmetryClass::Isotropic);
    CHECK(*iso.ctilde_class == SymmetryClass::Isotropic);
    CHECK(*iso.b_class == SymmetryClass::Isotropic);
    CHECK(iso.symmetry_intersection_consistent);

    // the same inclusion in a rectangle: locally isotropic, nonlocally orthotropic
    auto ortho = analyze(Microstructure::create(Shape(Rectangle{2, 1}), Shape(Circle{0.1}),
                                                Material{1.0, 1.0}, Material{0.2, 0.2}));
    CHECK(*ortho.ctilde_class == SymmetryClass::Isotropic);
    CHECK(*ortho.b_class == SymmetryClass::Orthotropic);
    CHECK(ortho.aeq_class == SymmetryClass::Orthotropic);
    CHECK(ortho.symmetry_intersection_consistent);

    // elliptical hole in a square: orthotropy enters through the discrepancy
    auto ell = analyze(Microstructure::create(Shape(Rectangle{2, 2}), Shape(Ellipse{0.2, 0.1}),
                                              Material{0.0, 1.0}, VoidPhase{}));
    CHECK(*ell.ctilde_class == SymmetryClass::Orthotropic);
    CHECK(*ell.b_class == SymmetryClass::Isotropic);
    CHECK(ell.aeq_class == SymmetryClass::Orthotropic);

    // identical phases: zero response
    auto zero = analyze(Microstructure::create(Shape(Rectangle{1, 1}), Shape(Circle{0.1}),
                                               Material{1.0, 1.0}, Material{1.0, 1.0}));
    CHECK(zero.aeq.max_abs() == 0.0);
    CHECK(zero.aeq_class == SymmetryClass::Isotropic);

    // stiff inclusion: response is not positive definite, reported not warned
    auto stiff = analyze(Microstructure::create(Shape(Rectangle{1, 1}), Shape(Circle{0.1}),
                                                Material{1.0, 1.0}, Material{3.0, 3.0}));
    CHECK_FALSE(stiff.definiteness.positive_definite);
    CHECK(stiff.warnings.empty());

    // unsupported inclusion shape for the geometric pipeline
    Polygon tri;
    tri.vertices = {{-0.1, -0.1}, {0.2, -0.1}, {-0.1, 0.2}};
    CHECK_THROWS_AS(analyze(Microstructure::create(Shape(Rectangle{2, 2}), Shape(tri),
                                                   Material{1.0, 1.0}, VoidPhase{})),
                    ModelError);
}
