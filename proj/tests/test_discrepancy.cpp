#include <doctest.h>

#include <cmath>
#include <random>

#include "sgehom/discrepancy.hpp"
#include "sgehom/errors.hpp"

using namespace sgehom;

namespace {
double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
}
}  // namespace

TEST_CASE("from_effective recovers the slope") {
    auto c1 = make_isotropic_elastic(1.0, 1.0, 2);
    CHECK(from_effective(c1, c1, 0.01).max_abs() == 0.0);

    auto x = make_isotropic_elastic(-0.3, 0.7, 2);
    const double f = 0.02;
    auto c_eq = c1 + x * f;
    auto rec = from_effective(c_eq, c1, f);
    CHECK((rec - x).max_abs() <= 1e-13 * x.max_abs());

    // tiny but positive f still inverts to machine precision
    auto rec2 = from_effective(c1 + x * 1e-12, c1, 1e-12);
    CHECK((rec2 - x).max_abs() <= 1e-3 * x.max_abs());  // limited by cancellation in C_eq - C1

    // isotropic inputs identify isotropic parameters
    auto s = identify_structure(rec);
    CHECK(s.lambda_t == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(s.mu_t == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.residual <= 1e-13);

    CHECK_THROWS_AS(from_effective(c1, c1, 0.0), ModelError);
}

TEST_CASE("circular inclusion closed form") {
    auto v = circular_inclusion(1.0, 1.0, 0.0, 0.0);  // void
    CHECK(v.lambda_t == 0.0);
    CHECK(v.mu_t == -2.0);
    CHECK(v.K() == -2.0);

    auto same = circular_inclusion(2.0, 1.5, 2.0, 1.5);
    CHECK(same.lambda_t == 0.0);
    CHECK(same.mu_t == 0.0);

    // softer elastic inclusion, evaluated term by term:
    // bulk term (K1-K2)(K1+mu1)/(K2+mu1) = 1*3/2, shear term 1.5/4
    auto d = circular_inclusion(2.0, 1.0, 1.0, 0.5);
    CHECK(d.lambda_t == doctest::Approx(-1.125).epsilon(1e-15));
    CHECK(d.mu_t == doctest::Approx(-0.375).epsilon(1e-15));

    // sign law: softer in both moduli gives negative K and mu discrepancies
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        const double K1 = uniform(rng, 0.2, 5.0), mu1 = uniform(rng, 0.2, 5.0);
        const double K2 = uniform(rng, 0.0, 1.0) * K1 * 0.999;
        const double mu2 = uniform(rng, 0.0, 1.0) * mu1 * 0.999;
        auto r = is_negative_definite(circular_inclusion(K1, mu1, K2, mu2));
        CHECK(r.K_tilde < 0.0);
        CHECK(r.mu_tilde < 0.0);
        CHECK(r.negative_definite);
    }

    // hole consistency: finite for every positive matrix
    for (int it = 0; it < 50; ++it) {
        const double K1 = uniform(rng, 0.01, 10.0), mu1 = uniform(rng, 0.01, 10.0);
        auto h = circular_inclusion(K1, mu1, 0.0, 0.0);
        CHECK(std::isfinite(h.lambda_t));
        CHECK(std::isfinite(h.mu_t));
    }

    CHECK_THROWS_AS(circular_inclusion(0.0, 1.0, 0.0, 0.0), ModelError);
    CHECK_THROWS_AS(circular_inclusion(1.0, 1.0, -0.1, 0.0), ModelError);
}

TEST_CASE("spherical inclusion: literal and erratum modes") {
    for (bool flag : {false, true}) {
        auto same = spherical_inclusion(2.0, 1.5, 2.0, 1.5, flag);
        CHECK(same.lambda_t == 0.0);
        CHECK(same.mu_t == 0.0);
    }

    // literal published expression: a void gives a positive shear discrepancy
    auto lit = spherical_inclusion(2.0, 1.0, 0.0, 0.0, false);
    CHECK(lit.mu_t == doctest::Approx(50.0 / 26.0).epsilon(1e-14));
    CHECK_FALSE(is_negative_definite(lit).negative_definite);

    // literal softer elastic inclusion: bracket = -10/7 + 50/114
    auto d = spherical_inclusion(2.0, 1.0, 1.0, 0.5, false);
    const double bracket = -10.0 / 7.0 + 50.0 / 114.0;
    CHECK(-d.lambda_t - 2.0 / 3.0 * d.mu_t ==
          doctest::Approx(-10.0 / 7.0).epsilon(1e-13));  // K contribution
    CHECK(d.lambda_t == doctest::Approx(-bracket).epsilon(1e-13));
    // unit cube, r = 0.1: a2^[1] = (pi r^3 / 18) * bracket
    const double a2_1 = M_PI * 1e-3 / 18.0 * bracket;
    CHECK(a2_1 == doctest::Approx(-1.7279e-4).epsilon(1e-4));

    // erratum mode restores the classical dilute values and definiteness
    auto e = spherical_inclusion(2.0, 1.0, 1.0, 0.5, true);
    CHECK(e.K() == doctest::Approx(-10.0 / 7.0).epsilon(1e-14));
    CHECK(e.mu_t == doctest::Approx(-25.0 / 38.0).epsilon(1e-14));
    CHECK(is_negative_definite(e).negative_definite);

    // classical void check under the erratum: mu_t = -5 mu1 (3K1+4mu1)/(9K1+8mu1)
    auto ev = spherical_inclusion(2.0, 1.0, 0.0, 0.0, true);
    CHECK(ev.mu_t == doctest::Approx(-50.0 / 26.0).epsilon(1e-14));
    CHECK(ev.K() == doctest::Approx(-10.0 * 2.0 / 4.0 * 1.0).epsilon(1e-14));  // -(3K1+4mu1)K1/(4mu1)
}

TEST_CASE("elliptical hole discrepancy") {
    auto c = elliptic_hole(0.0, 1.0, 1.0);
    CHECK(c.lambda_t == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.mu_t == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(c.xi_t == 0.0);
    CHECK(c.omega_t == 0.0);
    CHECK(c.isotropic());
    CHECK(c.K() == doctest::Approx(-2.0).epsilon(1e-15));

    auto h = elliptic_hole(0.0, 1.0, 0.5);
    CHECK(h.lambda_t == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h.mu_t == doctest::Approx(-6.0).epsilon(1e-15));
    CHECK(h.xi_t == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(h.omega_t == doctest::Approx(3.0).epsilon(1e-15));

    // circular limit kills the orthotropic terms exactly for any moduli
    std::mt19937_64 rng(9);
    for (int it = 0; it < 50; ++it) {
        auto r = elliptic_hole(uniform(rng, -0.4, 3.0), uniform(rng, 0.3, 3.0), 1.0);
        CHECK(r.xi_t == 0.0);
        CHECK(r.omega_t == 0.0);
    }

    CHECK_THROWS_AS(elliptic_hole(0.0, 1.0, 0.0), ModelError);
    CHECK_THROWS_AS(elliptic_hole(0.0, 1.0, 1.5), ModelError);
    CHECK_THROWS_AS(elliptic_hole(0.0, 0.0, 0.5), ModelError);
}

TEST_CASE("crack products and the thin-ellipse limit") {
    auto c = crack_products(1.0, 1.0, 1.0);
    CHECK(c.a2 == doctest::Approx(3 * M_PI / 32).epsilon(1e-15));
    CHECK(c.a4 == doctest::Approx(3 * M_PI / 32).epsilon(1e-15));
    CHECK(c.a5 == c.a4);
    CHECK(c.a6 == doctest::Approx(-M_PI / 16).epsilon(1e-15));
    CHECK(c.a9 == doctest::Approx(-M_PI / 8).epsilon(1e-15));

    auto c0 = crack_products(0.0, 1.0, 1.0);
    CHECK(c0.a2 == 0.0);
    CHECK(c0.a4 == doctest::Approx(M_PI / 12).epsilon(1e-15));
    CHECK(c0.a6 == doctest::Approx(-M_PI / 24).epsilon(1e-15));
    CHECK(c0.a9 == doctest::Approx(-M_PI / 12).epsilon(1e-15));

    // Lambda -> 0 limit of the elliptic chain in a square RVE: the nonlocal
    // products -f rho^2/2 * (parameter), with f = pi Lambda b1^2 / h^2 and
    // rho^2 = h^2/12, reduce to -pi Lambda b1^2 / 24 * (parameter)
    const double L = 1e-8, b1 = 1.0;
    for (auto [lam1, mu1] : {std::pair{1.0, 1.0}, std::pair{0.3, 0.9}}) {
        auto d = elliptic_hole(lam1, mu1, L);
        const double pref = -M_PI * L * b1 * b1 / 24.0;
        auto lim = crack_products(lam1, mu1, b1);
        const double scale = std::abs(lim.a4);
        CHECK(std::abs(pref * d.lambda_t - lim.a2) <= 1e-6 * std::max(scale, std::abs(lim.a2)));
        CHECK(std::abs(pref * d.mu_t - lim.a4) <= 1e-6 * scale);
        CHECK(std::abs(pref * d.xi_t - lim.a6) <= 1e-6 * scale);
        CHECK(std::abs(pref * d.omega_t - lim.a9) <= 1e-6 * scale);
    }
}

TEST_CASE("full tensors and negative definiteness") {
    auto kernel = to_full_tensor(IsotropicDiscrepancy{2, 0.0, -1.0});
    CHECK(kernel(0, 1, 0, 1) == -1.0);
    CHECK(kernel(0, 0, 0, 0) == -2.0);

    auto iso = to_full_tensor(OrthotropicDiscrepancy{2.0, -4.0, 0.0, 0.0});
    CHECK(classify_symmetry(iso) == SymmetryClass::Isotropic);

    auto ortho = to_full_tensor(OrthotropicDiscrepancy{2.0, -6.0, 1.5, 3.0});
    CHECK(ortho(0, 0, 0, 0) == doctest::Approx(-7.0).epsilon(1e-15));
    CHECK(ortho(0, 1, 0, 1) == doctest::Approx(-4.5).epsilon(1e-15));
    CHECK(classify_symmetry(ortho) == SymmetryClass::Orthotropic);

    auto s = identify_structure(ortho);
    CHECK(s.lambda_t == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.mu_t == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(s.xi_t == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s.omega_t == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.residual <= 1e-14);

    auto nd = is_negative_definite(IsotropicDiscrepancy{2, 0.0, -2.0});
    CHECK(nd.negative_definite);
    CHECK(nd.K_tilde == -2.0);

    auto nd2 = is_negative_definite(IsotropicDiscrepancy{2, 2.0, -4.0});
    CHECK(nd2.negative_definite);
    CHECK(nd2.K_tilde == -2.0);

    auto nd0 = is_negative_definite(IsotropicDiscrepancy{2, 0.0, 0.0});
    CHECK_FALSE(nd0.negative_definite);
    CHECK(nd0.max_eigenvalue == 0.0);
}
