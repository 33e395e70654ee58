#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sgehom/report.hpp"
#include "sgehom/sweep.hpp"
#include "sgehom/sampling.hpp"
#include "sgehom/verify.hpp"

using namespace sgehom;

namespace {

json load_fixture(const std::string &name) {
    std::ifstream in(std::string(SGEHOM_CONFIG_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

bool has_violation(const ConfigError &e, const std::string &needle) {
    for (const auto &v : e.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("parse: shipped fixtures are valid") {
    for (const char *name :
         {"circle_in_square_void.json", "rect_circle_elastic.json", "box_sphere_soft.json",
          "square_ellipse_hole.json", "square_crack.json", "explicit_ctilde.json"}) {
        auto cfg = parse_config_json(load_fixture(name));
        CHECK((cfg.dimension == 2 || cfg.dimension == 3));
    }
}

TEST_CASE("parse: all violations are reported together") {
    json bad = load_fixture("circle_in_square_void.json");
    bad["typo_key"] = 1;
    bad["dimension"] = 5;
    bad["matrix"] = {{"lambda", 1.0}};  // missing mu
    try {
        parse_config_json(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(e.violations.size() >= 3);
        CHECK(has_violation(e, "typo_key"));
        CHECK(has_violation(e, "dimension"));
    }
}

TEST_CASE("parse: inconsistent f names both values") {
    json bad = load_fixture("circle_in_square_void.json");
    bad["f"] = 0.02;  // geometry gives pi/100
    try {
        parse_config_json(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(has_violation(e, "0.02"));
        CHECK(has_violation(e, "0.0314"));
    }

    json good = load_fixture("circle_in_square_void.json");
    good["f"] = M_PI * 0.01;
    CHECK(parse_config_json(good).f.has_value());
}

TEST_CASE("parse: ellipse orientation guidance") {
    json bad = load_fixture("square_ellipse_hole.json");
    bad["inclusion"]["shape"]["b1"] = 0.5;
    bad["inclusion"]["shape"]["b2"] = 1.0;
    try {
        parse_config_json(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(has_violation(e, "reorient"));
    }
}

TEST_CASE("parse: provenance exclusivity and plane strain") {
    json bad = load_fixture("circle_in_square_void.json");
    bad["ctilde"] = {{"lambda_tilde", 0.0}, {"mu_tilde", -1.0}};
    try {
        parse_config_json(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(has_violation(e, "explicit_ctilde"));
    }

    json stress = load_fixture("circle_in_square_void.json");
    stress["regime"] = "plane_stress";
    CHECK_THROWS_AS(parse_config_json(stress), ConfigError);

    json strain = load_fixture("circle_in_square_void.json");
    strain["regime"] = "plane_strain";
    CHECK_NOTHROW(parse_config_json(strain));
}

TEST_CASE("materials: modulus conversions") {
    auto m1 = material_from_json(json{{"K", 2.0}, {"mu", 1.0}}, 2);
    CHECK(m1.lambda == 1.0);
    auto m2 = material_from_json(json{{"K", 2.0}, {"mu", 1.5}}, 3);
    CHECK(m2.lambda == 1.0);
    auto m3 = material_from_json(json{{"E", 2.5}, {"nu", 0.25}}, 2);
    CHECK(m3.mu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m3.lambda == doctest::Approx(1.0).epsilon(1e-15));
    // nu = lambda / (2 (lambda + mu)) round-trips
    CHECK(m3.lambda / (2 * (m3.lambda + m3.mu)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(material_from_json(json{{"E", 1.0}, {"nu", 0.5}}, 2), ConfigError);
}

TEST_CASE("homogenize report: worked example and shape") {
    auto cfg = parse_config_json(load_fixture("rect_circle_elastic.json"));
    auto rep = run_homogenize(cfg);

    // literal bracket (K-term 1.5, mu-term 0.375): a2^[1] = (pi 0.01/24) 2 (1.125)
    const double a2_expect = M_PI * 0.01 / 24 * 2 * 1.125;
    const double a2 = rep.doc["params"]["per_axis"][0]["a2"].get<double>();
    CHECK(a2 == doctest::Approx(a2_expect).epsilon(1e-12));
    const double a2_2 = rep.doc["params"]["per_axis"][1]["a2"].get<double>();
    CHECK(a2_2 == doctest::Approx(0.25 * a2_expect).epsilon(1e-12));

    // top-level keys, in order
    std::vector<std::string> keys;
    for (const auto &item : rep.doc.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"config", "inertia", "ctilde", "aeq", "params",
                                           "definiteness", "symmetry", "warnings",
                                           "verification"});

    CHECK(rep.doc["symmetry"]["aeq"] == "orthotropic");
    CHECK(rep.doc["symmetry"]["ctilde"] == "isotropic");
    CHECK(rep.doc["definiteness"]["positive_definite"] == true);
    CHECK(rep.doc["verification"]["closed_form_vs_generic_max_rel"].get<double>() <= 1e-12);
    CHECK(rep.doc["inertia"]["sum_rule_residual"].get<double>() == 0.0);

    // determinism: identical config yields a byte-identical document
    auto rep2 = run_homogenize(cfg);
    CHECK(rep.doc.dump(2) == rep2.doc.dump(2));
}

TEST_CASE("homogenize report: identical phases and stiff inclusions") {
    json same = load_fixture("circle_in_square_void.json");
    same["inclusion"]["material"] = {{"lambda", 1.0}, {"mu", 1.0}};
    auto rep = run_homogenize(parse_config_json(same));
    CHECK(rep.result.aeq.max_abs() == 0.0);
    CHECK(rep.doc["symmetry"]["aeq"] == "isotropic");

    json stiff = load_fixture("circle_in_square_void.json");
    stiff["inclusion"]["material"] = {{"lambda", 3.0}, {"mu", 3.0}};
    auto rep2 = run_homogenize(parse_config_json(stiff));
    CHECK(rep2.doc["definiteness"]["positive_definite"] == false);
}

TEST_CASE("homogenize report: explicit ctilde and from_effective") {
    auto cfg = parse_config_json(load_fixture("explicit_ctilde.json"));
    auto rep = run_homogenize(cfg);
    // B = diag(1/3, 1/12), f = 0.01, mu_t = -1: a4^[1] = 1/600
    CHECK(rep.doc["params"]["per_axis"][0]["a4"].get<double>() ==
          doctest::Approx(1.0 / 600).epsilon(1e-11));
    CHECK(rep.doc["ctilde"]["mu_tilde"].get<double>() == -1.0);
    CHECK(rep.doc["ctilde"]["negative_definite"] == true);

    // the same discrepancy through effective moduli: C_eq = C1 + f*Ct
    json fe;
    fe["schema_version"] = 1;
    fe["dimension"] = 2;
    fe["model"] = "from_effective";
    fe["rve"] = {{"shape", {{"type", "rectangle"}, {"h1", 2.0}, {"h2", 1.0}}}};
    fe["matrix"] = {{"lambda", 1.0}, {"mu", 1.0}};
    fe["effective"] = {{"lambda", 1.0}, {"mu", 1.0 + 0.01 * -1.0}};
    fe["f"] = 0.01;
    auto rep2 = run_homogenize(parse_config_json(fe));
    CHECK(rep2.doc["ctilde"]["mu_tilde"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rep2.doc["params"]["per_axis"][0]["a4"].get<double>() ==
          doctest::Approx(1.0 / 600).epsilon(1e-9));
}

TEST_CASE("crack report has no finite discrepancy") {
    auto rep = run_homogenize(parse_config_json(load_fixture("square_crack.json")));
    CHECK(rep.doc["ctilde"].is_null());
    CHECK(rep.doc["inertia"]["f"].get<double>() == 0.0);
    CHECK(rep.doc["params"]["per_axis"][0]["a2"].get<double>() ==
          doctest::Approx(3 * M_PI / 32).epsilon(1e-12));
    CHECK(rep.doc["params"]["a9"].get<double>() ==
          doctest::Approx(2.0 * rep.doc["params"]["a6"].get<double>()).epsilon(1e-12));
}

TEST_CASE("dilute threshold warning") {
    json dense = load_fixture("circle_in_square_void.json");
    dense["inclusion"]["shape"]["r"] = 0.3;
    auto rep = run_homogenize(parse_config_json(dense));
    bool warned = false;
    for (const auto &w : rep.doc["warnings"])
        warned |= w["code"] == "dilute_threshold_exceeded";
    CHECK(warned);
}

TEST_CASE("erratum flag surfaces the definiteness conflict") {
    auto cfg = parse_config_json(load_fixture("box_sphere_soft.json"));
    auto rep = run_homogenize(cfg);
    bool warned = false;
    for (const auto &w : rep.doc["warnings"])
        warned |= w["code"] == "negative_definiteness_conflict";
    CHECK(warned);
    CHECK(rep.doc["ctilde"]["negative_definite"] == false);

    auto cfg2 = cfg;
    cfg2.erratum_sign_3d = true;
    auto rep2 = run_homogenize(cfg2);
    CHECK(rep2.doc["warnings"].empty());
    CHECK(rep2.doc["ctilde"]["negative_definite"] == true);
    CHECK(rep2.doc["definiteness"]["positive_definite"] == true);
}

TEST_CASE("inertia and classify documents") {
    auto cfg = parse_config_json(load_fixture("rect_circle_elastic.json"));
    auto inertia = run_inertia(cfg);
    CHECK(inertia["inertia"]["rve"]["B"]["components"][0].get<double>() ==
          doctest::Approx(4.0 / 12).epsilon(1e-15));
    CHECK(inertia["inertia"]["rve"]["static_moment"][0].get<double>() == 0.0);

    auto classify = run_classify(cfg);
    CHECK(classify["symmetry"]["b_rve"] == "orthotropic");
    CHECK(classify["symmetry"]["intersection_consistent"] == true);

    auto ct = run_ctilde(cfg);
    CHECK(ct["ctilde"]["lambda_tilde"].get<double>() == doctest::Approx(-1.125).epsilon(1e-13));
}

TEST_CASE("sweep: grid, identities and endpoints") {
    SweepSpec spec = parse_sweep_json(load_fixture("sweep_fig3.json"));
    CHECK(spec.lambda_grid.size() == 100);
    CHECK(spec.nu1.size() == 4);
    auto rows = run_sweep(spec);
    CHECK(rows.size() == 400);

    std::ostringstream os;
    write_sweep_csv(rows, os);
    const std::string csv = os.str();
    CHECK(csv.rfind("lambda_ratio,nu1,a2_norm,a4_norm,a6_norm\n", 0) == 0);

    for (const auto &row : rows) {
        CHECK(row.params.a4[0] == row.params.a5[0]);                 // a4 = a5 identically
        CHECK(*row.params.a9 == 2.0 * *row.params.a6);               // a9 = 2 a6 identically
        CHECK(row.a6_norm <= 0.0);
        if (row.lambda_ratio == 1.0) CHECK(row.a6_norm == 0.0);
    }

    // nu1 = 0 (lambda1 = 0), circular limit: a6 vanishes
    SweepSpec tiny{{1.0, 1e-8}, {0.0, 0.25}, 1.0, 1.0};
    auto r2 = run_sweep(tiny);
    CHECK(r2[0].a6_norm == 0.0);
    // crack endpoints: nu1 = 0 -> a2 -> 0, a4 -> pi/12; nu1 = 0.25 -> both 3 pi/32
    CHECK(std::abs(r2[1].a2_norm) <= 1e-6);
    CHECK(r2[1].a4_norm == doctest::Approx(M_PI / 12).epsilon(1e-6));
    CHECK(r2[3].a2_norm == doctest::Approx(3 * M_PI / 32).epsilon(1e-6));
    CHECK(r2[3].a4_norm == doctest::Approx(3 * M_PI / 32).epsilon(1e-6));

    CHECK_THROWS_AS(parse_sweep_json(json{{"schema_version", 1},
                                          {"sweep", {{"lambda_grid", {0.0, 0.5}},
                                                     {"nu1", {0.0}}}}}),
                    ConfigError);
}

TEST_CASE("tensor documents echo components exactly") {
    Sampler sampler(31);
    for (int dim : {2, 3}) {
        auto ct = sampler.elastic_tensor(dim);
        json doc = tensor_json(ct);
        CHECK(doc["order"] == 4);
        auto back = elastic_from_json(json::parse(doc.dump()));
        for (size_t i = 0; i < ct.raw().components().size(); ++i)
            CHECK(back.raw().components()[i] == ct.raw().components()[i]);  // bitwise
    }
}

TEST_CASE("verify: clean pass, injected failure, determinism") {
    VerifyOptions opts;
    opts.seed = 777;
    auto report = run_verify(opts);
    CHECK(report.all_passed);

    auto again = run_verify(opts);
    REQUIRE(again.checks.size() == report.checks.size());
    for (size_t i = 0; i < report.checks.size(); ++i)
        CHECK(report.checks[i].max_residual == again.checks[i].max_residual);

    VerifyOptions bad = opts;
    bad.inject_aeq_perturbation = true;
    auto failed = run_verify(bad);
    CHECK_FALSE(failed.all_passed);
    bool annihilation_failed = false;
    for (const auto &c : failed.checks)
        if (c.name == "annihilation_identity") annihilation_failed = !c.passed;
    CHECK(annihilation_failed);
}
