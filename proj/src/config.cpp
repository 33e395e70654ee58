#include "sgehom/config.hpp"

#include "sgehom/discrepancy.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace sgehom {

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::Generic: return "generic";
        case ModelKind::RectCircle: return "rect_circle";
        case ModelKind::BoxSphere: return "box_sphere";
        case ModelKind::SquareEllipse: return "square_ellipse";
        case ModelKind::SquareCrack: return "square_crack";
        case ModelKind::ExplicitCtilde: return "explicit_ctilde";
        case ModelKind::FromEffective: return "from_effective";
    }
    return "generic";
}

namespace {

using Issues = std::vector<std::string>;

void check_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where,
                Issues &issues) {
    for (const auto &item : obj.items())
        if (!allowed.count(item.key()))
            issues.push_back("unknown key \"" + item.key() + "\" in " + where);
}

// fetch a finite number, recording a violation otherwise
std::optional<double> get_number(const json &obj, const std::string &key,
                                 const std::string &where, Issues &issues) {
    if (!obj.contains(key)) {
        issues.push_back("missing required field \"" + key + "\" in " + where);
        return std::nullopt;
    }
    if (!obj.at(key).is_number()) {
        issues.push_back("field \"" + key + "\" in " + where + " must be a number");
        return std::nullopt;
    }
    const double v = obj.at(key).get<double>();
    if (!std::isfinite(v)) {
        issues.push_back("field \"" + key + "\" in " + where + " must be finite");
        return std::nullopt;
    }
    return v;
}

std::optional<Shape> parse_shape(const json &spec, const std::string &where, Issues &issues) {
    if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string()) {
        issues.push_back(where + " must be an object with a string \"type\"");
        return std::nullopt;
    }
    const std::string type = spec.at("type").get<std::string>();
    auto num = [&](const char *key) { return get_number(spec, key, where, issues); };
    try {
        if (type == "rectangle") {
            check_keys(spec, {"type", "h1", "h2"}, where, issues);
            auto h1 = num("h1"), h2 = num("h2");
            if (h1 && h2) return Shape(Rectangle{*h1, *h2});
        } else if (type == "square") {
            check_keys(spec, {"type", "h"}, where, issues);
            if (auto h = num("h")) return Shape(Rectangle{*h, *h});
        } else if (type == "box") {
            check_keys(spec, {"type", "h1", "h2", "h3"}, where, issues);
            auto h1 = num("h1"), h2 = num("h2"), h3 = num("h3");
            if (h1 && h2 && h3) return Shape(Box{*h1, *h2, *h3});
        } else if (type == "cube") {
            check_keys(spec, {"type", "h"}, where, issues);
            if (auto h = num("h")) return Shape(Box{*h, *h, *h});
        } else if (type == "circle") {
            check_keys(spec, {"type", "r"}, where, issues);
            if (auto r = num("r")) return Shape(Circle{*r});
        } else if (type == "ellipse") {
            check_keys(spec, {"type", "b1", "b2"}, where, issues);
            auto b1 = num("b1"), b2 = num("b2");
            if (b1 && b2) return Shape(Ellipse{*b1, *b2});
        } else if (type == "sphere") {
            check_keys(spec, {"type", "r"}, where, issues);
            if (auto r = num("r")) return Shape(Sphere{*r});
        } else if (type == "ellipsoid") {
            check_keys(spec, {"type", "b1", "b2", "b3"}, where, issues);
            auto b1 = num("b1"), b2 = num("b2"), b3 = num("b3");
            if (b1 && b2 && b3) return Shape(Ellipsoid{*b1, *b2, *b3});
        } else if (type == "polygon") {
            check_keys(spec, {"type", "vertices"}, where, issues);
            if (!spec.contains("vertices") || !spec.at("vertices").is_array()) {
                issues.push_back(where + ": polygon needs a \"vertices\" array");
                return std::nullopt;
            }
            Polygon p;
            for (const auto &v : spec.at("vertices")) {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
                    issues.push_back(where + ": polygon vertices must be [x, y] pairs");
                    return std::nullopt;
                }
                p.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
            }
            return Shape(std::move(p));
        } else {
            issues.push_back(where + ": unknown shape type \"" + type + "\"");
        }
    } catch (const ModelError &e) {
        issues.push_back(where + ": " + e.what());
    }
    return std::nullopt;
}

std::optional<ElasticTensor> parse_tensor4(const json &spec, const std::string &where,
                                           Issues &issues) {
    if (!spec.is_object()) {
        issues.push_back(where + " must be an object");
        return std::nullopt;
    }
    check_keys(spec, {"dim", "order", "components"}, where, issues);
    if (!spec.contains("dim") || !spec.contains("order") || !spec.contains("components")) {
        issues.push_back(where + " needs \"dim\", \"order\" and \"components\"");
        return std::nullopt;
    }
    const int dim = spec.at("dim").is_number_integer() ? spec.at("dim").get<int>() : -1;
    const int order = spec.at("order").is_number_integer() ? spec.at("order").get<int>() : -1;
    if (dim != 2 && dim != 3) {
        issues.push_back(where + ": dim must be 2 or 3");
        return std::nullopt;
    }
    if (order != 4) {
        issues.push_back(where + ": order must be 4");
        return std::nullopt;
    }
    const auto &comp = spec.at("components");
    const size_t expected = size_t(dim) * size_t(dim) * size_t(dim) * size_t(dim);
    if (!comp.is_array() || comp.size() != expected) {
        issues.push_back(where + ": components must be a flat array of " +
                         std::to_string(expected) + " numbers in row-major order");
        return std::nullopt;
    }
    Array4 raw(dim);
    for (size_t i = 0; i < expected; ++i) {
        if (!comp[i].is_number()) {
            issues.push_back(where + ": components must be numbers");
            return std::nullopt;
        }
        raw.components()[i] = comp[i].get<double>();
    }
    try {
        return ElasticTensor::from_components(raw);
    } catch (const std::invalid_argument &e) {
        issues.push_back(where + ": " + e.what());
        return std::nullopt;
    }
}

}  // namespace

Material material_from_json(const json &spec, int dim) {
    Issues issues;
    if (!spec.is_object()) throw ConfigError({"material spec must be an object"});
    const bool has_lambda = spec.contains("lambda"), has_K = spec.contains("K"),
               has_E = spec.contains("E");
    if (int(has_lambda) + int(has_K) + int(has_E) != 1)
        throw ConfigError({"material spec must contain exactly one of lambda/mu, K/mu, E/nu"});
    if (has_lambda) {
        check_keys(spec, {"lambda", "mu"}, "material", issues);
        auto l = get_number(spec, "lambda", "material", issues);
        auto m = get_number(spec, "mu", "material", issues);
        if (!issues.empty()) throw ConfigError(std::move(issues));
        return Material{*l, *m};
    }
    if (has_K) {
        check_keys(spec, {"K", "mu"}, "material", issues);
        auto k = get_number(spec, "K", "material", issues);
        auto m = get_number(spec, "mu", "material", issues);
        if (!issues.empty()) throw ConfigError(std::move(issues));
        const double lambda = dim == 2 ? *k - *m : *k - 2.0 * *m / 3.0;
        return Material{lambda, *m};
    }
    check_keys(spec, {"E", "nu"}, "material", issues);
    auto e = get_number(spec, "E", "material", issues);
    auto nu = get_number(spec, "nu", "material", issues);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    if (*nu <= -1.0 || *nu >= 0.5) throw ConfigError({"material nu must lie in (-1, 0.5)"});
    const double mu = *e / (2.0 * (1.0 + *nu));
    const double lambda = *e * *nu / ((1.0 + *nu) * (1.0 - 2.0 * *nu));
    return Material{lambda, mu};
}

JobConfig parse_config_json(const json &doc) {
    Issues issues;
    JobConfig cfg;
    cfg.echo = doc;

    if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
    check_keys(doc,
               {"schema_version", "dimension", "model", "regime", "rve", "inclusion", "matrix",
                "f", "crack", "ctilde", "effective", "flags"},
               "the configuration", issues);

    if (!doc.contains("schema_version") || doc.at("schema_version") != 1)
        issues.push_back("schema_version must be present and equal to 1");

    if (auto d = get_number(doc, "dimension", "the configuration", issues)) {
        cfg.dimension = int(*d);
        if (cfg.dimension != 2 && cfg.dimension != 3)
            issues.push_back("dimension must be 2 or 3");
    }

    if (doc.contains("regime")) {
        if (doc.at("regime") != "plane_strain")
            issues.push_back("only the plane_strain regime is supported in 2D");
    }

    static const std::map<std::string, ModelKind> kModels = {
        {"generic", ModelKind::Generic},
        {"rect_circle", ModelKind::RectCircle},
        {"box_sphere", ModelKind::BoxSphere},
        {"square_ellipse", ModelKind::SquareEllipse},
        {"square_crack", ModelKind::SquareCrack},
        {"explicit_ctilde", ModelKind::ExplicitCtilde},
        {"from_effective", ModelKind::FromEffective},
    };
    bool model_ok = false;
    if (!doc.contains("model") || !doc.at("model").is_string() ||
        !kModels.count(doc.at("model").get<std::string>())) {
        issues.push_back("model must be one of generic, rect_circle, box_sphere, square_ellipse, "
                         "square_crack, explicit_ctilde, from_effective");
    } else {
        cfg.model = kModels.at(doc.at("model").get<std::string>());
        model_ok = true;
    }

    // geometry
    if (doc.contains("rve")) {
        const auto &rve = doc.at("rve");
        if (rve.is_object()) check_keys(rve, {"shape"}, "rve", issues);
        if (rve.is_object() && rve.contains("shape"))
            cfg.rve = parse_shape(rve.at("shape"), "rve.shape", issues);
        else
            issues.push_back("rve must be an object holding a \"shape\"");
    }
    if (doc.contains("inclusion")) {
        const auto &inc = doc.at("inclusion");
        if (inc.is_object()) check_keys(inc, {"shape", "material"}, "inclusion", issues);
        if (inc.is_object() && inc.contains("shape"))
            cfg.inclusion = parse_shape(inc.at("shape"), "inclusion.shape", issues);
        else
            issues.push_back("inclusion must be an object holding a \"shape\"");
        if (inc.is_object() && inc.contains("material")) {
            const auto &mat = inc.at("material");
            if (mat.is_string() && mat == "void") {
                cfg.inclusion_material = VoidPhase{};
            } else {
                try {
                    cfg.inclusion_material = material_from_json(mat, cfg.dimension);
                } catch (const ConfigError &e) {
                    for (const auto &v : e.violations) issues.push_back("inclusion " + v);
                }
            }
        }
    }
    if (doc.contains("matrix")) {
        try {
            cfg.matrix = material_from_json(doc.at("matrix"), cfg.dimension);
        } catch (const ConfigError &e) {
            for (const auto &v : e.violations) issues.push_back("matrix " + v);
        }
    }
    if (doc.contains("f")) {
        if (auto f = get_number(doc, "f", "the configuration", issues)) {
            if (*f < 0.0 || *f >= 1.0)
                issues.push_back("f must lie in [0, 1)");
            else
                cfg.f = *f;
        }
    }
    if (doc.contains("crack")) {
        const auto &cr = doc.at("crack");
        if (cr.is_object()) {
            check_keys(cr, {"b1"}, "crack", issues);
            if (auto b1 = get_number(cr, "b1", "crack", issues)) {
                if (*b1 > 0.0)
                    cfg.crack = CrackSpec{*b1};
                else
                    issues.push_back("crack.b1 must be positive");
            }
        } else {
            issues.push_back("crack must be an object with \"b1\"");
        }
    }
    if (doc.contains("ctilde")) {
        const auto &ct = doc.at("ctilde");
        if (ct.is_object() && ct.contains("components")) {
            cfg.ctilde = parse_tensor4(ct, "ctilde", issues);
        } else if (ct.is_object()) {
            check_keys(ct, {"lambda_tilde", "mu_tilde", "xi_tilde", "omega_tilde"}, "ctilde",
                       issues);
            auto lt = get_number(ct, "lambda_tilde", "ctilde", issues);
            auto mt = get_number(ct, "mu_tilde", "ctilde", issues);
            double xi = 0.0, om = 0.0;
            if (ct.contains("xi_tilde"))
                xi = get_number(ct, "xi_tilde", "ctilde", issues).value_or(0.0);
            if (ct.contains("omega_tilde"))
                om = get_number(ct, "omega_tilde", "ctilde", issues).value_or(0.0);
            if ((xi != 0.0 || om != 0.0) && cfg.dimension != 2)
                issues.push_back("ctilde xi_tilde/omega_tilde are only defined in 2D");
            if (lt && mt) {
                if (cfg.dimension == 2)
                    cfg.ctilde = to_full_tensor(OrthotropicDiscrepancy{*lt, *mt, xi, om});
                else
                    cfg.ctilde = ElasticTensor::isotropic(*lt, *mt, 3);
            }
        } else {
            issues.push_back("ctilde must be an object (parameters or a full tensor)");
        }
    }
    if (doc.contains("effective")) {
        const auto &ef = doc.at("effective");
        if (ef.is_object() && ef.contains("components")) {
            cfg.effective = parse_tensor4(ef, "effective", issues);
        } else if (ef.is_object() && ef.contains("lambda")) {
            try {
                Material m = material_from_json(ef, cfg.dimension);
                cfg.effective = ElasticTensor::isotropic(m.lambda, m.mu, cfg.dimension);
            } catch (const ConfigError &e) {
                for (const auto &v : e.violations) issues.push_back("effective " + v);
            }
        } else {
            issues.push_back("effective must hold either lambda/mu or a full tensor");
        }
    }
    if (doc.contains("flags")) {
        const auto &fl = doc.at("flags");
        if (!fl.is_object()) {
            issues.push_back("flags must be an object");
        } else {
            check_keys(fl, {"erratum_sign_3d", "seed", "dilute_threshold", "classify_tol",
                            "fit_tol"},
                       "flags", issues);
            if (fl.contains("erratum_sign_3d")) {
                if (fl.at("erratum_sign_3d").is_boolean())
                    cfg.erratum_sign_3d = fl.at("erratum_sign_3d").get<bool>();
                else
                    issues.push_back("flags.erratum_sign_3d must be a boolean");
            }
            if (fl.contains("seed")) {
                if (fl.at("seed").is_number_unsigned() || fl.at("seed").is_number_integer())
                    cfg.seed = fl.at("seed").get<std::uint64_t>();
                else
                    issues.push_back("flags.seed must be a non-negative integer");
            }
            if (fl.contains("dilute_threshold"))
                cfg.tol.dilute_threshold =
                    get_number(fl, "dilute_threshold", "flags", issues).value_or(0.1);
            if (fl.contains("classify_tol"))
                cfg.tol.classify = get_number(fl, "classify_tol", "flags", issues).value_or(1e-9);
            if (fl.contains("fit_tol"))
                cfg.tol.fit_certify = get_number(fl, "fit_tol", "flags", issues).value_or(1e-10);
        }
    }

    // cross-field rules
    if (model_ok) {
        auto require = [&](bool ok, const std::string &msg) {
            if (!ok) issues.push_back(msg);
        };
        const std::string model_name = to_string(cfg.model);
        switch (cfg.model) {
            case ModelKind::Generic:
                require(cfg.rve.has_value(), "model generic requires an rve");
                require(cfg.inclusion.has_value(), "model generic requires an inclusion");
                require(cfg.matrix.has_value(), "model generic requires matrix moduli");
                break;
            case ModelKind::RectCircle:
                require(cfg.dimension == 2, "model rect_circle is two-dimensional");
                require(cfg.rve && std::holds_alternative<Rectangle>(cfg.rve->value()),
                        "model rect_circle requires a rectangle (or square) rve");
                require(cfg.inclusion && std::holds_alternative<Circle>(cfg.inclusion->value()),
                        "model rect_circle requires a circular inclusion");
                require(cfg.matrix.has_value(), "model rect_circle requires matrix moduli");
                break;
            case ModelKind::BoxSphere:
                require(cfg.dimension == 3, "model box_sphere is three-dimensional");
                require(cfg.rve && std::holds_alternative<Box>(cfg.rve->value()),
                        "model box_sphere requires a box (or cube) rve");
                require(cfg.inclusion && std::holds_alternative<Sphere>(cfg.inclusion->value()),
                        "model box_sphere requires a spherical inclusion");
                require(cfg.matrix.has_value(), "model box_sphere requires matrix moduli");
                break;
            case ModelKind::SquareEllipse: {
                require(cfg.dimension == 2, "model square_ellipse is two-dimensional");
                bool square = false;
                if (cfg.rve)
                    if (const auto *r = std::get_if<Rectangle>(&cfg.rve->value()))
                        square = r->h1 == r->h2;
                require(square, "model square_ellipse requires a square rve");
                const auto *e =
                    cfg.inclusion ? std::get_if<Ellipse>(&cfg.inclusion->value()) : nullptr;
                require(e != nullptr, "model square_ellipse requires an elliptical inclusion");
                if (e && e->b2 > e->b1)
                    issues.push_back("square_ellipse needs b1 >= b2; reorient the axes so the "
                                     "major semi-axis lies along x1");
                require(std::holds_alternative<VoidPhase>(cfg.inclusion_material),
                        "model square_ellipse describes holes; inclusion material must be void");
                require(cfg.matrix.has_value(), "model square_ellipse requires matrix moduli");
                break;
            }
            case ModelKind::SquareCrack:
                require(cfg.dimension == 2, "model square_crack is two-dimensional");
                require(cfg.crack.has_value(), "model square_crack requires a crack {b1}");
                require(!cfg.inclusion.has_value(),
                        "model square_crack takes no inclusion; the crack carries no volume");
                require(cfg.matrix.has_value(), "model square_crack requires matrix moduli");
                break;
            case ModelKind::ExplicitCtilde:
                require(cfg.ctilde.has_value(), "model explicit_ctilde requires a ctilde");
                require(cfg.rve.has_value(), "model explicit_ctilde requires an rve");
                require(cfg.f.has_value() || cfg.inclusion.has_value(),
                        "model explicit_ctilde needs f, explicitly or from an inclusion shape");
                break;
            case ModelKind::FromEffective:
                require(cfg.effective.has_value(),
                        "model from_effective requires effective moduli");
                require(cfg.matrix.has_value(), "model from_effective requires matrix moduli");
                require(cfg.rve.has_value(), "model from_effective requires an rve");
                require(cfg.f.has_value() || cfg.inclusion.has_value(),
                        "model from_effective needs f, explicitly or from an inclusion shape");
                break;
        }
        if (cfg.ctilde && cfg.model != ModelKind::ExplicitCtilde)
            issues.push_back("ctilde is only accepted under model explicit_ctilde (exactly one "
                             "discrepancy provenance); current model is " + model_name);
        if (cfg.effective && cfg.model != ModelKind::FromEffective)
            issues.push_back("effective is only accepted under model from_effective (exactly one "
                             "discrepancy provenance); current model is " + model_name);
        if (cfg.crack && cfg.model != ModelKind::SquareCrack)
            issues.push_back("crack is only accepted under model square_crack");
    }

    if (cfg.rve && cfg.rve->dim() != cfg.dimension)
        issues.push_back("rve shape dimension disagrees with the configured dimension");
    if (cfg.inclusion && cfg.inclusion->dim() != cfg.dimension)
        issues.push_back("inclusion shape dimension disagrees with the configured dimension");

    // explicit f against the geometric value
    if (cfg.f && cfg.rve && cfg.inclusion && cfg.rve->dim() == cfg.inclusion->dim()) {
        const double f_geom = cfg.inclusion->measure() / cfg.rve->measure();
        if (std::abs(*cfg.f - f_geom) > 1e-9 * f_geom) {
            json a = *cfg.f, b = f_geom;
            issues.push_back("volume fraction mismatch: explicit f = " + a.dump() +
                             " but the shape measures give f = " + b.dump() +
                             " (relative tolerance 1e-9)");
        }
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

JobConfig parse_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
    return parse_config_json(doc);
}

}  // namespace sgehom
