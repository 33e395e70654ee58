#include "sgehom/report.hpp"

#include <charconv>
#include <cmath>

#include "sgehom/sampling.hpp"

namespace sgehom {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json components_json(const std::vector<double> &c) {
    json arr = json::array();
    for (double v : c) arr.push_back(v);
    return arr;
}

json matrix_rows(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Eigen::VectorXd &v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

json tensor_json(const SymMatrix &b) {
    json t;
    t["dim"] = b.dim();
    t["order"] = 2;
    json comp = json::array();
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) comp.push_back(b(i, j));
    t["components"] = std::move(comp);
    return t;
}

json tensor_json(const ElasticTensor &c) {
    json t;
    t["dim"] = c.dim();
    t["order"] = 4;
    t["components"] = components_json(c.raw().components());
    return t;
}

json tensor_json(const GradElasticTensor &a) {
    json t;
    t["dim"] = a.dim();
    t["order"] = 6;
    t["components"] = components_json(a.raw().components());
    return t;
}

ElasticTensor elastic_from_json(const json &doc) {
    const int dim = doc.at("dim").get<int>();
    if (doc.at("order").get<int>() != 4)
        throw ConfigError({"tensor document must have order 4"});
    Array4 raw(dim);
    const auto &comp = doc.at("components");
    if (!comp.is_array() || comp.size() != raw.components().size())
        throw ConfigError({"tensor component count mismatch"});
    for (size_t i = 0; i < raw.components().size(); ++i)
        raw.components()[i] = comp[i].get<double>();
    return ElasticTensor::from_components(raw);
}

std::string condensed_csv(const GradElasticTensor &a) {
    Eigen::MatrixXd g = condensed_matrix(a);
    std::string out;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (j) out += ',';
            out += format_double(g(i, j));
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pipeline driver
// ---------------------------------------------------------------------------

namespace {

struct JobOutcome {
    HomogenizationResult result;
    std::optional<InertiaSummary> rve_summary;
    std::optional<InertiaSummary> inclusion_summary;
    std::optional<SymMatrix> b_matrix;
    std::optional<double> sum_rule_residual;
};

double resolve_f(const JobConfig &cfg) {
    if (cfg.f) return *cfg.f;  // consistency against geometry checked at parse time
    if (cfg.rve && cfg.inclusion) return cfg.inclusion->measure() / cfg.rve->measure();
    throw ModelError("volume fraction unavailable: supply f or an inclusion shape");
}

// decomposition without phase moduli, for the explicit discrepancy paths
void attach_geometry(JobOutcome &out, const JobConfig &cfg) {
    if (!cfg.rve) return;
    const double omega = cfg.rve->measure();
    out.rve_summary = inertia_summary(*cfg.rve, omega);
    if (cfg.inclusion) {
        out.inclusion_summary = inertia_summary(*cfg.inclusion, omega);
        SymMatrix b_rve = normalized_inertia(*cfg.rve, omega);
        SymMatrix b_inc = normalized_inertia(*cfg.inclusion, omega);
        SymMatrix b_mat = b_rve - b_inc;
        out.b_matrix = b_mat;
        out.sum_rule_residual =
            ((b_mat + b_inc) - b_rve).max_abs();
    }
}

Microstructure microstructure_from(const JobConfig &cfg) {
    if (!cfg.rve || !cfg.inclusion || !cfg.matrix)
        throw ModelError("geometric models need rve, inclusion and matrix moduli");
    return Microstructure::create(*cfg.rve, *cfg.inclusion, *cfg.matrix, cfg.inclusion_material,
                                  cfg.f, cfg.tol.dilute_threshold);
}

JobOutcome run_job(const JobConfig &cfg) {
    JobOutcome out;
    const double ctol = cfg.tol.classify;
    switch (cfg.model) {
        case ModelKind::Generic: {
            out.result = analyze(microstructure_from(cfg), {cfg.erratum_sign_3d, ctol});
            break;
        }
        case ModelKind::RectCircle: {
            const auto &rect = std::get<Rectangle>(cfg.rve->value());
            const auto &circ = std::get<Circle>(cfg.inclusion->value());
            double K2 = 0.0, mu2 = 0.0;
            if (const auto *m = std::get_if<Material>(&cfg.inclusion_material)) {
                K2 = bulk_modulus(*m, 2);
                mu2 = m->mu;
            }
            RectCircleCase c{bulk_modulus(*cfg.matrix, 2), cfg.matrix->mu, K2, mu2,
                             circ.r,  rect.h1, rect.h2};
            out.result = closed_form_case(c, ctol);
            break;
        }
        case ModelKind::BoxSphere: {
            const auto &box = std::get<Box>(cfg.rve->value());
            const auto &sph = std::get<Sphere>(cfg.inclusion->value());
            double K2 = 0.0, mu2 = 0.0;
            if (const auto *m = std::get_if<Material>(&cfg.inclusion_material)) {
                K2 = bulk_modulus(*m, 3);
                mu2 = m->mu;
            }
            BoxSphereCase c{bulk_modulus(*cfg.matrix, 3), cfg.matrix->mu, K2, mu2, sph.r,
                            box.h1, box.h2, box.h3, cfg.erratum_sign_3d};
            out.result = closed_form_case(c, ctol);
            break;
        }
        case ModelKind::SquareEllipse: {
            const auto &rect = std::get<Rectangle>(cfg.rve->value());
            const auto &ell = std::get<Ellipse>(cfg.inclusion->value());
            SquareEllipseCase c{cfg.matrix->lambda, cfg.matrix->mu, ell.b1, ell.b2 / ell.b1,
                                rect.h1};
            out.result = closed_form_case(c, ctol);
            break;
        }
        case ModelKind::SquareCrack: {
            std::optional<double> h;
            if (cfg.rve) {
                const auto *rect = std::get_if<Rectangle>(&cfg.rve->value());
                if (!rect || rect->h1 != rect->h2)
                    throw ModelError("square_crack expects a square rve when one is given");
                h = rect->h1;
            }
            SquareCrackCase c{cfg.matrix->lambda, cfg.matrix->mu, cfg.crack->b1, h};
            out.result = closed_form_case(c, ctol);
            break;
        }
        case ModelKind::ExplicitCtilde:
        case ModelKind::FromEffective: {
            const double f = resolve_f(cfg);
            ElasticTensor ctilde = ElasticTensor::zero(cfg.dimension);
            if (cfg.model == ModelKind::ExplicitCtilde) {
                ctilde = *cfg.ctilde;
            } else {
                ElasticTensor c1 =
                    ElasticTensor::isotropic(cfg.matrix->lambda, cfg.matrix->mu, cfg.dimension);
                ctilde = from_effective(*cfg.effective, c1, f);
            }
            if (ctilde.dim() != cfg.dimension)
                throw ModelError("discrepancy tensor dimension disagrees with the configuration");
            SymMatrix b_rve = normalized_inertia(*cfg.rve, cfg.rve->measure());
            out.result = homogenize_ctilde(ctilde, b_rve, f, ctol);
            if (f > cfg.tol.dilute_threshold)
                out.result.warnings.push_back(
                    {"dilute_threshold_exceeded",
                     "volume fraction " + std::to_string(f) + " exceeds the dilute threshold " +
                         std::to_string(cfg.tol.dilute_threshold)});
            break;
        }
    }
    attach_geometry(out, cfg);
    return out;
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

json summary_json(const InertiaSummary &s) {
    json j;
    j["measure"] = s.measure;
    j["static_moment"] = vector_json(s.static_moment);
    j["euler"] = tensor_json(SymMatrix(s.euler, 1e-9));
    j["B"] = tensor_json(SymMatrix(s.normalized, 1e-9));
    j["radii_of_gyration"] = vector_json(s.rho);
    j["axes"] = matrix_rows(s.axes.transpose());  // rows are the principal directions
    j["spherical"] = s.spherical;
    return j;
}

json inertia_section(const JobOutcome &out) {
    json j;
    j["rve"] = out.rve_summary ? summary_json(*out.rve_summary) : json(nullptr);
    j["inclusion"] =
        out.inclusion_summary ? summary_json(*out.inclusion_summary) : json(nullptr);
    j["matrix_B"] = out.b_matrix ? tensor_json(*out.b_matrix) : json(nullptr);
    j["f"] = out.result.f;
    j["sum_rule_residual"] =
        out.sum_rule_residual ? json(*out.sum_rule_residual) : json(nullptr);
    return j;
}

json ctilde_section(const HomogenizationResult &r) {
    if (!r.ctilde) return json(nullptr);
    json j;
    const DiscrepancyStructure &s = *r.ctilde_params;
    j["lambda_tilde"] = s.lambda_t;
    j["mu_tilde"] = s.mu_t;
    j["xi_tilde"] = s.xi_t;
    j["omega_tilde"] = s.omega_t;
    j["K_tilde"] = r.ctilde_definiteness->K_tilde;
    j["negative_definite"] = r.ctilde_definiteness->negative_definite;
    j["structure_residual"] = s.residual;
    j["tensor"] = tensor_json(*r.ctilde);
    return j;
}

json params_section(const HomogenizationResult &r, double fit_tol) {
    if (!r.params) return json(nullptr);
    const NonlocalParams &p = *r.params;
    json j;
    json per_axis = json::array();
    for (int k = 0; k < p.dim; ++k) {
        json e;
        e["axis"] = k + 1;
        e["a2"] = p.a2[size_t(k)];
        e["a4"] = p.a4[size_t(k)];
        e["a5"] = p.a5[size_t(k)];
        per_axis.push_back(std::move(e));
    }
    j["per_axis"] = std::move(per_axis);
    j["a6"] = p.a6 ? json(*p.a6) : json(nullptr);
    j["a9"] = p.a9 ? json(*p.a9) : json(nullptr);
    j["fit_residual"] = p.fit_residual;
    j["certified"] = p.fit_residual <= fit_tol;
    return j;
}

json definiteness_section(const HomogenizationResult &r) {
    json j;
    j["positive_definite"] = r.definiteness.positive_definite;
    j["min_eigenvalue"] = r.definiteness.min_eigenvalue;
    j["tolerance"] = r.definiteness.tolerance;
    return j;
}

json symmetry_section(const HomogenizationResult &r) {
    json j;
    j["aeq"] = to_string(r.aeq_class);
    j["ctilde"] = r.ctilde_class ? json(to_string(*r.ctilde_class)) : json(nullptr);
    j["b_rve"] = r.b_class ? json(to_string(*r.b_class)) : json(nullptr);
    j["intersection_consistent"] = r.symmetry_intersection_consistent;
    return j;
}

json warnings_section(const std::vector<Warning> &warnings) {
    json arr = json::array();
    for (const auto &w : warnings) {
        json e;
        e["code"] = w.code;
        e["message"] = w.message;
        arr.push_back(std::move(e));
    }
    return arr;
}

json verification_section(const JobConfig &cfg, const HomogenizationResult &r) {
    json j;
    j["closed_form_vs_generic_max_rel"] =
        r.dual_route_max_rel ? json(*r.dual_route_max_rel) : json(nullptr);
    if (r.ctilde && r.b_rve) {
        // seeded annihilation spot check
        Sampler s(cfg.seed);
        double worst = 0.0, scale = 0.0;
        for (int it = 0; it < 32; ++it) {
            auto beta = s.beta(r.dim);
            worst = std::max(worst, std::abs(annihilation_residual(*r.ctilde, *r.b_rve, r.f,
                                                                   r.aeq, beta)));
            scale = std::max(scale, r.f * r.b_rve->mat().norm() *
                                        std::sqrt(condensed_matrix(*r.ctilde).squaredNorm()) *
                                        beta.norm_sq());
        }
        j["annihilation_max_abs"] = worst;
        j["annihilation_scale"] = scale;
    } else {
        j["annihilation_max_abs"] = nullptr;
        j["annihilation_scale"] = nullptr;
    }
    j["extraction_residual"] = r.params ? json(r.params->fit_residual) : json(nullptr);
    j["symmetry_intersection_consistent"] = r.symmetry_intersection_consistent;
    return j;
}

}  // namespace

ReportDocument run_homogenize(const JobConfig &cfg) {
    JobOutcome out = run_job(cfg);
    json doc;
    doc["config"] = cfg.echo;
    doc["inertia"] = inertia_section(out);
    doc["ctilde"] = ctilde_section(out.result);
    json aeq = tensor_json(out.result.aeq);
    aeq["condensed"] = matrix_rows(condensed_matrix(out.result.aeq));
    doc["aeq"] = std::move(aeq);
    doc["params"] = params_section(out.result, cfg.tol.fit_certify);
    doc["definiteness"] = definiteness_section(out.result);
    doc["symmetry"] = symmetry_section(out.result);
    doc["warnings"] = warnings_section(out.result.warnings);
    doc["verification"] = verification_section(cfg, out.result);
    return {std::move(doc), std::move(out.result)};
}

json run_inertia(const JobConfig &cfg) {
    if (!cfg.rve) throw ModelError("the inertia report needs an rve");
    JobOutcome out;
    // volume fraction without running the constitutive model
    out.result.f = cfg.f ? *cfg.f
                         : (cfg.inclusion ? cfg.inclusion->measure() / cfg.rve->measure() : 0.0);
    attach_geometry(out, cfg);
    json warnings = json::array();
    if (out.result.f > cfg.tol.dilute_threshold) {
        json w;
        w["code"] = "dilute_threshold_exceeded";
        w["message"] = "volume fraction " + std::to_string(out.result.f) +
                       " exceeds the dilute threshold " +
                       std::to_string(cfg.tol.dilute_threshold);
        warnings.push_back(std::move(w));
    }
    json doc;
    doc["config"] = cfg.echo;
    doc["inertia"] = inertia_section(out);
    doc["warnings"] = std::move(warnings);
    return doc;
}

json run_ctilde(const JobConfig &cfg) {
    ReportDocument full = run_homogenize(cfg);
    json doc;
    doc["config"] = cfg.echo;
    doc["ctilde"] = full.doc.at("ctilde");
    doc["warnings"] = full.doc.at("warnings");
    return doc;
}

json run_classify(const JobConfig &cfg) {
    ReportDocument full = run_homogenize(cfg);
    json doc;
    doc["config"] = cfg.echo;
    doc["symmetry"] = full.doc.at("symmetry");
    doc["warnings"] = full.doc.at("warnings");
    return doc;
}

}  // namespace sgehom
