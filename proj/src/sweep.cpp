#include "sgehom/sweep.hpp"

#include <fstream>
#include <ostream>

#include "sgehom/report.hpp"

namespace sgehom {

double lambda_from_nu(double nu1, double mu1) { return 2.0 * mu1 * nu1 / (1.0 - 2.0 * nu1); }

SweepSpec parse_sweep_json(const json &doc) {
    std::vector<std::string> issues;
    SweepSpec spec;
    if (!doc.is_object()) throw ConfigError({"sweep configuration must be a JSON object"});
    for (const auto &item : doc.items())
        if (item.key() != "schema_version" && item.key() != "sweep")
            issues.push_back("unknown key \"" + item.key() + "\" in the sweep configuration");
    if (!doc.contains("schema_version") || doc.at("schema_version") != 1)
        issues.push_back("schema_version must be present and equal to 1");
    if (!doc.contains("sweep") || !doc.at("sweep").is_object()) {
        issues.push_back("missing \"sweep\" object");
        throw ConfigError(std::move(issues));
    }
    const json &sw = doc.at("sweep");
    for (const auto &item : sw.items())
        if (item.key() != "lambda_grid" && item.key() != "nu1" && item.key() != "b1" &&
            item.key() != "mu1")
            issues.push_back("unknown key \"" + item.key() + "\" in sweep");

    if (sw.contains("lambda_grid")) {
        const json &g = sw.at("lambda_grid");
        if (g.is_array()) {
            for (const auto &v : g) spec.lambda_grid.push_back(v.get<double>());
        } else if (g.is_object() && g.contains("start") && g.contains("stop") &&
                   g.contains("count")) {
            const double start = g.at("start").get<double>();
            const double stop = g.at("stop").get<double>();
            const int count = g.at("count").get<int>();
            if (count < 2) {
                issues.push_back("lambda_grid.count must be at least 2");
            } else {
                for (int i = 0; i < count; ++i)
                    spec.lambda_grid.push_back(start + (stop - start) * i / (count - 1));
            }
        } else {
            issues.push_back("lambda_grid must be an array or {start, stop, count}");
        }
    } else {
        issues.push_back("sweep needs a lambda_grid");
    }
    if (sw.contains("nu1") && sw.at("nu1").is_array()) {
        for (const auto &v : sw.at("nu1")) spec.nu1.push_back(v.get<double>());
    } else {
        issues.push_back("sweep needs a nu1 array");
    }
    if (sw.contains("b1")) spec.b1 = sw.at("b1").get<double>();
    if (sw.contains("mu1")) spec.mu1 = sw.at("mu1").get<double>();

    for (double L : spec.lambda_grid)
        if (!(L > 0.0) || L > 1.0) {
            issues.push_back("lambda_grid values must lie in (0, 1]");
            break;
        }
    for (double nu : spec.nu1)
        if (nu <= -1.0 || nu >= 0.5) {
            issues.push_back("nu1 values must lie in (-1, 0.5)");
            break;
        }
    if (!(spec.b1 > 0.0)) issues.push_back("b1 must be positive");
    if (!(spec.mu1 > 0.0)) issues.push_back("mu1 must be positive");

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return spec;
}

SweepSpec parse_sweep_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open sweep config file: " + path});
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("sweep config is not valid JSON: ") + e.what()});
    }
    return parse_sweep_json(doc);
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    std::vector<SweepRow> rows;
    rows.reserve(spec.nu1.size() * spec.lambda_grid.size());
    const double norm = spec.b1 * spec.b1 * spec.mu1;
    for (double nu : spec.nu1) {
        const double lambda1 = lambda_from_nu(nu, spec.mu1);
        for (double L : spec.lambda_grid) {
            SquareEllipseCase c{lambda1, spec.mu1, spec.b1, L, 2.0 * spec.b1};
            SweepRow row;
            row.lambda_ratio = L;
            row.nu1 = nu;
            row.params = square_ellipse_params(c);
            row.a2_norm = row.params.a2[0] / norm;
            row.a4_norm = row.params.a4[0] / norm;
            row.a6_norm = *row.params.a6 / norm;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &os) {
    os << "lambda_ratio,nu1,a2_norm,a4_norm,a6_norm\n";
    for (const auto &r : rows)
        os << format_double(r.lambda_ratio) << ',' << format_double(r.nu1) << ','
           << format_double(r.a2_norm) << ',' << format_double(r.a4_norm) << ','
           << format_double(r.a6_norm) << '\n';
}

}  // namespace sgehom
