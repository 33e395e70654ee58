////////////////////////////////////////////////////////////////////////////////
// report.hpp
////////////////////////////////////////////////////////////////////////////////
// Runs a job configuration through the pipeline and renders the report
// document. Field order is fixed and doubles are emitted with the shortest
// round-trip representation, so identical configs yield byte-identical
// reports.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include "sgehom/config.hpp"
#include "sgehom/homogenization.hpp"

namespace sgehom {

struct ReportDocument {
    json doc;
    HomogenizationResult result;
};

// Full pipeline; document keys:
//   config, inertia, ctilde, aeq, params, definiteness, symmetry, warnings,
//   verification
ReportDocument run_homogenize(const JobConfig &cfg);

// Focused documents for the other subcommands.
json run_inertia(const JobConfig &cfg);
json run_ctilde(const JobConfig &cfg);
json run_classify(const JobConfig &cfg);

// Condensed matrix of the nonlocal stiffness as CSV rows.
std::string condensed_csv(const GradElasticTensor &a);

// Shortest round-trip decimal, shared by the CSV writers.
std::string format_double(double v);

// Flat row-major tensor serialization with dim/order header.
json tensor_json(const SymMatrix &b);
json tensor_json(const ElasticTensor &c);
json tensor_json(const GradElasticTensor &a);
ElasticTensor elastic_from_json(const json &doc);

}  // namespace sgehom
