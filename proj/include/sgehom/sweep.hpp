////////////////////////////////////////////////////////////////////////////////
// sweep.hpp
////////////////////////////////////////////////////////////////////////////////
// Parameter sweep of the square-RVE elliptical-hole nonlocal constants over
// the aspect ratio and the matrix Poisson ratio, normalized by b1^2 mu1.
// Rows are emitted in a deterministic order (nu1 values as listed, aspect
// ratios as listed within each).
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <iosfwd>

#include "sgehom/config.hpp"
#include "sgehom/homogenization.hpp"

namespace sgehom {

struct SweepSpec {
    std::vector<double> lambda_grid;  // aspect ratios in (0, 1]
    std::vector<double> nu1;          // Poisson ratios in (-1, 0.5)
    double b1 = 1.0;
    double mu1 = 1.0;
};

SweepSpec parse_sweep_json(const json &doc);
SweepSpec parse_sweep_config(const std::string &path);

struct SweepRow {
    double lambda_ratio;
    double nu1;
    double a2_norm, a4_norm, a6_norm;
    // unnormalized parameter set backing the row (carries a5 and a9)
    NonlocalParams params;
};

// lambda1 = 2 mu1 nu1 / (1 - 2 nu1), plane strain.
double lambda_from_nu(double nu1, double mu1);

std::vector<SweepRow> run_sweep(const SweepSpec &spec);

// Header exactly: lambda_ratio,nu1,a2_norm,a4_norm,a6_norm
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &os);

}  // namespace sgehom
