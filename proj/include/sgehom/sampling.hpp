////////////////////////////////////////////////////////////////////////////////
// sampling.hpp
////////////////////////////////////////////////////////////////////////////////
// Seeded, platform-stable samplers for the admissible tensor classes, shared
// by the self-verification suite and the tests. The uniform deviate is
// derived from the raw mt19937_64 stream (not from library distributions) so
// that a seed pins the exact sequence everywhere.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <cstdint>
#include <random>

#include "sgehom/tensor_core.hpp"

namespace sgehom {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : m_rng(seed) {}

    double uniform01() { return double(m_rng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // symmetric positive definite with eigenvalues bounded away from zero
    SymMatrix spd_matrix(int dim, double lo = 0.02, double hi = 0.5);

    // full elasticity symmetries, components O(1)
    ElasticTensor elastic_tensor(int dim);

    // negative definite isotropic discrepancy (both bulk and shear negative)
    ElasticTensor negdef_isotropic(int dim, double *lambda_t = nullptr, double *mu_t = nullptr);

    // isotropic with a positive shear discrepancy (never negative definite)
    ElasticTensor nonnegdef_isotropic(int dim);

    GradElasticTensor mindlin_tensor(int dim);

    // sixth-order array with the precursor symmetries
    Array6 precursor_array(int dim);

    QuadraticCoefficients beta(int dim);

    OrthogonalTransform rotation(int dim);

    std::mt19937_64 &engine() { return m_rng; }

private:
    std::mt19937_64 m_rng;
};

}  // namespace sgehom
