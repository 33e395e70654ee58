////////////////////////////////////////////////////////////////////////////////
// homogenization.hpp
////////////////////////////////////////////////////////////////////////////////
// Assembly of the effective nonlocal (sixth-order) stiffness of a dilute
// two-phase Cauchy composite from the first-order discrepancy tensor, the
// normalized inertia of the RVE and the volume fraction:
//
//   A_ijhlmn = -(f/4) ( Ct_ihln B_jm + Ct_ihmn B_jl
//                     + Ct_jhln B_im + Ct_jhmn B_il )
//
// plus orthotropic parameter extraction/assembly, the documented closed-form
// cases, the energy-annihilation residual, and the end-to-end analyze()
// pipeline over a microstructure.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <optional>
#include <variant>

#include "sgehom/discrepancy.hpp"
#include "sgehom/geometry.hpp"
#include "sgehom/tensor_core.hpp"

namespace sgehom {

////////////////////////////////////////////////////////////////////////////////
// Core assembly
////////////////////////////////////////////////////////////////////////////////

GradElasticTensor effective_grad_tensor(const ElasticTensor &ctilde, const SymMatrix &b_rve,
                                        double f);

// Specialized expression for an RVE whose inertia is spherical, B = rho^2 I;
// bitwise equal to effective_grad_tensor(ctilde, rho^2 I, f).
GradElasticTensor spherical_case(const ElasticTensor &ctilde, double rho, double f);

////////////////////////////////////////////////////////////////////////////////
// Orthotropic nonlocal parameters
////////////////////////////////////////////////////////////////////////////////

struct NonlocalParams {
    int dim;
    std::vector<double> a2, a4, a5;  // one entry per principal axis
    std::optional<double> a6, a9;    // in-plane orthotropic couplings (N = 2)
    Eigen::MatrixXd axes;            // orthonormal columns e_[k]
    double fit_residual = 0.0;       // relative Frobenius residual of the projection
};

// Least-squares projection of A onto the structural basis (per-axis a2/a4/a5
// kernels, plus the a6/a9 kernels when N = 2), evaluated in the frame given
// by `axes` (canonical axes when omitted). The residual certifies the
// structural form when it is at most 1e-10 relative.
NonlocalParams extract_ortho_params(const GradElasticTensor &a,
                                    std::optional<Eigen::MatrixXd> axes = std::nullopt);

GradElasticTensor assemble_from_params(const NonlocalParams &p);

struct AnisotropyRatios {
    std::vector<double> ratio;  // per axis, ratio[0] == 1
    double max_mismatch;        // relative disagreement between the a2 and a4 families
};

// Per-axis parameter ratios a_[k]/a_[1]; requires a nonzero leading a2 or a4
// and verifies the two families agree.
AnisotropyRatios anisotropy_ratios(const NonlocalParams &p);

////////////////////////////////////////////////////////////////////////////////
// Energy annihilation
////////////////////////////////////////////////////////////////////////////////

// r(beta) = f B_lm Ct_ijhk beta_ijl beta_hkm + A_jlikmh beta_ijl beta_hkm ;
// identically zero when A solves the homogenization identity.
double annihilation_residual(const ElasticTensor &ctilde, const SymMatrix &b_rve, double f,
                             const GradElasticTensor &a, const QuadraticCoefficients &beta);

////////////////////////////////////////////////////////////////////////////////
// Results
////////////////////////////////////////////////////////////////////////////////

struct Warning {
    std::string code;
    std::string message;
};

struct HomogenizationResult {
    int dim;
    double f = 0.0;
    std::optional<ElasticTensor> ctilde;  // absent in the crack limit (it diverges)
    std::optional<DiscrepancyStructure> ctilde_params;
    std::optional<NegativeDefiniteness> ctilde_definiteness;
    std::optional<SymMatrix> b_rve;
    std::optional<InertiaDecomposition> inertia;
    GradElasticTensor aeq = GradElasticTensor::zero(2);
    std::optional<NonlocalParams> params;
    DefinitenessResult definiteness{false, 0.0, 0.0};
    SymmetryClass aeq_class = SymmetryClass::Generic;
    std::optional<SymmetryClass> ctilde_class;
    std::optional<SymmetryClass> b_class;
    bool symmetry_intersection_consistent = true;
    std::vector<Warning> warnings;
    // max relative disagreement between the literal closed-form parameters and
    // the generic pipeline (closed-form cases only)
    std::optional<double> dual_route_max_rel;
};

////////////////////////////////////////////////////////////////////////////////
// Pipelines
////////////////////////////////////////////////////////////////////////////////

struct AnalyzeOptions {
    bool erratum_sign_3d = false;
    double classify_tol = kClassifyTol;
};

// Core pipeline from an explicit discrepancy tensor.
HomogenizationResult homogenize_ctilde(const ElasticTensor &ctilde, const SymMatrix &b_rve,
                                       double f, double classify_tol = kClassifyTol);

// Geometry-driven pipeline: derives the discrepancy from the inclusion shape
// and phase moduli (circle/sphere/elliptical hole), decomposes the RVE
// inertia, and assembles the nonlocal response.
HomogenizationResult analyze(const Microstructure &m, const AnalyzeOptions &opts = {});

////////////////////////////////////////////////////////////////////////////////
// Documented closed-form cases: literal parameter formulas evaluated next to
// the generic pipeline; both are compared and the residual is recorded.
////////////////////////////////////////////////////////////////////////////////

struct RectCircleCase {
    double K1, mu1, K2, mu2;  // 2D bulk moduli K = lambda + mu
    double r, h1, h2;
};
struct BoxSphereCase {
    double K1, mu1, K2, mu2;  // 3D bulk moduli K = lambda + 2mu/3
    double r, h1, h2, h3;
    bool erratum_sign = false;
};
struct SquareEllipseCase {
    double lambda1, mu1;
    double b1, Lambda, h;
};
struct SquareCrackCase {
    double lambda1, mu1;
    double b1;
    std::optional<double> h;  // square side; only echoes the RVE, the products don't depend on it
};

using ClosedFormCase =
    std::variant<RectCircleCase, BoxSphereCase, SquareEllipseCase, SquareCrackCase>;

// Literal parameter evaluations.
NonlocalParams rect_circle_params(const RectCircleCase &c);
NonlocalParams box_sphere_params(const BoxSphereCase &c);
NonlocalParams square_ellipse_params(const SquareEllipseCase &c);
NonlocalParams square_crack_params(const SquareCrackCase &c);

HomogenizationResult closed_form_case(const ClosedFormCase &c,
                                      double classify_tol = kClassifyTol);

}  // namespace sgehom
