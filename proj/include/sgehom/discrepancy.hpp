////////////////////////////////////////////////////////////////////////////////
// discrepancy.hpp
////////////////////////////////////////////////////////////////////////////////
// First-order discrepancy tensor of the dilute composite: the slope of the
// effective local stiffness in the volume fraction, C_eq = C_matrix + f*Ct.
//
// Closed forms are provided for a circular elastic inclusion (plane strain),
// a spherical elastic inclusion, and aligned elliptical holes; the crack
// limit returns the finite nonlocal products directly (Ct itself diverges).
// Voids are expressed as K2 = mu2 = 0.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <optional>

#include "sgehom/tensor_core.hpp"

namespace sgehom {

struct IsotropicDiscrepancy {
    int dim;
    double lambda_t;
    double mu_t;
    // bulk discrepancy: lambda + mu in 2D (plane strain), lambda + 2mu/3 in 3D
    double K() const { return dim == 2 ? lambda_t + mu_t : lambda_t + 2.0 * mu_t / 3.0; }
};

// Plane-strain orthotropic discrepancy in its orthotropy frame; reduces to
// the isotropic form when xi_t = omega_t = 0.
struct OrthotropicDiscrepancy {
    double lambda_t;
    double mu_t;
    double xi_t;
    double omega_t;
    double K() const { return lambda_t + mu_t; }
    bool isotropic() const { return xi_t == 0.0 && omega_t == 0.0; }
};

// Ct = (C_eq - C_matrix) / f.
ElasticTensor from_effective(const ElasticTensor &c_eq, const ElasticTensor &c_matrix, double f);

// Circular elastic inclusion, plane strain, 2D bulk moduli K = lambda + mu.
IsotropicDiscrepancy circular_inclusion(double K1, double mu1, double K2, double mu2);

// Spherical elastic inclusion, 3D bulk moduli K = lambda + 2mu/3. The default
// evaluates the published expression literally, which yields a positive
// discrepancy for inclusions softer than the matrix; `erratum_sign` flips the
// sign of the bracket (both the (K2-K1) and (mu2-mu1) factors), recovering
// the classical dilute values.
IsotropicDiscrepancy spherical_inclusion(double K1, double mu1, double K2, double mu2,
                                         bool erratum_sign = false);

// Dilute aligned elliptical holes with semi-axes b1, b2 = Lambda*b1 along the
// coordinate axes; plane strain. Requires 0 < Lambda <= 1 (reorient the axes
// for flatter-than-tall data, use crack_products for Lambda -> 0).
OrthotropicDiscrepancy elliptic_hole(double lambda1, double mu1, double Lambda);

// Finite nonlocal products of the aligned-crack limit in a square RVE; the
// discrepancy itself diverges as 1/Lambda while f ~ Lambda.
struct CrackProducts {
    double a2, a4, a5, a6, a9;
};
CrackProducts crack_products(double lambda1, double mu1, double b1);

ElasticTensor to_full_tensor(const IsotropicDiscrepancy &d);
ElasticTensor to_full_tensor(const OrthotropicDiscrepancy &d);

struct NegativeDefiniteness {
    bool negative_definite;
    double max_eigenvalue;  // of the condensed matrix
    double K_tilde;
    double mu_tilde;
};

NegativeDefiniteness is_negative_definite(const IsotropicDiscrepancy &d);
NegativeDefiniteness is_negative_definite(const OrthotropicDiscrepancy &d);
// Full-tensor route; K/mu identification is taken from the components.
NegativeDefiniteness is_negative_definite(const ElasticTensor &ct);

// Structural identification of a full discrepancy tensor against the
// orthotropic parameterization (canonical axes); residual is relative.
struct DiscrepancyStructure {
    double lambda_t, mu_t, xi_t, omega_t;
    double residual;
};
DiscrepancyStructure identify_structure(const ElasticTensor &ct);

}  // namespace sgehom
