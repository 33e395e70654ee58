#include "sgehom/discrepancy.hpp"

#include <cmath>

#include "sgehom/errors.hpp"

namespace sgehom {

namespace {

void require_matrix_moduli(double K1, double mu1) {
    if (!(K1 > 0.0) || !(mu1 > 0.0)) throw ModelError("matrix moduli must be positive");
}

void require_inclusion_moduli(double K2, double mu2) {
    if (K2 < 0.0 || mu2 < 0.0) throw ModelError("inclusion moduli must be non-negative");
}

void require_nonzero(double d, const char *what) {
    if (d == 0.0) throw ModelError(std::string("singular denominator: ") + what);
}

}  // namespace

ElasticTensor from_effective(const ElasticTensor &c_eq, const ElasticTensor &c_matrix, double f) {
    if (c_eq.dim() != c_matrix.dim())
        throw ModelError("effective and matrix stiffness dimensions differ");
    if (!(f > 0.0)) throw ModelError("volume fraction must be positive to invert C_eq = C1 + f*Ct");
    return (c_eq - c_matrix) * (1.0 / f);
}

IsotropicDiscrepancy circular_inclusion(double K1, double mu1, double K2, double mu2) {
    require_matrix_moduli(K1, mu1);
    require_inclusion_moduli(K2, mu2);
    const double den_bulk = K2 + mu1;
    const double den_shear = 2.0 * mu1 * mu2 + K1 * (mu1 + mu2);
    require_nonzero(den_bulk, "K2 + mu1");
    require_nonzero(den_shear, "2 mu1 mu2 + K1 (mu1 + mu2)");
    const double bulk_term = (K1 - K2) * (K1 + mu1) / den_bulk;
    const double shear_term = mu1 * (mu1 - mu2) * (K1 + mu1) / den_shear;
    return {2, -(bulk_term - shear_term), -shear_term};
}

IsotropicDiscrepancy spherical_inclusion(double K1, double mu1, double K2, double mu2,
                                         bool erratum_sign) {
    require_matrix_moduli(K1, mu1);
    require_inclusion_moduli(K2, mu2);
    const double den_bulk = 3.0 * K2 + 4.0 * mu1;
    const double den_shear = mu1 * (3.0 * K1 + 4.0 * mu2) +
                             2.0 * (3.0 * K1 + 4.0 * mu1) * (mu2 + mu1);
    require_nonzero(den_bulk, "3 K2 + 4 mu1");
    require_nonzero(den_shear, "mu1 (3 K1 + 4 mu2) + 2 (3 K1 + 4 mu1) (mu2 + mu1)");
    double bulk_term = (3.0 * K1 + 4.0 * mu1) * (K2 - K1) / den_bulk;
    double shear_term = 5.0 * mu1 * (mu2 - mu1) * (3.0 * K1 + 4.0 * mu1) / den_shear;
    if (erratum_sign) {
        bulk_term = -bulk_term;
        shear_term = -shear_term;
    }
    // invert the nonlocal-parameter expressions: the bracket enters through
    // the negative prefactor -f rho^2 / 2
    const double lambda_t = -(bulk_term - 2.0 / 3.0 * shear_term);
    const double mu_t = -shear_term;
    return {3, lambda_t, mu_t};
}

OrthotropicDiscrepancy elliptic_hole(double lambda1, double mu1, double Lambda) {
    if (!(mu1 > 0.0) || !(lambda1 + mu1 > 0.0))
        throw ModelError("matrix moduli must satisfy mu1 > 0 and lambda1 + mu1 > 0");
    if (Lambda <= 0.0)
        throw ModelError("aspect ratio must be positive; the crack limit has its own closed form");
    if (Lambda > 1.0)
        throw ModelError("aspect ratio must not exceed 1; reorient the axes so b1 >= b2");
    const double p = lambda1 + 2.0 * mu1;
    const double lambda_t =
        -p * (lambda1 * p * (1.0 + Lambda * Lambda) - 2.0 * Lambda * mu1 * mu1) /
        (2.0 * Lambda * mu1 * (lambda1 + mu1));
    const double mu_t = -(1.0 + Lambda) * p * (lambda1 * (1.0 - Lambda) + 2.0 * mu1) /
                        (2.0 * Lambda * (lambda1 + mu1));
    const double xi_t = (1.0 - Lambda * Lambda) * p / (2.0 * Lambda);
    const double omega_t = (1.0 - Lambda * Lambda) * p / Lambda;
    return {lambda_t, mu_t, xi_t, omega_t};
}

CrackProducts crack_products(double lambda1, double mu1, double b1) {
    if (!(mu1 > 0.0) || !(lambda1 + mu1 > 0.0))
        throw ModelError("matrix moduli must satisfy mu1 > 0 and lambda1 + mu1 > 0");
    if (!(b1 > 0.0)) throw ModelError("crack half-length must be positive");
    const double p = lambda1 + 2.0 * mu1;
    const double pref = M_PI * b1 * b1 / 48.0;
    CrackProducts out;
    out.a2 = pref * lambda1 * p * p / (mu1 * (lambda1 + mu1));
    out.a4 = pref * p * p / (lambda1 + mu1);
    out.a5 = out.a4;
    out.a6 = -pref * p;
    out.a9 = -2.0 * pref * p;
    return out;
}

ElasticTensor to_full_tensor(const IsotropicDiscrepancy &d) {
    return ElasticTensor::isotropic(d.lambda_t, d.mu_t, d.dim);
}

ElasticTensor to_full_tensor(const OrthotropicDiscrepancy &d) {
    Array4 raw(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int k = 0; k < 2; ++k)
                    raw.at(i, j, h, k) =
                        d.lambda_t * (i == j) * (h == k) +
                        d.mu_t * ((i == h) * (j == k) + (i == k) * (j == h)) +
                        d.xi_t * ((i == 0) * (j == 1) + (i == 1) * (j == 0)) *
                            ((h == 0) * (k == 1) + (h == 1) * (k == 0)) +
                        d.omega_t * (i == 0) * (j == 0) * (h == 0) * (k == 0) + 0.0;
    return ElasticTensor::from_components(raw);
}

namespace {

NegativeDefiniteness eval_negdef(const ElasticTensor &ct, double K_tilde, double mu_tilde) {
    Eigen::MatrixXd g = condensed_matrix(ct);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
    const double max_eig = solver.eigenvalues().maxCoeff();
    const double tol = 1e-12 * g.diagonal().cwiseAbs().sum() / double(g.rows());
    return {max_eig < -tol, max_eig, K_tilde, mu_tilde};
}

}  // namespace

NegativeDefiniteness is_negative_definite(const IsotropicDiscrepancy &d) {
    NegativeDefiniteness out = eval_negdef(to_full_tensor(d), d.K(), d.mu_t);
    out.negative_definite = d.K() < 0.0 && d.mu_t < 0.0;  // bulk/shear shortcut
    return out;
}

NegativeDefiniteness is_negative_definite(const OrthotropicDiscrepancy &d) {
    return eval_negdef(to_full_tensor(d), d.K(), d.mu_t);
}

NegativeDefiniteness is_negative_definite(const ElasticTensor &ct) {
    DiscrepancyStructure s = identify_structure(ct);
    const double K =
        ct.dim() == 2 ? s.lambda_t + s.mu_t : s.lambda_t + 2.0 * s.mu_t / 3.0;
    return eval_negdef(ct, K, s.mu_t);
}

DiscrepancyStructure identify_structure(const ElasticTensor &ct) {
    DiscrepancyStructure s{};
    const int N = ct.dim();
    if (N == 2) {
        s.lambda_t = ct(0, 0, 1, 1);
        s.mu_t = 0.5 * (ct(1, 1, 1, 1) - ct(0, 0, 1, 1));
        s.xi_t = ct(0, 1, 0, 1) - s.mu_t;
        s.omega_t = ct(0, 0, 0, 0) - ct(1, 1, 1, 1);
        OrthotropicDiscrepancy d{s.lambda_t, s.mu_t, s.xi_t, s.omega_t};
        ElasticTensor rebuilt = to_full_tensor(d);
        s.residual = (rebuilt - ct).max_abs() / std::max(ct.max_abs(), 1e-300);
    } else {
        s.lambda_t = (ct(0, 0, 1, 1) + ct(0, 0, 2, 2) + ct(1, 1, 2, 2)) / 3.0;
        s.mu_t = (ct(0, 1, 0, 1) + ct(0, 2, 0, 2) + ct(1, 2, 1, 2)) / 3.0;
        s.xi_t = 0.0;
        s.omega_t = 0.0;
        ElasticTensor rebuilt = ElasticTensor::isotropic(s.lambda_t, s.mu_t, 3);
        s.residual = (rebuilt - ct).max_abs() / std::max(ct.max_abs(), 1e-300);
    }
    return s;
}

}  // namespace sgehom
