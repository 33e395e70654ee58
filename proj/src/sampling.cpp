#include "sgehom/sampling.hpp"

#include <algorithm>

namespace sgehom {

SymMatrix Sampler::spd_matrix(int dim, double lo, double hi) {
    require_dim(dim);
    // random rotation applied to a positive diagonal
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) d(i, i) = uniform(lo, hi);
    const Eigen::MatrixXd q = rotation(dim).mat();
    return SymMatrix(q * d * q.transpose(), 1e-9);
}

ElasticTensor Sampler::elastic_tensor(int dim) {
    Array4 raw(dim);
    for (double &x : raw.components()) x = uniform(-1.0, 1.0);
    // project onto the full symmetry group
    Array4 out(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int h = 0; h < dim; ++h)
                for (int k = 0; k < dim; ++k)
                    out.at(i, j, h, k) =
                        (raw.at(i, j, h, k) + raw.at(j, i, h, k) + raw.at(i, j, k, h) +
                         raw.at(j, i, k, h) + raw.at(h, k, i, j) + raw.at(k, h, i, j) +
                         raw.at(h, k, j, i) + raw.at(k, h, j, i)) /
                        8.0;
    return ElasticTensor::from_components(out);
}

ElasticTensor Sampler::negdef_isotropic(int dim, double *lambda_t, double *mu_t) {
    require_dim(dim);
    const double mu = uniform(-3.0, -0.1);
    const double k = uniform(-3.0, -0.05);
    const double lam = (dim == 2) ? k - mu : k - 2.0 * mu / 3.0;
    if (lambda_t) *lambda_t = lam;
    if (mu_t) *mu_t = mu;
    return ElasticTensor::isotropic(lam, mu, dim);
}

ElasticTensor Sampler::nonnegdef_isotropic(int dim) {
    require_dim(dim);
    const double mu = uniform(0.1, 3.0);
    const double lam = uniform(-3.0, 3.0);
    return ElasticTensor::isotropic(lam, mu, dim);
}

GradElasticTensor Sampler::mindlin_tensor(int dim) {
    Array6 raw(dim);
    for (double &x : raw.components()) x = uniform(-1.0, 1.0);
    Array6 out(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int h = 0; h < dim; ++h)
                for (int l = 0; l < dim; ++l)
                    for (int m = 0; m < dim; ++m)
                        for (int n = 0; n < dim; ++n) {
                            double acc = 0.0;
                            const int t[6] = {i, j, h, l, m, n};
                            for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b)
                                    for (int c = 0; c < 2; ++c) {
                                        int s[6] = {t[0], t[1], t[2], t[3], t[4], t[5]};
                                        if (a) std::swap(s[0], s[1]);
                                        if (b) std::swap(s[3], s[4]);
                                        if (c) {
                                            std::swap(s[0], s[3]);
                                            std::swap(s[1], s[4]);
                                            std::swap(s[2], s[5]);
                                        }
                                        acc += raw.at(s[0], s[1], s[2], s[3], s[4], s[5]);
                                    }
                            out.at(i, j, h, l, m, n) = acc / 8.0;
                        }
    return GradElasticTensor::from_components(out);
}

Array6 Sampler::precursor_array(int dim) {
    Array6 raw(dim);
    for (double &x : raw.components()) x = uniform(-1.0, 1.0);
    Array6 out(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int h = 0; h < dim; ++h)
                for (int l = 0; l < dim; ++l)
                    for (int m = 0; m < dim; ++m)
                        for (int n = 0; n < dim; ++n) {
                            double acc = 0.0;
                            const int t[6] = {i, j, h, l, m, n};
                            for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b)
                                    for (int c = 0; c < 2; ++c) {
                                        int s[6] = {t[0], t[1], t[2], t[3], t[4], t[5]};
                                        if (a) std::swap(s[0], s[2]);
                                        if (b) std::swap(s[3], s[5]);
                                        if (c) {
                                            std::swap(s[0], s[3]);
                                            std::swap(s[1], s[4]);
                                            std::swap(s[2], s[5]);
                                        }
                                        acc += raw.at(s[0], s[1], s[2], s[3], s[4], s[5]);
                                    }
                            out.at(i, j, h, l, m, n) = acc / 8.0;
                        }
    return out;
}

QuadraticCoefficients Sampler::beta(int dim) {
    require_dim(dim);
    std::vector<double> raw(size_t(dim) * size_t(dim) * size_t(dim));
    for (double &x : raw) x = uniform(-1.0, 1.0);
    std::vector<double> c(raw.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                c[size_t((i * dim + j) * dim + k)] =
                    0.5 * (raw[size_t((i * dim + j) * dim + k)] +
                           raw[size_t((i * dim + k) * dim + j)]);
    return QuadraticCoefficients::from_components(dim, c);
}

OrthogonalTransform Sampler::rotation(int dim) {
    require_dim(dim);
    if (dim == 2) return OrthogonalTransform::rotation_2d(uniform(0.0, 2.0 * M_PI));
    Eigen::Vector3d axis;
    double n2;
    do {
        axis = Eigen::Vector3d(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
        n2 = axis.squaredNorm();
    } while (n2 < 1e-4 || n2 > 1.0);
    return OrthogonalTransform::axis_angle(axis, uniform(0.0, 2.0 * M_PI));
}

}  // namespace sgehom
