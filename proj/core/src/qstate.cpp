#include "qcf/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcf {

namespace {

void require_bit(int value, const char* name) {
    if (value != 0 && value != 1) {
        throw std::domain_error(std::string(name) + " must be 0 or 1, got " + std::to_string(value));
    }
}

constexpr double kJacobiOffNormThreshold = 1e-13;
constexpr int kJacobiMaxSweeps = 64;

}  // namespace

StateCoefficient::StateCoefficient(double value) : value_(value) {
    if (!(value >= 0.5 && value <= 1.0)) {
        throw std::domain_error("state coefficient a must lie in [0.5, 1], got " + std::to_string(value));
    }
}

Amplitudes state_vector(int alpha, int c, StateCoefficient a) {
    require_bit(alpha, "alpha");
    require_bit(c, "c");
    const double av = a.value();
    const double sign = alpha == 0 ? 1.0 : -1.0;  // (-1)^alpha
    if (c == 0) {
        return {std::sqrt(av), sign * std::sqrt(1.0 - av)};
    }
    return {std::sqrt(1.0 - av), -sign * std::sqrt(av)};
}

std::array<double, 4> tensor_product(const Amplitudes& x, const Amplitudes& y) {
    return {x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]};
}

DensityMatrix::DensityMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) {
        throw std::domain_error("matrix dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

DensityMatrix DensityMatrix::identity(int dim) {
    DensityMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

DensityMatrix DensityMatrix::outer(std::span<const double> v) {
    DensityMatrix m(static_cast<int>(v.size()));
    for (int i = 0; i < m.dim_; ++i) {
        for (int j = 0; j < m.dim_; ++j) {
            m.at(i, j) = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        }
    }
    return m;
}

double& DensityMatrix::at(int row, int col) {
    return e_[static_cast<std::size_t>(row * kMaxDim + col)];
}

double DensityMatrix::at(int row, int col) const {
    return e_[static_cast<std::size_t>(row * kMaxDim + col)];
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double DensityMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
        }
    }
    return worst;
}

DensityMatrix& DensityMatrix::operator+=(const DensityMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::domain_error("matrix dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

DensityMatrix& DensityMatrix::operator-=(const DensityMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::domain_error("matrix dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
    return *this;
}

DensityMatrix& DensityMatrix::operator*=(double s) {
    for (double& x : e_) x *= s;
    return *this;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    std::vector<double> lambda;
    if (dim_ == 2) {
        const double mean = 0.5 * (at(0, 0) + at(1, 1));
        const double half_gap = 0.5 * (at(0, 0) - at(1, 1));
        const double disc = std::sqrt(half_gap * half_gap + at(0, 1) * at(1, 0));
        lambda = {mean - disc, mean + disc};
    } else {
        // Cyclic Jacobi on a working copy. Quadratic convergence makes the
        // sweep cap generous at this size.
        std::array<double, kMaxDim * kMaxDim> w = e_;
        auto el = [&](int r, int c) -> double& { return w[static_cast<std::size_t>(r * kMaxDim + c)]; };
        auto off_norm = [&]() {
            double s = 0.0;
            for (int p = 0; p < dim_; ++p)
                for (int q = 0; q < dim_; ++q)
                    if (p != q) s += el(p, q) * el(p, q);
            return std::sqrt(s);
        };
        for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() > kJacobiOffNormThreshold; ++sweep) {
            for (int p = 0; p < dim_ - 1; ++p) {
                for (int q = p + 1; q < dim_; ++q) {
                    const double apq = el(p, q);
                    if (apq == 0.0) continue;
                    const double theta = (el(q, q) - el(p, p)) / (2.0 * apq);
                    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    el(p, p) -= t * apq;
                    el(q, q) += t * apq;
                    el(p, q) = el(q, p) = 0.0;
                    for (int i = 0; i < dim_; ++i) {
                        if (i == p || i == q) continue;
                        const double aip = el(i, p);
                        const double aiq = el(i, q);
                        el(i, p) = el(p, i) = c * aip - s * aiq;
                        el(i, q) = el(q, i) = s * aip + c * aiq;
                    }
                }
            }
        }
        lambda.reserve(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) lambda.push_back(el(i, i));
    }
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

double DensityMatrix::min_eigenvalue() const {
    return eigenvalues().front();
}

double DensityMatrix::trace_norm() const {
    double s = 0.0;
    for (double l : eigenvalues()) s += std::abs(l);
    return s;
}

double DensityMatrix::trace_product(const DensityMatrix& op) const {
    if (op.dim_ != dim_) throw std::domain_error("matrix dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += at(i, j) * op.at(j, i);
    return s;
}

bool is_valid_density(const DensityMatrix& m, double tol) {
    return m.max_asymmetry() <= tol && std::abs(m.trace() - 1.0) <= tol && m.min_eigenvalue() >= -tol;
}

DensityMatrix mixture_density(int c, StateCoefficient a, int photons) {
    require_bit(c, "c");
    if (photons != 1 && photons != 2) {
        throw std::domain_error("unsupported photon count " + std::to_string(photons) + ", expected 1 or 2");
    }
    DensityMatrix acc(photons == 1 ? 2 : 4);
    for (int alpha = 0; alpha < 2; ++alpha) {
        const Amplitudes v = state_vector(alpha, c, a);
        if (photons == 1) {
            acc += DensityMatrix::outer(v) * 0.5;
        } else {
            acc += DensityMatrix::outer(tensor_product(v, v)) * 0.5;
        }
    }
    return acc;
}

double helstrom_success(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.dim() != rho1.dim()) throw std::domain_error("density matrix dimension mismatch");
    for (const DensityMatrix* rho : {&rho0, &rho1}) {
        if (std::abs(rho->trace() - 1.0) > 1e-6 || rho->max_asymmetry() > 1e-9) {
            throw std::domain_error("helstrom_success needs unit-trace symmetric inputs");
        }
    }
    const double p = 0.5 + 0.25 * (rho0 - rho1).trace_norm();
    return std::clamp(p, 0.5, 1.0);
}

}  // namespace qcf
