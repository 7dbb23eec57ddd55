// qstate.hpp
// Real-amplitude protocol qubits, their mixtures over the hidden basis
// choice, and minimum-error (Helstrom) discrimination of those mixtures.

#pragma once

#include <array>
#include <span>
#include <vector>

namespace qcf {

// Overlap coefficient of the two protocol states. At a = 1/2 the two bit
// mixtures coincide; at a = 1 they are orthogonal classical bits.
class StateCoefficient {
public:
    explicit StateCoefficient(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

using Amplitudes = std::array<double, 2>;

// |phi_{alpha,c}> as a real amplitude pair over {|0>, |1>}.
// alpha selects the encoding basis, c is the committed bit.
Amplitudes state_vector(int alpha, int c, StateCoefficient a);

// w = x (x) y over the computational product basis {|00>,|01>,|10>,|11>}.
std::array<double, 4> tensor_product(const Amplitudes& x, const Amplitudes& y);

// Dense real symmetric matrix of dimension 2 or 4, row-major. Represents
// Bob's mixed-state view of a pulse; the oracle module reuses it for
// measurement operators, which live in the same space.
class DensityMatrix {
public:
    static constexpr int kMaxDim = 4;

    explicit DensityMatrix(int dim);  // zero matrix
    static DensityMatrix identity(int dim);
    static DensityMatrix outer(std::span<const double> v);  // v v^T

    int dim() const noexcept { return dim_; }
    double& at(int row, int col);
    double at(int row, int col) const;
    double operator()(int row, int col) const { return at(row, col); }

    double trace() const;
    double max_asymmetry() const;  // max |A_ij - A_ji|

    DensityMatrix& operator+=(const DensityMatrix& rhs);
    DensityMatrix& operator-=(const DensityMatrix& rhs);
    DensityMatrix& operator*=(double s);
    friend DensityMatrix operator+(DensityMatrix lhs, const DensityMatrix& rhs) { return lhs += rhs; }
    friend DensityMatrix operator-(DensityMatrix lhs, const DensityMatrix& rhs) { return lhs -= rhs; }
    friend DensityMatrix operator*(DensityMatrix lhs, double s) { return lhs *= s; }

    // Eigenvalues in ascending order. 2x2 in closed form, larger dims by
    // cyclic Jacobi sweeps (off-diagonal norm threshold 1e-13).
    std::vector<double> eigenvalues() const;
    double min_eigenvalue() const;
    double trace_norm() const;  // sum of |eigenvalue|

    // tr(this * op); both symmetric, so this is the entrywise dot product.
    double trace_product(const DensityMatrix& op) const;

private:
    int dim_;
    std::array<double, kMaxDim * kMaxDim> e_{};
};

// Unit trace, symmetric, positive semidefinite (within tol).
bool is_valid_density(const DensityMatrix& m, double tol = 1e-9);

// (1/2) sum_alpha |phi_{alpha,c}><phi_{alpha,c}|^{(x) photons}.
// One photon gives diag(a, 1-a) for c = 0 and diag(1-a, a) for c = 1.
DensityMatrix mixture_density(int c, StateCoefficient a, int photons);

// Success probability of the minimum-error measurement distinguishing
// rho0 from rho1 at equal priors: 1/2 + ||rho0 - rho1||_1 / 4.
double helstrom_success(const DensityMatrix& rho0, const DensityMatrix& rho1);

}  // namespace qcf
