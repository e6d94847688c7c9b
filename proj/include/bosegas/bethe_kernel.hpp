#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bosegas/partitions.hpp"
#include "bosegas/scaled.hpp"
#include "bosegas/spectral.hpp"

namespace bosegas {

/// Largest particle count the permutation-sum kernel accepts (n! growth).
inline constexpr int kMaxParticles = 9;
inline constexpr double kSingularityGuard = 1e-8;

struct KernelInput {
    double t = 1.0;
    SpacePoints x;
    std::vector<Complex> z;
};

/// Permutations sigma of {0..n-1} in lexicographic order, sigma[i] being the
/// index of the spectral variable paired with the i-th smallest coordinate.
class PermutationTable {
public:
    static PermutationTable full(int n);
    /// Drops every sigma that places a within-cluster successor j+1 after j:
    /// on w o lambda such a term carries the factor z_{j+1} - z_j - 1 = 0.
    /// For lambda = (n) only the reversal survives.
    static PermutationTable clustered(const Partition& lambda);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(n_); }
    std::span<const std::uint8_t> operator[](std::size_t k) const {
        return {data_.data() + k * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
    }

private:
    int n_ = 0;
    std::vector<std::uint8_t> data_;
};

/// E_t(z) = sum_sigma prod_{B<A} (z_sA - z_sB - 1)/(z_sA - z_sB)
///          * exp(sum_i (t/2) z_si^2 + x_(i) z_si)
///
/// Construction fixes t, the sorted coordinates and the permutation table;
/// evaluate() is allocation-free and safe to call concurrently.
class BetheKernel {
public:
    BetheKernel(double t, const SpacePoints& x, PermutationTable perms, double guard = kSingularityGuard);
    /// Kernel on w o lambda: the within-cluster pair weights are fixed at
    /// their exact values 0 (for z_{j+1}, z_j) and 2 (for z_j, z_{j+1}).
    /// short_circuit selects the clustered table, otherwise the full one.
    BetheKernel(double t, const SpacePoints& x, const Partition& lambda, bool short_circuit,
                double guard = kSingularityGuard);

    int n() const noexcept { return perms_.n(); }
    std::size_t terms() const noexcept { return perms_.size(); }

    ScaledComplex evaluate(std::span<const Complex> z) const;

private:
    double t_;
    std::vector<double> xs_;  // nondecreasing
    PermutationTable perms_;
    double guard_;
    std::array<bool, kMaxParticles> successor_{};
};

ScaledComplex eval_E(const KernelInput& in);

/// E_t(w o lambda). With short_circuit the clustered permutation table is
/// used; the result is bit-identical to the full sum since the dropped terms
/// carry an exact zero weight.
ScaledComplex eval_E_clustered(double t, const SpacePoints& x, const Partition& lambda,
                               std::span<const Complex> w, bool short_circuit = true);

/// Determinant by Gaussian elimination with partial pivoting. `matrix` is
/// row-major dim x dim and is overwritten. Throws NumericError on a zero pivot.
Complex pivoted_determinant(std::span<Complex> matrix, std::size_t dim);

/// det[1 / (w_i + lambda_i - w_j)] by elimination.
Complex cluster_determinant(std::span<const Complex> w, const Partition& lambda);

/// Closed form of det[1/(u_i - v_j)]:
/// prod_{i<j} (u_i-u_j)(v_j-v_i) / prod_{i,j} (u_i-v_j).
Complex cauchy_determinant(std::span<const Complex> u, std::span<const Complex> v);

/// (1/m(lambda)) det[1/(w_i+lambda_i-w_j)] E_t(w o lambda) with the
/// permutation table built once.
class NuIntegrand {
public:
    NuIntegrand(double t, const SpacePoints& x, const Partition& lambda);

    const Partition& partition() const noexcept { return lambda_; }
    ScaledComplex operator()(std::span<const Complex> w) const;

private:
    Partition lambda_;
    BetheKernel kernel_;
};

ScaledComplex nu_integrand(double t, const SpacePoints& x, const Partition& lambda, std::span<const Complex> w);

}  // namespace bosegas
