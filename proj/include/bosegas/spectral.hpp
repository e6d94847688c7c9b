#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bosegas/partitions.hpp"

namespace bosegas {

/// Exact rational in lowest terms over arbitrary-precision integers.
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

/// The n space coordinates, with a cached nondecreasing view. Ties are
/// allowed; the sort is stable.
class SpacePoints {
public:
    SpacePoints() = default;
    explicit SpacePoints(std::vector<double> coords);
    SpacePoints(std::initializer_list<double> coords) : SpacePoints(std::vector<double>(coords)) {}

    std::size_t n() const noexcept { return coords_.size(); }
    const std::vector<double>& coords() const noexcept { return coords_; }
    const std::vector<double>& sorted() const noexcept { return sorted_; }

    double sum() const noexcept;
    double max_abs() const noexcept;

private:
    std::vector<double> coords_;
    std::vector<double> sorted_;
};

/// n(n^2-1)/24, the growth rate of the n-th moment.
Rational lyapunov_exponent(int n);

/// log Psi_n(x) = -sum_{i<j} |x_i - x_j| / 2. Psi itself is never formed in
/// plain doubles.
double log_ground_state(const SpacePoints& x);

Rational sum_of_powers(const Partition& lambda, int power);

/// (n - sum lambda_k^2) / (2n): minimiser of remainder_exponent in theta.
Rational theta_star(const Partition& lambda);

/// sum_k sum_{i=1}^{lambda_k} (theta+i-1)^2/2 via the Faulhaber closed form
/// (6n theta^2 + 6(S2-n) theta + 2 S3 - 3 S2 + n) / 12.
Rational remainder_exponent(const Partition& lambda, const Rational& theta);

/// The same quantity by literal summation over k and i; an independent route
/// used by the verification suites.
Rational remainder_exponent_by_summation(const Partition& lambda, const Rational& theta);

/// (4 S3 - (3/n) S2^2 - n) / 24, the value of remainder_exponent at theta_star.
Rational remainder_exponent_min(const Partition& lambda);

struct GapMargin {
    Partition lambda;
    Rational exponent;  // remainder_exponent_min(lambda)
    Rational margin;    // L_n - exponent
};

struct GapReport {
    int n = 0;
    Rational lyapunov;
    std::vector<GapMargin> margins;  // every lambda != (n), enumeration order
    bool all_positive = true;

    /// L_n - max over lambda != (n) of remainder_exponent_min.
    Rational spectral_gap() const;
};

/// Exhaustive exact check that every non-top partition of n has a remainder
/// exponent strictly below L_n. A violated margin is reported, not thrown.
GapReport verify_gap(int n);

}  // namespace bosegas
