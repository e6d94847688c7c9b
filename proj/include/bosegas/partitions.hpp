#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bosegas {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

/// Integer partition with parts in nonincreasing order. Immutable; the
/// multiplicity data is computed once on construction.
class Partition {
public:
    /// Throws std::invalid_argument unless `parts` is nonempty, positive and
    /// nonincreasing.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int operator[](std::size_t k) const { return parts_[k]; }

    int n() const noexcept { return n_; }
    std::size_t length() const noexcept { return parts_.size(); }

    /// m_i: number of parts equal to i, indexed 0..n (entry 0 unused).
    const std::vector<int>& multiplicities() const noexcept { return mult_; }

    /// m(lambda) = prod_i m_i!
    const BigInt& multiplicity_constant() const noexcept { return m_const_; }
    double inverse_multiplicity() const noexcept { return inv_m_; }

    bool is_single_part() const noexcept { return parts_.size() == 1; }

    /// "3+1+1"
    std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

private:
    std::vector<int> parts_;
    int n_ = 0;
    std::vector<int> mult_;
    BigInt m_const_;
    double inv_m_ = 1.0;
};

/// Every partition of n exactly once, in decreasing lexicographic order,
/// so the first entry is always (n).
std::vector<Partition> enumerate_partitions(int n);

BigInt multiplicity_constant(const Partition& lambda);

/// (w_1, w_1+1, ..., w_1+lambda_1-1, w_2, ..., w_l+lambda_l-1)
std::vector<Complex> cluster_expand(std::span<const Complex> w, const Partition& lambda);

/// Allocation-free variant; `out` must hold lambda.n() entries.
void cluster_expand_into(std::span<const Complex> w, const Partition& lambda, std::span<Complex> out);

}  // namespace bosegas
