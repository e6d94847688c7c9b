#include "bosegas/partitions.hpp"

#include <stdexcept>

namespace bosegas {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("partition must have at least one part");
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (parts_[k] < 1) throw std::invalid_argument("partition parts must be positive");
        if (k > 0 && parts_[k] > parts_[k - 1])
            throw std::invalid_argument("partition parts must be nonincreasing");
        n_ += parts_[k];
    }
    mult_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int p : parts_) ++mult_[static_cast<std::size_t>(p)];

    m_const_ = 1;
    for (int m : mult_)
        for (int k = 2; k <= m; ++k) m_const_ *= k;
    inv_m_ = 1.0 / m_const_.convert_to<double>();
}

std::string Partition::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (k) s += '+';
        s += std::to_string(parts_[k]);
    }
    return s;
}

namespace {

void extend(int remaining, int cap, std::vector<int>& prefix, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int p = std::min(remaining, cap); p >= 1; --p) {
        prefix.push_back(p);
        extend(remaining - p, p, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_partitions: n must be >= 1");
    std::vector<Partition> out;
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(n));
    extend(n, n, prefix, out);
    return out;
}

BigInt multiplicity_constant(const Partition& lambda) { return lambda.multiplicity_constant(); }

void cluster_expand_into(std::span<const Complex> w, const Partition& lambda, std::span<Complex> out) {
    if (w.size() != lambda.length())
        throw std::invalid_argument("cluster_expand: need one variable per part");
    if (out.size() < static_cast<std::size_t>(lambda.n()))
        throw std::invalid_argument("cluster_expand: output too short");
    std::size_t pos = 0;
    for (std::size_t k = 0; k < w.size(); ++k)
        for (int i = 0; i < lambda[k]; ++i) out[pos++] = w[k] + static_cast<double>(i);
}

std::vector<Complex> cluster_expand(std::span<const Complex> w, const Partition& lambda) {
    std::vector<Complex> out(static_cast<std::size_t>(lambda.n()));
    cluster_expand_into(w, lambda, out);
    return out;
}

}  // namespace bosegas
