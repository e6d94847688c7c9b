#include "bosegas/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosegas {

double to_double(const Rational& q) { return q.convert_to<double>(); }

SpacePoints::SpacePoints(std::vector<double> coords) : coords_(std::move(coords)), sorted_(coords_) {
    for (double c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("space coordinates must be finite");
    std::stable_sort(sorted_.begin(), sorted_.end());
}

double SpacePoints::sum() const noexcept {
    double s = 0.0;
    for (double c : sorted_) s += c;
    return s;
}

double SpacePoints::max_abs() const noexcept {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
}

Rational lyapunov_exponent(int n) {
    if (n < 1) throw std::invalid_argument("lyapunov_exponent: n must be >= 1");
    const BigInt nn = n;
    return Rational(nn * (nn * nn - 1), 24);
}

double log_ground_state(const SpacePoints& x) {
    // With sorted coordinates, sum_{i<j} (x_(j) - x_(i)) = sum_i x_(i) (2i - n - 1).
    const auto& s = x.sorted();
    const double n = static_cast<double>(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * (2.0 * static_cast<double>(i + 1) - n - 1.0);
    return -0.5 * acc;
}

Rational sum_of_powers(const Partition& lambda, int power) {
    BigInt acc = 0;
    for (int p : lambda.parts()) {
        BigInt term = 1;
        for (int e = 0; e < power; ++e) term *= p;
        acc += term;
    }
    return Rational(acc);
}

Rational theta_star(const Partition& lambda) {
    const Rational n = lambda.n();
    return (n - sum_of_powers(lambda, 2)) / (2 * n);
}

Rational remainder_exponent(const Partition& lambda, const Rational& theta) {
    const Rational n = lambda.n();
    const Rational s2 = sum_of_powers(lambda, 2);
    const Rational s3 = sum_of_powers(lambda, 3);
    return (6 * n * theta * theta + 6 * (s2 - n) * theta + 2 * s3 - 3 * s2 + n) / 12;
}

Rational remainder_exponent_by_summation(const Partition& lambda, const Rational& theta) {
    Rational acc = 0;
    for (int part : lambda.parts())
        for (int i = 1; i <= part; ++i) {
            const Rational v = theta + (i - 1);
            acc += v * v / 2;
        }
    return acc;
}

Rational remainder_exponent_min(const Partition& lambda) {
    const Rational n = lambda.n();
    const Rational s2 = sum_of_powers(lambda, 2);
    const Rational s3 = sum_of_powers(lambda, 3);
    return (4 * s3 - 3 * s2 * s2 / n - n) / 24;
}

Rational GapReport::spectral_gap() const {
    if (margins.empty()) throw std::logic_error("spectral_gap: no subleading partitions");
    Rational best = margins.front().margin;
    for (const auto& m : margins) best = std::min(best, m.margin);
    return best;
}

GapReport verify_gap(int n) {
    if (n < 2) throw std::invalid_argument("verify_gap: n must be >= 2");
    GapReport report;
    report.n = n;
    report.lyapunov = lyapunov_exponent(n);
    for (auto& lambda : enumerate_partitions(n)) {
        if (lambda.is_single_part()) continue;
        Rational e = remainder_exponent_min(lambda);
        Rational margin = report.lyapunov - e;
        if (margin <= 0) report.all_positive = false;
        report.margins.push_back({std::move(lambda), std::move(e), std::move(margin)});
    }
    return report;
}

}  // namespace bosegas
