#include "bosegas/scaled.hpp"

#include <cmath>
#include <limits>

namespace bosegas {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
// Terms further than this below the running scale are dropped.
constexpr double kUnderflowGap = 745.0;
// An incoming term may sit this far above the running scale before the
// accumulator is rescaled; e^{300} leaves ample double headroom.
constexpr double kRescaleGap = 300.0;
}  // namespace

ScaledComplex ScaledComplex::exp_of(Complex z) {
    return ScaledComplex{std::polar(1.0, z.imag()), z.real()};
}

bool ScaledComplex::is_finite() const noexcept {
    return std::isfinite(mantissa.real()) && std::isfinite(mantissa.imag()) && std::isfinite(log_scale);
}

ScaledComplex ScaledComplex::normalized() const {
    if (is_zero()) return {};
    const double mag = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
    int k = 0;
    std::frexp(mag, &k);
    // mag in [2^{k-1}, 2^k); |mantissa| <= sqrt(2) mag, so shift by k-1 keeps it in [1/2, 2).
    const int shift = k - 1;
    ScaledComplex out{{std::ldexp(mantissa.real(), -shift), std::ldexp(mantissa.imag(), -shift)},
                      log_scale + shift * kLn2};
    const double a = std::norm(out.mantissa);
    if (a >= 4.0) {
        out.mantissa *= 0.5;
        out.log_scale += kLn2;
    } else if (a < 0.25) {
        out.mantissa *= 2.0;
        out.log_scale -= kLn2;
    }
    return out;
}

double ScaledComplex::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + log_scale;
}

Complex ScaledComplex::to_complex() const {
    if (is_zero()) return {};
    const ScaledComplex n = normalized();
    return n.mantissa * std::exp(n.log_scale);
}

std::optional<Complex> ScaledComplex::decimal() const {
    const ScaledComplex n = normalized();
    if (std::abs(n.log_scale) >= 300.0) return std::nullopt;
    return n.to_complex();
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex{a.mantissa * b.mantissa, a.log_scale + b.log_scale}.normalized();
}

ScaledComplex operator*(const ScaledComplex& a, Complex b) {
    return ScaledComplex{a.mantissa * b, a.log_scale}.normalized();
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex{a.mantissa / b.mantissa, a.log_scale - b.log_scale}.normalized();
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    const ScaledComplex& hi = a.log_scale >= b.log_scale ? a : b;
    const ScaledComplex& lo = a.log_scale >= b.log_scale ? b : a;
    const double gap = lo.log_scale - hi.log_scale;
    if (gap < -kUnderflowGap) return hi.normalized();
    return ScaledComplex{hi.mantissa + lo.mantissa * std::exp(gap), hi.log_scale}.normalized();
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

Complex ratio(const ScaledComplex& a, const ScaledComplex& b) {
    return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

void ScaledSum::Neumaier::add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

void ScaledSum::rescale(double new_scale) {
    const double f = std::exp(scale_ - new_scale);
    re_.sum *= f;
    re_.comp *= f;
    im_.sum *= f;
    im_.comp *= f;
    scale_ = new_scale;
}

void ScaledSum::add(Complex mantissa, double log_scale) {
    if (mantissa == Complex{}) return;
    if (empty_) {
        empty_ = false;
        scale_ = log_scale;
    } else if (log_scale > scale_ + kRescaleGap) {
        rescale(log_scale);
    }
    const double gap = log_scale - scale_;
    if (gap < -kUnderflowGap) return;
    const Complex v = gap == 0.0 ? mantissa : mantissa * std::exp(gap);
    re_.add(v.real());
    im_.add(v.imag());
}

void ScaledSum::merge(const ScaledSum& other) {
    if (other.empty_) return;
    add(Complex{other.re_.value(), other.im_.value()}, other.scale_);
}

ScaledComplex ScaledSum::value() const {
    if (empty_) return {};
    return ScaledComplex{{re_.value(), im_.value()}, scale_}.normalized();
}

}  // namespace bosegas
