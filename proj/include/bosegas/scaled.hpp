#pragma once

#include <complex>
#include <optional>

namespace bosegas {

using Complex = std::complex<double>;

/// mantissa * e^{log_scale}. Carries magnitudes like e^{L_n t} that overflow
/// a double. Zero is represented by a zero mantissa.
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    static ScaledComplex from_complex(Complex z) { return ScaledComplex{z, 0.0}.normalized(); }
    /// e^{z} without forming it.
    static ScaledComplex exp_of(Complex z);

    bool is_zero() const noexcept { return mantissa == Complex{}; }
    bool is_finite() const noexcept;

    /// Rescales so |mantissa| lies in [1/2, 2); zero maps to (0, 0).
    ScaledComplex normalized() const;

    /// log |value|; -inf for zero.
    double log_abs() const;
    /// Plain complex value; overflows to inf / underflows to 0 outside the
    /// double range.
    Complex to_complex() const;
    /// to_complex() when |log_scale| < 300 after normalisation.
    std::optional<Complex> decimal() const;

    ScaledComplex conj() const { return {std::conj(mantissa), log_scale}; }
    ScaledComplex operator-() const { return {-mantissa, log_scale}; }
};

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator*(const ScaledComplex& a, Complex b);
ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);

/// a / b as a plain complex number (the scales cancel).
Complex ratio(const ScaledComplex& a, const ScaledComplex& b);

/// Compensated (Neumaier) complex accumulator with a floating reference
/// scale. The result depends only on the order of add() calls.
class ScaledSum {
public:
    void add(const ScaledComplex& v) { add(v.mantissa, v.log_scale); }
    void add(Complex mantissa, double log_scale);
    /// Adds another accumulator's value as a single term.
    void merge(const ScaledSum& other);

    ScaledComplex value() const;
    bool empty() const noexcept { return empty_; }

private:
    struct Neumaier {
        double sum = 0.0;
        double comp = 0.0;
        void add(double x) noexcept;
        double value() const noexcept { return sum + comp; }
    };

    void rescale(double new_scale);

    bool empty_ = true;
    double scale_ = 0.0;
    Neumaier re_, im_;
};

}  // namespace bosegas
