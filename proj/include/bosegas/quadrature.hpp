#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bosegas/scaled.hpp"

namespace bosegas {

/// Discretisation of the vertical contours theta + k*epsilon + iR.
///
/// theta and epsilon may be left unset by callers that pick defaults per
/// partition (see moments.hpp); line_nodes() requires them.
struct ContourPlan {
    std::optional<double> theta;
    std::optional<double> epsilon;
    /// Truncation half-width T; <= 0 selects a per-line width from the
    /// Gaussian decay rate of the integrand on that line.
    double half_width = 0.0;
    /// Odd and >= 3 so that y = 0 is a node and the coarse grid nests.
    int nodes_per_line = 257;
    double tail_tolerance = 1e-12;
    double safety_log_margin = 20.0;
};

/// One vertical line a + iy, |y| <= half_width, whose integrand envelope
/// decays like exp(-decay_rate * y^2).
struct LineSpec {
    double abscissa = 0.0;
    double half_width = 0.0;
    double decay_rate = 0.0;
};

/// Trapezoid nodes and weights on one line. Weights already include the
/// 1/(2 pi) from dw/(2 pi i) with dw = i dy, so they are real.
struct LineRule {
    std::vector<Complex> nodes;
    std::vector<double> weights;
    std::vector<double> coarse_weights;  // every other node, step 2h; zero at odd nodes
};

struct QuadratureResult {
    ScaledComplex value;
    /// Truncation error estimate relative to |value|.
    double tail_bound = 0.0;
    /// |fine - coarse| / |value| with the coarse grid using every other node.
    double step_estimate = 0.0;
    /// Floating point floor: a few ulps per node, amplified by the
    /// cancellation ratio sum|f w| / |sum f w|.
    double roundoff_estimate = 0.0;
    std::size_t evaluations = 0;

    double relative_error() const noexcept { return tail_bound + step_estimate + roundoff_estimate; }
};

using Integrand = std::function<ScaledComplex(std::span<const Complex>)>;

inline constexpr std::size_t kMaxLines = 8;

/// conjugate: f(conj w) = conj f(w) on lines with real abscissae. Only the
/// first line's nodes with y <= 0 are evaluated; each off-axis slab sum S
/// contributes S + conj(S).
enum class Symmetry { none, conjugate };

void validate_nodes_per_line(int nodes);

/// T = sqrt((log(1/tol) + margin) / decay_rate).
double auto_half_width(double decay_rate, const ContourPlan& plan);

LineRule make_line_rule(const LineSpec& line, int nodes_per_line);

/// Nodes theta + line_index*epsilon + iy on [-T, T] with T = plan.half_width.
LineRule line_nodes(const ContourPlan& plan, std::size_t line_index);

/// Tensor-product trapezoid rule over the given lines (OpenMP over the first
/// line's nodes). Bit-identical to integrate_lines_serial for any thread
/// count: each first-line node owns a partial sum and the partials are merged
/// in index order.
QuadratureResult integrate_lines(const Integrand& f, std::span<const LineSpec> lines, int nodes_per_line,
                                 Symmetry symmetry = Symmetry::none);

/// Single-threaded reference for integrate_lines.
QuadratureResult integrate_lines_serial(const Integrand& f, std::span<const LineSpec> lines,
                                        int nodes_per_line, Symmetry symmetry = Symmetry::none);

/// ell-fold integral over theta + k*epsilon + iR, k = 0..ell-1.
/// decay_rates[k] drives the automatic half-width and the tail bound.
QuadratureResult integrate_tensor(const Integrand& f, const ContourPlan& plan, std::size_t ell,
                                  std::span<const double> decay_rates, Symmetry symmetry = Symmetry::none);

}  // namespace bosegas
