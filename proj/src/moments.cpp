#include "bosegas/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bosegas/bethe_kernel.hpp"
#include "bosegas/errors.hpp"

namespace bosegas {

namespace {

void check_request(const MomentRequest& req) {
    if (!(req.t > 0.0) || !std::isfinite(req.t)) throw std::invalid_argument("t must be positive and finite");
    if (req.x.n() == 0) throw std::invalid_argument("need at least one space coordinate");
}

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

double default_epsilon(int n) {
    if (n < 2) return 0.1;
    return std::min(1.0 / (2.0 * (n - 1)), 0.1);
}

double default_theta(const Partition& lambda, double t, const SpacePoints& x) {
    return to_double(theta_star(lambda)) - x.sum() / (static_cast<double>(lambda.n()) * t);
}

std::vector<double> default_nested_abscissae(int n, double t, const SpacePoints& x) {
    std::vector<double> a(static_cast<std::size_t>(n));
    const double shift = x.sum() / (static_cast<double>(n) * t);
    for (int k = 1; k <= n; ++k) a[static_cast<std::size_t>(k - 1)] = kNestedSpacing * ((n + 1) / 2.0 - k) - shift;
    return a;
}

QuadratureResult nu_lambda(const MomentRequest& req, const Partition& lambda) {
    check_request(req);
    const int n = req.n();
    if (lambda.n() != n) throw std::invalid_argument("partition size does not match coordinate count");
    const auto ell = lambda.length();
    if (ell > static_cast<std::size_t>(kMaxTensorLines))
        throw UnsupportedError("nu_lambda: partitions with more than " + std::to_string(kMaxTensorLines) +
                               " parts are not supported (got " + lambda.to_string() + ")");

    ContourPlan plan = req.plan;
    if (!plan.theta) plan.theta = default_theta(lambda, req.t, req.x);
    if (!plan.epsilon) plan.epsilon = default_epsilon(n);
    if (ell >= 2 && !(*plan.epsilon > 0.0 && *plan.epsilon < 1.0 / (n - 1)))
        throw std::invalid_argument("epsilon must lie in (0, 1/(n-1)) so no determinant pole is crossed");

    std::vector<double> decay(ell);
    for (std::size_t k = 0; k < ell; ++k) decay[k] = 0.5 * lambda[k] * req.t;

    const NuIntegrand integrand(req.t, req.x, lambda);
    return integrate_tensor([&integrand](std::span<const Complex> w) { return integrand(w); }, plan, ell, decay,
                            Symmetry::conjugate);
}

ScaledComplex nu_top_closed_form(double t, const SpacePoints& x) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const int n = static_cast<int>(x.n());
    const double s = x.sum();
    const auto& xs = x.sorted();
    double linear = 0.0;
    for (int i = 1; i <= n; ++i) linear += xs[static_cast<std::size_t>(i - 1)] * ((n + 1) / 2.0 - i);
    const double log_value = log_factorial(n - 1) - 0.5 * std::log(2.0 * std::numbers::pi * n * t) +
                             to_double(lyapunov_exponent(n)) * t + linear - s * s / (2.0 * n * t);
    return ScaledComplex{{1.0, 0.0}, log_value}.normalized();
}

ScaledComplex leading_asymptotic(double t, const SpacePoints& x) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const int n = static_cast<int>(x.n());
    const double log_value = log_factorial(n - 1) - 0.5 * std::log(2.0 * std::numbers::pi * n * t) +
                             to_double(lyapunov_exponent(n)) * t + log_ground_state(x);
    return ScaledComplex{{1.0, 0.0}, log_value}.normalized();
}

PartitionExpansion partition_expansion(const MomentRequest& req) {
    check_request(req);
    const int n = req.n();
    if (n > kMaxFullRouteN)
        throw UnsupportedError("partition sum supports n <= " + std::to_string(kMaxFullRouteN) + ", got " +
                               std::to_string(n));
    PartitionExpansion out;
    ScaledSum total;
    ScaledSum tail_abs;
    ScaledSum step_abs;
    ScaledSum round_abs;
    for (auto& lambda : enumerate_partitions(n)) {
        QuadratureResult r = nu_lambda(req, lambda);
        total.add(r.value);
        const double mag_log = r.value.log_abs();
        if (std::isfinite(mag_log)) {
            tail_abs.add(Complex{r.tail_bound, 0.0}, mag_log);
            step_abs.add(Complex{r.step_estimate, 0.0}, mag_log);
            round_abs.add(Complex{r.roundoff_estimate, 0.0}, mag_log);
        }
        out.total.evaluations += r.evaluations;
        out.terms.push_back({std::move(lambda), r});
    }
    out.total.value = total.value();
    if (!out.total.value.is_zero()) {
        out.total.tail_bound = std::abs(ratio(tail_abs.value(), out.total.value));
        out.total.step_estimate = std::abs(ratio(step_abs.value(), out.total.value));
        out.total.roundoff_estimate = std::abs(ratio(round_abs.value(), out.total.value));
    }
    return out;
}

QuadratureResult moment_partition_sum(const MomentRequest& req) { return partition_expansion(req).total; }

QuadratureResult moment_nested_contours(const MomentRequest& req, std::span<const double> a) {
    check_request(req);
    const int n = req.n();
    if (n > kMaxFullRouteN)
        throw UnsupportedError("nested-contour route supports n <= " + std::to_string(kMaxFullRouteN) + ", got " +
                               std::to_string(n));
    std::vector<double> abscissae = a.empty() ? default_nested_abscissae(n, req.t, req.x)
                                              : std::vector<double>(a.begin(), a.end());
    if (abscissae.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("nested contours: need one abscissa per coordinate");
    for (std::size_t j = 0; j + 1 < abscissae.size(); ++j)
        if (!(abscissae[j] - abscissae[j + 1] > 1.0))
            throw std::invalid_argument("nested contours: require a_j - a_{j+1} > 1");

    const ContourPlan& plan = req.plan;
    const double decay = 0.5 * req.t;
    std::vector<LineSpec> lines(abscissae.size());
    for (std::size_t k = 0; k < lines.size(); ++k)
        lines[k] = {abscissae[k], plan.half_width > 0.0 ? plan.half_width : auto_half_width(decay, plan), decay};

    const std::vector<double> xs = req.x.sorted();
    const double t = req.t;
    auto integrand = [&xs, t](std::span<const Complex> z) {
        const std::size_t m = z.size();
        Complex weight{1.0, 0.0};
        Complex exponent{};
        for (std::size_t i = 0; i < m; ++i) {
            exponent += 0.5 * t * z[i] * z[i] + xs[i] * z[i];
            for (std::size_t j = i + 1; j < m; ++j) {
                const Complex d = z[i] - z[j];
                weight *= d / (d - 1.0);
            }
        }
        return ScaledComplex{weight * std::polar(1.0, exponent.imag()), exponent.real()}.normalized();
    };
    return integrate_lines(integrand, lines, plan.nodes_per_line, Symmetry::conjugate);
}

AsymptoticRatio asymptotic_ratio(const MomentRequest& req) {
    const QuadratureResult m = moment_partition_sum(req);
    AsymptoticRatio out;
    out.moment = m.value;
    out.leading = leading_asymptotic(req.t, req.x);
    const Complex r = ratio(out.moment, out.leading);
    out.ratio = std::abs(r);
    out.deviation = std::abs(r - 1.0);
    out.error = out.ratio * m.relative_error();
    return out;
}

}  // namespace bosegas
