#include "bosegas/quadrature.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <omp.h>

#include "bosegas/parallel.hpp"
#include "quadrature_detail.hpp"

namespace bosegas {

void validate_nodes_per_line(int nodes) {
    if (nodes < 3 || nodes % 2 == 0)
        throw std::invalid_argument("nodes_per_line must be odd and >= 3, got " + std::to_string(nodes));
}

double auto_half_width(double decay_rate, const ContourPlan& plan) {
    if (!(decay_rate > 0.0)) throw std::invalid_argument("decay rate must be positive");
    return std::sqrt((std::log(1.0 / plan.tail_tolerance) + plan.safety_log_margin) / decay_rate);
}

LineRule make_line_rule(const LineSpec& line, int nodes_per_line) {
    validate_nodes_per_line(nodes_per_line);
    if (!(line.half_width > 0.0)) throw std::invalid_argument("half_width must be positive");
    const auto n = static_cast<std::size_t>(nodes_per_line);
    const double h = 2.0 * line.half_width / static_cast<double>(n - 1);
    const double scale = 1.0 / (2.0 * std::numbers::pi);

    LineRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.coarse_weights.resize(n);
    const std::size_t mid = n / 2;
    for (std::size_t j = 0; j < n; ++j) {
        // Symmetric about the centre node so the grid is closed under conjugation.
        const double y = (static_cast<double>(j) - static_cast<double>(mid)) * h;
        rule.nodes[j] = {line.abscissa, y};
        const bool end = (j == 0 || j == n - 1);
        rule.weights[j] = (end ? 0.5 * h : h) * scale;
        rule.coarse_weights[j] = (j % 2 == 1) ? 0.0 : (end ? h : 2.0 * h) * scale;
    }
    return rule;
}

LineRule line_nodes(const ContourPlan& plan, std::size_t line_index) {
    if (!plan.theta) throw std::invalid_argument("line_nodes: plan.theta unset");
    const double eps = plan.epsilon.value_or(0.0);
    return make_line_rule({*plan.theta + static_cast<double>(line_index) * eps, plan.half_width, 0.0},
                          plan.nodes_per_line);
}

namespace detail {

std::vector<LineRule> build_rules(std::span<const LineSpec> lines, int nodes_per_line) {
    if (lines.empty()) throw std::invalid_argument("integrate: need at least one line");
    if (lines.size() > kMaxLines) throw UnsupportedError("integrate: too many lines");
    std::vector<LineRule> rules;
    rules.reserve(lines.size());
    for (const auto& l : lines) rules.push_back(make_line_rule(l, nodes_per_line));
    return rules;
}

QuadratureResult finish(const SlabSums& total, std::span<const LineSpec> lines) {
    QuadratureResult r;
    r.value = total.fine.value();
    r.evaluations = total.evaluations;
    const ScaledComplex coarse = total.coarse.value();
    const ScaledComplex l1 = total.l1.value();
    if (r.value.is_zero()) {
        r.step_estimate = coarse.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
        r.tail_bound = l1.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
        return r;
    }
    r.step_estimate = std::abs(ratio(r.value - coarse, r.value));
    double tail_fraction = 0.0;
    for (const auto& l : lines)
        if (l.decay_rate > 0.0) tail_fraction += std::erfc(l.half_width * std::sqrt(l.decay_rate));
    const double cancellation = std::abs(ratio(l1, r.value));
    r.tail_bound = tail_fraction * cancellation;
    r.roundoff_estimate = 32.0 * std::numeric_limits<double>::epsilon() * cancellation;
    return r;
}

}  // namespace detail

namespace {

// All nodes whose first-line index is i0, remaining indices in odometer order
// (last line fastest).
void integrate_slab(const Integrand& f, const std::vector<LineRule>& rules, std::size_t i0,
                    detail::SlabSums& out) {
    const std::size_t ell = rules.size();
    const std::size_t n = rules[0].nodes.size();
    std::array<std::size_t, kMaxLines> idx{};
    std::array<Complex, kMaxLines> w{};
    idx[0] = i0;
    w[0] = rules[0].nodes[i0];
    for (std::size_t k = 1; k < ell; ++k) w[k] = rules[k].nodes[0];
    const std::span<const Complex> wspan(w.data(), ell);

    while (true) {
        double weight = 1.0;
        double coarse = 1.0;
        for (std::size_t k = 0; k < ell; ++k) {
            weight *= rules[k].weights[idx[k]];
            coarse *= rules[k].coarse_weights[idx[k]];
        }
        const ScaledComplex v = f(wspan);
        detail::check_finite(v, wspan);
        detail::add_node(out, v, weight, coarse);

        bool advanced = false;
        for (std::size_t k = ell; k-- > 1;) {
            if (++idx[k] < n) {
                w[k] = rules[k].nodes[idx[k]];
                advanced = true;
                break;
            }
            idx[k] = 0;
            w[k] = rules[k].nodes[0];
        }
        if (!advanced) break;
    }
}

}  // namespace

QuadratureResult integrate_lines(const Integrand& f, std::span<const LineSpec> lines, int nodes_per_line,
                                 Symmetry symmetry) {
    const auto rules = detail::build_rules(lines, nodes_per_line);
    const std::size_t n = rules[0].nodes.size();
    const std::size_t slabs = detail::slab_count(n, symmetry);
    std::vector<detail::SlabSums> partial(slabs);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_threads())
    for (std::ptrdiff_t i0 = 0; i0 < static_cast<std::ptrdiff_t>(slabs); ++i0) {
        try {
            integrate_slab(f, rules, static_cast<std::size_t>(i0), partial[static_cast<std::size_t>(i0)]);
        } catch (...) {
#pragma omp critical(bosegas_quadrature_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    detail::SlabSums total;
    for (std::size_t i0 = 0; i0 < slabs; ++i0) detail::merge_slab(total, partial[i0], detail::mirrored(i0, n, symmetry));
    return detail::finish(total, lines);
}

QuadratureResult integrate_tensor(const Integrand& f, const ContourPlan& plan, std::size_t ell,
                                  std::span<const double> decay_rates, Symmetry symmetry) {
    if (!plan.theta) throw std::invalid_argument("integrate_tensor: plan.theta unset");
    if (ell == 0) throw std::invalid_argument("integrate_tensor: ell must be positive");
    if (decay_rates.size() != ell) throw std::invalid_argument("integrate_tensor: one decay rate per line");
    const double eps = plan.epsilon.value_or(0.0);
    std::vector<LineSpec> lines(ell);
    for (std::size_t k = 0; k < ell; ++k) {
        lines[k].abscissa = *plan.theta + static_cast<double>(k) * eps;
        lines[k].decay_rate = decay_rates[k];
        lines[k].half_width = plan.half_width > 0.0 ? plan.half_width : auto_half_width(decay_rates[k], plan);
    }
    return integrate_lines(f, lines, plan.nodes_per_line, symmetry);
}

}  // namespace bosegas
