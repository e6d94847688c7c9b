#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/parallel.hpp"
#include "bosegas/quadrature.hpp"

using namespace bosegas;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScaledComplex gaussian(std::span<const Complex> w) {
    Complex e{};
    for (const auto& z : w) e += 0.5 * z * z;
    return ScaledComplex::exp_of(e);
}

bool same_bits(const QuadratureResult& a, const QuadratureResult& b) {
    return a.value.mantissa == b.value.mantissa && a.value.log_scale == b.value.log_scale &&
           a.step_estimate == b.step_estimate && a.tail_bound == b.tail_bound && a.evaluations == b.evaluations;
}

}  // namespace

TEST_CASE("line_nodes") {
    ContourPlan plan;
    plan.theta = 0.0;
    plan.epsilon = 0.1;
    plan.half_width = 1.0;
    plan.nodes_per_line = 3;
    const LineRule r0 = line_nodes(plan, 0);
    REQUIRE(r0.nodes.size() == 3);
    CHECK(r0.nodes[0] == Complex{0.0, -1.0});
    CHECK(r0.nodes[1] == Complex{0.0, 0.0});
    CHECK(r0.nodes[2] == Complex{0.0, 1.0});
    CHECK(r0.weights[0] == doctest::Approx(0.5 / kTwoPi));
    CHECK(r0.weights[1] == doctest::Approx(1.0 / kTwoPi));
    CHECK(r0.weights[2] == doctest::Approx(0.5 / kTwoPi));

    const LineRule r1 = line_nodes(plan, 1);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(r1.nodes[j].real() == doctest::Approx(0.1));
        CHECK(r1.nodes[j].imag() == r0.nodes[j].imag());
    }

    plan.nodes_per_line = 257;
    plan.half_width = 7.3;
    const LineRule r = line_nodes(plan, 0);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) CHECK(r.nodes[j] == std::conj(r.nodes[r.nodes.size() - 1 - j]));

    plan.nodes_per_line = 4;
    CHECK_THROWS_AS(line_nodes(plan, 0), std::invalid_argument);
    plan.nodes_per_line = 1;
    CHECK_THROWS_AS(line_nodes(plan, 0), std::invalid_argument);
}

TEST_CASE("two-dimensional Gaussian") {
    ContourPlan plan;
    plan.theta = 0.0;
    plan.epsilon = 0.0;
    plan.half_width = 8.0;
    const std::vector<double> decay{0.5, 0.5};
    const auto r = integrate_tensor(gaussian, plan, 2, decay);
    CHECK(r.value.to_complex().real() == doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
    CHECK(std::abs(r.value.to_complex().imag()) < 1e-16);
    CHECK(r.tail_bound >= 0.0);
    CHECK(r.step_estimate >= 0.0);
    CHECK(r.evaluations == 257u * 257u);
}

TEST_CASE("heat kernel from a shifted Gaussian line") {
    for (double t : {0.5, 1.0, 3.0}) {
        for (double x : {0.0, 0.7, -2.0}) {
            ContourPlan plan;
            plan.theta = -x / t;
            const std::vector<double> decay{0.5 * t};
            const auto f = [t, x](std::span<const Complex> w) {
                return ScaledComplex::exp_of(0.5 * t * w[0] * w[0] + x * w[0]);
            };
            const auto r = integrate_tensor(f, plan, 1, decay);
            const double exact = std::exp(-x * x / (2.0 * t)) / std::sqrt(kTwoPi * t);
            CHECK(r.value.to_complex().real() == doctest::Approx(exact).epsilon(1e-13));
            CHECK(r.relative_error() < 1e-10);
        }
    }
}

TEST_CASE("spectral convergence on the Gaussian") {
    const double exact = 1.0 / std::sqrt(kTwoPi);
    const LineSpec line{0.0, 8.0, 0.5};
    double previous = 1.0;
    for (int nodes : {9, 17, 33, 65}) {
        const auto r = integrate_lines(gaussian, std::span(&line, 1), nodes);
        const double err = std::abs(r.value.to_complex().real() - exact) / exact;
        if (previous > 1e-13) CHECK(err <= std::max(previous / 10.0, 1e-13));
        previous = err;
    }
    CHECK(previous < 1e-13);
}

TEST_CASE("step estimate decays at least fourfold when nodes double") {
    const double t = 1.0;
    const auto f = [t](std::span<const Complex> w) {
        return ScaledComplex::exp_of(0.5 * t * w[0] * w[0] + 0.3 * w[0]) * ScaledComplex::from_complex(1.0 / (w[0] - 2.0));
    };
    const LineSpec line{0.0, 9.0, 0.5 * t};
    const auto a = integrate_lines(f, std::span(&line, 1), 17);
    const auto b = integrate_lines(f, std::span(&line, 1), 33);
    const auto c = integrate_lines(f, std::span(&line, 1), 65);
    CHECK(b.step_estimate * 4.0 <= a.step_estimate);
    CHECK(c.step_estimate * 4.0 <= b.step_estimate);
}

TEST_CASE("theta shift leaves an entire integrand's integral unchanged") {
    const double t = 2.0;
    const auto f = [t](std::span<const Complex> w) {
        return ScaledComplex::exp_of(0.5 * t * w[0] * w[0] + 0.5 * w[0] + 0.5 * t * w[1] * w[1] - w[1]) *
               ScaledComplex::from_complex(std::cos(w[0] - w[1]));
    };
    const std::vector<double> decay{0.5 * t, 0.5 * t};
    ContourPlan plan;
    plan.epsilon = 0.0;
    plan.theta = 0.0;
    const auto base = integrate_tensor(f, plan, 2, decay);
    for (double shift : {-0.3, 0.3}) {
        plan.theta = shift;
        const auto r = integrate_tensor(f, plan, 2, decay);
        CHECK(std::abs(ratio(r.value - base.value, base.value)) <= r.relative_error() + base.relative_error());
    }
}

TEST_CASE("non-finite integrand names the node") {
    const LineSpec line{0.0, 1.0, 1.0};
    const auto f = [](std::span<const Complex> w) {
        return ScaledComplex{{w[0].imag() == 0.0 ? std::nan("") : 1.0, 0.0}, 0.0};
    };
    CHECK_THROWS_AS(integrate_lines(f, std::span(&line, 1), 5), NumericError);
    CHECK_THROWS_AS(integrate_lines_serial(f, std::span(&line, 1), 5), NumericError);
    try {
        integrate_lines(f, std::span(&line, 1), 5);
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("(0,0)") != std::string::npos);
    }
}

TEST_CASE("parallel kernel is bit-identical to the serial reference for any thread count") {
    const double t = 1.0;
    const auto f = [t](std::span<const Complex> w) {
        Complex prod = 1.0;
        Complex e{};
        for (std::size_t i = 0; i < w.size(); ++i) {
            e += 0.5 * t * w[i] * w[i] + 0.25 * static_cast<double>(i) * w[i];
            for (std::size_t j = i + 1; j < w.size(); ++j) prod *= (w[i] - w[j]) / (w[i] - w[j] - 1.0);
        }
        return ScaledComplex::exp_of(e) * ScaledComplex::from_complex(prod);
    };
    const std::vector<LineSpec> lines{{1.6, 7.0, 0.5}, {0.0, 7.0, 0.5}, {-1.6, 7.0, 0.5}};
    for (auto sym : {Symmetry::none, Symmetry::conjugate}) {
        const auto ref = integrate_lines_serial(f, lines, 33, sym);
        for (int threads : {1, 2, 3, 8}) {
            set_worker_threads(threads);
            CHECK(same_bits(integrate_lines(f, lines, 33, sym), ref));
        }
        set_worker_threads(0);
    }
}

TEST_CASE("conjugate symmetry halves the evaluations and agrees with the full grid") {
    const auto f = [](std::span<const Complex> w) {
        return ScaledComplex::exp_of(0.5 * w[0] * w[0] + 0.5 * w[1] * w[1] + 0.4 * w[0] - 0.2 * w[1]) *
               ScaledComplex::from_complex(1.0 / (w[0] - w[1] + 1.5));
    };
    const std::vector<LineSpec> lines{{0.3, 8.0, 0.5}, {0.1, 8.0, 0.5}};
    const auto full = integrate_lines(f, lines, 65);
    const auto half = integrate_lines(f, lines, 65, Symmetry::conjugate);
    CHECK(half.evaluations == 33u * 65u);
    CHECK(std::abs(ratio(full.value - half.value, full.value)) < 1e-14);
    CHECK(std::abs(half.value.to_complex().imag()) < 1e-15 * std::abs(half.value.to_complex()));
}
