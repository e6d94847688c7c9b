#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/moments.hpp"

using namespace bosegas;

namespace {

constexpr double kPi = std::numbers::pi;

double value(const QuadratureResult& r) { return r.value.to_complex().real(); }

double rel(const ScaledComplex& a, const ScaledComplex& b) { return std::abs(ratio(a - b, b)); }

// E[Z(t,0)^2] for delta initial data, from the two-point Brownian local-time
// representation: (1 + sqrt(pi t) e^{t/4} Phi(sqrt(t/2))) / (2 pi t).
double second_moment_at_origin(double t) {
    const double phi = 0.5 * std::erfc(-std::sqrt(t / 2.0) / std::sqrt(2.0));
    return (1.0 + std::sqrt(kPi * t) * std::exp(t / 4.0) * phi) / (2.0 * kPi * t);
}

}  // namespace

TEST_CASE("n = 1: both routes reproduce the heat kernel") {
    for (double t : {0.5, 2.0}) {
        for (double x : {0.0, 1.0, -2.0}) {
            const MomentRequest req{t, SpacePoints{x}, {}};
            const double exact = std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
            CHECK(value(moment_partition_sum(req)) == doctest::Approx(exact).epsilon(1e-12));
            CHECK(value(moment_nested_contours(req)) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("n = 2 at the origin matches the closed-form second moment") {
    for (double t : {0.5, 1.0, 3.0}) {
        const MomentRequest req{t, SpacePoints{0.0, 0.0}, {}};
        const double exact = second_moment_at_origin(t);
        CHECK(value(moment_partition_sum(req)) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(value(moment_nested_contours(req)) == doctest::Approx(exact).epsilon(1e-8));
    }
    CHECK(second_moment_at_origin(1.0) == doctest::Approx(0.434530305923645).epsilon(1e-13));
}

TEST_CASE("closed form for the single-cluster term") {
    const double t = 1.0;
    const auto v = nu_top_closed_form(t, SpacePoints{0.0, 1.0});
    CHECK(v.to_complex().real() == doctest::Approx(std::exp(-0.5) / std::sqrt(4.0 * kPi)).epsilon(1e-14));
    CHECK(nu_top_closed_form(2.0, SpacePoints{1.5}).to_complex().real() ==
          doctest::Approx(std::exp(-1.5 * 1.5 / 4.0) / std::sqrt(4.0 * kPi)).epsilon(1e-14));
    for (int n = 2; n <= 5; ++n) {
        std::vector<double> ramp(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ramp[static_cast<std::size_t>(i)] = i;
        for (const auto& coords : {std::vector<double>(static_cast<std::size_t>(n), 0.0), ramp}) {
            const MomentRequest req{2.0, SpacePoints(coords), {}};
            const auto q = nu_lambda(req, Partition({n}));
            CHECK(rel(q.value, nu_top_closed_form(2.0, req.x)) < 1e-10);
        }
    }
}

TEST_CASE("leading asymptotic term") {
    CHECK(leading_asymptotic(3.0, SpacePoints{0.0}).to_complex().real() ==
          doctest::Approx(1.0 / std::sqrt(6.0 * kPi)).epsilon(1e-14));
    CHECK(leading_asymptotic(10.0, SpacePoints{0.0, 0.0}).to_complex().real() ==
          doctest::Approx(std::exp(2.5) / std::sqrt(40.0 * kPi)).epsilon(1e-14));
    const auto a = leading_asymptotic(4.0, SpacePoints{0.0, 2.0, -1.0});
    const auto b = leading_asymptotic(4.0, SpacePoints{-1.0, 0.0, 2.0});
    CHECK(a.mantissa == b.mantissa);
    CHECK(a.log_scale == b.log_scale);
    // Far past double range without overflow.
    CHECK(leading_asymptotic(5000.0, SpacePoints{0.0, 0.0, 0.0}).log_abs() ==
          doctest::Approx(5000.0 - 0.5 * std::log(2.0 * kPi * 3.0 * 5000.0) + std::log(2.0)));
}

TEST_CASE("asymptotic ratio") {
    for (double t : {0.5, 7.0, 40.0}) {
        const auto r = asymptotic_ratio({t, SpacePoints{0.0}, {}});
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
    }
    double previous = 1.0;
    for (double t : {5.0, 10.0, 20.0}) {
        const auto r = asymptotic_ratio({t, SpacePoints{0.0, 0.0}, {}});
        const double exact = second_moment_at_origin(t) / (std::exp(t / 4.0) / std::sqrt(4.0 * kPi * t));
        CHECK(r.ratio == doctest::Approx(exact).epsilon(1e-12));
        CHECK(r.deviation < previous);
        previous = r.deviation;
    }
}

TEST_CASE("routes agree for n = 2 and are exchangeable") {
    const SpacePoints x{0.0, 1.0};
    const SpacePoints y{1.0, 0.0};
    for (double t : {0.5, 2.0}) {
        const auto a = moment_partition_sum({t, x, {}});
        const auto b = moment_nested_contours({t, x, {}});
        CHECK(rel(a.value, b.value) < 1e-6);
        CHECK(rel(moment_partition_sum({t, y, {}}).value, a.value) < 1e-12);
        CHECK(rel(moment_nested_contours({t, y, {}}).value, b.value) < 1e-12);
        CHECK(a.value.to_complex().real() > 0.0);
        CHECK(std::abs(a.value.to_complex().imag()) <= a.relative_error() * std::abs(a.value.to_complex()));
    }
}

TEST_CASE("nested contours are independent of valid spacings") {
    const MomentRequest req{1.0, SpacePoints{0.0, 0.0}, {}};
    const std::vector<double> a{1.6, 0.2};
    const std::vector<double> b{0.75, -0.75};
    const auto u = moment_nested_contours(req, a);
    const auto v = moment_nested_contours(req, b);
    CHECK(rel(u.value, v.value) <= u.relative_error() + v.relative_error());
}

TEST_CASE("theta and epsilon leave nu_lambda unchanged") {
    const SpacePoints x{0.0, 0.5, 1.0};
    const Partition lambda({2, 1});
    const MomentRequest base{1.0, x, {}};
    const auto ref = nu_lambda(base, lambda);
    MomentRequest shifted = base;
    shifted.plan.theta = default_theta(lambda, 1.0, x) + 0.3;
    const auto s = nu_lambda(shifted, lambda);
    CHECK(rel(s.value, ref.value) <= s.relative_error() + ref.relative_error());
    MomentRequest eps = base;
    eps.plan.epsilon = 0.05;
    const auto e = nu_lambda(eps, lambda);
    CHECK(rel(e.value, ref.value) <= e.relative_error() + ref.relative_error());
}

TEST_CASE("defaults") {
    CHECK(default_epsilon(2) == 0.1);
    CHECK(default_epsilon(7) == doctest::Approx(1.0 / 12.0));
    CHECK(default_theta(Partition({3}), 1.0, SpacePoints{0.0, 0.0, 0.0}) == -1.0);
    CHECK(default_theta(Partition({2, 1}), 2.0, SpacePoints{3.0, 0.0, 0.0}) == doctest::Approx(-1.0 / 3.0 - 0.5));
    const auto a = default_nested_abscissae(3, 1.0, SpacePoints{0.0, 0.0, 0.0});
    CHECK(a == std::vector<double>{kNestedSpacing, 0.0, -kNestedSpacing});
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(moment_partition_sum({0.0, SpacePoints{0.0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(moment_partition_sum({1.0, SpacePoints{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(moment_partition_sum({1.0, SpacePoints{0, 0, 0, 0, 0}, {}}), UnsupportedError);
    CHECK_THROWS_AS(moment_nested_contours({1.0, SpacePoints{0, 0, 0, 0, 0}, {}}), UnsupportedError);
    CHECK_THROWS_AS(nu_lambda({1.0, SpacePoints{0, 0, 0, 0, 0}, {}}, Partition({1, 1, 1, 1, 1})), UnsupportedError);
    const std::vector<double> close{1.0, 0.0};
    CHECK_THROWS_AS(moment_nested_contours({1.0, SpacePoints{0.0, 0.0}, {}}, close), std::invalid_argument);
    const std::vector<double> wrong_size{1.0};
    CHECK_THROWS_AS(moment_nested_contours({1.0, SpacePoints{0.0, 0.0}, {}}, wrong_size), std::invalid_argument);
    MomentRequest bad{1.0, SpacePoints{0.0, 0.0, 0.0}, {}};
    bad.plan.epsilon = 0.5;
    CHECK_THROWS_AS(nu_lambda(bad, Partition({2, 1})), std::invalid_argument);
    CHECK_NOTHROW(nu_lambda(bad, Partition({3})));
    CHECK_THROWS_AS(nu_lambda({1.0, SpacePoints{0.0}, {}}, Partition({2})), std::invalid_argument);
}

TEST_CASE("single-cluster term is available up to nine particles") {
    const MomentRequest req{1.0, SpacePoints(std::vector<double>(9, 0.0)), {}};
    CHECK(rel(nu_lambda(req, Partition({9})).value, nu_top_closed_form(1.0, req.x)) < 1e-8);
}
