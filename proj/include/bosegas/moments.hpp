#pragma once

#include <span>
#include <vector>

#include "bosegas/partitions.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/scaled.hpp"
#include "bosegas/spectral.hpp"

namespace bosegas {

/// Arguments of u_n(t, x) = E[prod_i Z(t, x_i)].
struct MomentRequest {
    double t = 1.0;
    SpacePoints x;
    ContourPlan plan;

    int n() const noexcept { return static_cast<int>(x.n()); }
};

/// Tensor quadrature is limited to this many integration variables.
inline constexpr int kMaxTensorLines = 4;
/// Largest n for the full partition sum and the nested-contour route.
inline constexpr int kMaxFullRouteN = 4;
/// Spacing between consecutive nested contours. Must exceed 1; the margin
/// above 1 is the distance from the lines to the nearest pole.
inline constexpr double kNestedSpacing = 1.5;

/// min(1/(2(n-1)), 0.1).
double default_epsilon(int n);

/// theta_star(lambda) - sum(x)/(n t): the saddle of the lambda = (n)
/// integrand, and the minimiser of the envelope exponent for x = 0.
double default_theta(const Partition& lambda, double t, const SpacePoints& x);

/// a_k = s((n+1)/2 - k) - sum(x)/(n t), k = 1..n, s = kNestedSpacing.
std::vector<double> default_nested_abscissae(int n, double t, const SpacePoints& x);

/// nu_lambda(t) over the deformed lines theta + k epsilon + iR. Unset plan
/// fields take the defaults above.
QuadratureResult nu_lambda(const MomentRequest& req, const Partition& lambda);

/// Exact value of nu_(n)(t):
/// (n-1)!/sqrt(2 pi n t) exp(L_n t + sum_i x_(i)((n+1)/2 - i) - (sum x)^2/(2nt)).
ScaledComplex nu_top_closed_form(double t, const SpacePoints& x);

struct PartitionTerm {
    Partition lambda;
    QuadratureResult result;
};

struct PartitionExpansion {
    QuadratureResult total;
    std::vector<PartitionTerm> terms;  // enumeration order, (n) first
};

PartitionExpansion partition_expansion(const MomentRequest& req);

/// sum over lambda |- n of nu_lambda; error estimates add in absolute terms.
QuadratureResult moment_partition_sum(const MomentRequest& req);

/// n-fold integral of prod_{i<j} (z_i-z_j)/(z_i-z_j-1) prod_k exp(t z_k^2/2 + x_(k) z_k)
/// over a_k + iR. Requires a_j - a_{j+1} > 1; empty `a` selects the default.
QuadratureResult moment_nested_contours(const MomentRequest& req, std::span<const double> a = {});

/// (n-1)!/sqrt(2 pi n t) exp(L_n t) Psi_n(x): the large-t leading term,
/// without the exp(-(sum x)^2/(2nt)) refinement kept by nu_top_closed_form.
ScaledComplex leading_asymptotic(double t, const SpacePoints& x);

struct AsymptoticRatio {
    ScaledComplex moment;
    ScaledComplex leading;
    double ratio = 0.0;      // |moment| / |leading|
    double deviation = 0.0;  // |moment/leading - 1|
    double error = 0.0;      // propagated quadrature error on ratio
};

AsymptoticRatio asymptotic_ratio(const MomentRequest& req);

}  // namespace bosegas
