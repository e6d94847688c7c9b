#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bosegas/spectral.hpp"

namespace bosegas {

/// Finite-difference grid on [-L, L] for dZ = (1/2) Z_xx dt + Z dW.
struct GridSpec {
    double dx = 0.05;
    double dt = 0.00125;
    double half_width = 4.0;  // L
    double t_final = 0.5;
};

/// Throws std::invalid_argument unless dt <= dx^2/2 and
/// L >= 4 sqrt(t_final) + max_abs_point.
void validate_grid(const GridSpec& grid, double max_abs_point = 0.0);

/// Smallest L satisfying validate_grid, rounded up to a whole number of cells.
double minimal_half_width(double dx, double t_final, double max_abs_point);

struct Field {
    double x_min = 0.0;  // coordinate of values[0]
    double dx = 0.0;
    double time = 0.0;
    std::size_t steps = 0;
    std::size_t clipped = 0;  // negative updates reset to zero
    std::vector<double> values;

    std::size_t index_of(double x) const;
    double at(double x) const { return values[index_of(x)]; }
    double total_mass() const;
};

/// One realisation at t_final. Explicit Euler,
///   Z' = Z + (dt/2dx^2)(Z_{j+1} - 2Z_j + Z_{j-1}) + noise_scale Z eta sqrt(dt/dx),
/// from Z_0 = delta/dx at x = 0 with zero boundary values. The number of steps
/// is ceil(t_final/dt) with the step shrunk to land exactly on t_final.
/// eta for (step, cell) comes from a Philox stream keyed by (seed, replica),
/// so the field is a pure function of its arguments.
Field simulate_field(const GridSpec& grid, std::uint64_t seed, std::uint64_t replica = 0, double noise_scale = 1.0);

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t replicas = 0;
    std::size_t clipped = 0;
};

/// Sample mean of prod_i Z(t_final, x_i) (nearest grid points) over
/// independent replicas; replica r uses stream (seed, r).
MCEstimate estimate_moment(const GridSpec& grid, const SpacePoints& points, std::size_t replicas, std::uint64_t seed);

/// Several point sets from the same replicas (OpenMP over replicas).
std::vector<MCEstimate> estimate_moments(const GridSpec& grid, std::span<const SpacePoints> point_sets,
                                         std::size_t replicas, std::uint64_t seed, double noise_scale = 1.0);

/// Single-threaded reference for estimate_moments.
std::vector<MCEstimate> estimate_moments_serial(const GridSpec& grid, std::span<const SpacePoints> point_sets,
                                                std::size_t replicas, std::uint64_t seed, double noise_scale = 1.0);

}  // namespace bosegas
