// Reference replica loop for estimate_moments, without OpenMP.

#include "bosegas/she_mc.hpp"
#include "she_mc_detail.hpp"

namespace bosegas {

std::vector<MCEstimate> estimate_moments_serial(const GridSpec& grid, std::span<const SpacePoints> point_sets,
                                                std::size_t replicas, std::uint64_t seed, double noise_scale) {
    const auto plan = detail::plan_replicas(grid, point_sets, replicas);
    std::vector<double> samples(point_sets.size() * replicas);
    std::size_t clipped = 0;
    for (std::size_t r = 0; r < replicas; ++r)
        clipped += detail::run_replica(plan, seed, r, replicas, noise_scale, samples);
    return detail::summarise(samples, point_sets.size(), replicas, clipped);
}

}  // namespace bosegas
