#pragma once

#include <span>
#include <vector>

#include "bosegas/she_mc.hpp"

namespace bosegas::detail {

struct ReplicaPlan {
    GridSpec grid;
    std::vector<std::vector<std::size_t>> indices;  // grid index per point, per point set
};

ReplicaPlan plan_replicas(const GridSpec& grid, std::span<const SpacePoints> point_sets, std::size_t replicas);

/// Products for one replica, written to samples[set * replicas + r].
std::size_t run_replica(const ReplicaPlan& plan, std::uint64_t seed, std::size_t r, std::size_t replicas,
                        double noise_scale, std::vector<double>& samples);

std::vector<MCEstimate> summarise(const std::vector<double>& samples, std::size_t sets, std::size_t replicas,
                                  std::size_t clipped);

}  // namespace bosegas::detail
