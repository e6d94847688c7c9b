#include "bosegas/she_mc.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "bosegas/parallel.hpp"
#include "bosegas/philox.hpp"
#include "she_mc_detail.hpp"

namespace bosegas {

void validate_grid(const GridSpec& g, double max_abs_point) {
    if (!(g.dx > 0.0) || !(g.dt > 0.0) || !(g.t_final > 0.0))
        throw std::invalid_argument("grid: dx, dt and t_final must be positive");
    if (g.dt > 0.5 * g.dx * g.dx * (1.0 + 1e-12))
        throw std::invalid_argument("grid: explicit scheme needs dt <= dx^2/2");
    if (g.half_width < 4.0 * std::sqrt(g.t_final) + max_abs_point)
        throw std::invalid_argument("grid: half_width must be >= 4 sqrt(t_final) + max|x|");
}

double minimal_half_width(double dx, double t_final, double max_abs_point) {
    const double need = 4.0 * std::sqrt(t_final) + max_abs_point;
    return std::ceil(need / dx) * dx;
}

std::size_t Field::index_of(double x) const {
    const double pos = std::round((x - x_min) / dx);
    if (pos < 1.0 || pos > static_cast<double>(values.size()) - 2.0)
        throw std::invalid_argument("point outside the interior of the grid");
    return static_cast<std::size_t>(pos);
}

double Field::total_mass() const {
    double m = 0.0;
    for (double v : values) m += v;
    return m * dx;
}

Field simulate_field(const GridSpec& grid, std::uint64_t seed, std::uint64_t replica, double noise_scale) {
    validate_grid(grid);
    const auto half_cells = static_cast<std::size_t>(std::llround(grid.half_width / grid.dx));
    const std::size_t cells = 2 * half_cells + 1;
    const auto steps = static_cast<std::size_t>(std::ceil(grid.t_final / grid.dt - 1e-9));
    const double dt = grid.t_final / static_cast<double>(steps);
    const double diff = dt / (2.0 * grid.dx * grid.dx);
    const double amp = noise_scale * std::sqrt(dt / grid.dx);
    const auto key = derive_key(seed, replica);

    Field f;
    f.dx = grid.dx;
    f.x_min = -static_cast<double>(half_cells) * grid.dx;
    f.time = grid.t_final;
    f.steps = steps;
    f.values.assign(cells, 0.0);
    f.values[half_cells] = 1.0 / grid.dx;
    std::vector<double> next(cells, 0.0);

    for (std::size_t m = 0; m < steps; ++m) {
        const auto& z = f.values;
        for (std::size_t j = 1; j + 1 < cells; j += 2) {
            // One Philox block feeds cells j and j+1.
            std::array<double, 2> eta{0.0, 0.0};
            if (amp != 0.0) eta = normal_pair(key, static_cast<std::uint32_t>(j / 2), static_cast<std::uint32_t>(m));
            for (std::size_t q = 0; q < 2; ++q) {
                const std::size_t c = j + q;
                if (c + 1 >= cells) break;
                double v = z[c] + diff * (z[c + 1] - 2.0 * z[c] + z[c - 1]) + z[c] * eta[q] * amp;
                if (v < 0.0) {
                    v = 0.0;
                    ++f.clipped;
                }
                next[c] = v;
            }
        }
        next[0] = 0.0;
        next[cells - 1] = 0.0;
        f.values.swap(next);
    }
    return f;
}

namespace detail {

ReplicaPlan plan_replicas(const GridSpec& grid, std::span<const SpacePoints> point_sets, std::size_t replicas) {
    if (replicas < 100) throw std::invalid_argument("Monte Carlo estimates need at least 100 replicas");
    if (point_sets.empty()) throw std::invalid_argument("no point sets given");
    double max_abs = 0.0;
    for (const auto& p : point_sets) {
        if (p.n() == 0) throw std::invalid_argument("empty point set");
        max_abs = std::max(max_abs, p.max_abs());
    }
    validate_grid(grid, max_abs);

    // Geometry of the grid without simulating.
    Field geometry;
    const auto half_cells = static_cast<std::size_t>(std::llround(grid.half_width / grid.dx));
    geometry.dx = grid.dx;
    geometry.x_min = -static_cast<double>(half_cells) * grid.dx;
    geometry.values.assign(2 * half_cells + 1, 0.0);

    ReplicaPlan plan{grid, {}};
    for (const auto& p : point_sets) {
        std::vector<std::size_t> idx;
        for (double x : p.coords()) idx.push_back(geometry.index_of(x));
        plan.indices.push_back(std::move(idx));
    }
    return plan;
}

std::size_t run_replica(const ReplicaPlan& plan, std::uint64_t seed, std::size_t r, std::size_t replicas,
                        double noise_scale, std::vector<double>& samples) {
    const Field f = simulate_field(plan.grid, seed, r, noise_scale);
    for (std::size_t s = 0; s < plan.indices.size(); ++s) {
        double prod = 1.0;
        for (std::size_t j : plan.indices[s]) prod *= f.values[j];
        samples[s * replicas + r] = prod;
    }
    return f.clipped;
}

namespace {
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}
}  // namespace

std::vector<MCEstimate> summarise(const std::vector<double>& samples, std::size_t sets, std::size_t replicas,
                                  std::size_t clipped) {
    std::vector<MCEstimate> out(sets);
    std::vector<double> dev(replicas);
    for (std::size_t s = 0; s < sets; ++s) {
        const double* v = samples.data() + s * replicas;
        const double mean = pairwise_sum(v, replicas) / static_cast<double>(replicas);
        for (std::size_t r = 0; r < replicas; ++r) dev[r] = (v[r] - mean) * (v[r] - mean);
        const double var = pairwise_sum(dev.data(), replicas) / static_cast<double>(replicas - 1);
        out[s] = {mean, std::sqrt(var / static_cast<double>(replicas)), replicas, clipped};
    }
    return out;
}

}  // namespace detail

std::vector<MCEstimate> estimate_moments(const GridSpec& grid, std::span<const SpacePoints> point_sets,
                                         std::size_t replicas, std::uint64_t seed, double noise_scale) {
    const auto plan = detail::plan_replicas(grid, point_sets, replicas);
    std::vector<double> samples(point_sets.size() * replicas);
    std::vector<std::size_t> clipped(replicas, 0);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_threads())
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(replicas); ++r) {
        try {
            clipped[static_cast<std::size_t>(r)] =
                detail::run_replica(plan, seed, static_cast<std::size_t>(r), replicas, noise_scale, samples);
        } catch (...) {
#pragma omp critical(bosegas_mc_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t total_clipped = 0;
    for (auto c : clipped) total_clipped += c;
    return detail::summarise(samples, point_sets.size(), replicas, total_clipped);
}

MCEstimate estimate_moment(const GridSpec& grid, const SpacePoints& points, std::size_t replicas, std::uint64_t seed) {
    return estimate_moments(grid, std::span<const SpacePoints>(&points, 1), replicas, seed).front();
}

}  // namespace bosegas
