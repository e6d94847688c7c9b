// Reference tensor trapezoid rule: one flat loop over the linearised node
// index. Kept for testing the OpenMP kernel in quadrature.cpp.

#include <array>

#include "bosegas/quadrature.hpp"
#include "quadrature_detail.hpp"

namespace bosegas {

QuadratureResult integrate_lines_serial(const Integrand& f, std::span<const LineSpec> lines,
                                        int nodes_per_line, Symmetry symmetry) {
    const auto rules = detail::build_rules(lines, nodes_per_line);
    const std::size_t ell = rules.size();
    const std::size_t n = rules[0].nodes.size();
    std::size_t total_nodes = 1;
    for (std::size_t k = 0; k < ell; ++k) total_nodes *= n;
    const std::size_t slab = total_nodes / n;
    total_nodes = slab * detail::slab_count(n, symmetry);

    detail::SlabSums total;
    detail::SlabSums current;
    std::array<Complex, kMaxLines> w{};
    const std::span<const Complex> wspan(w.data(), ell);

    for (std::size_t linear = 0; linear < total_nodes; ++linear) {
        std::array<std::size_t, kMaxLines> idx{};
        std::size_t rest = linear;
        for (std::size_t k = ell; k-- > 0;) {
            idx[k] = rest % n;
            rest /= n;
        }
        double weight = 1.0;
        double coarse = 1.0;
        for (std::size_t k = 0; k < ell; ++k) {
            w[k] = rules[k].nodes[idx[k]];
            weight *= rules[k].weights[idx[k]];
            coarse *= rules[k].coarse_weights[idx[k]];
        }

        const ScaledComplex v = f(wspan);
        detail::check_finite(v, wspan);
        detail::add_node(current, v, weight, coarse);

        if ((linear + 1) % slab == 0) {
            detail::merge_slab(total, current, detail::mirrored(idx[0], n, symmetry));
            current = {};
        }
    }
    return detail::finish(total, lines);
}

}  // namespace bosegas
