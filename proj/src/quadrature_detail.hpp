#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/quadrature.hpp"

namespace bosegas::detail {

struct SlabSums {
    ScaledSum fine;
    ScaledSum coarse;
    ScaledSum l1;
    std::size_t evaluations = 0;
};

inline void check_finite(const ScaledComplex& v, std::span<const Complex> w) {
    if (v.is_finite()) return;
    std::ostringstream os;
    os.precision(17);
    os << "non-finite integrand at node w = (";
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? ", " : "") << w[k];
    os << ")";
    throw NumericError(os.str());
}

inline void add_node(SlabSums& s, const ScaledComplex& v, double weight, double coarse_weight) {
    ++s.evaluations;
    if (v.is_zero()) return;
    s.fine.add(v.mantissa * weight, v.log_scale);
    s.l1.add(Complex{std::sqrt(std::norm(v.mantissa)) * weight, 0.0}, v.log_scale);
    if (coarse_weight != 0.0) s.coarse.add(v.mantissa * coarse_weight, v.log_scale);
}

/// Adds one slab's sums; a mirrored slab also contributes its conjugate.
inline void merge_slab(SlabSums& total, const SlabSums& slab, bool mirrored) {
    total.fine.merge(slab.fine);
    total.coarse.merge(slab.coarse);
    total.l1.merge(slab.l1);
    total.evaluations += slab.evaluations;
    if (mirrored) {
        total.fine.add(slab.fine.value().conj());
        total.coarse.add(slab.coarse.value().conj());
        total.l1.merge(slab.l1);
    }
}

/// Number of first-line slabs to evaluate, and whether slab i0 is mirrored.
inline std::size_t slab_count(std::size_t n, Symmetry symmetry) {
    return symmetry == Symmetry::conjugate ? n / 2 + 1 : n;
}
inline bool mirrored(std::size_t i0, std::size_t n, Symmetry symmetry) {
    return symmetry == Symmetry::conjugate && i0 < n / 2;
}

std::vector<LineRule> build_rules(std::span<const LineSpec> lines, int nodes_per_line);

QuadratureResult finish(const SlabSums& total, std::span<const LineSpec> lines);

}  // namespace bosegas::detail
