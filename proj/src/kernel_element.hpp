#pragma once

#include <cstddef>

#include "roadfield/kernels.hpp"

namespace roadfield::kernels::detail {

// Reference update of a single node. The vector variants reuse it for the
// mirrored end nodes and their remainder loops.
inline double element(const RowArgs& a, std::size_t i, double left, double right) {
    const double m = a.mid[i];
    double acc = a.k.center * m;
    acc = acc + a.k.lateral * (left + right);
    acc = acc + a.k.below * a.below[i];
    if (a.above != nullptr) acc = acc + a.k.above * a.above[i];
    if (a.source != nullptr) acc = acc + a.k.source * a.source[i];
    if (a.reaction == RowReaction::Logistic) acc = acc + a.k.react * (m * (1.0 - m));
    return acc;
}

// !(x <= bound) is true for NaN as well as overflow.
inline bool within(double x, double bound) { return x <= bound; }

inline bool edges(const RowArgs& a) {
    const std::size_t n = a.n;
    const double first = element(a, 0, a.mid[1], a.mid[1]);
    const double last = element(a, n - 1, a.mid[n - 2], a.mid[n - 2]);
    a.out[0] = first;
    a.out[n - 1] = last;
    return within(first, a.bound) && within(last, a.bound);
}

}  // namespace roadfield::kernels::detail
