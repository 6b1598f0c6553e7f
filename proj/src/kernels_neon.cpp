// NEON row kernel for AArch64, where Advanced SIMD is part of the base ISA.
// vmulq/vaddq only (no vfmaq), matching the scalar rounding sequence.

#include <arm_neon.h>

#include "kernel_element.hpp"

namespace roadfield::kernels {

bool update_row_neon(const RowArgs& a) {
    bool ok = detail::edges(a);
    const std::size_t n = a.n;
    if (n < 3) return ok;

    const float64x2_t center = vdupq_n_f64(a.k.center);
    const float64x2_t lateral = vdupq_n_f64(a.k.lateral);
    const float64x2_t below = vdupq_n_f64(a.k.below);
    const float64x2_t above = vdupq_n_f64(a.k.above);
    const float64x2_t source = vdupq_n_f64(a.k.source);
    const float64x2_t react = vdupq_n_f64(a.k.react);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t bound = vdupq_n_f64(a.bound);
    const bool has_above = a.above != nullptr;
    const bool has_source = a.source != nullptr;
    const bool logistic = a.reaction == RowReaction::Logistic;

    // Lanes stay all-ones while acc <= bound (false for NaN).
    uint64x2_t good = vdupq_n_u64(~0ull);
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        const float64x2_t m = vld1q_f64(a.mid + i);
        const float64x2_t l = vld1q_f64(a.mid + i - 1);
        const float64x2_t r = vld1q_f64(a.mid + i + 1);
        float64x2_t acc = vmulq_f64(center, m);
        acc = vaddq_f64(acc, vmulq_f64(lateral, vaddq_f64(l, r)));
        acc = vaddq_f64(acc, vmulq_f64(below, vld1q_f64(a.below + i)));
        if (has_above) acc = vaddq_f64(acc, vmulq_f64(above, vld1q_f64(a.above + i)));
        if (has_source) acc = vaddq_f64(acc, vmulq_f64(source, vld1q_f64(a.source + i)));
        if (logistic) acc = vaddq_f64(acc, vmulq_f64(react, vmulq_f64(m, vsubq_f64(one, m))));
        vst1q_f64(a.out + i, acc);
        good = vandq_u64(good, vcleq_f64(acc, bound));
    }
    for (; i + 1 < n; ++i) {
        const double v = detail::element(a, i, a.mid[i - 1], a.mid[i + 1]);
        a.out[i] = v;
        ok = ok && detail::within(v, a.bound);
    }
    return ok && vgetq_lane_u64(good, 0) == ~0ull && vgetq_lane_u64(good, 1) == ~0ull;
}

}  // namespace roadfield::kernels
