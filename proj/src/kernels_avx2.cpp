// AVX2 row kernel. Built with -mavx2 (no FMA) and only entered after a
// runtime CPU check.

#include <immintrin.h>

#include "kernel_element.hpp"

namespace roadfield::kernels {

bool update_row_avx2(const RowArgs& a) {
    bool ok = detail::edges(a);
    const std::size_t n = a.n;
    if (n < 3) return ok;

    const __m256d center = _mm256_set1_pd(a.k.center);
    const __m256d lateral = _mm256_set1_pd(a.k.lateral);
    const __m256d below = _mm256_set1_pd(a.k.below);
    const __m256d above = _mm256_set1_pd(a.k.above);
    const __m256d source = _mm256_set1_pd(a.k.source);
    const __m256d react = _mm256_set1_pd(a.k.react);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d bound = _mm256_set1_pd(a.bound);
    const bool has_above = a.above != nullptr;
    const bool has_source = a.source != nullptr;
    const bool logistic = a.reaction == RowReaction::Logistic;

    __m256d bad = _mm256_setzero_pd();
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        const __m256d m = _mm256_loadu_pd(a.mid + i);
        const __m256d l = _mm256_loadu_pd(a.mid + i - 1);
        const __m256d r = _mm256_loadu_pd(a.mid + i + 1);
        __m256d acc = _mm256_mul_pd(center, m);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(lateral, _mm256_add_pd(l, r)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(below, _mm256_loadu_pd(a.below + i)));
        if (has_above) acc = _mm256_add_pd(acc, _mm256_mul_pd(above, _mm256_loadu_pd(a.above + i)));
        if (has_source) {
            acc = _mm256_add_pd(acc, _mm256_mul_pd(source, _mm256_loadu_pd(a.source + i)));
        }
        if (logistic) {
            acc = _mm256_add_pd(acc, _mm256_mul_pd(react, _mm256_mul_pd(m, _mm256_sub_pd(one, m))));
        }
        _mm256_storeu_pd(a.out + i, acc);
        bad = _mm256_or_pd(bad, _mm256_cmp_pd(acc, bound, _CMP_NLE_UQ));
    }
    for (; i + 1 < n; ++i) {
        const double v = detail::element(a, i, a.mid[i - 1], a.mid[i + 1]);
        a.out[i] = v;
        ok = ok && detail::within(v, a.bound);
    }
    return ok && _mm256_movemask_pd(bad) == 0;
}

}  // namespace roadfield::kernels
