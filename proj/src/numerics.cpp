#include "roadfield/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "roadfield/errors.hpp"

namespace roadfield::numerics {

Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double tol) {
    static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    if (b < a) std::swap(a, b);

    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    // Width shrinks by 1/φ per pass; the cap only guards tol below ulp(x).
    for (int it = 0; it < 400 && (b - a) > tol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }

    Extremum best = f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
    // The maximum of a concave function may sit on an endpoint.
    for (double x : {a, b}) {
        const double fx = f(x);
        if (fx > best.value) best = {x, fx};
    }
    return best;
}

Extremum grid_golden_max(const std::function<double(double)>& f, double a, double b,
                         std::size_t samples, double tol) {
    if (samples < 2) samples = 2;
    if (b <= a) return {a, f(a)};

    const double h = (b - a) / static_cast<double>(samples - 1);
    std::size_t best_k = 0;
    double best_v = -INFINITY;
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = (k + 1 == samples) ? b : a + h * static_cast<double>(k);
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_k = k;
        }
    }
    const double lo = best_k == 0 ? a : a + h * static_cast<double>(best_k - 1);
    const double hi = best_k + 1 >= samples ? b : std::min(b, a + h * static_cast<double>(best_k + 1));
    Extremum refined = golden_section_max(f, lo, hi, tol);
    if (best_v > refined.value) {
        refined = {best_k + 1 == samples ? b : a + h * static_cast<double>(best_k), best_v};
    }
    return refined;
}

Bracket bisect_increasing(const std::function<double(double)>& f, Bracket br, double tol) {
    if (tol < 0.0) throw DomainError("bisection tolerance must be non-negative");
    for (int it = 0; it < 2000 && br.width() > tol; ++it) {
        const double m = br.mid();
        if (m <= br.lo || m >= br.hi) break;  // bracket at floating-point resolution
        if (f(m) < 0.0) {
            br.lo = m;
        } else {
            br.hi = m;
        }
    }
    return br;
}

}  // namespace roadfield::numerics
