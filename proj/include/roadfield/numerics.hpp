#pragma once

#include <cstddef>
#include <functional>

namespace roadfield::numerics {

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal function on [a, b],
/// stopping when the bracket is shorter than `tol`.
Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double tol);

/// Maximum of f on [a, b]: sample `samples` equally spaced points (endpoints
/// included), then refine around the best sample with golden-section search.
Extremum grid_golden_max(const std::function<double(double)>& f, double a, double b,
                         std::size_t samples, double tol);

struct Bracket {
    double lo;
    double hi;
    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
};

/// Bisection for an increasing sign change: f(lo) < 0 ≤ f(hi).
/// Returns the final bracket once hi − lo ≤ tol (tol = 0 runs to floating-point resolution).
Bracket bisect_increasing(const std::function<double(double)>& f, Bracket start, double tol);

}  // namespace roadfield::numerics
