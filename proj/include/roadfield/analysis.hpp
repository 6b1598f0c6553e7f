#pragma once

#include <span>
#include <utility>
#include <vector>

#include "roadfield/core_types.hpp"
#include "roadfield/simulator.hpp"

namespace roadfield {

enum class Channel { Road, FieldTrace };

struct FrontSample {
    double t = 0.0;
    double x_front = 0.0;
};

struct FrontSeries {
    std::vector<FrontSample> samples;
    double threshold = 0.5;
    Channel channel = Channel::Road;
};

struct SpeedEstimate {
    double speed = 0.0;
    double intercept = 0.0;
    std::pair<double, double> fit_window{0.0, 0.0};
    double residual_rms = 0.0;
};

/// Rightmost level crossing of `profile` (sampled on grid x-nodes), found by
/// scanning from x_max inward and interpolating linearly between the bracketing
/// nodes. Throws NoCrossingError if the profile never crosses `threshold`.
double front_position(std::span<const double> profile, const Grid& grid, double threshold);

/// Default thresholds: half of the limit state, i.e. ν/(2μ) on the road and 1/2 in the field.
double default_threshold(Channel channel, const ModelParams& params);

/// Front positions of every recorded profile of a run. Profiles with no
/// crossing yet (datum below threshold, early times) are skipped.
FrontSeries front_series(const RunRecord& record, const Grid& grid, Channel channel,
                         double threshold);

/// Least-squares line through the samples with t ≥ (1 − window_fraction)·t_last.
/// Throws TooFewSamplesError with fewer than 10 samples in the window.
SpeedEstimate fit_speed(const FrontSeries& series, double window_fraction = 0.5);

/// a ≤ b componentwise in both u and v. Throws GridMismatchError on shape mismatch.
bool is_ordered(const FieldState& a, const FieldState& b);

struct SteadyError {
    double eu = 0.0;
    double ev = 0.0;
};

/// sup_{|x|≤w} |u − ν/μ| and sup_{|x|≤w, 0≤y≤w} |v − 1|.
SteadyError steady_error(const FieldState& state, const Grid& grid, const ModelParams& params,
                         double window_halfwidth);

}  // namespace roadfield
