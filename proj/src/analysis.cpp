#include "roadfield/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "roadfield/errors.hpp"

namespace roadfield {

double front_position(std::span<const double> profile, const Grid& grid, double threshold) {
    if (profile.size() != grid.nx) throw GridMismatchError("profile length differs from grid nx");
    for (std::size_t k = profile.size() - 1; k > 0; --k) {
        const double left = profile[k - 1];
        const double right = profile[k];
        const bool crosses = (left >= threshold) != (right >= threshold);
        if (crosses) {
            const double frac = (left - threshold) / (left - right);
            return grid.x(k - 1) + frac * grid.dx;
        }
    }
    throw NoCrossingError("profile never crosses the threshold");
}

double default_threshold(Channel channel, const ModelParams& p) {
    return channel == Channel::Road ? 0.5 * p.road_equilibrium() : 0.5;
}

FrontSeries front_series(const RunRecord& record, const Grid& grid, Channel channel,
                         double threshold) {
    FrontSeries series;
    series.threshold = threshold;
    series.channel = channel;
    const auto& snaps = channel == Channel::Road ? record.road_profiles : record.field_traces;
    for (const auto& snap : snaps) {
        try {
            series.samples.push_back({snap.t, front_position(snap.values, grid, threshold)});
        } catch (const NoCrossingError&) {
        }
    }
    return series;
}

SpeedEstimate fit_speed(const FrontSeries& series, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw DomainError("fit_speed: window_fraction must lie in (0, 1]");
    }
    if (series.samples.empty()) throw TooFewSamplesError("fit_speed: empty series");
    const double t_last = series.samples.back().t;
    const double t_start = (1.0 - window_fraction) * t_last;

    std::vector<FrontSample> w;
    for (const auto& s : series.samples) {
        if (s.t >= t_start) w.push_back(s);
    }
    if (w.size() < 10) throw TooFewSamplesError("fit_speed: fewer than 10 samples in window");

    // Centred sums keep the normal equations well conditioned.
    const double n = static_cast<double>(w.size());
    double tm = 0.0, xm = 0.0;
    for (const auto& s : w) {
        tm += s.t;
        xm += s.x_front;
    }
    tm /= n;
    xm /= n;
    double stt = 0.0, stx = 0.0;
    for (const auto& s : w) {
        stt += (s.t - tm) * (s.t - tm);
        stx += (s.t - tm) * (s.x_front - xm);
    }
    if (!(stt > 0.0)) throw TooFewSamplesError("fit_speed: samples share a single time");

    SpeedEstimate est;
    est.speed = stx / stt;
    est.intercept = xm - est.speed * tm;
    est.fit_window = {w.front().t, w.back().t};
    double ss = 0.0;
    for (const auto& s : w) {
        const double r = s.x_front - (est.intercept + est.speed * s.t);
        ss += r * r;
    }
    est.residual_rms = std::sqrt(ss / n);
    return est;
}

bool is_ordered(const FieldState& a, const FieldState& b) {
    if (a.nx != b.nx || a.ny != b.ny || a.u.size() != b.u.size() || a.v.size() != b.v.size()) {
        throw GridMismatchError("is_ordered: states live on different grids");
    }
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        if (!(a.u[i] <= b.u[i])) return false;
    }
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        if (!(a.v[i] <= b.v[i])) return false;
    }
    return true;
}

SteadyError steady_error(const FieldState& s, const Grid& g, const ModelParams& p,
                         double window_halfwidth) {
    if (s.nx != g.nx || s.ny != g.ny) throw GridMismatchError("steady_error: state/grid mismatch");
    const double w = window_halfwidth;
    if (!(w >= 0.0) || -w < g.x_min || w > g.x_max || w > g.y_max) {
        throw DomainError("steady_error: window must lie inside the grid");
    }
    const double ueq = p.road_equilibrium();
    // Nodes on the window edge count despite rounding in x(i), y(j).
    const double eps_x = 1e-9 * g.dx;
    const double eps_y = 1e-9 * g.dy;

    SteadyError e;
    for (std::size_t i = 0; i < g.nx; ++i) {
        if (std::abs(g.x(i)) > w + eps_x) continue;
        e.eu = std::max(e.eu, std::abs(s.u[i] - ueq));
        for (std::size_t j = 0; j < g.ny && g.y(j) <= w + eps_y; ++j) {
            e.ev = std::max(e.ev, std::abs(s.at(i, j) - 1.0));
        }
    }
    return e;
}

}  // namespace roadfield
