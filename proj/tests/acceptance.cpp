// Acceptance checks 1-12. One PASS/FAIL line per check; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "roadfield/analysis.hpp"
#include "roadfield/dispersion.hpp"
#include "roadfield/experiments.hpp"

using namespace roadfield;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

const ModelParams unit(double D) { return ModelParams(D, 1, 1, 1, 1); }

struct Measured {
    cli::SimulationOutcome outcome;
    cli::SimulationSettings settings;
};

Measured run_preset(const std::string& preset, const std::vector<std::string>& overrides = {}) {
    Config cfg = cli::preset_config(preset);
    for (const auto& o : overrides) cfg.apply_override(o);
    const ModelParams p = params_from_config(cfg);
    const auto settings = cli::simulation_settings(cfg, p);
    return {cli::simulate(p, settings), settings};
}

Outcome c1() {
    std::string detail;
    bool pass = true;
    for (double D : {0.0, 0.5, 1.0, 2.0}) {
        const auto r = critical_speed(unit(D));
        pass = pass && r.c_star == 2.0 && r.regime == Regime::SubThreshold;
        detail += "c*(" + num(D) + ")=" + num(r.c_star, 17) + " ";
    }
    return {pass, detail};
}

Outcome c2() {
    std::string detail;
    bool pass = true;
    double prev = 2.0;
    for (double D : {2.5, 4.0, 10.0, 100.0}) {
        const double c = critical_speed(unit(D)).c_star;
        pass = pass && c > prev;
        prev = c;
        detail += "c*(" + num(D) + ")=" + num(c) + " ";
    }
    const double jump = critical_speed(unit(2.0 + 1e-6)).c_star - 2.0;
    pass = pass && jump >= 0.0 && jump <= 1e-3;
    return {pass, detail + "c*(2+1e-6)-2=" + num(jump, 3)};
}

Outcome c3() {
    std::string detail;
    bool pass = true;
    for (double D : {2.5, 4.0, 10.0, 100.0}) {
        const ModelParams p = unit(D);
        const auto r = critical_speed(p);
        const double b = r.tangency->beta;
        const double residual = std::abs(alpha_road(r.c_star, b, p, Sign::Plus) -
                                         alpha_field(r.c_star, b, p, Sign::Minus));
        const bool flips = curve_gap(r.c_star - 1e-6, p) < 0.0 && curve_gap(r.c_star + 1e-6, p) > 0.0;
        pass = pass && residual <= 1e-6 && flips;
        detail += "D=" + num(D) + ":|res|=" + num(residual, 2) + (flips ? " " : " no-flip ");
    }
    return {pass, detail};
}

Outcome c4() {
    std::vector<double> ratios;
    for (double D : {1e3, 1e4, 1e5, 1e6}) ratios.push_back(critical_speed(unit(D)).c_star / std::sqrt(D));
    bool pass = true;
    for (std::size_t k = 1; k < ratios.size(); ++k) {
        pass = pass && ratios[k] < ratios[k - 1];
        if (k >= 2) pass = pass && (ratios[k - 1] - ratios[k]) < (ratios[k - 2] - ratios[k - 1]);
    }
    const double limit = limit_speed(unit(1));
    const auto b = limit_bounds(unit(1));
    const double rel = std::abs(ratios.back() - limit) / limit;
    const double sq = ratios.back() * ratios.back();
    pass = pass && rel <= 1e-3 && sq >= b.low && sq <= b.high;
    std::string detail;
    for (double r : ratios) detail += num(r, 8) + " ";
    return {pass, detail + "limit=" + num(limit, 8) + " rel=" + num(rel, 2) + " sq=" + num(sq, 6) +
                      " in [" + num(b.low, 6) + "," + num(b.high, 6) + "]"};
}

Outcome c5() {
    const ModelParams p = unit(4);
    const double full = critical_speed(p).c_star;
    bool pass = true;
    double prev = 2.0;
    std::string detail;
    for (double L : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const double c = strip_critical_speed(p, L).c_star;
        pass = pass && c > prev && c < full;
        prev = c;
        detail += "L=" + num(L) + ":" + num(c, 9) + " ";
    }
    const double gap = std::abs(prev - full);
    return {pass && gap <= 1e-3, detail + "c*=" + num(full, 9) + " |c80-c*|=" + num(gap, 2)};
}

Outcome c6() {
    const double delta = gamma_plus_threshold(unit(3)).delta;
    bool pass = delta > 0.0 && delta < 1.0;
    const auto edge = gamma_plus_threshold(unit(2.0 + delta));
    const double split = edge.intersects ? std::abs(*edge.c_tilde_2 - *edge.c_tilde_1) : INFINITY;
    pass = pass && split <= 1e-4;
    double t1 = 0.0, t2 = INFINITY;
    for (double frac : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
        const auto g = gamma_plus_threshold(unit(2.0 + frac * delta));
        pass = pass && g.intersects && *g.c_tilde_1 > t1 && *g.c_tilde_2 < t2;
        t1 = *g.c_tilde_1;
        t2 = *g.c_tilde_2;
    }
    return {pass, "delta=" + num(delta) + " |c2-c1| at 2d+delta=" + num(split, 2)};
}

Outcome c7() {
    const auto m = run_preset("conservation");
    return {m.outcome.mass_drift <= 1e-6, "relative drift=" + num(m.outcome.mass_drift, 3) + " over " +
                                              std::to_string(m.outcome.record.steps) + " steps"};
}

Outcome c8() {
    const ModelParams p = unit(1);
    Grid g = Grid::from_spacing(-5.0, 5.0, 5.0, 0.25, 0.25);
    g = g.with_dt(stable_dt(g, p, 0.9));
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto [a, b] = cli::ordered_random_pair(g, p, seed);
        const double bound = blow_up_bound(b, p);
        FieldState na, nb;
        for (int n = 0; n < 500; ++n) {
            const bool ok = step_into(a, na, p, g, bound) && step_into(b, nb, p, g, bound);
            std::swap(a, na);
            std::swap(b, nb);
            if (!ok || !is_ordered(a, b)) {
                ++violations;
                break;
            }
        }
    }
    return {violations == 0, "200 seeds x 500 steps, violations=" + std::to_string(violations)};
}

Outcome c9() {
    Config cfg = cli::preset_config("longtime");
    const ModelParams p = params_from_config(cfg);
    const auto s = cli::simulation_settings(cfg, p);
    const auto o = cli::simulate(p, s);
    const auto e = steady_error(o.record.final_state, o.grid, p, 5.0);
    return {e.eu <= 1e-2 && e.ev <= 1e-2, "eu=" + num(e.eu, 3) + " ev=" + num(e.ev, 3) + " at t=60"};
}

double road_speed(const Measured& m) {
    return m.outcome.road_speed ? m.outcome.road_speed->speed : NAN;
}

double baseline_speed = NAN;

Outcome c10() {
    const auto base = run_preset("kpp");
    baseline_speed = road_speed(base);
    const double gap = std::abs(baseline_speed - 2.0) / 2.0;
    // Refinement study: halve the grid, then double the horizon (domain grown to match).
    const auto fine = run_preset("kpp", {"dx=0.125", "dy=0.125"});
    const auto longer = run_preset("kpp", {"t_end=200", "x_min=-500", "x_max=500"});
    const double gap_fine = std::abs(road_speed(fine) - 2.0) / 2.0;
    const double gap_long = std::abs(road_speed(longer) - 2.0) / 2.0;
    return {gap <= 0.1, "speed=" + num(baseline_speed, 6) + " rel.gap=" + num(gap, 3) +
                            " | dx/2: " + num(road_speed(fine), 6) + " (" + num(gap_fine, 3) + ")" +
                            " | 2T: " + num(road_speed(longer), 6) + " (" + num(gap_long, 3) + ")"};
}

Outcome c11() {
    const auto m = run_preset("enhanced");
    const double c = road_speed(m);
    const double predicted = critical_speed(unit(10)).c_star;
    const double gap = std::abs(c - predicted) / predicted;
    const bool faster = std::isfinite(baseline_speed) && c > baseline_speed;
    return {gap <= 0.1 && faster, "speed=" + num(c, 6) + " c*(10)=" + num(predicted, 8) +
                                      " rel.gap=" + num(gap, 3) + " vs D=1 " + num(baseline_speed, 6)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"sub-threshold exactness", c1},
        {"enhancement and monotonicity", c2},
        {"tangency residual", c3},
        {"sqrt(D) law", c4},
        {"strip consistency", c5},
        {"delta classification", c6},
        {"mass conservation", c7},
        {"discrete comparison principle", c8},
        {"long-time limit", c9},
        {"speed measurement, baseline", c10},
        {"speed measurement, enhanced", c11},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : checks) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    const bool all = failures == 0;
    std::printf("[%s] 12 asymptotic claims: t -> inf and D -> inf are represented by checks 1-11 "
                "(%s)\n",
                all ? "PASS" : "FAIL", all ? "all substitutes hold" : "a substitute failed");
    return all ? 0 : 1;
}
