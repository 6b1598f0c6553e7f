#include "roadfield/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "roadfield/csv.hpp"
#include "roadfield/errors.hpp"

namespace roadfield::cli {
namespace {

using csv::fmt;

double sup_abs_diff(const std::vector<double>& a, double value) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x - value));
    return m;
}

}  // namespace

// -- speed / sweep ------------------------------------------------------------

SpeedRow cmd_speed(const ModelParams& p, double tol) {
    const auto r = spreading_speed(p, tol);
    return {p.D(), p.d(), p.mu(), p.f_prime_0(), c_kpp(p), r.c_star, r.regime};
}

std::string speed_csv(const SpeedRow& r) {
    return "D,d,mu,fp0,c_kpp,c_star,regime\n" +
           csv::row({fmt(r.D), fmt(r.d), fmt(r.mu), fmt(r.fp0), fmt(r.c_kpp), fmt(r.c_star),
                     to_string(r.regime)}) +
           "\n";
}

std::vector<SpeedRow> cmd_sweep(const ModelParams& p, const std::vector<double>& D_list,
                                double tol) {
    if (D_list.empty()) throw ConfigError("sweep: D list is empty");
    if (!std::is_sorted(D_list.begin(), D_list.end())) {
        throw ConfigError("sweep: D list must be sorted increasingly");
    }
    std::vector<ModelParams> points;
    points.reserve(D_list.size());
    for (double D : D_list) points.push_back(p.with_D(D));

    std::vector<SpeedRow> rows(points.size());
    std::vector<std::string> errors(points.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(points.size()); ++k) {
        try {
            rows[k] = cmd_speed(points[k], tol);
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw Error("sweep: " + e);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SpeedRow>& rows) {
    std::string out = "D,d,mu,fp0,c_kpp,c_star,regime,c_star_over_sqrtD\n";
    for (const auto& r : rows) {
        const double ratio = r.D > 0.0 ? r.c_star / std::sqrt(r.D) : INFINITY;
        out += csv::row({fmt(r.D), fmt(r.d), fmt(r.mu), fmt(r.fp0), fmt(r.c_kpp), fmt(r.c_star),
                         to_string(r.regime), fmt(ratio)});
        out += '\n';
    }
    return out;
}

// -- strip / limit ------------------------------------------------------------

StripRow cmd_strip(const ModelParams& p, double L, double tol) {
    const double nu = p.nu();
    const ModelParams n = normalize_nu(p);
    const auto strip = strip_critical_speed(n, L, tol / nu);
    const auto full = critical_speed(n, tol / nu);
    return {p.D(), p.d(), p.mu(), p.f_prime_0(), L, c_kpp(p), nu * strip.c_star, nu * full.c_star};
}

std::string strip_csv(const StripRow& r) {
    return "D,d,mu,fp0,L,c_kpp,c_star_L,c_star\n" +
           csv::row({fmt(r.D), fmt(r.d), fmt(r.mu), fmt(r.fp0), fmt(r.L), fmt(r.c_kpp),
                     fmt(r.c_star_L), fmt(r.c_star)}) +
           "\n";
}

LimitRow cmd_limit(const ModelParams& p, double tol) {
    // c*(D)/sqrt(D) in original units is sqrt(ν) times the normalised limit.
    const double nu = p.nu();
    const ModelParams n = normalize_nu(p);
    const double c = limit_speed(n, tol);
    const auto b = limit_bounds(n);
    // Bounds on c*²/D scale by ν as well.
    return {p.d(), p.mu(), p.f_prime_0(), std::sqrt(nu) * c, nu * b.low, nu * b.high};
}

std::string limit_csv(const LimitRow& r) {
    return "d,mu,fp0,c_limit,c_limit_sq,low,high\n" +
           csv::row({fmt(r.d), fmt(r.mu), fmt(r.fp0), fmt(r.c_limit), fmt(r.c_limit * r.c_limit),
                     fmt(r.low), fmt(r.high)}) +
           "\n";
}

// -- simulate -------------------------------------------------------------------

std::vector<std::string_view> simulation_keys() {
    return {"x_min", "x_max",  "y_max",  "dx",    "dy",    "safety", "t_end", "snapshot_every",
            "profile_every", "window", "datum", "center", "width", "amp_u", "amp_v"};
}

std::vector<std::string> preset_names() { return {"kpp", "enhanced", "conservation", "longtime"}; }

Config preset_config(const std::string& name) {
    Config c;
    if (name == "kpp") {
        c.set("D", "1");
        c.set("x_min", "-300");
        c.set("x_max", "300");
        c.set("y_max", "30");
        c.set("dx", "0.25");
        c.set("dy", "0.25");
        c.set("t_end", "100");
        c.set("safety", "0.8");
    } else if (name == "enhanced") {
        // x extent follows the sizing rule from the predicted c*(D).
        c.set("D", "10");
        c.set("y_max", "30");
        c.set("dx", "0.25");
        c.set("dy", "0.25");
        c.set("t_end", "100");
        c.set("safety", "0.8");
    } else if (name == "conservation") {
        c.set("reaction", "none");
        c.set("x_min", "-40");
        c.set("x_max", "40");
        c.set("y_max", "20");
        c.set("dx", "0.1");
        c.set("dy", "0.1");
        c.set("t_end", "5");
        c.set("safety", "0.4");
    } else if (name == "longtime") {
        c.set("x_min", "-40");
        c.set("x_max", "40");
        c.set("y_max", "20");
        c.set("dx", "0.25");
        c.set("dy", "0.25");
        c.set("t_end", "60");
        c.set("safety", "0.8");
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

SimulationSettings simulation_settings(const Config& c, const ModelParams& p) {
    SimulationSettings s;
    s.dx = c.get_double("dx", s.dx);
    s.dy = c.get_double("dy", s.dy);
    s.safety = c.get_double("safety", s.safety);
    s.t_end = c.get_double("t_end", s.t_end);
    s.snapshot_every = c.get_double("snapshot_every", s.snapshot_every);
    s.profile_every = c.get_double("profile_every", s.profile_every);
    s.window_fraction = c.get_double("window", s.window_fraction);

    if (!c.has("x_min") || !c.has("x_max")) {
        const double speed = std::max(spreading_speed(p).c_star, c_kpp(p));
        const double half = std::ceil(speed * s.t_end + 20.0);
        s.x_min = c.get_double("x_min", -half);
        s.x_max = c.get_double("x_max", half);
    } else {
        s.x_min = c.get_double("x_min", s.x_min);
        s.x_max = c.get_double("x_max", s.x_max);
    }
    s.y_max = c.get_double("y_max", std::ceil(4.0 * std::sqrt(p.d() * s.t_end)));

    const std::string kind = c.get("datum").value_or("compact");
    if (kind == "compact") {
        s.datum.kind = DatumKind::CompactBump;
    } else if (kind == "road") {
        s.datum.kind = DatumKind::RoadOnlyBump;
        s.datum.amplitude_u = p.road_equilibrium();
    } else {
        throw ConfigError("unknown datum '" + kind + "' (expected compact | road)");
    }
    s.datum.center = c.get_double("center", 0.0);
    s.datum.width = c.get_double("width", 2.0);
    s.datum.amplitude_u = c.get_double("amp_u", s.datum.amplitude_u);
    s.datum.amplitude_v = c.get_double("amp_v", kind == "compact" ? 1.0 : 0.0);

    if (!(s.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(s.dx > 0.0 && s.dy > 0.0)) throw ConfigError("dx and dy must be positive");
    if (!(s.window_fraction > 0.0 && s.window_fraction <= 1.0)) {
        throw ConfigError("window must lie in (0, 1]");
    }
    return s;
}

SimulationOutcome simulate(const ModelParams& p, const SimulationSettings& s) {
    SimulationOutcome out;
    Grid g = Grid::from_spacing(s.x_min, s.x_max, s.y_max, s.dx, s.dy);
    g = g.with_dt(stable_dt(g, p, s.safety));
    out.predicted_speed = spreading_speed(p).c_star;
    out.record = run(p, g, s.datum, s.t_end, s.snapshot_every);
    out.grid = g.with_dt(out.record.dt);

    const double m0 = out.record.mass.front();
    for (double m : out.record.mass) out.mass_drift = std::max(out.mass_drift, std::abs(m - m0) / m0);

    for (Channel ch : {Channel::Road, Channel::FieldTrace}) {
        const auto series = front_series(out.record, out.grid, ch, default_threshold(ch, p));
        try {
            (ch == Channel::Road ? out.road_speed : out.field_speed) =
                fit_speed(series, s.window_fraction);
        } catch (const TooFewSamplesError&) {
        }
    }
    return out;
}

void write_simulation(const SimulationOutcome& o, const ModelParams& p,
                      const SimulationSettings& s, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto& rec = o.record;

    std::string mass = "t,mass\n";
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        mass += csv::row({fmt(rec.times[k]), fmt(rec.mass[k])}) + "\n";
    }
    csv::write_file(dir / "mass.csv", mass);

    for (Channel ch : {Channel::Road, Channel::FieldTrace}) {
        const auto series = front_series(rec, o.grid, ch, default_threshold(ch, p));
        std::string fronts = "t,x_front\n";
        for (const auto& smp : series.samples) fronts += csv::row({fmt(smp.t), fmt(smp.x_front)}) + "\n";
        const bool road = ch == Channel::Road;
        csv::write_file(dir / (road ? "fronts.csv" : "fronts_field.csv"), fronts);

        const auto& est = road ? o.road_speed : o.field_speed;
        std::string summary = "speed,intercept,residual_rms,t_lo,t_hi\n";
        if (est) {
            summary += csv::row({fmt(est->speed), fmt(est->intercept), fmt(est->residual_rms),
                                 fmt(est->fit_window.first), fmt(est->fit_window.second)}) +
                       "\n";
        }
        csv::write_file(dir / (road ? "speed.csv" : "speed_field.csv"), summary);
    }

    std::string road = "t,x,u\n";
    std::string trace = "t,x,v0\n";
    double next = 0.0;
    for (std::size_t k = 0; k < rec.road_profiles.size(); ++k) {
        const double t = rec.road_profiles[k].t;
        const bool last = k + 1 == rec.road_profiles.size();
        if (t + 1e-9 < next && !last) continue;
        next = t + s.profile_every;
        for (std::size_t i = 0; i < o.grid.nx; ++i) {
            const auto x = fmt(o.grid.x(i));
            road += csv::row({fmt(t), x, fmt(rec.road_profiles[k].values[i])}) + "\n";
            trace += csv::row({fmt(t), x, fmt(rec.field_traces[k].values[i])}) + "\n";
        }
    }
    csv::write_file(dir / "road_profiles.csv", road);
    csv::write_file(dir / "field_trace.csv", trace);
}

// -- validate -------------------------------------------------------------------

std::vector<std::string_view> validation_keys() {
    return {"safety", "ordering_seeds", "ordering_steps"};
}

ValidationSettings validation_settings(const Config& c) {
    ValidationSettings s;
    s.safety = c.get_double("safety", s.safety);
    s.ordering_seeds = static_cast<int>(c.get_double("ordering_seeds", s.ordering_seeds));
    s.ordering_steps = static_cast<int>(c.get_double("ordering_steps", s.ordering_steps));
    return s;
}

namespace {

SuiteResult suite_kpp(const ModelParams& p) {
    SuiteResult r{"kpp", false, 0.0, 0.0, ""};
    const auto check = check_kpp(p.reaction(), 1000);
    if (!check) {
        r.measured = check.violating_sample.value_or(0.0);
        r.detail = check.reason;
        return r;
    }
    if (p.reaction().f_prime_0() != p.f_prime_0()) {
        r.detail = "reaction slope at 0 differs from fp0";
        r.measured = p.reaction().f_prime_0();
        r.limit = p.f_prime_0();
        return r;
    }
    r.passed = true;
    r.detail = "0 < f(s) <= f'(0)s on (0,1), f < 0 on (1,2]";
    return r;
}

Grid validation_grid(const ModelParams& p, double safety, double half, double height, double h) {
    Grid g = Grid::from_spacing(-half, half, height, h, h);
    return g.with_dt(stable_dt(g, p, safety));
}

SuiteResult suite_cfl(const ModelParams& p, double safety) {
    SuiteResult r{"cfl", false, 0.0, 0.0, ""};
    Grid g = Grid::from_spacing(-20.0, 20.0, 10.0, 0.25, 0.25);
    r.limit = stable_dt(g, p, 1.0);
    r.measured = safety * r.limit;
    r.passed = safety > 0.0 && safety <= 1.0 && monotone_step(g, p, r.measured);
    r.detail = r.passed ? "dt within stability bound; update monotone"
                        : "dt = " + csv::fmt(r.measured) + " exceeds stable bound " + csv::fmt(r.limit);
    return r;
}

SuiteResult suite_equilibrium(const ModelParams& p, double safety) {
    SuiteResult r{"equilibrium", false, 0.0, 1e-12, ""};
    const Grid g = validation_grid(p, safety, 5.0, 5.0, 0.25);
    auto zero = FieldState::constant(g, 0.0, 0.0);
    auto full = FieldState::constant(g, p.road_equilibrium(), 1.0);
    double dev = 0.0;
    for (int n = 0; n < 10; ++n) {
        zero = step(zero, p, g);
        full = step(full, p, g);
    }
    dev = std::max({sup_abs_diff(zero.u, 0.0), sup_abs_diff(zero.v, 0.0),
                    sup_abs_diff(full.u, p.road_equilibrium()) / std::max(1.0, p.road_equilibrium()),
                    sup_abs_diff(full.v, 1.0)});
    r.measured = dev;
    r.passed = dev <= r.limit;
    r.detail = "(0,0) and (nu/mu,1) fixed under 10 steps";
    return r;
}

SuiteResult suite_ordering(const ModelParams& p, const ValidationSettings& s) {
    SuiteResult r{"ordering", true, 0.0, 0.0, ""};
    const Grid g = validation_grid(p, s.safety, 5.0, 5.0, 0.25);
    int violations = 0;
    for (int seed = 0; seed < s.ordering_seeds; ++seed) {
        auto [a, b] = ordered_random_pair(g, p, static_cast<std::uint64_t>(seed));
        FieldState na, nb;
        const double bound = std::max(blow_up_bound(a, p), blow_up_bound(b, p));
        for (int n = 0; n < s.ordering_steps; ++n) {
            if (!step_into(a, na, p, g, bound) || !step_into(b, nb, p, g, bound)) {
                throw BlowUpError(static_cast<std::size_t>(n), na.t, "ordering suite blew up");
            }
            std::swap(a, na);
            std::swap(b, nb);
            if (!is_ordered(a, b)) {
                ++violations;
                break;
            }
        }
    }
    r.measured = violations;
    r.passed = violations == 0;
    r.detail = std::to_string(s.ordering_seeds) + " seeds x " + std::to_string(s.ordering_steps) +
               " steps";
    return r;
}

SuiteResult suite_conservation(const ModelParams& p, double safety) {
    SuiteResult r{"conservation", false, 0.0, 1e-6, ""};
    const ModelParams q = p.with_reaction(ReactionFunction::none());
    Grid g = validation_grid(q, safety, 20.0, 10.0, 0.2);
    InitialDatum datum;  // compact bump at the origin, support radius 2
    const double t_end = 1000.0 * g.dt;
    const auto rec = run(q, g, datum, t_end, t_end / 10.0);
    double drift = 0.0;
    for (double m : rec.mass) drift = std::max(drift, std::abs(m - rec.mass.front()) / rec.mass.front());
    r.measured = drift;
    r.passed = drift <= r.limit;
    r.detail = "f = 0, 1000 steps, relative mass drift";
    return r;
}

SuiteResult suite_steady(const ModelParams& p, double safety) {
    SuiteResult r{"steady", false, 0.0, 1e-2, ""};
    const Grid g = validation_grid(p, safety, 20.0, 10.0, 0.5);
    const auto rec = run(p, g, InitialDatum{}, 40.0, 1.0);
    const auto e = steady_error(rec.final_state, g, p, 5.0);
    r.measured = std::max(e.eu / std::max(1.0, p.road_equilibrium()), e.ev);
    r.passed = e.eu <= r.limit * std::max(1.0, p.road_equilibrium()) && e.ev <= r.limit;
    r.detail = "sup error to (nu/mu,1) on |x|,y <= 5 at t = 40";
    return r;
}

template <class F>
SuiteResult guarded(const std::string& name, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, 0.0, 0.0, std::string("error: ") + e.what()};
    }
}

}  // namespace

std::pair<FieldState, FieldState> ordered_random_pair(const Grid& g, const ModelParams& p,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ueq = p.road_equilibrium();
    FieldState a(g.nx, g.ny), b(g.nx, g.ny);
    for (std::size_t i = 0; i < g.nx; ++i) {
        a.u[i] = ueq * unit(rng);
        b.u[i] = a.u[i] + 0.5 * ueq * unit(rng);
    }
    for (std::size_t k = 0; k < a.v.size(); ++k) {
        a.v[k] = unit(rng);
        b.v[k] = a.v[k] + 0.5 * unit(rng);
    }
    return {std::move(a), std::move(b)};
}

std::vector<SuiteResult> cmd_validate(const ModelParams& p, const ValidationSettings& s) {
    return {
        guarded("kpp", [&] { return suite_kpp(p); }),
        guarded("cfl", [&] { return suite_cfl(p, s.safety); }),
        guarded("equilibrium", [&] { return suite_equilibrium(p, s.safety); }),
        guarded("ordering", [&] { return suite_ordering(p, s); }),
        guarded("conservation", [&] { return suite_conservation(p, s.safety); }),
        guarded("steady", [&] { return suite_steady(p, s.safety); }),
    };
}

std::string validation_csv(const std::vector<SuiteResult>& results) {
    std::string out = "suite,passed,measured,limit,detail\n";
    for (const auto& r : results) {
        std::string detail = r.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        out += csv::row({r.name, r.passed ? "true" : "false", fmt(r.measured), fmt(r.limit), detail});
        out += '\n';
    }
    return out;
}

}  // namespace roadfield::cli
