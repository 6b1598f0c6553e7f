#include "roadfield/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <omp.h>

#include "roadfield/errors.hpp"

namespace roadfield {
namespace {

double bump(double r2) {
    const double s = std::max(0.0, 1.0 - r2);
    return s * s;
}

double sup(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    return m;
}

}  // namespace

Grid Grid::make(double x_min, double x_max, double y_max, std::size_t nx, std::size_t ny,
                double dt) {
    if (nx < 3 || ny < 3) throw DomainError("grid needs at least 3 nodes per direction");
    if (!(x_max > x_min) || !(y_max > 0.0)) throw DomainError("grid box is empty");
    if (dt < 0.0) throw DomainError("grid dt must be nonnegative");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.y_max = y_max;
    g.nx = nx;
    g.ny = ny;
    g.dx = (x_max - x_min) / static_cast<double>(nx - 1);
    g.dy = y_max / static_cast<double>(ny - 1);
    g.dt = dt;
    return g;
}

Grid Grid::from_spacing(double x_min, double x_max, double y_max, double dx, double dy,
                        double dt) {
    if (!(dx > 0.0) || !(dy > 0.0)) throw DomainError("grid spacings must be positive");
    const auto nx = static_cast<std::size_t>(std::llround((x_max - x_min) / dx)) + 1;
    const auto ny = static_cast<std::size_t>(std::llround(y_max / dy)) + 1;
    return make(x_min, x_max, y_max, nx, ny, dt);
}

Grid Grid::with_dt(double new_dt) const {
    Grid g = *this;
    if (new_dt < 0.0) throw DomainError("grid dt must be nonnegative");
    g.dt = new_dt;
    return g;
}

bool Grid::same_nodes(const Grid& o) const {
    return nx == o.nx && ny == o.ny && x_min == o.x_min && x_max == o.x_max && y_max == o.y_max;
}

FieldState FieldState::constant(const Grid& grid, double u_value, double v_value) {
    FieldState s(grid.nx, grid.ny);
    std::fill(s.u.begin(), s.u.end(), u_value);
    std::fill(s.v.begin(), s.v.end(), v_value);
    return s;
}

double cfl_dt(const Grid& g, const ModelParams& p, double safety) {
    if (!(safety > 0.0 && safety <= 1.0)) {
        throw CflError("cfl_dt: safety factor must lie in (0, 1]");
    }
    double dt = 1.0 / (2.0 * p.d() * (1.0 / (g.dx * g.dx) + 1.0 / (g.dy * g.dy)));
    if (p.D() > 0.0) dt = std::min(dt, g.dx * g.dx / (2.0 * p.D()));
    dt = std::min(dt, 1.0 / (p.mu() + p.nu() + p.f_prime_0()));
    return safety * dt;
}

bool monotone_step(const Grid& g, const ModelParams& p, double dt) {
    const double road = 1.0 - 2.0 * p.D() * dt / (g.dx * g.dx) - p.mu() * dt;
    const double field = 1.0 - 2.0 * p.d() * dt / (g.dx * g.dx) - 2.0 * p.d() * dt / (g.dy * g.dy);
    const double robin = field - 2.0 * p.nu() * dt / g.dy;
    return road >= 0.0 && field >= 0.0 && robin >= 0.0;
}

double max_monotone_dt(const Grid& g, const ModelParams& p) {
    const double road = 2.0 * p.D() / (g.dx * g.dx) + p.mu();
    const double robin = 2.0 * p.d() * (1.0 / (g.dx * g.dx) + 1.0 / (g.dy * g.dy)) + 2.0 * p.nu() / g.dy;
    return 1.0 / std::max(road, robin);
}

double stable_dt(const Grid& g, const ModelParams& p, double safety) {
    return std::min(cfl_dt(g, p, safety), safety * max_monotone_dt(g, p));
}

FieldState init_state(const Grid& g, const InitialDatum& datum) {
    FieldState s(g.nx, g.ny);
    const double w = datum.width;
    if (datum.kind != DatumKind::Custom && !(w > 0.0)) {
        throw DomainError("initial datum width must be positive");
    }

    for (std::size_t i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        switch (datum.kind) {
            case DatumKind::CompactBump:
            case DatumKind::RoadOnlyBump: {
                const double q = (x - datum.center) / w;
                s.u[i] = datum.amplitude_u * bump(q * q);
                break;
            }
            case DatumKind::Custom:
                s.u[i] = datum.custom_u ? datum.custom_u(x) : 0.0;
                break;
        }
    }
    if (datum.kind == DatumKind::CompactBump) {
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double qx = (g.x(i) - datum.center) / w;
                const double qy = (g.y(j) - 1.0) / w;
                s.at(i, j) = datum.amplitude_v * bump(qx * qx + qy * qy);
            }
        }
    } else if (datum.kind == DatumKind::Custom && datum.custom_v) {
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) s.at(i, j) = datum.custom_v(g.x(i), g.y(j));
        }
    }

    auto bad = [](double x) { return !(x >= 0.0) || !std::isfinite(x); };
    if (std::any_of(s.u.begin(), s.u.end(), bad) || std::any_of(s.v.begin(), s.v.end(), bad)) {
        throw DomainError("initial datum must be finite and nonnegative");
    }
    if (sup(s.u) == 0.0 && sup(s.v) == 0.0) {
        throw EmptyDatumError("initial datum vanishes at every grid node");
    }
    return s;
}

double blow_up_bound(const FieldState& s, const ModelParams& p) {
    return 10.0 * std::max({1.0, p.road_equilibrium(), sup(s.u), sup(s.v)});
}

int worker_count() {
    static const int n = [] {
        int cap = 0;
        if (const char* env = std::getenv("ROADFIELD_THREADS")) cap = std::atoi(env);
        const int hw = std::max(1, omp_get_num_procs());
        return cap > 0 ? std::min(cap, hw) : hw;
    }();
    return n;
}

bool step_into(const FieldState& in, FieldState& out, const ModelParams& p, const Grid& g,
               double bound, kernels::Isa isa) {
    using kernels::RowArgs;
    using kernels::RowReaction;

    const std::size_t nx = g.nx;
    const std::size_t ny = g.ny;
    if (in.nx != nx || in.ny != ny) throw GridMismatchError("state does not match grid");
    if (out.nx != nx || out.ny != ny || out.u.size() != nx || out.v.size() != nx * ny) {
        out = FieldState(nx, ny);
    }

    const double dt = g.dt;
    const double rx = p.d() * dt / (g.dx * g.dx);
    const double ry = p.d() * dt / (g.dy * g.dy);
    const double interior_center = 1.0 - 2.0 * rx - 2.0 * ry;

    const ReactionFunction& f = p.reaction();
    const bool logistic = f.kind() == ReactionKind::Logistic;
    const bool pointwise = f.kind() == ReactionKind::Polynomial || f.kind() == ReactionKind::Custom;

    // Road: u' = u + dt(D u_xx + ν v(·,0) − μ u).
    bool ok = true;
    {
        const double rD = p.D() * dt / (g.dx * g.dx);
        RowArgs a;
        a.mid = in.u.data();
        a.below = in.v.data();
        a.out = out.u.data();
        a.n = nx;
        a.k.center = 1.0 - 2.0 * rD - p.mu() * dt;
        a.k.lateral = rD;
        a.k.below = p.nu() * dt;
        a.bound = bound;
        ok = kernels::update_row(isa, a);
    }

    int row_ok = 1;
#pragma omp parallel for schedule(static) num_threads(worker_count()) reduction(&& : row_ok)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(ny); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        RowArgs a;
        a.mid = in.v.data() + j * nx;
        a.out = out.v.data() + j * nx;
        a.n = nx;
        a.k.lateral = rx;
        a.k.below = ry;
        a.k.above = ry;
        a.k.center = interior_center;
        a.bound = bound;
        if (logistic) {
            a.reaction = RowReaction::Logistic;
            a.k.react = dt * f.f_prime_0();
        }
        if (j == 0) {
            // Ghost v(·,−dy) = v(·,dy) + (2dy/d)(μu − νv(·,0)) folded into the stencil.
            a.below = in.v.data() + nx;
            a.above = in.v.data() + nx;
            a.k.center = interior_center - 2.0 * p.nu() * dt / g.dy;
            a.source = in.u.data();
            a.k.source = 2.0 * p.mu() * dt / g.dy;
        } else if (j + 1 == ny) {
            a.below = in.v.data() + (j - 1) * nx;
            a.above = in.v.data() + (j - 1) * nx;
        } else {
            a.below = in.v.data() + (j - 1) * nx;
            a.above = in.v.data() + (j + 1) * nx;
        }
        bool good = kernels::update_row(isa, a);
        if (pointwise) {
            good = true;
            for (std::size_t i = 0; i < nx; ++i) {
                const double value = a.out[i] + dt * f(a.mid[i]);
                a.out[i] = value;
                good = good && value <= bound;
            }
        }
        row_ok = row_ok && good;
    }

    out.t = in.t + dt;
    return ok && row_ok;
}

FieldState step(const FieldState& state, const ModelParams& p, const Grid& g) {
    FieldState out(g.nx, g.ny);
    if (!step_into(state, out, p, g, blow_up_bound(state, p))) {
        std::ostringstream os;
        os << "blow-up at t=" << out.t << ": an entry exceeded " << blow_up_bound(state, p)
           << " or became non-finite";
        throw BlowUpError(0, out.t, os.str());
    }
    return out;
}

double total_mass(const FieldState& s, const Grid& g) {
    auto trapezoid = [](std::span<const double> xs, double h) {
        if (xs.empty()) return 0.0;
        double acc = 0.5 * (xs.front() + xs.back());
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) acc += xs[i];
        return acc * h;
    };
    double field = 0.0;
    for (std::size_t j = 0; j < s.ny; ++j) {
        const double w = (j == 0 || j + 1 == s.ny) ? 0.5 : 1.0;
        field += w * trapezoid(s.row(j), g.dx);
    }
    return trapezoid(s.u, g.dx) + field * g.dy;
}

RunRecord run(const ModelParams& p, const Grid& grid, const InitialDatum& datum, double t_end,
              double snapshot_every, const RunOptions& options) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("run: t_end must be >= 0");
    if (!(grid.dt > 0.0)) throw CflError("run: grid dt must be positive");
    const double dt_max = cfl_dt(grid, p, 1.0);
    if (grid.dt > dt_max) {
        std::ostringstream os;
        os << "run: dt=" << grid.dt << " exceeds the stability bound " << dt_max;
        throw CflError(os.str());
    }
    if (!monotone_step(grid, p, grid.dt)) {
        throw CflError("run: dt makes the explicit update non-monotone");
    }

    const std::size_t steps =
        t_end == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(t_end / grid.dt - 1e-12));
    const Grid g = steps == 0 ? grid : grid.with_dt(t_end / static_cast<double>(steps));
    const std::size_t every =
        snapshot_every > 0.0
            ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(snapshot_every / g.dt)))
            : std::max<std::size_t>(1, steps);

    RunRecord rec;
    rec.dt = g.dt;
    FieldState cur = init_state(g, datum);
    FieldState next(g.nx, g.ny);
    const double bound = blow_up_bound(cur, p);

    auto record = [&](const FieldState& s) {
        rec.times.push_back(s.t);
        rec.mass.push_back(total_mass(s, g));
        rec.road_profiles.push_back({s.t, s.u});
        auto trace = s.row(0);
        rec.field_traces.push_back({s.t, std::vector<double>(trace.begin(), trace.end())});
    };
    record(cur);

    for (std::size_t n = 1; n <= steps; ++n) {
        if (!step_into(cur, next, p, g, bound, options.isa)) {
            std::ostringstream os;
            os << "blow-up at step " << n << " (t=" << next.t << "): an entry exceeded " << bound
               << " or became non-finite";
            throw BlowUpError(n, next.t, os.str());
        }
        // Time from the step count, not accumulated, so the last sample is exactly t_end.
        next.t = n == steps ? t_end : static_cast<double>(n) * g.dt;
        std::swap(cur, next);
        if (options.observer) options.observer(cur);
        if (n % every == 0 || n == steps) record(cur);
    }
    rec.steps = steps;
    rec.final_state = std::move(cur);
    return rec;
}

}  // namespace roadfield
