#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "roadfield/core_types.hpp"
#include "roadfield/kernels.hpp"

namespace roadfield {

/// Uniform grid on [x_min, x_max] × [0, y_max]; node (i, j) sits at
/// (x_min + i·dx, j·dy). Row j = 0 is the field trace on the road.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double dt = 0.0;

    /// Validates nx, ny ≥ 3 and a nonempty box; dt may be left 0 and set later.
    static Grid make(double x_min, double x_max, double y_max, std::size_t nx, std::size_t ny,
                     double dt = 0.0);
    /// nx and ny chosen so that the spacings are (as close as possible to) dx and dy.
    static Grid from_spacing(double x_min, double x_max, double y_max, double dx, double dy,
                             double dt = 0.0);

    Grid with_dt(double new_dt) const;
    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
    double y(std::size_t j) const { return dy * static_cast<double>(j); }

    bool same_nodes(const Grid& other) const;
};

/// Road density u (nx values) and field density v stored row by row:
/// v[j·nx + i] = v(x_i, y_j).
struct FieldState {
    double t = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> u;
    std::vector<double> v;

    FieldState() = default;
    FieldState(std::size_t nx_, std::size_t ny_, double t_ = 0.0)
        : t(t_), nx(nx_), ny(ny_), u(nx_, 0.0), v(nx_ * ny_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return v[j * nx + i]; }
    double at(std::size_t i, std::size_t j) const { return v[j * nx + i]; }
    std::span<double> row(std::size_t j) { return {v.data() + j * nx, nx}; }
    std::span<const double> row(std::size_t j) const { return {v.data() + j * nx, nx}; }

    /// Fills u and v with constants.
    static FieldState constant(const Grid& grid, double u_value, double v_value);
};

enum class DatumKind { CompactBump, RoadOnlyBump, Custom };

/// Nonnegative compactly supported initial datum.
///
/// CompactBump: v = amplitude_v·max(0, 1 − (r/width)²)² with r the distance to
/// (center, 1), and u = amplitude_u·max(0, 1 − ((x−center)/width)²)².
/// RoadOnlyBump: the same road profile, v ≡ 0.
/// Custom: u = custom_u(x), v = custom_v(x, y).
struct InitialDatum {
    DatumKind kind = DatumKind::CompactBump;
    double center = 0.0;
    double width = 2.0;
    double amplitude_u = 0.0;
    double amplitude_v = 1.0;
    std::function<double(double)> custom_u;
    std::function<double(double, double)> custom_v;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> values;
};

struct RunRecord {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<Snapshot> road_profiles;   ///< u(·, t)
    std::vector<Snapshot> field_traces;    ///< v(·, 0, t)
    FieldState final_state;
    std::size_t steps = 0;
    double dt = 0.0;                        ///< step actually used
};

/// safety · min(dx²/(2D) [D > 0 only], 1/(2d(1/dx² + 1/dy²)), 1/(μ + ν + f'(0))).
double cfl_dt(const Grid& grid, const ModelParams& params, double safety);

/// True when every linear diagonal coefficient of the explicit update
/// (road, interior field rows and the Robin row) is nonnegative for `dt`.
bool monotone_step(const Grid& grid, const ModelParams& params, double dt);

/// Largest dt for which monotone_step holds. Unlike cfl_dt it includes the
/// Robin row term 2ν·dt/dy.
double max_monotone_dt(const Grid& grid, const ModelParams& params);

/// min(cfl_dt(safety), safety·max_monotone_dt): the step used by the experiments.
double stable_dt(const Grid& grid, const ModelParams& params, double safety);

/// Samples the datum at the nodes. Throws EmptyDatumError when nothing is positive.
FieldState init_state(const Grid& grid, const InitialDatum& datum);

/// Entry threshold above which a run is declared unstable:
/// 10·max(1, ν/μ, sup u, sup v) of the given state.
double blow_up_bound(const FieldState& state, const ModelParams& params);

/// One forward-Euler step (grid.dt) of the road–field system in original
/// variables. Throws BlowUpError if an entry exceeds blow_up_bound(state).
FieldState step(const FieldState& state, const ModelParams& params, const Grid& grid);

/// Double-buffered step: reads `in`, writes `out` (resized as needed).
/// Returns false if an entry is non-finite or exceeds `bound`.
bool step_into(const FieldState& in, FieldState& out, const ModelParams& params,
               const Grid& grid, double bound, kernels::Isa isa = kernels::active_isa());

/// Trapezoidal ∫u dx + ∬v dx dy.
double total_mass(const FieldState& state, const Grid& grid);

struct RunOptions {
    kernels::Isa isa = kernels::active_isa();
    /// Called after every step with the new state.
    std::function<void(const FieldState&)> observer;
};

/// Integrates from the datum to t_end. grid.dt must be positive, within
/// cfl_dt(safety = 1) and monotone; it is shrunk so that an integer number
/// of steps lands on t_end. Mass is recorded at every snapshot, profiles
/// every `snapshot_every` time units (and at t = 0, t_end).
RunRecord run(const ModelParams& params, const Grid& grid, const InitialDatum& datum,
              double t_end, double snapshot_every, const RunOptions& options = {});

/// Worker count for the row loop: ROADFIELD_THREADS (0 or unset = all cores).
int worker_count();

}  // namespace roadfield
