#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roadfield/core_types.hpp"

// Exponential solutions (e^{α(x+ct)}, γe^{α(x+ct)−βy}) of the road–field system
// linearised at zero. In the (β, α) plane the road equation is a curve Γ_{c,D}
// (branches α_D^±), the field equation a circle Γ_{c,d} (half circles α_d^±);
// the spreading speed c* is the smallest c at which they touch.
//
// Every function in this header expects ν = 1 (see normalize_nu) except
// spreading_speed, which normalises internally.

namespace roadfield {

inline constexpr double kDefaultSpeedTol = 1e-8;

enum class Sign { Plus, Minus };

enum class Branch { RoadPlus, RoadMinus, FieldPlus, FieldMinus, RoadStripPlus, LimitPlus };

std::string to_string(Branch branch);

struct CurvePoint {
    double beta = 0.0;
    double alpha = 0.0;
    Branch branch = Branch::FieldMinus;
};

struct ExponentialAnsatz {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double c = 0.0;
};

/// Residuals of the road, field and boundary equations, in that order.
std::array<double, 3> ansatz_residuals(const ExponentialAnsatz& a, const ModelParams& params);

enum class Regime { SubThreshold, SuperThreshold };

std::string to_string(Regime regime);

struct SpeedResult {
    double c_star = 0.0;
    Regime regime = Regime::SubThreshold;
    std::pair<double, double> bracket{0.0, 0.0};
    double tol = 0.0;
    std::optional<CurvePoint> tangency;
};

struct GammaPlusClassification {
    double delta = 0.0;
    bool intersects = false;
    std::optional<double> c_tilde_1;
    std::optional<double> c_tilde_2;
};

struct LimitBounds {
    double low = 0.0;
    double high = 0.0;
};

struct Intersection {
    double beta = 0.0;
    double alpha = 0.0;
    Branch road = Branch::RoadPlus;
    Branch field = Branch::FieldMinus;
};

/// Value of a gap function together with the β realising it.
struct GapValue {
    double gap = 0.0;
    double beta = 0.0;
};

// -- curves -----------------------------------------------------------------

/// Leftmost β of the road curve: −c²/(d(c²+4μD)).
double beta_D(double c, const ModelParams& params);

/// Radius of the field circle, sqrt(c²−c_KPP²)/(2d). Throws DomainError for c < c_KPP.
double beta_kpp(double c, const ModelParams& params);

/// Root of −Dα² + cα = γ − μ with γ = μ/(1+dβ). Requires D > 0 and β ≥ β_D(c).
double alpha_road(double c, double beta, const ModelParams& params, Sign sign);

/// Root of −dα² + cα = f'(0) + dβ². Requires c ≥ c_KPP and |β| ≤ β_KPP(c).
double alpha_field(double c, double beta, const ModelParams& params, Sign sign);

/// γ = μ/(1+dβ); throws DomainError for β ≤ −1/d.
double gamma_of_beta(double beta, const ModelParams& params);

// -- half plane ---------------------------------------------------------------

/// G(c) = max_β (α_D^+ − α_d^−) over the common β range; G ≥ 0 iff the curves meet.
GapValue curve_gap_detail(double c, const ModelParams& params);
double curve_gap(double c, const ModelParams& params);

/// All crossings of Γ_{c,D} with Γ_{c,d}, found from sign changes of the four
/// branch differences on a uniform β grid and refined by bisection.
std::vector<Intersection> intersections(double c, const ModelParams& params,
                                        std::size_t samples = 4096);

SpeedResult critical_speed(const ModelParams& params, double tol = kDefaultSpeedTol);

/// Spreading speed for arbitrary ν: normalises, solves, and rescales by ν.
SpeedResult spreading_speed(const ModelParams& params, double tol = kDefaultSpeedTol);

GammaPlusClassification gamma_plus_threshold(const ModelParams& params);

// -- strip ℝ×(0,L) ------------------------------------------------------------

/// Upper root of the strip road equation (field vanishing at y = L). Requires β > 0.
double strip_alpha_road(double c, double beta, double L, const ModelParams& params);

/// G_L(c) = sup_{β ∈ (0, β_KPP(c)]} (α_D^{+,L} − α_d^−).
GapValue strip_gap_detail(double c, double L, const ModelParams& params);

/// Critical speed c*^L of the strip problem. Requires D > 2d; throws
/// NoTangencyError when L is too small for a tangency in (c_KPP, c*).
SpeedResult strip_critical_speed(const ModelParams& params, double L,
                                 double tol = kDefaultSpeedTol);

// -- D → ∞ ----------------------------------------------------------------------

/// G_∞(c): road curve at D = 1 against the parabola α = (f'(0)+dβ²)/c.
GapValue limit_gap_detail(double c, const ModelParams& params);

/// lim c*(D)/sqrt(D) as D → ∞.
double limit_speed(const ModelParams& params, double tol = kDefaultSpeedTol);

/// (sqrt(4μ²+f'(0)²) − 2μ, f'(0)): window containing lim c*²/D.
LimitBounds limit_bounds(const ModelParams& params);

}  // namespace roadfield
