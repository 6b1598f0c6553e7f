#include "roadfield/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "roadfield/errors.hpp"
#include "roadfield/numerics.hpp"

namespace roadfield {
namespace {

// β-maximisation: dense grid, then golden section down to this width.
constexpr std::size_t kGridSamples = 2048;
constexpr double kBetaTol = 1e-12;

void require_unit_nu(const ModelParams& p) {
    if (p.nu() != 1.0) throw DomainError("dispersion routines expect nu = 1; call normalize_nu first");
}

void require_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

// c² + 4μdDβ/(1+dβ), written so that it vanishes exactly at β = β_D(c).
double road_discriminant(double c, double beta, double D, const ModelParams& p) {
    const double d = p.d();
    const double bD = -(c * c) / (d * (c * c + 4.0 * p.mu() * D));
    return d * (c * c + 4.0 * p.mu() * D) * (beta - bD) / (1.0 + d * beta);
}

double road_root(double c, double beta, double D, const ModelParams& p, Sign sign) {
    if (!(1.0 + p.d() * beta > 0.0)) throw DomainError("alpha_road: beta must exceed -1/d");
    const double disc = road_discriminant(c, beta, D, p);
    if (disc < 0.0) throw DomainError("alpha_road: beta below the leftmost point beta_D(c)");
    if (disc == 0.0) return c / (2.0 * D);

    const double plus = (c + std::sqrt(disc)) / (2.0 * D);
    if (sign == Sign::Plus) return plus;
    // Product of roots is (γ−μ)/D = −μdβ/((1+dβ)D); avoids cancellation in c − sqrt(disc).
    return -p.mu() * p.d() * beta / ((1.0 + p.d() * beta) * D * plus);
}

}  // namespace

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::RoadPlus: return "RoadPlus";
        case Branch::RoadMinus: return "RoadMinus";
        case Branch::FieldPlus: return "FieldPlus";
        case Branch::FieldMinus: return "FieldMinus";
        case Branch::RoadStripPlus: return "RoadStripPlus";
        case Branch::LimitPlus: return "LimitPlus";
    }
    return "unknown";
}

std::string to_string(Regime regime) {
    return regime == Regime::SubThreshold ? "SubThreshold" : "SuperThreshold";
}

std::array<double, 3> ansatz_residuals(const ExponentialAnsatz& a, const ModelParams& p) {
    const double road = -p.D() * a.alpha * a.alpha + a.c * a.alpha - (a.gamma - p.mu());
    const double field =
        -p.d() * a.alpha * a.alpha + a.c * a.alpha - (p.f_prime_0() + p.d() * a.beta * a.beta);
    const double boundary = p.d() * a.beta * a.gamma - (p.mu() - a.gamma);
    return {road, field, boundary};
}

double beta_D(double c, const ModelParams& p) {
    return -(c * c) / (p.d() * (c * c + 4.0 * p.mu() * p.D()));
}

double beta_kpp(double c, const ModelParams& p) {
    const double ck = c_kpp(p);
    if (c < ck) throw DomainError("beta_kpp: c below c_KPP");
    return std::sqrt((c - ck) * (c + ck)) / (2.0 * p.d());
}

double alpha_road(double c, double beta, const ModelParams& p, Sign sign) {
    require_unit_nu(p);
    if (!(p.D() > 0.0)) throw DomainError("alpha_road: requires D > 0");
    return road_root(c, beta, p.D(), p, sign);
}

double alpha_field(double c, double beta, const ModelParams& p, Sign sign) {
    const double radius = beta_kpp(c, p);
    if (std::abs(beta) > radius) throw DomainError("alpha_field: |beta| exceeds beta_KPP(c)");
    const double ck = c_kpp(p);
    const double two_d_beta = 2.0 * p.d() * beta;
    const double disc = std::max(0.0, (c - ck) * (c + ck) - two_d_beta * two_d_beta);
    const double plus = (c + std::sqrt(disc)) / (2.0 * p.d());
    if (sign == Sign::Plus) return plus;
    // Product of roots is (f'(0)+dβ²)/d.
    return (p.f_prime_0() + p.d() * beta * beta) / (p.d() * plus);
}

double gamma_of_beta(double beta, const ModelParams& p) {
    const double denom = 1.0 + p.d() * beta;
    if (!(denom > 0.0)) throw DomainError("gamma_of_beta: beta must exceed -1/d");
    return p.mu() / denom;
}

GapValue curve_gap_detail(double c, const ModelParams& p) {
    require_unit_nu(p);
    if (!(p.D() > 0.0)) throw DomainError("curve_gap: requires D > 0");
    const double radius = beta_kpp(c, p);
    const double lo = std::max(beta_D(c, p), -radius);
    const double hi = radius;
    auto objective = [&](double b) {
        return alpha_road(c, b, p, Sign::Plus) - alpha_field(c, b, p, Sign::Minus);
    };
    const auto best = numerics::grid_golden_max(objective, lo, hi, kGridSamples, kBetaTol);
    return {best.value, best.x};
}

double curve_gap(double c, const ModelParams& p) { return curve_gap_detail(c, p).gap; }

std::vector<Intersection> intersections(double c, const ModelParams& p, std::size_t samples) {
    require_unit_nu(p);
    if (!(p.D() > 0.0)) throw DomainError("intersections: requires D > 0");
    if (samples < 2) samples = 2;
    const double radius = beta_kpp(c, p);
    const double lo = std::max(beta_D(c, p), -radius);
    const double hi = radius;
    std::vector<Intersection> out;
    if (!(hi > lo)) return out;

    const std::array<std::pair<Sign, Sign>, 4> pairs = {{{Sign::Plus, Sign::Minus},
                                                         {Sign::Plus, Sign::Plus},
                                                         {Sign::Minus, Sign::Minus},
                                                         {Sign::Minus, Sign::Plus}}};
    const double h = (hi - lo) / static_cast<double>(samples);
    auto beta_at = [&](std::size_t k) { return k == samples ? hi : lo + h * static_cast<double>(k); };

    for (const auto& [road_sign, field_sign] : pairs) {
        auto diff = [&](double b) {
            return alpha_road(c, b, p, road_sign) - alpha_field(c, b, p, field_sign);
        };
        double b0 = beta_at(0);
        double f0 = diff(b0);
        for (std::size_t k = 1; k <= samples; ++k) {
            const double b1 = beta_at(k);
            const double f1 = diff(b1);
            const bool change = (f0 < 0.0 && f1 >= 0.0) || (f0 >= 0.0 && f1 < 0.0);
            if (change) {
                double a = b0, b = b1, fa = f0;
                for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = diff(m);
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                const double beta = 0.5 * (a + b);
                out.push_back({beta, alpha_field(c, beta, p, field_sign),
                               road_sign == Sign::Plus ? Branch::RoadPlus : Branch::RoadMinus,
                               field_sign == Sign::Plus ? Branch::FieldPlus : Branch::FieldMinus});
            }
            b0 = b1;
            f0 = f1;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Intersection& a, const Intersection& b) { return a.beta < b.beta; });
    return out;
}

SpeedResult critical_speed(const ModelParams& p, double tol) {
    require_unit_nu(p);
    require_tol(tol);
    const double ck = c_kpp(p);

    SpeedResult result;
    result.tol = tol;
    if (p.D() <= 2.0 * p.d()) {
        result.c_star = ck;
        result.regime = Regime::SubThreshold;
        result.bracket = {ck, ck};
        return result;
    }

    auto gap = [&](double c) { return curve_gap(c, p); };
    // G(c_KPP) = c/D − c/(2d) < 0 here; grow the upper end geometrically.
    double lo = ck;
    double step = 1.0;
    double hi = ck + step;
    const double limit = std::ldexp(ck, 60);
    while (gap(hi) < 0.0) {
        lo = hi;
        step *= 2.0;
        hi = ck + step;
        if (hi > limit) throw BracketError("critical_speed: no sign change below 2^60 c_KPP");
    }

    const auto br = numerics::bisect_increasing(gap, {lo, hi}, tol);
    result.c_star = br.mid();
    result.regime = Regime::SuperThreshold;
    result.bracket = {br.lo, br.hi};
    const auto at = curve_gap_detail(result.c_star, p);
    result.tangency = CurvePoint{at.beta, alpha_field(result.c_star, at.beta, p, Sign::Minus),
                                 Branch::FieldMinus};
    return result;
}

SpeedResult spreading_speed(const ModelParams& p, double tol) {
    const double nu = p.nu();
    const ModelParams n = normalize_nu(p);
    SpeedResult r = critical_speed(n, tol / nu);
    if (r.regime == Regime::SubThreshold) {
        // Report the original-units c_KPP verbatim so the sub-threshold value stays exact.
        const double ck = c_kpp(p);
        r.c_star = ck;
        r.bracket = {ck, ck};
        r.tol = tol;
        return r;
    }
    r.c_star *= nu;
    r.bracket = {r.bracket.first * nu, r.bracket.second * nu};
    r.tol = tol;
    return r;
}

GammaPlusClassification gamma_plus_threshold(const ModelParams& p) {
    require_unit_nu(p);
    const double ck = c_kpp(p);
    const double ck2 = ck * ck;
    const double d = p.d();
    const double scale = 4.0 * p.mu() * d * d;

    auto h = [ck2](double t) { return t / ((t * t + ck2) * (t + 2.0)); };
    // h increases then decreases; its maximiser solves t³ + t² = c_KPP² and so lies in (0, c_KPP].
    const auto peak = numerics::golden_section_max(h, 0.0, ck, 1e-15 * std::max(1.0, ck));

    GammaPlusClassification out;
    out.delta = scale * peak.value;
    if (!(out.delta > 0.0 && out.delta < p.mu() * d / p.f_prime_0())) {
        throw std::logic_error("gamma_plus_threshold: delta outside (0, mu d / f'(0))");
    }

    const double excess = p.D() - 2.0 * d;
    // D = 2d + δ built in floating point can land a few ulps above δ.
    out.intersects = excess > 0.0 && excess <= out.delta * (1.0 + 1e-12);
    if (!out.intersects) return out;

    const double level = excess / scale;
    double t1 = peak.x;
    double t2 = peak.x;
    if (level < peak.value) {
        auto rising = [&](double t) { return h(t) - level; };
        t1 = numerics::bisect_increasing(rising, {0.0, peak.x}, 0.0).mid();

        double far = std::max(2.0 * peak.x, 1.0);
        while (h(far) >= level) far *= 2.0;
        auto falling = [&](double t) { return level - h(t); };
        t2 = numerics::bisect_increasing(falling, {peak.x, far}, 0.0).mid();
    }
    out.c_tilde_1 = std::sqrt(t1 * t1 + ck2);
    out.c_tilde_2 = std::sqrt(t2 * t2 + ck2);
    return out;
}

double strip_alpha_road(double c, double beta, double L, const ModelParams& p) {
    require_unit_nu(p);
    if (!(p.D() > 0.0)) throw DomainError("strip_alpha_road: requires D > 0");
    if (!(beta > 0.0)) throw DomainError("strip_alpha_road: requires beta > 0");
    if (!(L > 0.0)) throw DomainError("strip_alpha_road: requires L > 0");

    const double d = p.d();
    const double D = p.D();
    const double e = std::exp(-2.0 * beta * L);
    const double one_minus_e = -std::expm1(-2.0 * beta * L);
    const double dbeta = d * beta;
    // Strip discriminant = half-plane discriminant + 8μdDβe / ((1−e+(1+e)dβ)(1+dβ)).
    const double excess =
        8.0 * p.mu() * d * D * beta * e / ((one_minus_e + (1.0 + e) * dbeta) * (1.0 + dbeta));
    const double disc = road_discriminant(c, beta, D, p) + excess;
    if (disc < 0.0) throw DomainError("strip_alpha_road: negative discriminant");
    return (c + std::sqrt(disc)) / (2.0 * D);
}

GapValue strip_gap_detail(double c, double L, const ModelParams& p) {
    const double radius = beta_kpp(c, p);
    if (!(radius > 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
    const double lo = radius * 1e-12;
    auto objective = [&](double b) {
        return strip_alpha_road(c, b, L, p) - alpha_field(c, b, p, Sign::Minus);
    };
    const auto best = numerics::grid_golden_max(objective, lo, radius, kGridSamples, kBetaTol);
    return {best.value, best.x};
}

SpeedResult strip_critical_speed(const ModelParams& p, double L, double tol) {
    require_unit_nu(p);
    require_tol(tol);
    if (!(p.D() > 2.0 * p.d())) throw DomainError("strip_critical_speed: requires D > 2d");
    if (!(L > 0.0)) throw DomainError("strip_critical_speed: requires L > 0");

    const double ck = c_kpp(p);
    const SpeedResult full = critical_speed(p, tol);
    auto gap = [&](double c) { return strip_gap_detail(c, L, p).gap; };

    if (gap(full.c_star) < 0.0) {
        throw NoTangencyError("strip_critical_speed: strip curves do not meet below c* (L too small?)");
    }
    const double probe = ck * (1.0 + 1e-12);
    if (gap(probe) >= 0.0) {
        throw NoTangencyError("strip_critical_speed: strip curves already meet at c_KPP");
    }

    const auto br = numerics::bisect_increasing(gap, {probe, full.c_star}, tol);
    SpeedResult r;
    r.c_star = br.mid();
    r.regime = Regime::SuperThreshold;
    r.bracket = {br.lo, br.hi};
    r.tol = tol;
    const auto at = strip_gap_detail(r.c_star, L, p);
    r.tangency = CurvePoint{at.beta, alpha_field(r.c_star, at.beta, p, Sign::Minus),
                            Branch::FieldMinus};
    return r;
}

GapValue limit_gap_detail(double c, const ModelParams& p) {
    require_unit_nu(p);
    if (!(c > 0.0)) throw DomainError("limit_gap: requires c > 0");
    const double d = p.d();
    const double fp0 = p.f_prime_0();
    const double road_sup = (c + std::sqrt(c * c + 4.0 * p.mu())) / 2.0;
    const double lo = -(c * c) / (d * (c * c + 4.0 * p.mu()));
    const double hi = std::sqrt(std::max(0.0, (c * road_sup - fp0) / d));

    auto objective = [&](double b) {
        return road_root(c, b, 1.0, p, Sign::Plus) - (fp0 + d * b * b) / c;
    };
    const auto best = numerics::grid_golden_max(objective, lo, std::max(hi, 0.0), kGridSamples, kBetaTol);
    return {best.value, best.x};
}

double limit_speed(const ModelParams& p, double tol) {
    require_unit_nu(p);
    require_tol(tol);
    auto gap = [&](double c) { return limit_gap_detail(c, p).gap; };

    // At c = sqrt(f'(0)) the parabola bottom f'(0)/c meets the road curve value c at β = 0.
    double hi = std::sqrt(p.f_prime_0());
    int guard = 0;
    while (gap(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw BracketError("limit_speed: no upper bracket");
    }
    double lo = hi;
    guard = 0;
    while (gap(lo) >= 0.0) {
        lo *= 0.5;
        if (++guard > 1000) throw BracketError("limit_speed: no lower bracket");
    }
    return numerics::bisect_increasing(gap, {lo, hi}, tol).mid();
}

LimitBounds limit_bounds(const ModelParams& p) {
    require_unit_nu(p);
    const double mu = p.mu();
    const double fp0 = p.f_prime_0();
    return {std::sqrt(4.0 * mu * mu + fp0 * fp0) - 2.0 * mu, fp0};
}

}  // namespace roadfield
