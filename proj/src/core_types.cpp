#include "roadfield/core_types.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "roadfield/errors.hpp"

namespace roadfield {

std::string to_string(ReactionKind kind) {
    switch (kind) {
        case ReactionKind::Logistic: return "logistic";
        case ReactionKind::None: return "none";
        case ReactionKind::Polynomial: return "polynomial";
        case ReactionKind::Custom: return "custom";
    }
    return "unknown";
}

ReactionFunction::ReactionFunction(ReactionKind kind, double fp0, std::vector<double> coeffs,
                                   std::function<double(double)> eval)
    : kind_(kind), f_prime_0_(fp0), coeffs_(std::move(coeffs)), eval_(std::move(eval)) {}

ReactionFunction ReactionFunction::logistic(double f_prime_0) {
    // Same expression as the vector kernels: react·(s·(1−s)).
    return ReactionFunction(ReactionKind::Logistic, f_prime_0, {},
                            [f_prime_0](double s) { return f_prime_0 * (s * (1.0 - s)); });
}

ReactionFunction ReactionFunction::none() {
    return ReactionFunction(ReactionKind::None, 0.0, {}, [](double) { return 0.0; });
}

ReactionFunction ReactionFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) {
        throw DomainError("polynomial reaction needs at least one coefficient");
    }
    const double fp0 = coeffs.front();
    auto eval = [c = coeffs](double s) {
        // Horner on s·(c1 + c2 s + ...), so f(0) is exactly zero.
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
        return acc * s;
    };
    return ReactionFunction(ReactionKind::Polynomial, fp0, std::move(coeffs), std::move(eval));
}

ReactionFunction ReactionFunction::custom(std::function<double(double)> f, double f_prime_0) {
    if (!f) throw DomainError("custom reaction requires a callable");
    return ReactionFunction(ReactionKind::Custom, f_prime_0, {}, std::move(f));
}

double ReactionFunction::operator()(double s) const { return eval_(s); }

ReactionFunction ReactionFunction::scaled(double factor) const {
    switch (kind_) {
        case ReactionKind::Logistic: return logistic(f_prime_0_ * factor);
        case ReactionKind::None: return none();
        case ReactionKind::Polynomial: {
            auto c = coeffs_;
            for (auto& x : c) x *= factor;
            return polynomial(std::move(c));
        }
        case ReactionKind::Custom:
            return custom([g = eval_, factor](double s) { return factor * g(s); },
                          f_prime_0_ * factor);
    }
    return *this;
}

ModelParams::ModelParams(double D, double d, double mu, double nu, double f_prime_0)
    : ModelParams(D, d, mu, nu, f_prime_0, ReactionFunction::logistic(f_prime_0)) {}

ModelParams::ModelParams(double D, double d, double mu, double nu, double f_prime_0,
                         ReactionFunction reaction)
    : D_(D), d_(d), mu_(mu), nu_(nu), fp0_(f_prime_0), reaction_(std::move(reaction)) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(std::string("invalid model parameters: ") + what);
    };
    require(std::isfinite(D) && D >= 0.0, "D must be >= 0");
    require(std::isfinite(d) && d > 0.0, "d must be > 0");
    require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
    require(std::isfinite(nu) && nu > 0.0, "nu must be > 0");
    require(std::isfinite(f_prime_0) && f_prime_0 > 0.0, "f'(0) must be > 0");
}

ModelParams ModelParams::with_D(double D) const {
    return ModelParams(D, d_, mu_, nu_, fp0_, reaction_);
}

ModelParams ModelParams::with_mu(double mu) const {
    return ModelParams(D_, d_, mu, nu_, fp0_, reaction_);
}

ModelParams ModelParams::with_reaction(ReactionFunction reaction) const {
    return ModelParams(D_, d_, mu_, nu_, fp0_, std::move(reaction));
}

bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.D() == b.D() && a.d() == b.d() && a.mu() == b.mu() && a.nu() == b.nu() &&
           a.f_prime_0() == b.f_prime_0() && a.reaction().kind() == b.reaction().kind() &&
           a.reaction().f_prime_0() == b.reaction().f_prime_0() &&
           a.reaction().coefficients() == b.reaction().coefficients();
}

double c_kpp(const ModelParams& params) {
    return 2.0 * std::sqrt(params.d() * params.f_prime_0());
}

ModelParams normalize_nu(const ModelParams& p) {
    const double nu = p.nu();
    if (nu == 1.0) return p;
    return ModelParams(p.D() / nu, p.d() / nu, p.mu() / nu, 1.0, p.f_prime_0() / nu,
                       p.reaction().scaled(1.0 / nu));
}

ModelParams symmetrize_full_plane(const ModelParams& p) {
    return ModelParams(p.D(), p.d(), p.mu() / 2.0, 2.0 * p.nu(), p.f_prime_0(), p.reaction());
}

KppCheck check_kpp(const ReactionFunction& f, int n_samples) {
    if (n_samples < 2) throw DomainError("check_kpp needs at least 2 samples");

    auto fail = [](double s, std::string why) {
        KppCheck r;
        r.ok = false;
        r.violating_sample = s;
        r.reason = std::move(why);
        return r;
    };
    auto describe = [](const char* what, double s, double fs) {
        std::ostringstream os;
        os.precision(17);
        os << what << " at s=" << s << " (f(s)=" << fs << ")";
        return os.str();
    };

    if (f(0.0) != 0.0) return fail(0.0, describe("f(0) != 0", 0.0, f(0.0)));
    if (f(1.0) != 0.0) return fail(1.0, describe("f(1) != 0", 1.0, f(1.0)));

    const double fp0 = f.f_prime_0();
    const int n = n_samples;
    for (int k = 1; k <= n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n + 1);
        const double fs = f(s);
        if (!(fs > 0.0)) return fail(s, describe("f(s) <= 0 inside (0,1)", s, fs));
        if (!(fs <= fp0 * s)) return fail(s, describe("f(s) > f'(0)s", s, fs));
    }
    for (int k = 1; k <= n; ++k) {
        const double s = 1.0 + static_cast<double>(k) / static_cast<double>(n);
        const double fs = f(s);
        if (!(fs < 0.0)) return fail(s, describe("f(s) >= 0 beyond 1", s, fs));
    }
    return {};
}

}  // namespace roadfield
