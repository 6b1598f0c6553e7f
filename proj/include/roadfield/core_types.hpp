#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace roadfield {

enum class ReactionKind {
    Logistic,    ///< f(s) = f'(0)·s·(1−s)
    None,        ///< f ≡ 0 (pure exchange/diffusion, used for conservation runs)
    Polynomial,  ///< f(s) = Σ_{k≥1} c_k s^k
    Custom,      ///< arbitrary callable supplied by the caller
};

std::string to_string(ReactionKind kind);

/// Field reaction term f, stored as an evaluator plus its slope at zero.
///
/// The dispersion algebra only ever needs f'(0); the evaluator is used by the
/// simulator. Logistic and None are recognised by the vector kernels, the
/// other kinds are evaluated point by point.
class ReactionFunction {
public:
    static ReactionFunction logistic(double f_prime_0 = 1.0);
    static ReactionFunction none();
    /// coeffs[k] multiplies s^(k+1); f'(0) = coeffs[0].
    static ReactionFunction polynomial(std::vector<double> coeffs);
    static ReactionFunction custom(std::function<double(double)> f, double f_prime_0);

    double operator()(double s) const;
    double f_prime_0() const noexcept { return f_prime_0_; }
    ReactionKind kind() const noexcept { return kind_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

    /// Returns s ↦ factor·f(s); used by the time rescaling.
    ReactionFunction scaled(double factor) const;

private:
    ReactionFunction(ReactionKind kind, double fp0, std::vector<double> coeffs,
                     std::function<double(double)> eval);

    ReactionKind kind_;
    double f_prime_0_;
    std::vector<double> coeffs_;
    std::function<double(double)> eval_;
};

/// Physical constants of the road–field system.
///
/// D: road diffusivity, d: field diffusivity, mu: road→field rate,
/// nu: field→road rate, f_prime_0: linear growth rate of the field reaction.
/// Construction validates d, mu, nu, f'(0) > 0 and D ≥ 0.
class ModelParams {
public:
    ModelParams(double D, double d, double mu, double nu, double f_prime_0);
    ModelParams(double D, double d, double mu, double nu, double f_prime_0,
                ReactionFunction reaction);

    double D() const noexcept { return D_; }
    double d() const noexcept { return d_; }
    double mu() const noexcept { return mu_; }
    double nu() const noexcept { return nu_; }
    double f_prime_0() const noexcept { return fp0_; }
    const ReactionFunction& reaction() const noexcept { return reaction_; }

    ModelParams with_D(double D) const;
    ModelParams with_mu(double mu) const;
    ModelParams with_reaction(ReactionFunction reaction) const;

    /// Road equilibrium density ν/μ.
    double road_equilibrium() const noexcept { return nu_ / mu_; }

private:
    double D_, d_, mu_, nu_, fp0_;
    ReactionFunction reaction_;
};

bool operator==(const ModelParams& a, const ModelParams& b);

/// Classical Fisher-KPP speed 2·sqrt(d·f'(0)).
double c_kpp(const ModelParams& params);

/// Rescales time by 1/ν so that ν becomes 1: D, d, μ, f'(0) and f are divided by ν.
/// A front speed c computed for the result corresponds to ν·c in the original units.
ModelParams normalize_nu(const ModelParams& params);

/// ν → 2ν, μ → μ/2: the half-plane constants describing the problem posed
/// on the whole plane with data symmetric about the road.
ModelParams symmetrize_full_plane(const ModelParams& params);

struct KppCheck {
    bool ok = true;
    std::optional<double> violating_sample;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Samples n points in (0,1) and n points in (1,2] and checks f(0)=f(1)=0,
/// 0 < f(s) ≤ f'(0)s on (0,1) and f(s) < 0 beyond 1.
KppCheck check_kpp(const ReactionFunction& f, int n_samples);

}  // namespace roadfield
