#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "gen.hpp"
#include "roadfield/config.hpp"
#include "roadfield/core_types.hpp"
#include "roadfield/errors.hpp"

using namespace roadfield;

TEST_CASE("c_kpp examples") {
    CHECK(c_kpp(ModelParams(1, 1, 1, 1, 1)) == 2.0);
    CHECK(c_kpp(ModelParams(1, 0.25, 1, 1, 1)) == 1.0);
    CHECK(c_kpp(ModelParams(1, 2, 1, 1, 0.5)) == 2.0);
}

TEST_CASE("c_kpp scales like sqrt(d f'(0))") {
    testgen::Gen g(11);
    for (int k = 0; k < 200; ++k) {
        const ModelParams p = g.params();
        const double s = g.log_uniform(0.1, 10.0);
        const ModelParams q(p.D(), p.d() * s, p.mu(), 1.0, p.f_prime_0() * s);
        CHECK(c_kpp(q) == doctest::Approx(s * c_kpp(p)).epsilon(1e-14));
    }
}

TEST_CASE("ModelParams validation") {
    CHECK_NOTHROW(ModelParams(0, 1, 1, 1, 1));
    CHECK_THROWS_AS(ModelParams(-1, 1, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(ModelParams(1, 0, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(ModelParams(1, 1, 0, 1, 1), DomainError);
    CHECK_THROWS_AS(ModelParams(1, 1, 1, -2, 1), DomainError);
    CHECK_THROWS_AS(ModelParams(1, 1, 1, 1, 0), DomainError);
    CHECK_THROWS_AS(ModelParams(1, 1, 1, 1, NAN), DomainError);
    CHECK(ModelParams(1, 1, 2, 3, 1).road_equilibrium() == 1.5);
}

TEST_CASE("normalize_nu") {
    const ModelParams p(2, 1, 1, 2, 1);
    const ModelParams n = normalize_nu(p);
    CHECK(n.D() == 1.0);
    CHECK(n.d() == 0.5);
    CHECK(n.mu() == 0.5);
    CHECK(n.nu() == 1.0);
    CHECK(n.f_prime_0() == 0.5);
    CHECK(n.reaction()(0.5) == doctest::Approx(0.5 * 0.25));

    const ModelParams unit(3, 0.7, 2, 1, 0.4);
    CHECK(normalize_nu(unit) == unit);
    CHECK(normalize_nu(n) == n);
}

TEST_CASE("symmetrize_full_plane") {
    const ModelParams p(1, 1, 1, 1, 1);
    const ModelParams s = symmetrize_full_plane(p);
    CHECK(s.mu() == 0.5);
    CHECK(s.nu() == 2.0);
    const ModelParams ss = symmetrize_full_plane(s);
    CHECK(ss.mu() == 0.25);
    CHECK(ss.nu() == 4.0);
    CHECK(ss.D() == 1.0);
    CHECK(ss.d() == 1.0);
}

TEST_CASE("check_kpp") {
    CHECK(check_kpp(ReactionFunction::logistic(1.0), 1000).ok);
    CHECK(check_kpp(ReactionFunction::logistic(2.0), 1000).ok);

    // s(1 − s)(1 + 4s) = s + 3s² − 4s³ exceeds s near s = 1/2.
    const auto bad = check_kpp(ReactionFunction::polynomial({1.0, 3.0, -4.0}), 1000);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violating_sample.has_value());
    CHECK(*bad.violating_sample > 0.0);
    CHECK(*bad.violating_sample < 1.0);

    CHECK(check_kpp(ReactionFunction::polynomial({2.0, -2.0}), 1000).ok);
    CHECK_FALSE(check_kpp(ReactionFunction::none(), 1000).ok);
    // f(1) ≠ 0
    CHECK_FALSE(check_kpp(ReactionFunction::polynomial({1.0, -0.5}), 1000).ok);
    CHECK_THROWS(check_kpp(ReactionFunction::logistic(1.0), 1));
}

TEST_CASE("reaction evaluation") {
    const auto f = ReactionFunction::polynomial({1.0, 3.0, -4.0});
    CHECK(f(0.5) == doctest::Approx(0.75));
    CHECK(f.f_prime_0() == 1.0);
    CHECK(ReactionFunction::logistic(3.0)(0.25) == doctest::Approx(3.0 * 0.1875));
    CHECK(ReactionFunction::none()(0.3) == 0.0);
    const auto c = ReactionFunction::custom([](double s) { return std::sin(s); }, 1.0);
    CHECK(c(0.2) == std::sin(0.2));
    CHECK(f.scaled(2.0)(0.5) == doctest::Approx(1.5));
    CHECK(f.scaled(2.0).f_prime_0() == 2.0);
}

TEST_CASE("config parsing") {
    const Config c = Config::parse("# model\nD = 4\n  mu=0.5  # trailing\n\nreaction = logistic\n");
    const ModelParams p = params_from_config(c);
    CHECK(p.D() == 4.0);
    CHECK(p.mu() == 0.5);
    CHECK(p.d() == 1.0);
    CHECK(p.reaction().kind() == ReactionKind::Logistic);

    CHECK_THROWS_AS(Config::parse("D = 1\nD = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(params_from_config(Config::parse("D = abc\n")), ConfigError);
    CHECK_THROWS_AS(params_from_config(Config::parse("D = -1\n")), ConfigError);
    CHECK_THROWS_AS(params_from_config(Config::parse("reaction = cubic\n")), ConfigError);
    CHECK_THROWS_AS(params_from_config(Config::parse("poly = 1,-1\n")), ConfigError);
    CHECK_THROWS_AS(params_from_config(Config::parse("reaction = custom\n")), ConfigError);

    const auto custom = params_from_config(Config::parse("reaction = custom\npoly = 2, -2\nfp0 = 2\n"));
    CHECK(custom.reaction().kind() == ReactionKind::Polynomial);
    CHECK(custom.reaction()(0.5) == doctest::Approx(0.5));

    const auto none = params_from_config(Config::parse("reaction = none\n"));
    CHECK(none.reaction()(0.5) == 0.0);

    Config o = Config::parse("D = 1\n");
    o.apply_override("D=9");
    o.apply_override("mu = 2");
    CHECK(params_from_config(o).D() == 9.0);
    CHECK(params_from_config(o).mu() == 2.0);
    CHECK_THROWS_AS(o.apply_override("novalue"), ConfigError);

    const std::string_view allowed[] = {"D", "mu"};
    CHECK_NOTHROW(o.require_known(allowed));
    o.set("bogus", "1");
    CHECK_THROWS_AS(o.require_known(allowed), ConfigError);

    CHECK(parse_double_list("1, 2.5,4", "list") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK_THROWS_AS(parse_double_list("1,,2", "list"), ConfigError);
}
