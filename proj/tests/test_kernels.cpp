#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "gen.hpp"
#include "roadfield/kernels.hpp"
#include "roadfield/simulator.hpp"

using namespace roadfield;
using kernels::Isa;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<Isa> vector_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
        if (kernels::isa_available(isa)) out.push_back(isa);
    }
    return out;
}

}  // namespace

TEST_CASE("scalar kernel matches the stencil formula") {
    const std::vector<double> m{0.1, 0.5, 0.9, 0.3};
    const std::vector<double> b{1.0, 2.0, 3.0, 4.0};
    std::vector<double> out(4);
    kernels::RowArgs a;
    a.mid = m.data();
    a.below = b.data();
    a.out = out.data();
    a.n = 4;
    a.k = {0.5, 0.25, 0.1, 0.0, 0.0, 0.2};
    a.reaction = kernels::RowReaction::Logistic;
    a.bound = 10.0;
    REQUIRE(kernels::update_row_scalar(a));
    // Mirror ghosts: neighbours of node 0 are m[1] twice, of node 3 are m[2] twice.
    CHECK(out[0] == doctest::Approx(0.5 * 0.1 + 0.25 * (0.5 + 0.5) + 0.1 * 1.0 + 0.2 * 0.1 * 0.9));
    CHECK(out[1] == doctest::Approx(0.5 * 0.5 + 0.25 * (0.1 + 0.9) + 0.1 * 2.0 + 0.2 * 0.25));
    CHECK(out[3] == doctest::Approx(0.5 * 0.3 + 0.25 * (0.9 + 0.9) + 0.1 * 4.0 + 0.2 * 0.3 * 0.7));

    a.bound = 0.5;
    CHECK_FALSE(kernels::update_row_scalar(a));
}

TEST_CASE("vector kernels are bitwise equal to the scalar reference (property)") {
    const auto isas = vector_isas();
    if (isas.empty()) {
        MESSAGE("no vector ISA available on this machine; equivalence not exercised");
        return;
    }
    testgen::Gen g(31);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto n = static_cast<std::size_t>(g.integer(2, 70));
        std::vector<double> mid(n), below(n), above(n), source(n);
        for (std::size_t i = 0; i < n; ++i) {
            mid[i] = g.uniform(0.0, 1.5);
            below[i] = g.uniform(0.0, 1.5);
            above[i] = g.uniform(0.0, 1.5);
            source[i] = g.uniform(0.0, 3.0);
        }
        kernels::RowArgs a;
        a.mid = mid.data();
        a.below = below.data();
        a.above = g.integer(0, 1) ? above.data() : nullptr;
        a.source = g.integer(0, 1) ? source.data() : nullptr;
        a.n = n;
        a.k = {g.uniform(0, 1), g.uniform(0, 0.3), g.uniform(0, 0.3), g.uniform(0, 0.3),
               g.uniform(0, 0.3), g.uniform(0, 0.1)};
        a.reaction = g.integer(0, 1) ? kernels::RowReaction::Logistic : kernels::RowReaction::None;
        a.bound = g.integer(0, 3) == 0 ? g.uniform(0.5, 2.0) : 100.0;
        if (g.integer(0, 20) == 0) mid[g.integer(0, static_cast<int>(n) - 1)] = std::numeric_limits<double>::quiet_NaN();

        std::vector<double> ref(n), got(n);
        a.out = ref.data();
        const bool ref_ok = kernels::update_row_scalar(a);
        for (Isa isa : isas) {
            a.out = got.data();
            const bool ok = kernels::update_row(isa, a);
            CHECK(ok == ref_ok);
            CHECK(same_bits(ref, got));
        }
    }
}

TEST_CASE("full runs are bitwise identical across ISAs") {
    const auto isas = vector_isas();
    if (isas.empty()) return;
    const ModelParams p(3, 1, 1.3, 0.7, 1);
    Grid g = Grid::from_spacing(-10.0, 10.0, 6.0, 0.25, 0.3);
    g = g.with_dt(stable_dt(g, p, 0.8));
    InitialDatum datum;
    datum.amplitude_u = 0.5;
    const auto ref = run(p, g, datum, 3.0, 0.5, {Isa::Scalar, {}});
    for (Isa isa : isas) {
        const auto got = run(p, g, datum, 3.0, 0.5, {isa, {}});
        CHECK(same_bits(ref.final_state.u, got.final_state.u));
        CHECK(same_bits(ref.final_state.v, got.final_state.v));
        CHECK(same_bits(ref.mass, got.mass));
    }
}

TEST_CASE("ISA bookkeeping") {
    CHECK(kernels::isa_available(Isa::Scalar));
    CHECK(kernels::isa_available(kernels::best_isa()));
    CHECK(kernels::isa_available(kernels::active_isa()));
    CHECK(kernels::to_string(Isa::Scalar) == "scalar");
    if (!kernels::isa_available(Isa::Neon)) {
        kernels::RowArgs a;
        CHECK_THROWS(kernels::update_row(Isa::Neon, a));
    }
}
