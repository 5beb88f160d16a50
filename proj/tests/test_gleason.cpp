#include <doctest.h>

#include "ncfa/gleason.hpp"
#include "ncfa/suites.hpp"

using namespace ncfa;

namespace {
StrictContraction scalar(double v) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    return StrictContraction(m, 1e-12);
}
} // namespace

TEST_CASE("scalar Mobius map matches the disk automorphism formula") {
    CMatrix t = mobius_map(scalar(0.5), scalar(0.25));
    CHECK(std::abs(t(0, 0) - Complex(2.0 / 3.0)) <= 1e-12);
    CHECK(mobius_map(scalar(0.5), scalar(-0.5)).norm() <= 1e-12);
}

TEST_CASE("strict contraction guard") {
    CMatrix m(1, 1);
    m(0, 0) = 1.0;
    CHECK_THROWS_AS(StrictContraction(m, 1e-6), NotStrictContraction);
}

TEST_CASE("scalar hyperbolic distance is atanh of the pseudo-chordal gap") {
    // |(0.5 − (−0.5)) / (1 − 0.5·(−0.5))| = 0.8 and atanh(0.8) = ln 3
    CHECK(hyperbolic_distance(scalar(0.5), scalar(-0.5)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(hyperbolic_distance(scalar(0.3), scalar(0.3)) <= 1e-12);
}

TEST_CASE("distance is Mobius invariant on matrix arguments") {
    Rng rng(1);
    auto draw = [&](double cap) {
        CMatrix g = rng.ginibre(3, 3);
        return StrictContraction(CMatrix(g * (cap / std::max(1e-12, operator_norm(g)))),
                                 1e-9);
    };
    StrictContraction x = draw(0.6), y = draw(0.4), w = draw(0.5);
    const double before = hyperbolic_distance(x, y);
    const double after = hyperbolic_distance(StrictContraction(mobius_map(w, x), 1e-12),
                                             StrictContraction(mobius_map(w, y), 1e-12));
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("schwarz-pick margin is nonnegative for one-sided multipliers") {
    Rng rng(2);
    CMatrix c = rng.ginibre(2, 2);
    c *= 0.9 / operator_norm(c);
    auto h = [&c](const CMatrix& a) { return CMatrix(c * a); };
    auto draw = [&]() {
        CMatrix g = rng.ginibre(2, 2);
        return StrictContraction(CMatrix(g * (0.7 / operator_norm(g))), 1e-9);
    };
    for (int t = 0; t < 20; ++t) CHECK(schwarz_pick_margin(h, draw(), draw()) >= -1e-10);
}

TEST_CASE("defect bound holds in the quadratic form and fails in the linear form at x = 0") {
    auto b = mobius_defect_bound(scalar(0.0), scalar(0.5));
    CHECK(b.lhs == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(b.corrected_rhs == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(b.corrected_holds);
    CHECK(b.printed_rhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(!b.printed_holds);
}

TEST_CASE("corner characters of the triangular 2x2 algebra are maximally separated") {
    auto cp = detail::corner_characters();
    PartConfig cfg;
    auto v = part_verdict(cp.phi, cp.psi, cfg);
    CHECK(v.verdict == PartClass::DIFFERENT_PART);
    CHECK(v.norm_gap >= 2.0 - 1e-9);
    CHECK(v.kernel_norm >= 1.0 - 1e-9);
    CHECK(v.phi_peak >= 1.0 - 1e-9);
    CHECK(v.psi_at_peak <= 1e-9);
    auto j = part_verdict_to_json(v);
    CHECK(j.at("verdict") == "DIFFERENT_PART");
}

TEST_CASE("rho_sup of the corner pair at radius 1/2 attains ln 3") {
    auto cp = detail::corner_characters();
    CHECK(rho_sup(cp.phi, cp.psi, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("a character compared with itself is certified with unit constants") {
    auto cp = detail::corner_characters();
    auto v = part_verdict(cp.phi, cp.phi, PartConfig{});
    CHECK(v.verdict == PartClass::SAME_PART);
    CHECK(v.harnack.certified);
    CHECK(v.harnack.c == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.harnack.d == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("point evaluations at 0 and 1/2 share a part with near-optimal constants") {
    auto cp = detail::poisson_pair(32, 0.5, 128);
    PartConfig cfg;
    cfg.starts = 6;
    cfg.steps = 30;
    cfg.rho_trials = 32;
    cfg.rho_radius = 0.5;
    cfg.harnack.trials = 64;
    cfg.harnack.sampler = [](Rng&, int t) {
        return detail::fejer_probe(32, 2.0 * M_PI * t / 64.0);
    };
    auto v = part_verdict(cp.phi, cp.psi, cfg);
    CHECK(v.verdict == PartClass::SAME_PART);
    CHECK(v.harnack.certified);
    // mutual domination constants multiply to ≈ ((1+r)/(1−r))² at r = 1/2
    CHECK(std::abs(v.harnack.c * v.harnack.d - 9.0) <= 0.9);
}

TEST_CASE("domains must match before any comparison") {
    auto a = detail::corner_characters();
    auto b = detail::poisson_pair(4, 0.5, 16);
    CHECK_THROWS_AS(require_same_domain(a.phi, b.phi), DomainMismatch);
}
