#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toricwc/cohomology.hpp"

#include <cmath>
#include <random>

using namespace twc;

namespace {

RatVec q(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

Mask m(std::initializer_list<std::size_t> one_based) {
    Mask s = 0;
    for (auto i : one_based) s |= bit(i - 1);
    return s;
}

LinearForm lam(std::size_t m_, std::initializer_list<std::pair<std::size_t, Rat>> terms) {
    LinearForm f(m_, 0);
    for (auto& [i, c] : terms) f.lam[i - 1] = c;
    return f;
}

}  // namespace

TEST_CASE("restrictions to fixed points") {
    auto flop = git_from_rows({{1}, {1}, {-1}, {-1}});
    auto t = restriction_table(flop, make_chamber(flop, q({1})));
    const auto& U = t.at(m({2}));
    CHECK(U[0] == lam(4, {{1, Rat(1)}, {2, Rat(-1)}}));
    CHECK(U[1].is_zero());
    CHECK(U[2] == lam(4, {{3, Rat(1)}, {2, Rat(1)}}));
    CHECK(U[3] == lam(4, {{4, Rat(1)}, {2, Rat(1)}}));
    CHECK(U[0].str() == "l1 - l2");

    auto p1 = git_from_rows({{1}, {1}});
    CHECK(U_at(p1, m({1}), 1) == lam(2, {{2, Rat(1)}, {1, Rat(-1)}}));

    auto c = git_from_rows({{1}, {1}, {1}, {-3}});
    CHECK(U_at(c, m({4}), 0) == lam(4, {{1, Rat(1)}, {4, make_rat(1, 3)}}));
    CHECK(theta_at(c, m({4}), q({1})) == lam(4, {{4, make_rat(1, 3)}}));
    CHECK(rho_at(c, m({4})).is_zero());
    CHECK_THROWS_AS(t.at(m({3})), Error);
}

TEST_CASE("theta is linear on relations among characters") {
    std::mt19937_64 rng(11);
    auto r2 = git_from_rows({{1, 0}, {1, 0}, {-1, 1}, {-1, 1}, {0, 1}});
    BaseData base;
    base.is_point = false;
    base.h2_rank = 2;
    for (std::size_t i = 0; i < 5; ++i)
        base.Lambda.push_back({make_rat(static_cast<long>(rng() % 7) - 3), make_rat(static_cast<long>(rng() % 5) - 2, 3)});
    auto g = make_git(r2.D, base);
    auto ch = make_chamber(g, q({1, 2}));
    IntMatrix K = integer_kernel(g.D.transpose());
    REQUIRE(K.cols() == 3);
    for (Mask d : ch.minimal) {
        for (std::size_t c = 0; c < K.cols(); ++c) {
            LinearForm s(g.m, 2);
            for (std::size_t j = 0; j < g.m; ++j) s += Rat(K(j, c)) * (U_at(g, d, j) - mu(g, j));
            CHECK(s.is_zero());
        }
        for (auto j : indices(d)) CHECK(U_at(g, d, j).is_zero());
    }
}

TEST_CASE("divisor lemma across walls") {
    struct Case {
        GitData git;
        RatVec wp, wm;
    };
    std::vector<Case> cases = {
        {git_from_rows({{1}, {1}, {-1}, {-1}}), q({1}), q({-1})},
        {git_from_rows({{1}, {1}, {1}, {-3}}), q({1}), q({-1})},
        {git_from_rows({{1, 0}, {1, 0}, {-1, 1}, {-1, 1}, {0, 1}}), q({1, 2}), q({-1, 2})},
        {git_from_rows({{1}, {2}, {-1}, {-2}}), q({1}), q({-1})},
    };
    for (auto& c : cases) {
        auto plus = make_chamber(c.git, c.wp), minus = make_chamber(c.git, c.wm);
        auto wall = wall_between(c.git, plus, minus);
        auto basis = adapted_coordinates(c.git, wall, plus, minus).first;
        std::vector<RatVec> ps;
        for (auto& p : basis.p) ps.push_back(to_rat(p));
        auto rep = verify_div_lemma(c.git, wall, plus, minus);
        CHECK(rep.pass());
        CHECK(rep.pairs > 0);
        CHECK(verify_div_lemma(c.git, wall, plus, minus, ps).pass());
    }
}

TEST_CASE("ring presentation") {
    auto p1 = git_from_rows({{1}, {1}});
    auto rp = ring_presentation(p1, make_chamber(p1, q({1})));
    REQUIRE(rp.linear.size() == 1);
    CHECK(rp.linear[0][0] == -rp.linear[0][1]);
    CHECK(rp.monomials == std::vector<Mask>{m({1, 2})});

    auto flop = git_from_rows({{1}, {1}, {-1}, {-1}});
    auto fr = ring_presentation(flop, make_chamber(flop, q({1})));
    CHECK(fr.monomials == std::vector<Mask>{m({1, 2})});
    CHECK(fr.linear.size() == 3);

    auto gerbe = git_from_rows({{2}});
    auto gr = ring_presentation(gerbe, make_chamber(gerbe, q({1})));
    CHECK(gr.monomials == std::vector<Mask>{m({1})});
    CHECK(gr.forced_zero == m({1}));

    // every generator vanishes at every fixed point
    auto r2 = git_from_rows({{1, 0}, {1, 0}, {-1, 1}, {-1, 1}, {0, 1}});
    for (auto w : {q({1, 2}), q({-1, 2})}) {
        auto ch = make_chamber(r2, w);
        auto pr = ring_presentation(r2, ch);
        CHECK(pr.forced_zero == ch.S);
        for (Mask g : pr.monomials)
            for (Mask d : ch.minimal) CHECK((g & d) != 0);
    }
}

TEST_CASE("Chen-Ruan degrees of the Novikov-type variables") {
    auto p1 = git_from_rows({{1}, {1}});
    auto ch = make_chamber(p1, q({1}));
    CHECK(y_degrees(p1, series_basis(p1, ch)) == RatVec{Rat(4)});
    auto flop = git_from_rows({{1}, {1}, {-1}, {-1}});
    auto fp = make_chamber(flop, q({1})), fm = make_chamber(flop, q({-1}));
    auto ab = adapted_coordinates(flop, wall_between(flop, fp, fm), fp, fm);
    CHECK(y_degrees(flop, ab.first) == RatVec{Rat(0)});
}

TEST_CASE("Gamma series constants and values") {
    const auto& gc = gamma_constants();
    CHECK(gc.euler_gamma == doctest::Approx(0.57721566490153286).epsilon(1e-16));
    CHECK(gc.euler_gamma_str.substr(0, 20) == "0.577215664901532860");
    CHECK(gc.zeta[2] == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-16));
    CHECK(gc.zeta[4] == doctest::Approx(std::pow(M_PI, 4) / 90).epsilon(1e-15));

    CHECK(std::abs(gamma_series(0.5) - std::sqrt(M_PI) / 2.0) < 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int i = 0; i < 100; ++i) {
        double x = u(rng);
        CHECK(std::abs(gamma_series(x) - std::tgamma(1 + x)) < 1e-12);
        cplx z(u(rng) * 0.7, u(rng) * 0.7);
        if (std::abs(z) < 1e-6) continue;
        cplx refl = gamma_series(z) * gamma_series(-z);
        cplx exact = M_PI * z / std::sin(M_PI * z);
        CHECK(std::abs(refl - exact) < 1e-12 * std::abs(exact));
    }
    try {
        gamma_series(1.0);
        FAIL("expected ConvergenceRadius");
    } catch (const Error& e) {
        CHECK(e.code() == "ConvergenceRadius");
    }
}
