#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toricwc/ktheory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>
#include <random>

using namespace twc;

namespace {

RatVec q(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

IntVec z(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

Mask m(std::initializer_list<std::size_t> one_based) {
    Mask s = 0;
    for (auto i : one_based) s |= bit(i - 1);
    return s;
}

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

GitData flop() { return git_from_rows({{1}, {1}, {-1}, {-1}}); }
GitData c3z3() { return git_from_rows({{1}, {1}, {1}, {-3}}); }
GitData rank2() { return git_from_rows({{1, 0}, {1, 0}, {-1, 1}, {-1, 1}, {0, 1}}); }

struct Crossing {
    GitData git;
    Chamber plus, minus;
    WallData wall;
    Crossing(GitData g, RatVec a, RatVec b)
        : git(std::move(g)), plus(make_chamber(git, a)), minus(make_chamber(git, b)),
          wall(wall_between(git, plus, minus)) {}

    std::vector<NumericParams> draws(int n) const {
        std::vector<NumericParams> out;
        for (int s = 1; s <= n; ++s) out.push_back(draw_params(git, wall, plus, s));
        return out;
    }
};

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

KExpr one(const GitData& g) { return KExpr::constant(g.r, g.m, Rat(1)); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == ints({1, 1}));
    CHECK(cyclotomic_polynomial(4) == ints({1, 0, 1}));
    CHECK(cyclotomic_polynomial(6) == ints({1, -1, 1}));
    CHECK(cyclotomic_polynomial(8) == ints({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(9) == ints({1, 0, 0, 1, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(12) == ints({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_polynomial(15) == ints({1, -1, 0, 1, -1, 1, 0, -1, 1}));
    for (long N = 1; N <= 60; ++N) {
        long phi = 0;
        for (long k = 1; k <= N; ++k) phi += std::gcd(k, N) == 1;
        CHECK(long(cyclotomic_polynomial(N).size()) == phi + 1);
    }
}

TEST_CASE("cyclotomic arithmetic") {
    auto w = Cyclotomic::root(3, 1);
    CHECK((Cyclotomic(Rat(1)) + w + w * w).is_zero());
    CHECK(Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1) == Cyclotomic(Rat(-1)));
    CHECK(Cyclotomic::phase(Rat(1, 2)) == Cyclotomic(Rat(-1)));
    CHECK(Cyclotomic::phase(Rat(7, 3)) == w);
    CHECK(Cyclotomic::root(6, 2) == w);
    CHECK(Cyclotomic::root(2, 1) * Cyclotomic::root(3, 1) == Cyclotomic::root(6, 5));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(-20, 20);
    for (int trial = 0; trial < 30; ++trial) {
        long a = 1 + std::abs(pick(rng)) % 12, b = pick(rng);
        auto x = Rat(pick(rng), 7) * Cyclotomic::root(a, b) + Cyclotomic::root(5, pick(rng));
        double arg_a = 2 * M_PI * double(b) / double(a);
        auto y = Cyclotomic::root(a, b);
        CHECK(std::abs(y.value() - cplx(std::cos(arg_a), std::sin(arg_a))) < 1e-13);
        CHECK(std::abs((x * y).value() - x.value() * y.value()) < 1e-12);
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("root averaging is the indicator of divisibility") {
    for (long l = 1; l <= 12; ++l)
        for (long n = -40; n <= 40; ++n) {
            Cyclotomic s;
            for (long k = 0; k < l; ++k) s += Cyclotomic::root(l, k * n);
            s *= Rat(1, l);
            CHECK(s == Cyclotomic(Rat(n % l == 0 ? 1 : 0)));
        }
}

TEST_CASE("exponential sums") {
    auto g = flop();
    auto a = ExpSum::exp_of(mu(g, 0) - mu(g, 1));
    auto b = ExpSum::exp_of(mu(g, 1), Cyclotomic::root(3, 1));
    CHECK(a * b == ExpSum::exp_of(mu(g, 0), Cyclotomic::root(3, 1)));
    CHECK((a - a).is_zero());
    NumericParams p{{cplx(0.3), cplx(-0.2), cplx(0.1), cplx(0.7)}, {}};
    CHECK(std::abs(a.eval(p) - std::exp(cplx(0.5))) < 1e-14);
    CHECK(std::abs((a + b).eval(p) - a.eval(p) - b.eval(p)) < 1e-14);
}

TEST_CASE("line-bundle monomials") {
    auto g = flop();
    CHECK(KExpr::R(g, 2) * KExpr::S(g, 2) == one(g));
    CHECK(KExpr::line(g, z({1})) * KExpr::line(g, z({-1})) == one(g));
    CHECK(KExpr::t_power(1, 4, 2) * KExpr::t_power(1, 4, -2) == one(g));
    CHECK((KExpr::S(g, 0) - KExpr::S(g, 0)).terms().empty());
    CHECK_FALSE(KExpr::S(g, 0).has_roots());
    CHECK(KExpr::t_power(1, 4, 1).has_roots());
}

TEST_CASE("average_roots keeps only powers divisible by l") {
    auto g = c3z3();
    std::size_t jm = 3;
    auto t = [&](long n) { return KExpr::t_power(g.r, g.m, n); };
    CHECK(average_roots(g, t(1) + t(2), jm, 3).terms().empty());
    CHECK(average_roots(g, t(3), jm, 3) == KExpr::R(g, jm));
    CHECK(average_roots(g, t(-6), jm, 3) == KExpr::S(g, jm) * KExpr::S(g, jm));
    CHECK(average_roots(g, KExpr::S(g, 0) * (one(g) + t(-3)), jm, 3) ==
          KExpr::S(g, 0) + KExpr::S(g, 0) * KExpr::S(g, jm));
}

TEST_CASE("basis elements") {
    auto p1 = git_from_rows({{1}, {1}});
    auto ch = make_chamber(p1, q({1}));
    auto b = basis_elements(p1, ch);
    REQUIRE(b.size() == 2);
    KBasisElement at1{m({1}), z({0})};
    CHECK(basis_expr(p1, at1) == one(p1) - KExpr::S(p1, 1));

    auto f = flop();
    KBasisElement at3{m({3}), z({0})};
    CHECK(basis_expr(f, at3) == (one(f) - KExpr::S(f, 0)) * (one(f) - KExpr::S(f, 1)) * (one(f) - KExpr::S(f, 3)));

    auto c = c3z3();
    auto lifts = character_lifts(c, m({4}));
    std::sort(lifts.begin(), lifts.end());
    CHECK(lifts == std::vector<IntVec>{z({-2}), z({-1}), z({0})});
    CHECK(character_lifts(c, m({1})) == std::vector<IntVec>{z({0})});
    CHECK(basis_elements(c, make_chamber(c, q({-1}))).size() == 3);
    CHECK(basis_elements(c, make_chamber(c, q({1}))).size() == 3);
}

TEST_CASE("pullbacks to the blow-up") {
    Crossing f(flop(), q({1}), q({-1}));
    REQUIRE(f.wall.De == ints({1, 1, -1, -1}));
    CHECK(pullback_R(f.wall, 0, WallSide::Minus) == std::vector<long>{1, 0, 0, 0, 1});
    CHECK(pullback_R(f.wall, 0, WallSide::Plus) == std::vector<long>{1, 0, 0, 0, 0});
    CHECK(pullback_R(f.wall, 2, WallSide::Plus) == std::vector<long>{0, 0, 1, 0, 1});
    CHECK(pullback_R(f.wall, 2, WallSide::Minus) == std::vector<long>{0, 0, 1, 0, 0});
    auto plus = pullback_to_blowup(z({2}), f.wall, WallSide::Plus);
    CHECK(plus.n == -2);
    CHECK(pullback_to_blowup(z({2}), f.wall, WallSide::Minus).n == 0);

    Crossing r(rank2(), q({1, 2}), q({-1, 2}));
    for (const auto& w : r.wall.W_basis) {
        CHECK(dot(w, r.wall.e) == 0);
        CHECK(pullback_to_blowup(w, r.wall, WallSide::Plus).n == 0);
        CHECK(pullback_to_blowup(w, r.wall, WallSide::Minus).p == w);
    }
}

TEST_CASE("pushpull") {
    auto g = git_from_rows({{1}, {1}, {-2}});
    auto ch_p = make_chamber(g, q({1})), ch_m = make_chamber(g, q({-1}));
    auto w = wall_between(g, ch_p, ch_m);
    REQUIRE(w.De == ints({1, 1, -2}));
    BlowupPoly unit{{std::vector<long>(4, 0), Rat(1)}};
    CHECK(pushpull(g, w, z({0}), 0, unit, 2) == one(g));
    CHECK(pushpull(g, w, z({0}), 1, unit, 2).terms().empty());
    CHECK(pushpull(g, w, z({0}), 2, unit, 2) == KExpr::R(g, 2));
    // R~_3 pulls back with t^{-l_3}: the pair R~_3 R~_4^2 restricts to R_3
    BlowupPoly r3{{{0, 0, 1, 2}, Rat(1)}};
    CHECK(pushpull(g, w, z({0}), 0, r3, 2) == KExpr::R(g, 2));
    CHECK(code_of([&] { pushpull(g, w, z({0}), 0, BlowupPoly{{{0, 0}, Rat(1)}}, 2); }) == "IndexMismatch");
    CHECK(code_of([&] { pushpull(g, w, z({0}), 0, unit, 0); }) == "IndexMismatch");
}

TEST_CASE("pushpull of the pulled-back basis matches the hand-expanded form") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, std::tuple{flop(), q({-1}), q({1})},
                           std::tuple{c3z3(), q({1}), q({-1})}, std::tuple{c3z3(), q({-1}), q({1})}}) {
        Crossing c(g, a, b);
        for (const auto& e : basis_elements(c.git, c.minus)) {
            if (c.plus.is_anticone(e.delta)) continue;
            std::size_t jm = 0;
            while (!(has(e.delta, jm) && c.wall.De[jm] < 0)) ++jm;
            long l = to_long(-c.wall.De[jm]);
            KExpr hand = KExpr::line(c.git, e.rho_hat) *
                         KExpr::t_power(c.git.r, c.git.m, to_long(dot(e.rho_hat, c.wall.e)));
            for (std::size_t i = 0; i < c.git.m; ++i)
                if (!has(e.delta, i))
                    hand = hand * (one(c.git) -
                                   KExpr::t_power(c.git.r, c.git.m, -to_long(c.wall.De[i])) * KExpr::S(c.git, i));
            auto lhs = pushpull(c.git, c.wall, e.rho_hat, 0, pulled_back_factors(c.git, c.wall, e.delta), jm);
            CHECK(lhs == average_roots(c.git, hand, jm, l));
        }
    }
}

TEST_CASE("Fourier-Mukai images") {
    Crossing f(flop(), q({1}), q({-1}));
    KBasisElement at3{m({3}), z({0})};
    auto S = [&](std::size_t i) { return KExpr::S(f.git, i - 1); };
    auto expect = (one(f.git) - S(3) * S(1)) * (one(f.git) - S(3) * S(2)) * (one(f.git) - S(4));
    CHECK(fm_transform(f.git, f.wall, f.plus, f.minus, at3) == expect);
    CHECK(fm_unaveraged(f.git, f.wall, f.plus, f.minus, at3).has_roots());
    CHECK_FALSE(fm_transform(f.git, f.wall, f.plus, f.minus, at3).has_roots());

    Crossing r(rank2(), q({1, 2}), q({-1, 2}));
    std::size_t common = 0;
    for (const auto& e : basis_elements(r.git, r.minus))
        if (r.plus.is_anticone(e.delta)) {
            ++common;
            CHECK(fm_transform(r.git, r.wall, r.plus, r.minus, e) == basis_expr(r.git, e));
        }
    CHECK(common > 0);

    Crossing c(c3z3(), q({1}), q({-1}));
    for (const auto& e : basis_elements(c.git, c.minus)) CHECK_FALSE(fm_transform(c.git, c.wall, c.plus, c.minus, e).has_roots());
    CHECK(code_of([&] { fm_transform(c.git, c.wall, c.plus, c.minus, KBasisElement{m({1}), z({0})}); }) ==
          "InvalidArgument");
}

TEST_CASE("orbifold Chern character at fixed points") {
    auto f = flop();
    CHECK(chern_restriction(f, KExpr::S(f, 1), m({1}), q({0})) == ExpSum::exp_of(mu(f, 0) - mu(f, 1)));
    CHECK(chern_restriction(f, one(f), m({3}), q({0})) == ExpSum::exp_of(LinearForm(4, 0)));

    auto c = c3z3();
    for (const auto& fp : fixed_points(c, make_chamber(c, q({-1})))) {
        CHECK(fp.delta == m({4}));
        auto expect = ExpSum::exp_of(Rat(-1) * mu(c, 0) - Rat(1, 3) * mu(c, 3), Cyclotomic::phase(-fp.f[0]));
        CHECK(chern_restriction(c, KExpr::S(c, 0), fp.delta, fp.f) == expect);
    }
    CHECK(code_of([&] { chern_restriction(c, KExpr::t_power(1, 4, 1), m({4}), q({0})); }) == "UnresolvedRoot");
}

TEST_CASE("Chern character is a ring map on every fixed point") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (auto [g, a] : {std::pair{flop(), q({1})}, std::pair{c3z3(), q({-1})}, std::pair{rank2(), q({1, 2})}}) {
        auto random_expr = [&, &g = g] {
            KExpr x = KExpr::constant(g.r, g.m, Rat(coef(rng)));
            for (std::size_t i = 0; i < g.m; ++i) {
                if (coef(rng) > 0) x += Rat(coef(rng)) * KExpr::S(g, i);
                if (coef(rng) > 1) x = x * KExpr::R(g, i);
            }
            return x;
        };
        auto fps = fixed_points(g, make_chamber(g, a));
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_expr(), y = random_expr();
            for (const auto& fp : fps) {
                CHECK(chern_restriction(g, x * y, fp.delta, fp.f) ==
                      chern_restriction(g, x, fp.delta, fp.f) * chern_restriction(g, y, fp.delta, fp.f));
                CHECK(chern_restriction(g, x + y, fp.delta, fp.f) ==
                      chern_restriction(g, x, fp.delta, fp.f) + chern_restriction(g, y, fp.delta, fp.f));
            }
        }
    }
}

TEST_CASE("FM intertwines the Chern character with the continuation matrix") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, std::tuple{flop(), q({-1}), q({1})},
                           std::tuple{c3z3(), q({1}), q({-1})}, std::tuple{c3z3(), q({-1}), q({1})},
                           std::tuple{rank2(), q({1, 2}), q({-1, 2})}, std::tuple{rank2(), q({-1, 2}), q({1, 2})}}) {
        Crossing c(g, a, b);
        auto rep = verify_fm(c.git, c.wall, c.plus, c.minus, c.draws(20));
        CAPTURE(rep.max_deviation);
        CHECK(rep.pass());
        CHECK(rep.max_deviation < 1e-9);
        CHECK(rep.subidentity_a_checked > 0);
        CHECK(rep.subidentity_a_failures.empty());
        CHECK(rep.max_subidentity_b < 1e-10);
        CHECK(rep.entries.size() == basis_elements(c.git, c.minus).size() * fixed_points(c.git, c.plus).size());
    }
}

TEST_CASE("FM support and common anticones on the rank-2 crossing") {
    Crossing c(rank2(), q({1, 2}), q({-1, 2}));
    auto rep = verify_fm(c.git, c.wall, c.plus, c.minus, c.draws(20));
    CHECK(rep.pass());
    CHECK(rep.support_checked > 0);
    CHECK(rep.support_exact_zero == rep.support_checked);
    CHECK(rep.max_support < 1e-12);
    CHECK(rep.common_checked > 0);
    CHECK(rep.common_failures.empty());
}

TEST_CASE("FM negative controls") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, std::tuple{c3z3(), q({1}), q({-1})}}) {
        Crossing c(g, a, b);
        auto draws = c.draws(5);
        FMOptions w;
        w.w_shift = 1;
        CHECK_FALSE(verify_fm(c.git, c.wall, c.plus, c.minus, draws, w).pass());
        FMOptions cs;
        cs.c_shift = 0.1;
        CHECK_FALSE(verify_fm(c.git, c.wall, c.plus, c.minus, draws, cs).pass());
    }
}

TEST_CASE("FM with a nonzero base twist") {
    BaseData base;
    base.is_point = false;
    base.h2_rank = 1;
    base.Lambda = {q({1}), q({0}), q({-2}), q({1})};
    Crossing c(make_git(flop().D, base), q({1}), q({-1}));
    auto draws = c.draws(20);
    REQUIRE(draws[0].h.size() == 1);
    FMOptions combined;
    CHECK(verify_fm(c.git, c.wall, c.plus, c.minus, draws, combined).pass());
    // bare lambda in the line-bundle weights does not match the combined parameters on the B side
    FMOptions literal;
    literal.convention = LambdaConvention::Literal;
    auto rep = verify_fm(c.git, c.wall, c.plus, c.minus, draws, literal);
    CHECK_FALSE(rep.pass());
    CHECK(rep.subidentity_a_failures.empty());
}
