#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toricwc/continuation.hpp"

#include <cmath>
#include <functional>
#include <tuple>
#include <random>

using namespace twc;

namespace {

const cplx I2PI(0.0, 2 * M_PI);

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
};

std::vector<cplx> U_over(const GitData& g, Mask delta, const NumericParams& p) {
    std::vector<cplx> a;
    for (std::size_t j = 0; j < g.m; ++j) a.push_back(has(delta, j) ? cplx(0.0) : U_at(g, delta, j).eval(p.lambda) / I2PI);
    return a;
}

std::vector<cplx> point(const WallData& w, double R, double phase) {
    // rank 1 only: Y e = log R + i (pi w + phase)
    cplx t(std::log(R), M_PI * to_double(Rat(w.w)) + phase);
    return {t / to_double(Rat(w.e[0]))};
}

/// e^{sigma/2 pi i} y^{d_start} K, the factor relating the + side line sum to the MB integral.
cplx line_prefactor(const GitData& g, const MBIntegrand& ig, const std::vector<cplx>& Y, const NumericParams& p) {
    cplx yd = 0;
    for (std::size_t k = 0; k < Y.size(); ++k) yd += to_double(ig.dstart[k]) * Y[k];
    return std::exp(sigma_numeric(g, ig.dplus, Y, p) / I2PI + yd) * ig.K();
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("conifold points and wall data") {
    Crossing f(flop(), q({1}), q({-1}));
    CHECK(f.wall.conifold == 1);
    CHECK(f.wall.w == 1);
    Crossing c(c3z3(), q({1}), q({-1}));
    CHECK(c.wall.conifold == make_rat(-1, 27));
    CHECK(c.wall.w == 2);
    Crossing r(c3z3(), q({-1}), q({1}));
    CHECK(r.wall.conifold == -27);
}

TEST_CASE("integrand equals the right residue sum inside and minus the left sum outside") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> phase(-3.0, 3.0), frac(0.05, 0.9);
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, {c3z3(), q({1}), q({-1})}, {c3z3(), q({-1}), q({1})}}) {
        Crossing x(g, a, b);
        auto p = draw_params(x.git, x.wall, x.plus, 3);
        double c = std::abs(to_double(x.wall.conifold));
        for (const auto& fp : fixed_points(x.git, x.plus)) {
            if (x.minus.is_anticone(fp.delta)) continue;
            std::size_t jp = 0;
            for (auto j : indices(fp.delta)) if (x.wall.De[j] > 0) jp = j;
            auto starts = line_starts(x.git, x.wall, fp.delta, jp, fp.f, 4);
            REQUIRE(starts.size() == 1);
            HSumOptions hopt;
            hopt.wall = &x.wall;
            for (int trial = 0; trial < 10; ++trial) {
                // inside: MB integral, right residues and the H restriction agree
                auto Y = point(x.wall, c * frac(rng), phase(rng));
                auto ig = make_integrand(x.git, x.wall, fp.delta, starts[0], p, to_double(Rat(x.wall.e[0])) * Y[0]);
                auto mb = mb_integral(ig);
                auto right = residue_sum(ig, Side::Right);
                CHECK(close(mb.value, right.value, 1e-10));
                auto h = restrict_h(x.git, fp.delta, fp.f, p, Y, hopt);
                CHECK(close(line_prefactor(x.git, ig, Y, p) * mb.value, h.value, 1e-10));
                // outside: minus the left residues
                auto Yo = point(x.wall, c / frac(rng), phase(rng));
                auto igo = make_integrand(x.git, x.wall, fp.delta, starts[0], p, to_double(Rat(x.wall.e[0])) * Yo[0]);
                CHECK(close(mb_integral(igo).value, residue_sum(igo, Side::Left).value, 1e-10));
            }
        }
    }
}

TEST_CASE("pole layout") {
    Crossing x(c3z3(), q({-1}), q({1}));
    auto p = draw_params(x.git, x.wall, x.plus, 4);
    auto ig = make_integrand(x.git, x.wall, m({4}), q({0}), p, cplx(0.0, 2 * M_PI));
    auto poles = classify_poles(ig, 6);
    int zero = 0, left = 0;
    for (const auto& pl : poles) {
        if (pl.family == -1 && pl.n < 0) {
            CHECK(pl.zero_residue);
            CHECK(right_residue(ig, pl.n) == cplx(0.0));
            ++zero;
        }
        if (pl.family >= 0) ++left;
    }
    CHECK(zero == 6);
    CHECK(left == 3 * 7);  // three families with l = 1

    // l = 3 on the other side: poles at (a - n)/3
    Crossing y(c3z3(), q({1}), q({-1}));
    auto p2 = draw_params(y.git, y.wall, y.plus, 4);
    auto ig2 = make_integrand(y.git, y.wall, m({1}), q({0}), p2, cplx(0.0, 2 * M_PI));
    for (const auto& pl : classify_poles(ig2, 5))
        if (pl.family == 3) CHECK(std::abs(pl.s - (ig2.a[3] - double(pl.n)) / 3.0) < 1e-15);

    // all U vanish at lambda = 0: left poles sit on the right ones
    NumericParams zero_p{{0.0, 0.0, 0.0, 0.0}, {}};
    auto ig0 = make_integrand(y.git, y.wall, m({1}), q({0}), zero_p, cplx(0.0, 2 * M_PI));
    CHECK(code_of([&] { classify_poles(ig0); }) == "NonGenericParameters");
    CHECK(code_of([&] { mb_integral(ig0); }) == "NonGenericParameters");
}

TEST_CASE("sector and convergence failures") {
    Crossing x(flop(), q({1}), q({-1}));
    auto p = draw_params(x.git, x.wall, x.plus, 5);
    auto at = [&](cplx logx) { return make_integrand(x.git, x.wall, m({1}), q({0}), p, logx); };
    CHECK(code_of([&] { mb_integral(at(cplx(std::log(2.0), 2 * M_PI))); }) == "OutsideSector");
    CHECK(code_of([&] { mb_integral(at(cplx(std::log(2.0), 0.0))); }) == "OutsideSector");
    CHECK(code_of([&] { mb_integral(at(cplx(std::log(2.0), 0.01))); }).empty());
    // on the conifold circle neither residue series settles
    CHECK(code_of([&] { residue_sum(at(cplx(0.0, M_PI)), Side::Right); }) == "SlowConvergence");
    CHECK(code_of([&] { residue_sum(at(cplx(0.0, M_PI)), Side::Left); }) == "SlowConvergence");
}

TEST_CASE("closed-form connection coefficients match extracted residues") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, {c3z3(), q({1}), q({-1})},
                           {c3z3(), q({-1}), q({1})}, {rank2(), q({1, 2}), q({-1, 2})}}) {
        Crossing x(g, a, b);
        auto p = draw_params(x.git, x.wall, x.plus, 6);
        auto Y = log_point(x.git, x.wall, 3.0 * std::abs(to_double(x.wall.conifold)));
        cplx logx = 0;
        for (std::size_t k = 0; k < Y.size(); ++k) logx += to_double(Rat(x.wall.e[k])) * Y[k];
        for (const auto& pr : pair_anticones(x.git, x.wall, x.plus, x.minus)) {
            for (const auto& f : fixed_classes(x.git, pr.dplus)) {
                auto starts = line_starts(x.git, x.wall, pr.dplus, pr.jplus, f, 4);
                REQUIRE(!starts.empty());
                for (const auto& ds : starts) {
                    auto ig = make_integrand(x.git, x.wall, pr.dplus, ds, p, logx);
                    cplx pref = line_prefactor(x.git, ig, Y, p);
                    auto Um = U_over(x.git, pr.dminus, p);
                    long l = to_long(x.wall.l_of(pr.jminus));
                    for (long n = 0; n < 2 * l + 2; ++n) {
                        RatVec dn = minus_exponent(x.git, ig, pr.jminus, n);
                        cplx term = std::exp(sigma_numeric(x.git, pr.dminus, Y, p) / I2PI) *
                                    h_term(x.git, pr.dminus, dn, Um, Y);
                        cplx extracted = -pref * left_residue(ig, pr.jminus, n) / term;
                        cplx C = connection_coefficient(x.git, x.wall, pr.dplus, ds, pr.dminus, dn, p);
                        CHECK(close(C, extracted, 1e-11));
                        RatVec dnl = minus_exponent(x.git, ig, pr.jminus, n + l);
                        CHECK(close(connection_coefficient(x.git, x.wall, pr.dplus, ds, pr.dminus, dnl, p), C, 1e-12));
                    }
                }
            }
        }
    }
    Crossing f(flop(), q({1}), q({-1}));
    auto p = draw_params(f.git, f.wall, f.plus, 6);
    CHECK(code_of([&] { connection_coefficient(f.git, f.wall, m({1}), q({0}), m({2}), q({0}), p); }) == "NotPaired");
}

TEST_CASE("flop continuation matches the Gauss function beyond the conifold") {
    Crossing x(flop(), q({1}), q({-1}));
    for (std::uint64_t seed : {7, 8, 9}) {
        auto p = draw_params(x.git, x.wall, x.plus, seed);
        auto a = U_over(x.git, m({1}), p);
        TheoremOptions opt;
        opt.radii = {1.5, 2.0, 4.0};
        auto rep = verify_wall_crossing(x.git, x.wall, x.plus, x.minus, p, opt);
        CHECK(rep.pass);
        for (const auto& row : rep.rows) {
            if (row.row.delta != m({1})) continue;
            auto Y = log_point(x.git, x.wall, row.radius);
            cplx gauss = std::exp(sigma_numeric(x.git, m({1}), Y, p) / I2PI) *
                         hyp2f1_outside(-a[2], -a[3], 1.0 + a[1], cplx(-row.radius)) /
                         (gamma_complex(1.0 + a[1]) * gamma_complex(1.0 + a[2]) * gamma_complex(1.0 + a[3]));
            CHECK(close(row.closed_form_side, gauss, 1e-11));
            CHECK(close(row.mb_side, gauss, 1e-11));
        }
    }
}

TEST_CASE("wall-crossing identity on every example, both directions") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, {flop(), q({-1}), q({1})},
                           {c3z3(), q({1}), q({-1})}, {c3z3(), q({-1}), q({1})},
                           {rank2(), q({1, 2}), q({-1, 2})}, {rank2(), q({-1, 2}), q({1, 2})}}) {
        Crossing x(g, a, b);
        double c = std::abs(to_double(x.wall.conifold));
        TheoremOptions opt;
        opt.radii = {1.5 * c, 2 * c, 4 * c};
        opt.lines_per_row = 2;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto p = draw_params(x.git, x.wall, x.plus, seed);
            auto rep = verify_wall_crossing(x.git, x.wall, x.plus, x.minus, p, opt);
            CHECK(rep.pass);
            CHECK(rep.max_deviation < 1e-9);
            CHECK(rep.max_two_route < 1e-9);
        }
        auto p = draw_params(x.git, x.wall, x.plus, 11);
        TheoremOptions bad = opt;
        bad.w_shift = 1;
        CHECK_FALSE(verify_wall_crossing(x.git, x.wall, x.plus, x.minus, p, bad).pass);
        bad = opt;
        bad.c_shift = 1.0;
        CHECK_FALSE(verify_wall_crossing(x.git, x.wall, x.plus, x.minus, p, bad).pass);
    }
}

TEST_CASE("transformation matrix structure") {
    Crossing f(flop(), q({1}), q({-1}));
    auto u = build_U_H(f.git, f.wall, f.plus, f.minus);
    CHECK(u.rows.size() == 2);
    CHECK(u.cols.size() == 2);
    CHECK(u.entries.size() == 4);
    for (const auto& e : u.entries) CHECK_FALSE(e.identity);

    Crossing r(rank2(), q({1, 2}), q({-1, 2}));
    auto ur = build_U_H(r.git, r.wall, r.plus, r.minus);
    CHECK(ur.rows.size() == 6);
    CHECK(ur.cols.size() == 6);
    int ident = 0, cs = 0;
    for (const auto& e : ur.entries) {
        if (e.identity) {
            ++ident;
            CHECK(ur.rows[e.row] == ur.cols[e.col]);
        } else {
            ++cs;
        }
    }
    CHECK(ident == 4);
    CHECK(cs == 4);
    auto p = draw_params(r.git, r.wall, r.plus, 2);
    auto M = numeric_U_H(r.git, r.wall, ur, p);
    std::vector<cplx> v(6);
    for (std::size_t i = 0; i < 6; ++i) v[i] = cplx(double(i + 1), 0.5);
    auto out = apply(ur, M, v);
    for (const auto& e : ur.entries)
        if (e.identity) CHECK(out[e.row] == v[e.col]);

    Crossing c(c3z3(), q({1}), q({-1}));
    auto uc = build_U_H(c.git, c.wall, c.plus, c.minus);
    CHECK(uc.rows.size() == 3);
    CHECK(uc.cols.size() == 3);
    CHECK(uc.entries.size() == 9);
}

TEST_CASE("theta operators commute with the transformation") {
    Crossing r(rank2(), q({1, 2}), q({-1, 2}));
    auto u = build_U_H(r.git, r.wall, r.plus, r.minus);
    auto rep = verify_theta_commutation(r.git, u, {q({0, 1}), q({0, 3})});
    CHECK(rep.pass());
    CHECK(rep.entries_checked == 16);
    // a class off the wall does not commute
    CHECK_FALSE(verify_theta_commutation(r.git, u, {q({1, 0})}).pass());
}

TEST_CASE("orbifold side restriction inside the radius") {
    Crossing x(c3z3(), q({-1}), q({1}));
    auto p = draw_params(x.git, x.wall, x.plus, 13);
    HSumOptions hopt;
    hopt.wall = &x.wall;
    for (double frac : {0.25, 0.5}) {
        auto Y = log_point(x.git, x.wall, frac * 27.0);
        for (const auto& fp : fixed_points(x.git, x.plus)) {
            auto starts = line_starts(x.git, x.wall, fp.delta, 3, fp.f, 4);
            REQUIRE(starts.size() == 1);
            auto ig = make_integrand(x.git, x.wall, fp.delta, starts[0], p, -Y[0]);
            auto mb = mb_integral(ig);
            auto right = residue_sum(ig, Side::Right);
            auto h = restrict_h(x.git, fp.delta, fp.f, p, Y, hopt);
            CHECK(close(mb.value, right.value, 1e-10));
            CHECK(close(line_prefactor(x.git, ig, Y, p) * right.value, h.value, 1e-10));
        }
    }
}

TEST_CASE("inside-radius report") {
    for (auto [g, a, b] : {std::tuple{flop(), q({1}), q({-1})}, {flop(), q({-1}), q({1})},
                           {c3z3(), q({1}), q({-1})}, {c3z3(), q({-1}), q({1})}}) {
        Crossing x(g, a, b);
        double c = std::abs(to_double(x.wall.conifold));
        auto p = draw_params(x.git, x.wall, x.plus, 4);
        auto rep = verify_inside_radius(x.git, x.wall, x.plus, x.minus, p, {0.25 * c, 0.5 * c});
        CHECK(rep.pass);
        CHECK(rep.max_deviation < 1e-10);
        for (const auto& row : rep.rows) CHECK(row.restriction != cplx(0.0));
    }
}

TEST_CASE("Gauss cross-check report") {
    for (auto [a, b] : {std::pair{q({1}), q({-1})}, {q({-1}), q({1})}}) {
        Crossing x(flop(), a, b);
        CHECK(is_gauss_wall(x.git, x.wall));
        auto p = draw_params(x.git, x.wall, x.plus, 5);
        auto rep = verify_gauss(x.git, x.wall, x.plus, x.minus, p, {1.5, 2.0, 4.0});
        CHECK(rep.pass);
        CHECK(rep.rows.size() == 6);
        CHECK(rep.max_deviation < 1e-10);
    }
    Crossing c(c3z3(), q({1}), q({-1}));
    CHECK_FALSE(is_gauss_wall(c.git, c.wall));
    auto p = draw_params(c.git, c.wall, c.plus, 5);
    CHECK(code_of([&] { verify_gauss(c.git, c.wall, c.plus, c.minus, p, {1.0}); }) == "Unsupported");
}
