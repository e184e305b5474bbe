// Acceptance suite: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include "toricwc/continuation.hpp"
#include "toricwc/fan.hpp"
#include "toricwc/ktheory.hpp"
#include "toricwc/problem.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace twc;

namespace {

struct Crossing {
    std::string name;
    GitData git;
    Chamber plus, minus;
    WallData wall;
};

Problem load(const std::string& name) { return parse_problem(std::string(TWC_PROBLEM_DIR) + "/" + name + ".json"); }

/// Both directions of the wall of a bundled problem.
std::vector<Crossing> crossings(const std::string& name) {
    auto p = load(name);
    const Chamber& a = p.plus;
    const Chamber& b = p.minus_chamber();
    return {{name + "+", p.git, a, b, wall_between(p.git, a, b)}, {name + "-", p.git, b, a, wall_between(p.git, b, a)}};
}

std::vector<NumericParams> draws(const Crossing& c, int n) {
    std::vector<NumericParams> out;
    for (int s = 1; s <= n; ++s) out.push_back(draw_params(c.git, c.wall, c.plus, std::uint64_t(s)));
    return out;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const Error& e) {
        o = {false, e.code() + ": " + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

int main() {
    const double kFmTol = 1e-9, kMbTol = 1e-6, kInsideTol = 1e-8, kSupportTol = 1e-12;

    criterion(1, "FM/ch compatibility", [&] {
        auto start = std::chrono::steady_clock::now();
        double worst = 0;
        bool ok = true;
        for (const char* name : {"flop", "c3z3"})
            for (const auto& c : crossings(name)) {
                FMOptions opt;
                opt.tol = kFmTol;
                auto rep = verify_fm(c.git, c.wall, c.plus, c.minus, draws(c, 20), opt);
                worst = std::max(worst, rep.max_deviation);
                ok = ok && rep.pass();
            }
        double t = seconds_since(start);
        return Outcome{ok && t < 10, "max |ch FM(e) - U_H ch(e)| = " + sci(worst) + " < " + sci(kFmTol) +
                                         " over 20 draws, flop and (1,1,1,-3) both ways, runtime < 10 s"};
    });

    criterion(2, "H-function continuation (flop)", [&] {
        auto start = std::chrono::steady_clock::now();
        double worst = 0, gauss = 0;
        bool ok = true;
        for (const auto& c : crossings("flop"))
            for (const auto& p : draws(c, 3)) {
                TheoremOptions opt;
                opt.radii = {1.5, 2.0, 4.0};
                opt.tol = kMbTol;
                auto rep = verify_wall_crossing(c.git, c.wall, c.plus, c.minus, p, opt);
                auto g = verify_gauss(c.git, c.wall, c.plus, c.minus, p, opt.radii, kMbTol);
                worst = std::max({worst, rep.max_deviation, rep.max_two_route});
                gauss = std::max(gauss, g.max_deviation);
                ok = ok && rep.pass && g.pass;
            }
        double t = seconds_since(start);
        return Outcome{ok && t < 60, "MB vs sum C H_- = " + sci(worst) + ", Gauss 2F1 = " + sci(gauss) + " < " +
                                         sci(kMbTol) + " at |y^e| in {1.5, 2, 4}, runtime < 60 s"};
    });

    criterion(3, "inside-radius consistency", [&] {
        double worst = 0;
        bool ok = true;
        for (const char* name : {"flop", "c3z3"})
            for (const auto& c : crossings(name)) {
                double r = std::abs(to_double(c.wall.conifold));
                auto rep = verify_inside_radius(c.git, c.wall, c.plus, c.minus, draws(c, 1)[0], {0.25 * r, 0.5 * r},
                                                kInsideTol);
                worst = std::max(worst, rep.max_deviation);
                ok = ok && rep.pass;
            }
        return Outcome{ok, "MB = right residues = H restriction to " + sci(worst) + " < " + sci(kInsideTol) +
                               " at |y^e| in {0.25, 0.5} |conifold|"};
    });

    criterion(4, "restriction lemma (exact)", [&] {
        std::size_t checks = 0, fails = 0;
        bool common = false;
        for (const char* name : {"flop", "c3z3", "rank2"})
            for (const auto& c : crossings(name)) {
                auto rep = verify_div_lemma(c.git, c.wall, c.plus, c.minus);
                checks += rep.checks;
                fails += rep.failures.size();
                if (std::string(name) == "rank2")
                    for (Mask d : c.plus.minimal) common = common || c.minus.is_anticone(d);
            }
        return Outcome{fails == 0 && checks > 0 && common,
                       std::to_string(checks) + " exact identities, " + std::to_string(fails) +
                           " failures; rank-2 wall has common minimal anticones: " + (common ? "yes" : "no")};
    });

    criterion(5, "I/H relation (exact)", [&] {
        SeriesTruncation t;  // z in [-2, 1], y-degree <= 2, Q-degree 0
        std::size_t coeffs = 0, bad = 0;
        for (const char* name : {"p1", "flop"}) {
            auto p = load(name);
            std::vector<const Chamber*> sides{&p.plus};
            if (p.minus) sides.push_back(&*p.minus);
            for (const auto* ch : sides) {
                auto rep = verify_i_h_relation(p.git, *ch, t);
                coeffs += rep.coefficients;
                bad += rep.mismatch_count + (rep.homogeneous ? 0 : 1);
            }
        }
        return Outcome{bad == 0 && coeffs > 0, std::to_string(coeffs) + " coefficients equal, " + std::to_string(bad) +
                                                   " mismatches (P1, flop both chambers)"};
    });

    criterion(6, "combinatorial ground truths", [&] {
        std::vector<std::string> bad;
        auto f = crossings("flop")[0];
        std::size_t fl = 0;
        for (const auto& pr : pair_anticones(f.git, f.wall, f.plus, f.minus)) fl = std::max(fl, std::size_t(to_long(f.wall.l_of(pr.jminus))));
        if (f.wall.conifold != 1 || f.wall.w != 1 || fl != 1) bad.push_back("flop wall data");
        auto c = crossings("c3z3")[0];
        std::size_t cl = 0;
        for (const auto& pr : pair_anticones(c.git, c.wall, c.plus, c.minus)) cl = std::max(cl, std::size_t(to_long(c.wall.l_of(pr.jminus))));
        if (abs(c.wall.conifold) != Rat(1, 27) || c.wall.w != 2 || cl != 3) bad.push_back("(1,1,1,-3) wall data");
        std::multiset<Rat> ages;
        for (const auto& k : k_classes(c.git, c.minus)) ages.insert(k.age);
        if (ages != std::multiset<Rat>{Rat(0), Rat(1), Rat(2)}) bad.push_back("orbifold ages");
        std::size_t trips = 0;
        for (const char* name : {"flop", "c3z3", "rank2", "p1", "gerbe"}) {
            auto p = load(name);
            std::vector<const Chamber*> sides{&p.plus};
            if (p.minus) sides.push_back(&*p.minus);
            for (const auto* ch : sides) {
                auto [g2, om2] = from_stacky_fan(to_stacky_fan(p.git, *ch));
                auto a = anticones(g2, om2);
                if (!same_column_lattice(g2.D, p.git.D) ||
                    std::set<Mask>(a.begin(), a.end()) != std::set<Mask>(ch->anticones.begin(), ch->anticones.end()))
                    bad.push_back(std::string(name) + " fan round trip");
                ++trips;
            }
        }
        Fan c2{2, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {{0, 1}}};
        auto bl = star_subdivision(c2, std::vector<std::size_t>{0, 1});
        if (bl.rays.back() != IntVec{Int(1), Int(1)} || bl.max_cones.size() != 2) bad.push_back("star subdivision");
        std::string detail = "conifold/w/l of both walls, ages {0,1,2}, " + std::to_string(trips) +
                             " GIT-fan round trips, blow-up ray (1,1)";
        for (const auto& b : bad) detail += "; wrong: " + b;
        return Outcome{bad.empty(), detail};
    });

    criterion(7, "FM fixed part and support", [&] {
        std::size_t common = 0, common_bad = 0, zeros = 0, checked = 0;
        double support = 0;
        for (const auto& c : crossings("rank2"))
            for (const auto& b : basis_elements(c.git, c.minus))
                if (c.plus.is_anticone(b.delta)) {
                    ++common;
                    if (!(fm_transform(c.git, c.wall, c.plus, c.minus, b) == basis_expr(c.git, b))) ++common_bad;
                }
        for (const char* name : {"flop", "c3z3", "rank2"})
            for (const auto& c : crossings(name)) {
                auto rep = verify_fm(c.git, c.wall, c.plus, c.minus, draws(c, 5));
                support = std::max(support, rep.max_support);
                zeros += rep.support_exact_zero;
                checked += rep.support_checked;
            }
        return Outcome{common > 0 && common_bad == 0 && support < kSupportTol,
                       "FM(e) = e exactly on " + std::to_string(common) + " common rank-2 elements (" +
                           std::to_string(common_bad) + " failures); off-support max " + sci(support) + " < " +
                           sci(kSupportTol) + ", " + std::to_string(zeros) + "/" + std::to_string(checked) +
                           " exactly zero"};
    });

    criterion(8, "theta commutation (exact, rank 2)", [&] {
        std::size_t entries = 0, fails = 0, classes = 0;
        for (const auto& c : crossings("rank2")) {
            auto u = build_U_H(c.git, c.wall, c.plus, c.minus);
            std::vector<RatVec> W;
            for (const auto& v : c.wall.W_basis) W.push_back(to_rat(v));
            auto rep = verify_theta_commutation(c.git, u, W);
            entries += rep.entries_checked;
            fails += rep.failures.size();
            classes += W.size();
        }
        return Outcome{fails == 0 && entries > 0, std::to_string(classes) + " wall-basis classes, " +
                                                      std::to_string(entries) + " entries, " +
                                                      std::to_string(fails) + " failures"};
    });

    criterion(9, "negative controls", [&] {
        std::vector<std::string> missed;
        auto f = crossings("flop")[0];
        auto fm_ds = draws(f, 5);
        auto p = fm_ds[0];
        TheoremOptions base;
        base.radii = {1.5, 2.0, 4.0};
        base.tol = kMbTol;
        FMOptions w_fm, c_fm;
        w_fm.w_shift = 1;
        c_fm.c_shift = 1.0;
        TheoremOptions w_mb = base, c_mb = base;
        w_mb.w_shift = 1;
        c_mb.c_shift = 1.0;
        if (verify_fm(f.git, f.wall, f.plus, f.minus, fm_ds, w_fm).pass()) missed.push_back("w -> 1");
        if (verify_wall_crossing(f.git, f.wall, f.plus, f.minus, p, w_mb).pass) missed.push_back("w -> 2");
        if (verify_fm(f.git, f.wall, f.plus, f.minus, fm_ds, c_fm).pass()) missed.push_back("C -> 1");
        if (verify_wall_crossing(f.git, f.wall, f.plus, f.minus, p, c_mb).pass) missed.push_back("C -> 2");
        for (const char* name : {"p1", "flop"}) {
            auto pr = load(name);
            LinearForm shift(pr.git.m, pr.git.base.h2_rank);
            shift.lam[0] = 1;
            if (verify_i_h_relation(pr.git, pr.plus, SeriesTruncation{}, &shift).pass())
                missed.push_back(std::string("rho -> 5 (") + name + ")");
        }
        std::string detail = "unit shifts of w break 1 and 2, of one C entry break 1 and 2, of rho break 5";
        for (const auto& m : missed) detail += "; undetected: " + m;
        return Outcome{missed.empty(), detail};
    });

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
