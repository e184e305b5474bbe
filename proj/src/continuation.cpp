#include "toricwc/continuation.hpp"

#include "toricwc/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace twc {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
const cplx kTwoPiI(0.0, 2 * kPi);

cplx dot_c(const RatVec& d, const std::vector<cplx>& Y) {
    cplx s = 0;
    for (std::size_t k = 0; k < d.size(); ++k) s += to_double(d[k]) * Y[k];
    return s;
}

std::vector<cplx> U_over_2pii(const GitData& git, Mask delta, const NumericParams& p) {
    std::vector<cplx> out;
    for (std::size_t j = 0; j < git.m; ++j)
        out.push_back(has(delta, j) ? cplx(0.0) : U_at(git, delta, j).eval(p.lambda, p.h) / kTwoPiI);
    return out;
}

std::size_t plus_index(const WallData& wall, Mask dplus) {
    for (auto j : indices(dplus))
        if (wall.De[j] > 0) return j;
    throw Error("NotPaired", "anticone " + mask_to_string(dplus) + " has no index with D.e > 0");
}

void check_sector(const MBIntegrand& ig) {
    if (std::abs(ig.logx.imag() - kPi * double(ig.w)) >= kPi)
        throw Error("OutsideSector", "arg (y^+)^e must lie within pi of pi w");
}

/// Everything except Gamma(s)Gamma(1-s).
LogRecipGamma rest_log(const MBIntegrand& ig, cplx s) {
    LogRecipGamma acc{false, s * (ig.logx - kI * kPi * double(ig.w))};
    for (std::size_t j = 0; j < ig.a.size(); ++j) {
        if (ig.De[j] < 0) {
            acc.log += log_gamma(double(-ig.De[j]) * s - ig.a[j]);
        } else {
            auto lr = log_rgamma(1.0 + ig.a[j] + s * double(ig.De[j]));
            if (lr.zero) return {true, 0.0};
            acc.log += lr.log;
        }
    }
    return acc;
}

template <class TermFn>
ResidueSum sum_until_small(TermFn term, double tol, long max_terms) {
    ResidueSum out;
    double prev = -1, last = 0;
    int small = 0;
    for (long n = 0; n < max_terms; ++n) {
        cplx t = term(n);
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
            throw Error("SlowConvergence", "residue terms overflow; the series diverges here");
        out.value += t;
        out.terms = n + 1;
        prev = last;
        last = std::abs(t);
        if (last <= tol * std::abs(out.value) || last == 0.0) {
            if (++small >= 3) {
                double ratio = prev > 0 ? last / prev : 0.0;
                out.tail_estimate = ratio < 1 ? last * ratio / (1 - ratio) : last;
                return out;
            }
        } else {
            small = 0;
        }
    }
    throw Error("SlowConvergence", "residue series did not converge (|y^e| too close to the conifold radius)");
}

}  // namespace

LogRecipGamma MBIntegrand::log_value(cplx s) const {
    auto r = rest_log(*this, s);
    if (r.zero) return r;
    r.log += std::log(kPi) - log_sin_pi(s);
    return r;
}

cplx MBIntegrand::value(cplx s) const {
    auto r = log_value(s);
    return r.zero ? cplx(0.0) : std::exp(r.log);
}

cplx MBIntegrand::K() const {
    cplx k = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (De[j] < 0) k *= std::sin(-kPi * a[j]) / kPi;
    return k;
}

MBIntegrand make_integrand(const GitData& git, const WallData& wall, Mask dplus, const RatVec& dstart,
                           const NumericParams& p, cplx logx) {
    MBIntegrand ig;
    ig.dplus = dplus;
    ig.jplus = plus_index(wall, dplus);
    ig.dstart = dstart;
    ig.e = wall.e;
    ig.w = to_long(wall.w);
    ig.logx = logx;
    auto Ua = U_over_2pii(git, dplus, p);
    for (std::size_t j = 0; j < git.m; ++j) {
        ig.De.push_back(to_long(wall.De[j]));
        ig.a.push_back(Ua[j] + to_double(dot(git.character_q(j), dstart)));
    }
    return ig;
}

std::vector<RatVec> line_starts(const GitData& git, const WallData& wall, Mask dplus, std::size_t jplus,
                                const RatVec& fplus, long max_shell) {
    std::vector<RatVec> out;
    Rat k(wall.De[jplus]);
    for (auto& ex : exponents_at(git, dplus, fplus, max_shell)) {
        Rat n = dot(git.character_q(jplus), ex.d);
        if (n >= 0 && n < k) out.push_back(ex.d);
    }
    return out;
}

std::vector<Pole> classify_poles(const MBIntegrand& ig, long n_max) {
    std::vector<Pole> poles;
    for (long k = -n_max; k <= n_max; ++k) {
        Pole p{cplx(double(k)), -1, k, false};
        if (k < 0) p.zero_residue = rest_log(ig, p.s).zero;
        poles.push_back(p);
    }
    for (std::size_t j = 0; j < ig.a.size(); ++j) {
        if (ig.De[j] >= 0) continue;
        double l = double(-ig.De[j]);
        for (long n = 0; n <= n_max; ++n) poles.push_back({(ig.a[j] - double(n)) / l, int(j), n, false});
    }
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t k = i + 1; k < poles.size(); ++k) {
            if (poles[i].family == -1 && poles[k].family == -1) continue;
            if (std::abs(poles[i].s - poles[k].s) < 1e-4)
                throw Error("NonGenericParameters", "Mellin-Barnes poles collide near s = " +
                                                        std::to_string(poles[i].s.real()) + " + " +
                                                        std::to_string(poles[i].s.imag()) + "i");
        }
    return poles;
}

cplx right_residue(const MBIntegrand& ig, long k) {
    auto r = rest_log(ig, cplx(double(k)));
    if (r.zero) return 0.0;
    return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(r.log);
}

cplx left_residue(const MBIntegrand& ig, std::size_t j, long n) {
    double l = double(-ig.De.at(j));
    if (l <= 0) throw Error("InvalidPole", "family index must have D.e < 0");
    cplx s = (ig.a[j] - double(n)) / l;
    cplx lg = std::log(kPi) - log_sin_pi(s) + s * (ig.logx - kI * kPi * double(ig.w));
    for (std::size_t i = 0; i < ig.a.size(); ++i) {
        if (i == j) continue;
        if (ig.De[i] < 0) {
            lg += log_gamma(double(-ig.De[i]) * s - ig.a[i]);
        } else {
            auto lr = log_rgamma(1.0 + ig.a[i] + s * double(ig.De[i]));
            if (lr.zero) return 0.0;
            lg += lr.log;
        }
    }
    lg -= std::lgamma(double(n) + 1.0) + std::log(l);
    return (n % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
}

MBResult mb_integral(const MBIntegrand& ig, double tol) {
    check_sector(ig);
    auto poles = classify_poles(ig, 4);

    // line between pole real parts in [-1, 0], preferring -1/2
    std::vector<double> cuts{-1.0, 0.0};
    for (auto& p : poles)
        if (p.family >= 0 && p.s.real() > -1.0 && p.s.real() < 0.0) cuts.push_back(p.s.real());
    std::sort(cuts.begin(), cuts.end());
    double best_w = -1, s0 = -0.5;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double wdt = cuts[i + 1] - cuts[i], mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (wdt > best_w + 1e-12 || (std::abs(wdt - best_w) <= 1e-12 && std::abs(mid + 0.5) < std::abs(s0 + 0.5))) {
            best_w = wdt;
            s0 = mid;
        }
    }
    MBResult res;
    res.contour.s0 = s0;

    auto F = [&](double t) {
        ++res.evaluations;
        return ig.value(cplx(s0, t));
    };
    double scale = std::max(1e-300, std::abs(F(0.0)));
    double T = 10;
    while (T < 400 && std::max(std::abs(F(T)), std::abs(F(-T))) > 1e-20 * scale) T *= 1.5;
    res.contour.T = T;

    double h = std::min(0.5, best_w);
    long N = static_cast<long>(std::ceil(T / h));
    h = T / double(N);
    cplx sum = 0;
    for (long k = -N; k <= N; ++k) sum += F(double(k) * h);
    cplx I = h * sum;
    double diff = 0;
    bool ok = false;
    for (int level = 0; level < 14; ++level) {
        cplx odd = 0;
        for (long k = -N; k < N; ++k) odd += F((double(k) + 0.5) * h);
        cplx I2 = 0.5 * I + 0.5 * h * odd;
        diff = std::abs(I2 - I);
        I = I2;
        h *= 0.5;
        N *= 2;
        if (diff <= tol * std::max(1.0, std::abs(I))) {
            ok = true;
            break;
        }
    }
    res.contour.h = h;
    if (!ok) throw Error("QuadratureFailure", "trapezoid rule did not reach the target accuracy");

    // -(1/2 pi i) int_C F ds with ds = i dt, plus left poles between the line and C
    cplx value = -I / (2 * kPi);
    for (std::size_t j = 0; j < ig.a.size(); ++j) {
        if (ig.De[j] >= 0) continue;
        double l = double(-ig.De[j]);
        for (long n = 0;; ++n) {
            cplx s = (ig.a[j] - double(n)) / l;
            if (s.real() <= s0) break;
            value -= left_residue(ig, j, n);
            ++res.contour.corrected_poles;
        }
    }
    res.value = value;
    res.error = diff / (2 * kPi);
    return res;
}

ResidueSum residue_sum(const MBIntegrand& ig, Side side, double tol, long max_terms) {
    check_sector(ig);
    if (side == Side::Right) return sum_until_small([&](long k) { return right_residue(ig, k); }, tol, max_terms);
    ResidueSum s = sum_until_small(
        [&](long n) {
            cplx t = 0;
            for (std::size_t j = 0; j < ig.a.size(); ++j)
                if (ig.De[j] < 0) t += left_residue(ig, j, n);
            return t;
        },
        tol, max_terms);
    s.value = -s.value;
    return s;
}

RatVec minus_exponent(const GitData& git, const MBIntegrand& ig, std::size_t jminus, long n) {
    Rat l(-ig.De.at(jminus));
    Rat s = (dot(git.character_q(jminus), ig.dstart) - n) / l;
    RatVec d = ig.dstart;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += s * ig.e[k];
    return d;
}

cplx connection_coefficient(const GitData& git, const WallData& wall, Mask dplus, const RatVec& fplus,
                            Mask dminus, const RatVec& fminus, const NumericParams& p, long w_shift) {
    std::size_t jminus = git.m;
    for (std::size_t j = 0; j < git.m; ++j)
        if (has(dminus, j) && !has(dplus, j)) jminus = j;
    Mask common = dplus & dminus;
    bool paired = jminus < git.m && popcount(common) + 1 == popcount(dplus) && popcount(dplus) == popcount(dminus) &&
                  wall.De[jminus] < 0;
    for (auto j : indices(common)) paired = paired && wall.De[j] == 0;
    if (paired) paired = wall.De[plus_index(wall, dplus)] > 0;
    Rat alpha;
    if (!paired || !along_e(fplus, fminus, wall.e, &alpha))
        throw Error("NotPaired", mask_to_string(dplus) + " and " + mask_to_string(dminus) + " are not paired");

    double l = to_double(Rat(-wall.De[jminus]));
    double w = to_double(Rat(wall.w)) + double(w_shift);
    auto Up = U_over_2pii(git, dplus, p), Um = U_over_2pii(git, dminus, p);
    RatVec diff = fplus;
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= fminus[k];
    cplx u = Up[jminus] + to_double(dot(git.character_q(jminus), diff));
    cplx C = std::exp(-kI * kPi * w * u / l) * std::sin(kPi * u) / (l * std::sin(kPi * u / l));
    for (std::size_t j = 0; j < git.m; ++j) {
        if (j == jminus || wall.De[j] >= 0) continue;
        C *= std::sin(kPi * (Up[j] + to_double(dot(git.character_q(j), fplus)))) /
             std::sin(kPi * (Um[j] + to_double(dot(git.character_q(j), fminus))));
    }
    return C;
}

ResidueSum minus_series(const GitData& git, const MBIntegrand& ig, std::size_t jminus, long n0,
                        const NumericParams& p, const std::vector<cplx>& Y, double tol, long max_terms) {
    Mask dminus = (ig.dplus & ~bit(ig.jplus)) | bit(jminus);
    auto Um = U_over_2pii(git, dminus, p);
    long l = -ig.De.at(jminus);
    ResidueSum s = sum_until_small(
        [&](long k) { return h_term(git, dminus, minus_exponent(git, ig, jminus, n0 + k * l), Um, Y); }, tol,
        max_terms);
    s.value *= std::exp(sigma_numeric(git, dminus, Y, p) / kTwoPiI);
    return s;
}

TransformUH build_U_H(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus) {
    TransformUH u;
    u.rows = fixed_points(git, plus);
    u.cols = fixed_points(git, minus);
    u.pairs = pair_anticones(git, wall, plus, minus);
    std::map<FixedPoint, std::size_t> col_of;
    for (std::size_t c = 0; c < u.cols.size(); ++c) col_of[u.cols[c]] = c;
    std::map<FixedPoint, std::size_t> row_of;
    for (std::size_t r = 0; r < u.rows.size(); ++r) row_of[u.rows[r]] = r;
    for (std::size_t r = 0; r < u.rows.size(); ++r) {
        auto it = col_of.find(u.rows[r]);
        if (it != col_of.end()) u.entries.push_back({r, it->second, true, 0});
    }
    for (const auto& cp : pair_classes(git, wall, u.pairs)) {
        const auto& pr = u.pairs[cp.pair];
        auto ri = row_of.find(FixedPoint{pr.dplus, cp.fplus});
        auto ci = col_of.find(FixedPoint{pr.dminus, cp.fminus});
        if (ri == row_of.end() || ci == col_of.end())
            throw Error("InternalError", "class pair outside the fixed-point lists");
        u.entries.push_back({ri->second, ci->second, false, cp.pair});
    }
    return u;
}

namespace {

RatVec first_line_start(const GitData& git, const WallData& wall, Mask dplus, const RatVec& fplus) {
    std::size_t jplus = plus_index(wall, dplus);
    for (long bound = to_long(wall.De[jplus]); bound <= 256; bound *= 2) {
        auto ls = line_starts(git, wall, dplus, jplus, fplus, bound);
        if (!ls.empty()) return ls.front();
    }
    throw Error("InternalError", "no line start for " + mask_to_string(dplus));
}

/// First minus-side exponent of the line with class fminus.
RatVec first_minus_exponent(const GitData& git, const WallData& wall, const RatVec& dstart, std::size_t jminus,
                            const RatVec& fminus) {
    MBIntegrand tmp;
    tmp.dstart = dstart;
    tmp.e = wall.e;
    for (auto& x : wall.De) tmp.De.push_back(to_long(x));
    long l = -tmp.De[jminus];
    for (long n = 0; n < l; ++n) {
        RatVec d = minus_exponent(git, tmp, jminus, n);
        if (reduce_mod_lattice(d) == fminus) return d;
    }
    throw Error("NotPaired", "class does not occur on the line");
}

}  // namespace

std::vector<cplx> numeric_U_H(const GitData& git, const WallData& wall, const TransformUH& u, const NumericParams& p) {
    std::vector<cplx> M(u.rows.size() * u.cols.size(), 0.0);
    for (const auto& e : u.entries) {
        cplx& x = M[e.row * u.cols.size() + e.col];
        if (e.identity) {
            x = 1.0;
            continue;
        }
        const auto& pr = u.pairs[e.pair];
        RatVec dp = first_line_start(git, wall, pr.dplus, u.rows[e.row].f);
        RatVec dm = first_minus_exponent(git, wall, dp, pr.jminus, u.cols[e.col].f);
        x = connection_coefficient(git, wall, pr.dplus, dp, pr.dminus, dm, p);
    }
    return M;
}

std::vector<cplx> apply(const TransformUH& u, const std::vector<cplx>& matrix, const std::vector<cplx>& v) {
    if (v.size() != u.cols.size()) throw Error("DimensionMismatch", "vector length differs from the column count");
    std::vector<cplx> out(u.rows.size(), 0.0);
    for (std::size_t r = 0; r < u.rows.size(); ++r)
        for (std::size_t c = 0; c < u.cols.size(); ++c) out[r] += matrix[r * u.cols.size() + c] * v[c];
    return out;
}

ThetaReport verify_theta_commutation(const GitData& git, const TransformUH& u, const std::vector<RatVec>& classes) {
    ThetaReport rep;
    for (const auto& p : classes) {
        ++rep.classes;
        for (const auto& e : u.entries) {
            ++rep.entries_checked;
            LinearForm left = theta_at(git, u.rows[e.row].delta, p);
            LinearForm right = theta_at(git, u.cols[e.col].delta, p);
            if (!(left == right))
                rep.failures.push_back("theta(" + to_string(p) + ") at " + to_string(u.rows[e.row]) + " -> " +
                                       to_string(u.cols[e.col]) + ": " + left.str() + " vs " + right.str());
        }
    }
    return rep;
}

std::vector<cplx> log_point(const GitData& git, const WallData& wall, double radius) {
    Rat ee(0);
    for (auto& x : wall.e) ee += Rat(x * x);
    cplx target(std::log(radius), kPi * to_double(Rat(wall.w)));
    std::vector<cplx> Y(git.r);
    for (std::size_t k = 0; k < git.r; ++k) Y[k] = target * to_double(Rat(wall.e[k]) / ee);
    return Y;
}

TheoremReport verify_wall_crossing(const GitData& git, const WallData& wall, const Chamber& plus,
                                   const Chamber& minus, const NumericParams& p, const TheoremOptions& opt) {
    TheoremReport rep;
    auto pairs = pair_anticones(git, wall, plus, minus);
    bool shifted = false;
    for (const auto& fp : fixed_points(git, plus)) {
        if (minus.is_anticone(fp.delta)) continue;
        std::size_t jplus = plus_index(wall, fp.delta);
        std::vector<RatVec> starts;
        for (long bound = to_long(wall.De[jplus]); starts.size() < std::size_t(opt.lines_per_row) && bound <= 64;
             bound *= 2)
            starts = line_starts(git, wall, fp.delta, jplus, fp.f, bound);
        if (starts.size() > std::size_t(opt.lines_per_row)) starts.resize(opt.lines_per_row);
        for (const auto& ds : starts) {
            for (double R : opt.radii) {
                auto Y = log_point(git, wall, R);
                cplx logx = dot_c(to_rat(wall.e), Y);
                auto ig = make_integrand(git, wall, fp.delta, ds, p, logx);
                cplx pref = std::exp(sigma_numeric(git, fp.delta, Y, p) / kTwoPiI + dot_c(ds, Y)) * ig.K();
                auto mb = mb_integral(ig);
                auto left = residue_sum(ig, Side::Left);
                cplx closed = 0;
                for (const auto& pr : pairs) {
                    if (pr.dplus != fp.delta) continue;
                    long l = to_long(-wall.De[pr.jminus]);
                    for (long n0 = 0; n0 < l; ++n0) {
                        RatVec dm = minus_exponent(git, ig, pr.jminus, n0);
                        cplx C = connection_coefficient(git, wall, fp.delta, ds, pr.dminus, dm, p, opt.w_shift);
                        if (opt.c_shift != 0 && !shifted) {
                            C += opt.c_shift;
                            shifted = true;
                        }
                        closed += C * minus_series(git, ig, pr.jminus, n0, p, Y).value;
                    }
                }
                TheoremRow row;
                row.row = fp;
                row.dstart = ds;
                row.radius = R;
                row.mb_side = pref * mb.value;
                row.residue_side = pref * left.value;
                row.closed_form_side = closed;
                double scale = std::max(1.0, std::abs(closed));
                row.deviation = std::abs(row.mb_side - closed) / scale;
                row.two_route = std::abs(row.residue_side - closed) / scale;
                row.corrected_poles = mb.contour.corrected_poles;
                row.quadrature_error = mb.error;
                rep.max_deviation = std::max(rep.max_deviation, row.deviation);
                rep.max_two_route = std::max(rep.max_two_route, row.two_route);
                rep.rows.push_back(row);
            }
        }
    }
    rep.pass = !rep.rows.empty() && rep.max_deviation < opt.tol && rep.max_two_route < opt.tol;
    return rep;
}

NumericParams draw_params(const GitData& git, const WallData& wall, const Chamber& plus, std::uint64_t seed,
                          int max_attempts) {
    std::mt19937_64 rng(seed);
    auto draw = [&] { return double(static_cast<long>(rng() % 2001) - 1000) / 1000.0; };
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        NumericParams p;
        for (std::size_t j = 0; j < git.m; ++j) p.lambda.push_back(draw());
        for (std::size_t k = 0; k < git.base.h2_rank; ++k) p.h.push_back(draw());
        try {
            for (const auto& fp : fixed_points(git, plus)) {
                int positive = 0;
                bool off_wall_negative = false;
                for (auto j : indices(fp.delta)) {
                    positive += wall.De[j] > 0;
                    off_wall_negative = off_wall_negative || wall.De[j] < 0;
                }
                if (positive != 1 || off_wall_negative) continue;
                auto ig = make_integrand(git, wall, fp.delta, first_line_start(git, wall, fp.delta, fp.f), p,
                                         cplx(0.0, kPi * to_double(Rat(wall.w))));
                classify_poles(ig, 8);
                for (std::size_t j = 0; j < git.m; ++j)
                    if (!has(fp.delta, j) && std::abs(std::sin(kPi * ig.a[j])) < 1e-4)
                        throw Error("NonGenericParameters", "sine factor too small");
            }
            return p;
        } catch (const Error& e) {
            if (e.code() != "NonGenericParameters") throw;
        }
    }
    throw Error("NonGenericParameters", "no generic parameter draw found");
}

InsideReport verify_inside_radius(const GitData& git, const WallData& wall, const Chamber& plus,
                                  const Chamber& minus, const NumericParams& p, const std::vector<double>& radii,
                                  double tol) {
    InsideReport rep;
    HSumOptions hopt;
    hopt.wall = &wall;
    for (const auto& fp : fixed_points(git, plus)) {
        if (minus.is_anticone(fp.delta)) continue;
        std::size_t jplus = plus_index(wall, fp.delta);
        RatVec ds = first_line_start(git, wall, fp.delta, fp.f);
        for (double R : radii) {
            auto Y = log_point(git, wall, R);
            auto ig = make_integrand(git, wall, fp.delta, ds, p, dot_c(to_rat(wall.e), Y));
            InsideRow row;
            row.row = fp;
            row.radius = R;
            row.mb = mb_integral(ig).value;
            row.right = residue_sum(ig, Side::Right).value;
            double scale = std::max(1.0, std::abs(row.right));
            row.deviation = std::abs(row.mb - row.right) / scale;
            if (git.r == 1 && line_starts(git, wall, fp.delta, jplus, fp.f, 64).size() == 1) {
                cplx pref = std::exp(sigma_numeric(git, fp.delta, Y, p) / kTwoPiI + dot_c(ds, Y)) * ig.K();
                row.restriction = restrict_h(git, fp.delta, fp.f, p, Y, hopt).value;
                row.deviation = std::max(row.deviation, std::abs(pref * row.right - row.restriction) /
                                                            std::max(1.0, std::abs(row.restriction)));
            }
            rep.max_deviation = std::max(rep.max_deviation, row.deviation);
            rep.rows.push_back(row);
        }
    }
    rep.pass = !rep.rows.empty() && rep.max_deviation < tol;
    return rep;
}

bool is_gauss_wall(const GitData& git, const WallData& wall) {
    if (git.r != 1 || git.m != 4) return false;
    int plus_one = 0, minus_one = 0;
    for (const auto& d : wall.De) {
        plus_one += d == 1;
        minus_one += d == -1;
    }
    return plus_one == 2 && minus_one == 2;
}

GaussReport verify_gauss(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                         const NumericParams& p, const std::vector<double>& radii, double tol) {
    if (!is_gauss_wall(git, wall)) throw Error("Unsupported", "the Gauss cross-check needs D.e = (1,1,-1,-1) up to order");
    TheoremOptions opt;
    opt.radii = radii;
    opt.tol = tol;
    auto theorem = verify_wall_crossing(git, wall, plus, minus, p, opt);
    GaussReport rep;
    for (const auto& t : theorem.rows) {
        auto a = U_over_2pii(git, t.row.delta, p);
        std::size_t other = 0;
        std::vector<std::size_t> neg;
        for (std::size_t j = 0; j < git.m; ++j) {
            if (has(t.row.delta, j)) continue;
            if (wall.De[j] > 0) other = j;
            else neg.push_back(j);
        }
        // y^e = -R on the sampled branch (w = 1)
        auto Y = log_point(git, wall, t.radius);
        GaussRow row;
        row.row = t.row;
        row.radius = t.radius;
        row.mb_side = t.mb_side;
        row.closed_form_side = t.closed_form_side;
        row.gauss = std::exp(sigma_numeric(git, t.row.delta, Y, p) / kTwoPiI) *
                    hyp2f1_outside(-a[neg[0]], -a[neg[1]], 1.0 + a[other], cplx(-t.radius)) /
                    (gamma_complex(1.0 + a[other]) * gamma_complex(1.0 + a[neg[0]]) * gamma_complex(1.0 + a[neg[1]]));
        double scale = std::max(1.0, std::abs(row.gauss));
        row.deviation = std::max(std::abs(row.mb_side - row.gauss), std::abs(row.closed_form_side - row.gauss)) / scale;
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.rows.push_back(row);
    }
    rep.pass = !rep.rows.empty() && rep.max_deviation < tol;
    return rep;
}

}  // namespace twc
