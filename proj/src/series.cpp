#include "toricwc/series.hpp"

#include "toricwc/special.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include <cmath>
#include <functional>
#include <limits>

namespace twc {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kTwoPiI(0.0, 2 * kPi);

RatMatrix delta_rows(const GitData& git, Mask delta) {
    auto idx = indices(delta);
    RatMatrix M(idx.size(), git.r);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t k = 0; k < git.r; ++k) M(a, k) = git.D(idx[a], k);
    return M;
}

void compositions(std::size_t parts, long total, std::vector<long>& cur,
                  const std::function<void(const std::vector<long>&)>& f) {
    if (cur.size() + 1 == parts) {
        cur.push_back(total);
        f(cur);
        cur.pop_back();
        return;
    }
    for (long k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(parts, total - k, cur, f);
        cur.pop_back();
    }
}

std::vector<RatVec> shell(const RatMatrix& Minv, const std::optional<RatVec>& f, long s) {
    std::vector<RatVec> out;
    std::vector<long> cur;
    compositions(Minv.rows(), s, cur, [&](const std::vector<long>& n) {
        RatVec nv;
        for (long x : n) nv.push_back(Rat(x));
        RatVec d = Minv * nv;
        if (f) {
            RatVec diff = d;
            for (std::size_t k = 0; k < d.size(); ++k) diff[k] -= (*f)[k];
            if (!is_integral(diff)) return;
        }
        out.push_back(std::move(d));
    });
    return out;
}

std::vector<cplx> U_over_2pii(const GitData& git, Mask delta, const NumericParams& p) {
    std::vector<cplx> out;
    for (std::size_t j = 0; j < git.m; ++j)
        out.push_back(has(delta, j) ? cplx(0.0) : U_at(git, delta, j).eval(p.lambda, p.h) / kTwoPiI);
    return out;
}

cplx dot_c(const RatVec& d, const std::vector<cplx>& Y) {
    cplx s = 0;
    for (std::size_t k = 0; k < d.size(); ++k) s += to_double(d[k]) * Y[k];
    return s;
}

}  // namespace

std::vector<Exponent> exponents_at(const GitData& git, Mask delta, const std::optional<RatVec>& f,
                                   long max_shell) {
    if (static_cast<std::size_t>(popcount(delta)) != git.r)
        throw Error("InvalidFixedPoint", "fixed points need r characters");
    RatMatrix Minv = inverse(delta_rows(git, delta));
    std::vector<Exponent> out;
    for (long s = 0; s <= max_shell; ++s)
        for (auto& d : shell(Minv, f, s)) out.push_back({std::move(d), s});
    return out;
}

long shell_bound(const GitData& git, Mask delta, const AdaptedBasis& basis, int max_degree) {
    Rat worst(0);
    for (std::size_t i = 0; i < basis.p.size(); ++i) {
        RatVec q = basis.dual.col(i);
        Rat s(0);
        for (auto j : indices(delta)) s += abs(dot(git.character_q(j), q));
        worst = std::max(worst, s);
    }
    return to_long(floor_rat(worst * max_degree));
}

Rat y_degree(const AdaptedBasis& basis, const RatVec& d) {
    Rat s(0);
    for (const auto& p : basis.p) s += abs(dot(p, d));
    return s;
}

cplx sigma_numeric(const GitData& git, Mask delta, const std::vector<cplx>& Y, const NumericParams& p) {
    cplx s = c0(git).eval(p.lambda, p.h);
    for (std::size_t k = 0; k < git.r; ++k) {
        RatVec ek(git.r, Rat(0));
        ek[k] = 1;
        s += Y[k] * theta_at(git, delta, ek).eval(p.lambda, p.h);
    }
    return s;
}

cplx h_term(const GitData& git, Mask delta, const RatVec& d, const std::vector<cplx>& Ua,
            const std::vector<cplx>& Y) {
    cplx log_t = dot_c(d, Y);
    for (std::size_t j = 0; j < git.m; ++j) {
        Rat Dd = dot(git.character_q(j), d);
        cplx arg = 1.0 + Ua[j] + to_double(Dd);
        if (has(delta, j)) arg = cplx(to_double(1 + Dd), 0.0);
        auto lr = log_rgamma(arg);
        if (lr.zero) return 0.0;
        log_t += lr.log;
    }
    return std::exp(log_t);
}

HSum restrict_h(const GitData& git, Mask delta, const RatVec& f, const NumericParams& p,
                const std::vector<cplx>& Y, HSumOptions opt) {
    if (Y.size() != git.r) throw Error("DimensionMismatch", "log-point has the wrong rank");
    if (opt.wall) {
        double ye = std::exp(dot_c(to_rat(opt.wall->e), Y).real());
        if (ye >= std::abs(to_double(opt.wall->conifold)))
            throw Error("OutsideConvergence", "|y^e| is not below the conifold radius");
    }
    RatMatrix Minv = inverse(delta_rows(git, delta));
    auto Ua = U_over_2pii(git, delta, p);
    HSum out;
    double prev = -1, last = 0;
    int small = 0;
    bool done = false;
    for (long s = 0; s <= opt.max_shell && !done; ++s) {
        auto ds = shell(Minv, f, s);
        if (ds.empty()) continue;
        cplx shell_sum = 0;
        for (auto& d : ds) shell_sum += h_term(git, delta, d, Ua, Y);
        out.value += shell_sum;
        out.terms += ds.size();
        out.shells = s;
        prev = last;
        last = std::abs(shell_sum);
        if (last <= opt.tol * std::abs(out.value) || last == 0.0) {
            if (++small >= 3) done = true;
        } else {
            small = 0;
        }
    }
    if (!done) throw Error("SlowConvergence", "H restriction did not converge within the shell limit");
    double ratio = prev > 0 ? last / prev : 0.0;
    out.tail_estimate = ratio < 1 ? last * ratio / (1 - ratio) : std::numeric_limits<double>::infinity();
    out.value *= std::exp(sigma_numeric(git, delta, Y, p) / kTwoPiI);
    return out;
}

SymbolicContext::SymbolicContext(const GitData& git) : m(git.m), b(git.base.h2_rank), r(git.r) {
    for (std::size_t i = 0; i < m; ++i) {
        int id = syms.intern("l" + std::to_string(i + 1), 1);
        if (i == 0) lam0 = id;
    }
    h0 = static_cast<int>(syms.size());
    for (std::size_t i = 0; i < b; ++i) syms.intern("h" + std::to_string(i + 1), 1);
    L0 = static_cast<int>(syms.size());
    for (std::size_t i = 0; i < r; ++i) syms.intern("logy" + std::to_string(i + 1));
    logz = syms.intern("logz");
    tau = syms.intern("tau");
    euler = syms.intern("gamma");
}

Series SymbolicContext::form(const LinearForm& f, int W) const {
    Series s(W);
    for (std::size_t i = 0; i < f.lam.size(); ++i)
        if (f.lam[i] != 0) s += f.lam[i] * Series::symbol(syms, lam0 + static_cast<int>(i), 1, W);
    for (std::size_t i = 0; i < f.h.size(); ++i)
        if (f.h[i] != 0) s += f.h[i] * Series::symbol(syms, h0 + static_cast<int>(i), 1, W);
    return s;
}

int SymbolicContext::zeta(int k) { return syms.intern("zeta(" + std::to_string(k) + ")"); }
int SymbolicContext::G(const Rat& c) { return syms.intern("G(" + c.get_str() + ")"); }
int SymbolicContext::g(const Rat& c, int n) {
    return syms.intern("g(" + c.get_str() + "," + std::to_string(n) + ")");
}

cplx SymbolicContext::value(int id, const NumericParams& p, const std::vector<cplx>& L, cplx logz_value) const {
    std::size_t u = static_cast<std::size_t>(id);
    if (id >= lam0 && u < lam0 + m) return p.lambda.at(id - lam0);
    if (id >= h0 && u < h0 + b) return p.h.at(id - h0);
    if (id >= L0 && u < L0 + r) return L.at(id - L0);
    if (id == logz) return logz_value;
    if (id == tau) return kTwoPiI;
    const auto& gc = gamma_constants();
    if (id == euler) return gc.euler_gamma;
    const std::string& nm = syms.name(id);
    if (nm.rfind("zeta(", 0) == 0) return gc.zeta.at(std::stoi(nm.substr(5)));
    auto parse_c = [](const std::string& s) { return to_double(parse_rat(s)); };
    if (nm.rfind("G(", 0) == 0) return boost::math::tgamma(1 - parse_c(nm.substr(2, nm.size() - 3)));
    if (nm.rfind("g(", 0) == 0) {
        auto comma = nm.find(',');
        double c = parse_c(nm.substr(2, comma - 2));
        int n = std::stoi(nm.substr(comma + 1));
        return boost::math::polygamma(n - 1, 1 - c) / boost::math::factorial<double>(n);
    }
    throw Error("InvalidSymbol", "no numeric value for " + nm);
}

namespace {

void require_positive_weight(const Series& x) {
    for (const auto& kv : x.terms())
        if (kv.first.weight == 0) throw Error("InvalidSeries", "Gamma expansion needs a nilpotent argument");
}

/// log Gamma(1 - c + x) - log Gamma(1 - c), or its negative.
Series log_gamma_core(SymbolicContext& ctx, const Rat& c, const Series& x, int sign) {
    int W = x.max_weight();
    Series acc(W);
    Series pw = Series::constant(Rat(1), W);
    for (int n = 1; n <= W; ++n) {
        pw = pw * x;
        if (pw.is_zero()) break;
        Series coef(W);
        if (c == 0) {
            if (n == 1)
                coef = Rat(-1) * Series::symbol(ctx.syms, ctx.euler, 1, W);
            else
                coef = Rat(n % 2 == 0 ? 1 : -1, n) * Series::symbol(ctx.syms, ctx.zeta(n), 1, W);
        } else {
            coef = Series::symbol(ctx.syms, ctx.g(c, n), 1, W);
        }
        acc += coef * pw;
    }
    if (sign < 0) acc *= Rat(-1);
    return acc;
}

struct Split {
    Rat c;   // a = 1 - c + k with c in [0,1)
    long k;
};

Split split(const Rat& a) {
    Rat c = frac(-a);
    return {c, to_long(floor_rat(a - (1 - c)))};
}

}  // namespace

Series gamma_expansion(SymbolicContext& ctx, const Rat& a, const Series& x) {
    require_positive_weight(x);
    int W = x.max_weight();
    auto [c, k] = split(a);
    Series out = log_gamma_core(ctx, c, x, +1).exp();
    if (c != 0) out = Series::symbol(ctx.syms, ctx.G(c), 1, W) * out;
    Rat base = 1 - c;
    if (k >= 0) {
        for (long i = 0; i < k; ++i) out = out * (Series::constant(base + i, W) + x);
    } else {
        for (long i = k; i < 0; ++i) {
            if (base + i == 0) throw Error("GammaPole", "Gamma expansion at a pole");
            out = out * (Series::constant(base + i, W) + x).inverse();
        }
    }
    return out;
}

Series rgamma_expansion(SymbolicContext& ctx, const Rat& a, const Series& x) {
    require_positive_weight(x);
    int W = x.max_weight();
    auto [c, k] = split(a);
    Series out = log_gamma_core(ctx, c, x, -1).exp();
    if (c != 0) out = Series::symbol(ctx.syms, ctx.G(c), -1, W) * out;
    Rat base = 1 - c;
    if (k >= 0) {
        for (long i = 0; i < k; ++i) out = out * (Series::constant(base + i, W) + x).inverse();
    } else {
        for (long i = k; i < 0; ++i) out = out * (Series::constant(base + i, W) + x);
    }
    return out;
}

namespace {

/// sum_i theta(p_i)(delta) (log y_i - shift_i log z) + c_0
Series sigma_series(SymbolicContext& ctx, const GitData& git, Mask delta, const AdaptedBasis& basis,
                    int W, const RatVec* logz_shift) {
    Series s = ctx.form(c0(git), W);
    for (std::size_t i = 0; i < basis.p.size(); ++i) {
        Series th = ctx.form(theta_at(git, delta, to_rat(basis.p[i])), W);
        Series logy = Series::symbol(ctx.syms, ctx.L0 + static_cast<int>(i), 1, W);
        if (logz_shift) logy -= (*logz_shift)[i] * Series::symbol(ctx.syms, ctx.logz, 1, W);
        s += th * logy;
    }
    return s;
}

}  // namespace

Int z_shift(const GitData& git, const RatVec& d) {
    Int s = 0;
    for (std::size_t j = 0; j < git.m; ++j) s += ceil_rat(dot(git.character_q(j), d));
    return s;
}

Series i_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                     const AdaptedBasis& basis, int W) {
    Series out = (sigma_series(ctx, git, delta, basis, W, nullptr) * Series::zpow(Rat(-1), W)).exp();
    Series z = Series::zpow(Rat(1), W);
    for (std::size_t j = 0; j < git.m; ++j) {
        Series U = ctx.form(U_at(git, delta, j), W);
        Rat n = dot(git.character_q(j), d);
        // prod_{a <= 0} (U + a z) / prod_{a <= n} (U + a z), a = n mod 1
        if (n >= 0) {
            for (Rat a = n; a > 0; a -= 1) out = out * (U + a * z).inverse();
        } else {
            for (Rat a = n + 1; a <= 0; a += 1) out = out * (U + a * z);
        }
        if (out.is_zero()) break;
    }
    return out;
}

Series h_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                     const AdaptedBasis& basis, int W, bool substitute_y) {
    Series inv_tau = Series::symbol(ctx.syms, ctx.tau, -1, W);
    RatVec half_deg;
    if (substitute_y)
        for (auto& x : y_degrees(git, basis)) half_deg.push_back(x / 2);
    Series out = (sigma_series(ctx, git, delta, basis, W, substitute_y ? &half_deg : nullptr) * inv_tau).exp();
    for (std::size_t j = 0; j < git.m; ++j) {
        Series U = ctx.form(U_at(git, delta, j), W) * inv_tau;
        out = out * rgamma_expansion(ctx, 1 + dot(git.character_q(j), d), U);
        if (out.is_zero()) break;
    }
    if (substitute_y) {
        Rat sd(0);
        for (std::size_t j = 0; j < git.m; ++j) sd += dot(git.character_q(j), d);
        out = out * Series::zpow(-sd, W);
    }
    return out;
}

Series dressed_h_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                             const AdaptedBasis& basis, int W, const LinearForm& rho_shift) {
    Series out = h_coefficient(ctx, git, delta, d, basis, W, true).scale_by_weight(ctx.tau, 1, Rat(0));
    Rat iota(0);
    for (std::size_t j = 0; j < git.m; ++j) {
        Rat c = frac(-dot(git.character_q(j), d));
        iota += c;
        out = out * gamma_expansion(ctx, 1 - c, ctx.form(U_at(git, delta, j), W));
    }
    Series rho = ctx.form(rho_at(git, delta) + rho_shift, W);
    out = out * (rho * Series::symbol(ctx.syms, ctx.logz, 1, W)).exp();
    out = out.scale_by_weight(ctx.tau, 0, Rat(-1));
    return out * Series::zpow(-iota, W);
}

IHReport verify_i_h_relation(const GitData& git, const Chamber& ch, const SeriesTruncation& trunc,
                             const LinearForm* rho_shift) {
    if (!git.base.is_point)
        throw Error("Unsupported", "the I/H comparison is implemented for a point base");
    if (trunc.max_Q_degree != 0) throw Error("Unsupported", "only Novikov degree 0 is compared");
    SymbolicContext ctx(git);
    LinearForm shift = rho_shift ? *rho_shift : LinearForm(git.m, git.base.h2_rank);
    AdaptedBasis basis = series_basis(git, ch);
    IHReport rep;
    for (Mask delta : ch.minimal) {
        ++rep.fixed_points;
        long K = shell_bound(git, delta, basis, trunc.max_y_degree);
        for (const auto& ex : exponents_at(git, delta, std::nullopt, K)) {
            if (y_degree(basis, ex.d) > trunc.max_y_degree) continue;
            Int s = z_shift(git, ex.d);
            Rat top = -trunc.z_low - Rat(s);
            if (top < 0) continue;
            int W = static_cast<int>(to_long(floor_rat(top)));
            ++rep.exponents;
            Series lhs = i_coefficient(ctx, git, delta, ex.d, basis, W);
            Series rhs = dressed_h_coefficient(ctx, git, delta, ex.d, basis, W, shift);
            for (const auto& [mono, c] : lhs.terms())
                if (mono.z != -mono.weight - Rat(s)) rep.homogeneous = false;
            std::map<Monomial, std::pair<Rat, Rat>> both;
            for (const auto& [mono, c] : lhs.terms()) both[mono].first = c;
            for (const auto& [mono, c] : rhs.terms()) both[mono].second = c;
            for (const auto& [mono, lr] : both) {
                if (mono.z < trunc.z_low || mono.z > trunc.z_high) continue;
                ++rep.coefficients;
                if (lr.first == lr.second) continue;
                if (++rep.mismatch_count <= 20)
                    rep.mismatches.push_back(mask_to_string(delta) + " d=" + to_string(ex.d) + " " +
                                             to_string(mono, ctx.syms) + ": I " + lr.first.get_str() +
                                             " vs H " + lr.second.get_str());
            }
        }
    }
    return rep;
}

}  // namespace twc
