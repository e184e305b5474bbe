#include "toricwc/cohomology.hpp"

#include <mpfr.h>

#include <algorithm>
#include <mutex>
#include <sstream>

namespace twc {

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    if (lam.size() != o.lam.size() || h.size() != o.h.size())
        throw Error("DimensionMismatch", "linear forms over different parameters");
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] += o.lam[i];
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += o.h[i];
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    LinearForm neg = o;
    neg *= Rat(-1);
    return *this += neg;
}

LinearForm& LinearForm::operator*=(const Rat& c) {
    for (auto& x : lam) x *= c;
    for (auto& x : h) x *= c;
    return *this;
}

bool LinearForm::is_zero() const {
    return std::all_of(lam.begin(), lam.end(), [](const Rat& x) { return x == 0; }) &&
           std::all_of(h.begin(), h.end(), [](const Rat& x) { return x == 0; });
}

cplx LinearForm::eval(const std::vector<cplx>& lambda, const std::vector<cplx>& hval) const {
    if (lambda.size() != lam.size())
        throw Error("DimensionMismatch", "wrong number of equivariant parameters");
    cplx s = 0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        if (lam[i] != 0) s += to_double(lam[i]) * lambda[i];
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0) continue;
        if (i >= hval.size()) throw Error("DimensionMismatch", "missing base class value");
        s += to_double(h[i]) * hval[i];
    }
    return s;
}

std::string LinearForm::str() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Rat& c, const std::string& name) {
        if (c == 0) return;
        Rat a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        if (a != 1) os << a.get_str() << " ";
        os << name;
        first = false;
    };
    for (std::size_t i = 0; i < lam.size(); ++i) term(lam[i], "l" + std::to_string(i + 1));
    for (std::size_t i = 0; i < h.size(); ++i) term(h[i], "h" + std::to_string(i + 1));
    return first ? "0" : os.str();
}

LinearForm mu(const GitData& git, std::size_t j) {
    LinearForm f(git.m, git.base.h2_rank);
    f.lam[j] = 1;
    if (!git.base.is_point && j < git.base.Lambda.size())
        for (std::size_t k = 0; k < git.base.h2_rank; ++k) f.h[k] = git.base.Lambda[j][k];
    return f;
}

LinearForm c0(const GitData& git) {
    LinearForm f(git.m, git.base.h2_rank);
    for (auto& x : f.lam) x = 1;
    return f;
}

RatVec expand_in(const GitData& git, Mask delta, const RatVec& p) {
    if (p.size() != git.r) throw Error("DimensionMismatch", "class has the wrong rank");
    return delta_inverse(git, delta) * p;
}

LinearForm theta_at(const GitData& git, Mask delta, const RatVec& p) {
    RatVec c = expand_in(git, delta, p);
    LinearForm f(git.m, git.base.h2_rank);
    auto idx = indices(delta);
    for (std::size_t a = 0; a < idx.size(); ++a) f -= c[a] * mu(git, idx[a]);
    return f;
}

LinearForm U_at(const GitData& git, Mask delta, std::size_t j) {
    if (has(delta, j)) return LinearForm(git.m, git.base.h2_rank);
    return mu(git, j) + theta_at(git, delta, git.character_q(j));
}

LinearForm rho_at(const GitData& git, Mask delta) {
    RatVec s(git.r, Rat(0));
    for (std::size_t j = 0; j < git.m; ++j)
        for (std::size_t k = 0; k < git.r; ++k) s[k] += git.D(j, k);
    return theta_at(git, delta, s);
}

const std::vector<LinearForm>& RestrictionTable::at(Mask delta) const {
    auto it = U.find(delta);
    if (it == U.end()) throw Error("UnknownFixedPoint", "no fixed point for " + mask_to_string(delta));
    return it->second;
}

RestrictionTable restriction_table(const GitData& git, const Chamber& ch) {
    RestrictionTable t;
    for (Mask d : ch.minimal) {
        std::vector<LinearForm> row;
        for (std::size_t j = 0; j < git.m; ++j) row.push_back(U_at(git, d, j));
        t.U.emplace(d, std::move(row));
    }
    return t;
}

DivLemmaReport verify_div_lemma(const GitData& git, const WallData& wall, const Chamber& plus,
                                const Chamber& minus, std::vector<RatVec> classes) {
    if (classes.empty())
        for (std::size_t k = 0; k < git.r; ++k) {
            RatVec p(git.r, Rat(0));
            p[k] = 1;
            classes.push_back(p);
        }
    DivLemmaReport rep;
    RatVec e = to_rat(wall.e);
    for (const auto& pr : pair_anticones(git, wall, plus, minus)) {
        ++rep.pairs;
        Rat dje(wall.De[pr.jminus]);
        LinearForm ujm = U_at(git, pr.dplus, pr.jminus);
        std::string where = mask_to_string(pr.dplus) + "|" + mask_to_string(pr.dminus);
        for (std::size_t j = 0; j < git.m; ++j) {
            ++rep.checks;
            LinearForm rhs = U_at(git, pr.dminus, j) + (Rat(wall.De[j]) / dje) * ujm;
            if (!(U_at(git, pr.dplus, j) == rhs))
                rep.failures.push_back("U_" + std::to_string(j + 1) + " at " + where);
        }
        for (const auto& p : classes) {
            ++rep.checks;
            LinearForm rhs = theta_at(git, pr.dminus, p) + (dot(p, e) / dje) * ujm;
            if (!(theta_at(git, pr.dplus, p) == rhs))
                rep.failures.push_back("theta(" + to_string(p) + ") at " + where);
        }
    }
    return rep;
}

RingPresentation ring_presentation(const GitData& git, const Chamber& ch) {
    RingPresentation rp;
    IntMatrix K = integer_kernel(git.D.transpose());
    for (std::size_t c = 0; c < K.cols(); ++c) rp.linear.push_back(K.col(c));

    // prod_{i not in I} u_i for non-anticones I; keep the divisibility-minimal ones
    std::vector<Mask> gens;
    for (Mask I = 0; I <= git.all(); ++I) {
        if (!ch.is_anticone(I)) gens.push_back(git.all() & ~I);
        if (I == git.all()) break;
    }
    std::sort(gens.begin(), gens.end(),
              [](Mask a, Mask b) { return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b; });
    for (Mask g : gens) {
        bool redundant = std::any_of(rp.monomials.begin(), rp.monomials.end(),
                                     [g](Mask h) { return (h & g) == h; });
        if (!redundant) rp.monomials.push_back(g);
    }
    for (Mask g : rp.monomials)
        if (popcount(g) == 1) rp.forced_zero |= g;
    return rp;
}

RatVec y_degrees(const GitData& git, const AdaptedBasis& basis) {
    RatVec s(git.r, Rat(0));
    for (std::size_t j = 0; j < git.m; ++j)
        for (std::size_t k = 0; k < git.r; ++k) s[k] += 2 * git.D(j, k);
    RatVec out;
    for (std::size_t i = 0; i < basis.p.size(); ++i) out.push_back(dot(s, basis.dual.col(i)));
    return out;
}

namespace {

std::string mpfr_str(mpfr_t x, int digits) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

}  // namespace

const GammaConstants& gamma_constants(int n_max) {
    static std::mutex mu_lock;
    static GammaConstants cache;
    std::lock_guard<std::mutex> g(mu_lock);
    if (static_cast<int>(cache.zeta.size()) > n_max) return cache;

    const int digits = 40;
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_const_euler(x, MPFR_RNDN);
    cache.digits = digits;
    cache.euler_gamma = mpfr_get_d(x, MPFR_RNDN);
    cache.euler_gamma_str = mpfr_str(x, digits);
    cache.zeta.assign(n_max + 1, 0.0);
    cache.zeta_str.assign(n_max + 1, "");
    for (int k = 2; k <= n_max; ++k) {
        mpfr_zeta_ui(x, static_cast<unsigned long>(k), MPFR_RNDN);
        cache.zeta[k] = mpfr_get_d(x, MPFR_RNDN);
        cache.zeta_str[k] = mpfr_str(x, digits);
    }
    mpfr_clear(x);
    return cache;
}

cplx gamma_series(cplx x) {
    if (std::abs(x) >= 1.0)
        throw Error("ConvergenceRadius", "Gamma(1+x) series needs |x| < 1");
    const int n_max = 600;
    const auto& gc = gamma_constants(n_max);
    cplx log_g = -gc.euler_gamma * x;
    cplx pw = -x;
    for (int k = 2; k <= n_max; ++k) {
        pw *= -x;
        cplx term = gc.zeta[k] * pw / double(k);
        log_g += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(log_g))) break;
    }
    return std::exp(log_g);
}

}  // namespace twc
