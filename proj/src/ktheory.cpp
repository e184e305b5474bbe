#include "toricwc/ktheory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace twc {

namespace {

constexpr double kPi = 3.14159265358979323846;

long checked_lcm(long a, long b) {
    long M = std::lcm(a, b);
    if (M > kMaxCyclotomicOrder)
        throw Error("Unsupported", "cyclotomic order " + std::to_string(M) + " exceeds the exact-mode limit");
    return M;
}

std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    // den monic
    std::size_t dn = den.size() - 1;
    std::vector<Int> q(num.size() - dn, Int(0));
    for (std::size_t i = num.size(); i-- > dn;) {
        Int c = num[i];
        if (c == 0) continue;
        q[i - dn] = c;
        for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    for (auto& x : num)
        if (x != 0) throw Error("InternalError", "cyclotomic division left a remainder");
    return q;
}

RatVec add_vec(RatVec a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

LinearForm lambda_form(const GitData& git, std::size_t i) {
    LinearForm f(git.m, git.base.h2_rank);
    f.lam[i] = 1;
    return f;
}

Rat idot(const IntVec& p, const RatVec& f) {
    Rat s(0);
    for (std::size_t k = 0; k < p.size(); ++k) s += Rat(p[k]) * f[k];
    return s;
}

Int idot(const IntVec& p, const IntVec& e) {
    Int s(0);
    for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * e[k];
    return s;
}

std::size_t minus_index(const WallData& wall, Mask delta) {
    std::size_t jminus = wall.De.size();
    for (auto j : indices(delta)) {
        if (wall.De[j] < 0) {
            if (jminus != wall.De.size()) throw Error("Unsupported", "anticone has two indices with D.e < 0");
            jminus = j;
        } else if (wall.De[j] > 0) {
            throw Error("Unsupported", "minus-side anticone " + mask_to_string(delta) + " has an index with D.e > 0");
        }
    }
    if (jminus == wall.De.size())
        throw Error("Unsupported", "anticone " + mask_to_string(delta) + " has no index with D.e < 0");
    return jminus;
}

}  // namespace

// ---------------------------------------------------------------- Cyclotomic

const std::vector<Int>& cyclotomic_polynomial(long N) {
    static std::mutex mu;
    static std::map<long, std::vector<Int>> cache;
    if (N < 1 || N > kMaxCyclotomicOrder) throw Error("Unsupported", "cyclotomic order out of range");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    std::vector<Int> p(N + 1, Int(0));
    p[0] = -1;
    p[N] = 1;
    for (long d = 1; d < N; ++d)
        if (N % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(N, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(const Rat& c) : N_(1), c_{c} {}

void Cyclotomic::reduce(std::vector<Rat> full) {
    const auto& phi = cyclotomic_polynomial(N_);
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = full.size(); i-- > deg;) {
        Rat c = full[i];
        if (c == 0) continue;
        for (std::size_t k = 0; k <= deg; ++k) full[i - deg + k] -= c * Rat(phi[k]);
    }
    full.resize(deg, Rat(0));
    c_ = std::move(full);
}

Cyclotomic Cyclotomic::root(long N, long k) {
    if (N < 1) throw Error("InvalidArgument", "root order must be positive");
    if (N > kMaxCyclotomicOrder) throw Error("Unsupported", "cyclotomic order exceeds the exact-mode limit");
    Cyclotomic z;
    z.N_ = N;
    long kk = ((k % N) + N) % N;
    std::vector<Rat> full(std::max<std::size_t>(kk + 1, 1), Rat(0));
    full[kk] = 1;
    z.reduce(std::move(full));
    return z;
}

Cyclotomic Cyclotomic::phase(const Rat& q) {
    Rat f = frac(q);
    return root(to_long(f.get_den()), to_long(f.get_num()));
}

Cyclotomic Cyclotomic::lifted(long M) const {
    if (M % N_ != 0) throw Error("InternalError", "cyclotomic lift to a non-multiple order");
    if (M == N_) return *this;
    Cyclotomic z;
    z.N_ = M;
    long s = M / N_;
    std::vector<Rat> full(c_.empty() ? 1 : (c_.size() - 1) * s + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) full[i * s] = c_[i];
    z.reduce(std::move(full));
    return z;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

cplx Cyclotomic::value() const {
    cplx s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) s += to_double(c_[i]) * std::polar(1.0, 2 * kPi * double(i) / double(N_));
    return s;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    long M = checked_lcm(N_, o.N_);
    Cyclotomic a = lifted(M), b = o.lifted(M);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    Cyclotomic neg = o;
    neg *= Rat(-1);
    return *this += neg;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    long M = checked_lcm(N_, o.N_);
    Cyclotomic a = lifted(M), b = o.lifted(M);
    std::vector<Rat> full(a.c_.size() + b.c_.size(), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t k = 0; k < b.c_.size(); ++k) full[i + k] += a.c_[i] * b.c_[k];
    }
    a.reduce(std::move(full));
    return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator*=(const Rat& c) {
    for (auto& x : c_) x *= c;
    return *this;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    Cyclotomic d = *this;
    d -= o;
    return d.is_zero();
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i > 0) os << "*z" << N_ << "^" << i;
    }
    return first ? "0" : os.str();
}

// -------------------------------------------------------------------- ExpSum

ExpSum ExpSum::exp_of(const LinearForm& f, const Cyclotomic& c) {
    ExpSum s;
    s.add({f.lam, f.h}, c);
    return s;
}

void ExpSum::add(const Key& k, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, Rat(-1) * c);
    return *this;
}

ExpSum& ExpSum::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    ExpSum out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add({add_vec(ka.first, kb.first), add_vec(ka.second, kb.second)}, ca * cb);
    return out;
}

cplx ExpSum::eval(const NumericParams& p) const {
    cplx s = 0;
    for (const auto& [k, c] : terms_) {
        LinearForm f;
        f.lam = k.first;
        f.h = k.second;
        s += c.value() * std::exp(f.eval(p.lambda, p.h));
    }
    return s;
}

std::string ExpSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        LinearForm f;
        f.lam = k.first;
        f.h = k.second;
        os << "(" << c.str() << ") exp(" << f.str() << ")";
    }
    return os.str();
}

// --------------------------------------------------------------------- KExpr

bool KMonomial::operator<(const KMonomial& o) const {
    if (t != o.t) return t < o.t;
    if (c != o.c) return c < o.c;
    return p < o.p;
}

void KExpr::add(const KMonomial& k, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

KExpr KExpr::constant(std::size_t r, std::size_t m, const Rat& c) {
    KExpr x(r, m);
    x.add({IntVec(r, Int(0)), std::vector<long>(m, 0), 0}, c);
    return x;
}

KExpr KExpr::monomial(std::size_t r, std::size_t m, const KMonomial& k, const Rat& c) {
    KExpr x(r, m);
    x.add(k, c);
    return x;
}

KExpr KExpr::line(const GitData& git, const IntVec& p) {
    if (p.size() != git.r) throw Error("DimensionMismatch", "character has the wrong length");
    KExpr x(git.r, git.m);
    x.add({p, std::vector<long>(git.m, 0), 0}, Rat(1));
    return x;
}

KExpr KExpr::R(const GitData& git, std::size_t i) {
    KExpr x(git.r, git.m);
    std::vector<long> c(git.m, 0);
    c[i] = 1;
    x.add({git.character(i), c, 0}, Rat(1));
    return x;
}

KExpr KExpr::S(const GitData& git, std::size_t i) {
    KExpr x(git.r, git.m);
    std::vector<long> c(git.m, 0);
    c[i] = -1;
    IntVec p = git.character(i);
    for (auto& v : p) v = -v;
    x.add({p, c, 0}, Rat(1));
    return x;
}

KExpr KExpr::t_power(std::size_t r, std::size_t m, long n) {
    KExpr x(r, m);
    x.add({IntVec(r, Int(0)), std::vector<long>(m, 0), n}, Rat(1));
    return x;
}

KExpr& KExpr::operator+=(const KExpr& o) {
    if (r_ == 0 && m_ == 0) {
        r_ = o.r_;
        m_ = o.m_;
    }
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

KExpr& KExpr::operator-=(const KExpr& o) {
    if (r_ == 0 && m_ == 0) {
        r_ = o.r_;
        m_ = o.m_;
    }
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

KExpr& KExpr::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

KExpr operator*(const KExpr& a, const KExpr& b) {
    KExpr out(std::max(a.r_, b.r_), std::max(a.m_, b.m_));
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            KMonomial k = ka;
            for (std::size_t i = 0; i < k.p.size(); ++i) k.p[i] += kb.p[i];
            for (std::size_t i = 0; i < k.c.size(); ++i) k.c[i] += kb.c[i];
            k.t += kb.t;
            out.add(k, ca * cb);
        }
    return out;
}

bool KExpr::has_roots() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.t != 0; });
}

std::string KExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = abs(c);
        std::vector<std::string> parts;
        bool trivial_p = std::all_of(k.p.begin(), k.p.end(), [](const Int& x) { return x == 0; });
        if (!trivial_p) {
            std::string s = "L(";
            for (std::size_t i = 0; i < k.p.size(); ++i) s += (i ? "," : "") + k.p[i].get_str();
            parts.push_back(s + ")");
        }
        std::string ex;
        for (std::size_t i = 0; i < k.c.size(); ++i) {
            if (k.c[i] == 0) continue;
            if (!ex.empty()) ex += k.c[i] > 0 ? "+" : "";
            if (k.c[i] == -1) ex += "-";
            else if (k.c[i] != 1) ex += std::to_string(k.c[i]);
            ex += "l" + std::to_string(i + 1);
        }
        if (!ex.empty()) parts.push_back("e^{" + ex + "}");
        if (k.t != 0) parts.push_back(k.t == 1 ? "t" : "t^" + std::to_string(k.t));
        if (a != 1 || parts.empty()) parts.insert(parts.begin(), a.get_str());
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " " : "") << parts[i];
    }
    return os.str();
}

KExpr average_roots(const GitData& git, const KExpr& x, std::size_t jminus, long l) {
    if (l < 1) throw Error("InvalidArgument", "root order must be positive");
    KExpr out(git.r, git.m);
    IntVec D = git.character(jminus);
    for (const auto& [k, c] : x.terms()) {
        if (k.t % l != 0) continue;
        long q = k.t / l;
        KMonomial mono = k;
        for (std::size_t i = 0; i < mono.p.size(); ++i) mono.p[i] += q * D[i];
        mono.c[jminus] += q;
        mono.t = 0;
        out += KExpr::monomial(git.r, git.m, mono, c);
    }
    return out;
}

// --------------------------------------------------------------------- basis

std::vector<IntVec> character_lifts(const GitData& git, Mask delta) {
    RatMatrix inv = delta_inverse(git, delta);
    std::vector<long> bound(git.r, 0);
    for (auto j : indices(delta))
        for (std::size_t k = 0; k < git.r; ++k) bound[k] += std::labs(to_long(git.D(j, k)));
    // every coset of <D_j : j in delta> has one point D_delta x with x in [0,1)^r,
    // and that point lies in the box |p_k| <= bound_k
    std::vector<std::pair<RatVec, IntVec>> found;
    std::vector<long> cur(git.r);
    for (std::size_t k = 0; k < git.r; ++k) cur[k] = -bound[k];
    while (true) {
        IntVec p(cur.begin(), cur.end());
        RatVec x(git.r, Rat(0));
        for (std::size_t a = 0; a < git.r; ++a)
            for (std::size_t k = 0; k < git.r; ++k) x[a] += inv(a, k) * Rat(p[k]);
        if (std::all_of(x.begin(), x.end(), [](const Rat& v) { return v >= 0 && v < 1; })) found.push_back({x, p});
        std::size_t k = 0;
        while (k < git.r && cur[k] == bound[k]) {
            cur[k] = -bound[k];
            ++k;
        }
        if (k == git.r) break;
        ++cur[k];
    }
    std::sort(found.begin(), found.end());
    std::vector<IntVec> out;
    for (auto& fx : found) out.push_back(fx.second);
    return out;
}

std::vector<KBasisElement> basis_elements(const GitData& git, const Chamber& ch) {
    std::vector<KBasisElement> out;
    for (Mask d : ch.minimal)
        for (auto& p : character_lifts(git, d)) out.push_back({d, p});
    return out;
}

KExpr basis_expr(const GitData& git, const KBasisElement& b) {
    KExpr x = KExpr::line(git, b.rho_hat);
    KExpr one = KExpr::constant(git.r, git.m, Rat(1));
    for (std::size_t i = 0; i < git.m; ++i)
        if (!has(b.delta, i)) x = x * (one - KExpr::S(git, i));
    return x;
}

// ------------------------------------------------------------------- blow-up

KCharacter pullback_to_blowup(const IntVec& p, const WallData& wall, WallSide side) {
    if (side == WallSide::Minus) return {p, Int(0)};
    return {p, -idot(p, wall.e)};
}

std::vector<long> pullback_R(const WallData& wall, std::size_t i, WallSide side) {
    std::size_t m = wall.De.size();
    std::vector<long> r(m + 1, 0);
    r[i] = 1;
    r[m] = to_long(side == WallSide::Minus ? wall.k[i] : wall.l[i]);
    return r;
}

BlowupPoly pulled_back_factors(const GitData& git, const WallData& wall, Mask delta) {
    BlowupPoly q{{std::vector<long>(git.m + 1, 0), Rat(1)}};
    for (std::size_t i = 0; i < git.m; ++i) {
        if (has(delta, i)) continue;
        // 1 - S~_i S~_{m+1}^{k_i}
        std::vector<long> s(git.m + 1, 0);
        s[i] = -1;
        s[git.m] = -to_long(wall.k[i]);
        BlowupPoly next;
        for (const auto& [ex, c] : q) {
            next[ex] += c;
            auto e2 = ex;
            for (std::size_t k = 0; k <= git.m; ++k) e2[k] += s[k];
            next[e2] -= c;
        }
        q.clear();
        for (auto& [ex, c] : next)
            if (c != 0) q.emplace(ex, c);
    }
    return q;
}

KExpr pushpull(const GitData& git, const WallData& wall, const IntVec& p, long n, const BlowupPoly& q,
               std::size_t jminus) {
    long l = to_long(-wall.De.at(jminus));
    if (l < 1) throw Error("IndexMismatch", "j- must have D.e < 0");
    KExpr sum(git.r, git.m);
    long pe = to_long(idot(p, wall.e));
    for (const auto& [r, c] : q) {
        if (r.size() != git.m + 1) throw Error("IndexMismatch", "blow-up polynomial needs m+1 exponents");
        // L(p + sum r_i D_i) e^{sum r_i lambda_i} t^{p.e + n + r_{m+1} - sum r_i l_i}
        KMonomial mono{p, std::vector<long>(r.begin(), r.begin() + git.m), pe + n + r[git.m]};
        for (std::size_t i = 0; i < git.m; ++i) {
            for (std::size_t k = 0; k < git.r; ++k) mono.p[k] += r[i] * git.D(i, k);
            mono.t -= r[i] * to_long(wall.l[i]);
        }
        sum += KExpr::monomial(git.r, git.m, mono, c);
    }
    return average_roots(git, sum, jminus, l);
}

// ------------------------------------------------------------------------ FM

KExpr fm_unaveraged(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                    const KBasisElement& b) {
    if (!minus.is_anticone(b.delta)) throw Error("InvalidArgument", "basis element is not on the minus side");
    if (plus.is_anticone(b.delta)) return basis_expr(git, b);
    std::size_t jminus = minus_index(wall, b.delta);
    long l = to_long(-wall.De[jminus]);
    std::size_t r = git.r, m = git.m;
    KExpr one = KExpr::constant(r, m, Rat(1));
    // (1 - S_{j-})/(1 - t^{-1}) with S_{j-} = t^{-l}
    KExpr geometric(r, m);
    for (long a = 0; a < l; ++a) geometric += KExpr::t_power(r, m, -a);
    KExpr x = geometric * KExpr::line(git, b.rho_hat) * KExpr::t_power(r, m, to_long(idot(b.rho_hat, wall.e)));
    for (std::size_t i = 0; i < m; ++i)
        if (!has(b.delta, i)) x = x * (one - KExpr::t_power(r, m, -to_long(wall.k[i])) * KExpr::S(git, i));
    return x;
}

KExpr fm_transform(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                   const KBasisElement& b) {
    KExpr x = fm_unaveraged(git, wall, plus, minus, b);
    if (plus.is_anticone(b.delta)) return x;
    std::size_t jminus = minus_index(wall, b.delta);
    return average_roots(git, x, jminus, to_long(-wall.De[jminus]));
}

// ------------------------------------------------------------ Chern character

ExpSum chern_restriction(const GitData& git, const KExpr& x, Mask delta, const RatVec& f,
                         const RootPairing* pairing, LambdaConvention conv) {
    Rat t_phase(0);
    LinearForm t_form(git.m, git.base.h2_rank);
    if (pairing) {
        Rat Dd(0);
        for (std::size_t k = 0; k < git.r; ++k)
            Dd += Rat(git.D(pairing->jminus, k)) * (pairing->fplus[k] - pairing->fminus[k]);
        t_phase = Dd / pairing->l;
        t_form = Rat(1, pairing->l) * U_at(git, delta, pairing->jminus);
    }
    std::vector<LinearForm> weight(git.m);
    for (std::size_t i = 0; i < git.m; ++i)
        weight[i] = conv == LambdaConvention::Combined ? mu(git, i) : lambda_form(git, i);
    ExpSum out;
    for (const auto& [k, c] : x.terms()) {
        if (k.t != 0 && !pairing) throw Error("UnresolvedRoot", "root symbol t needs a pairing to be restricted");
        Rat ph = idot(k.p, f) + k.t * t_phase;
        LinearForm form = theta_at(git, delta, to_rat(k.p));
        for (std::size_t i = 0; i < git.m; ++i)
            if (k.c[i] != 0) form += Rat(k.c[i]) * weight[i];
        if (k.t != 0) form += Rat(k.t) * t_form;
        out += ExpSum::exp_of(form, c * Cyclotomic::phase(ph));
    }
    return out;
}

// --------------------------------------------------------------- verification

bool FMReport::pass() const {
    return !entries.empty() && max_deviation < tol && max_support < 1e-12 && subidentity_a_failures.empty() &&
           max_subidentity_b < 1e-10 && common_failures.empty();
}

namespace {

struct PairTerm {
    Mask dminus;
    RootPairing pairing;
    ExpSum ch_minus;  // ch~(e) at (delta-, d_n)
    ExpSum pref_num, pref_den;
};

struct Cell {
    std::size_t element, row;
    bool adjacent = false, common_row = false;
    ExpSum lhs;
    ExpSum rhs_common;
    std::vector<PairTerm> terms;
};

}  // namespace

FMReport verify_fm(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                   const std::vector<NumericParams>& draws, const FMOptions& opt) {
    FMReport rep;
    rep.tol = opt.tol;
    rep.draws = draws.size();
    auto rows = fixed_points(git, plus);
    auto basis = basis_elements(git, minus);
    auto pairs = pair_anticones(git, wall, plus, minus);
    std::size_t r = git.r, m = git.m;
    KExpr one = KExpr::constant(r, m, Rat(1));

    std::vector<Cell> cells;
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
        const auto& b = basis[bi];
        KExpr e = basis_expr(git, b);
        KExpr fm = fm_transform(git, wall, plus, minus, b);
        bool common_b = plus.is_anticone(b.delta);
        if (common_b) {
            ++rep.common_checked;
            if (!(fm == e)) rep.common_failures.push_back("FM(e) != e at " + mask_to_string(b.delta));
            for (const auto& fc : fixed_classes(git, b.delta))
                if (!(chern_restriction(git, fm, b.delta, fc, nullptr, opt.convention) ==
                      chern_restriction(git, e, b.delta, fc, nullptr, opt.convention)))
                    rep.common_failures.push_back("restrictions differ at " + to_string(FixedPoint{b.delta, fc}));
        }
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            const auto& fp = rows[ri];
            Cell cell;
            cell.element = bi;
            cell.row = ri;
            cell.lhs = chern_restriction(git, fm, fp.delta, fp.f, nullptr, opt.convention);
            cell.common_row = minus.is_anticone(fp.delta);
            if (cell.common_row) {
                cell.adjacent = fp.delta == b.delta;
                cell.rhs_common = chern_restriction(git, e, fp.delta, fp.f, nullptr, opt.convention);
            } else {
                for (const auto& pr : pairs) {
                    if (pr.dplus != fp.delta) continue;
                    if (pr.dminus == b.delta) cell.adjacent = true;
                    long l = to_long(wall.l_of(pr.jminus));
                    auto classes = fixed_classes(git, pr.dminus);
                    std::vector<RatVec> seen;
                    for (long n = 0; n < l; ++n) {
                        Rat s = (dot(git.character_q(pr.jminus), fp.f) - n) / l;
                        RatVec dn = fp.f;
                        for (std::size_t k = 0; k < r; ++k) dn[k] += s * wall.e[k];
                        RatVec cls = reduce_mod_lattice(dn);
                        if (std::find(classes.begin(), classes.end(), cls) == classes.end() ||
                            std::find(seen.begin(), seen.end(), cls) != seen.end())
                            throw Error("InternalError", "root pairing does not biject onto the minus classes");
                        seen.push_back(cls);
                        PairTerm pt;
                        pt.dminus = pr.dminus;
                        pt.pairing = {pr.jminus, l, fp.f, dn};
                        pt.ch_minus = chern_restriction(git, e, pr.dminus, dn, nullptr, opt.convention);
                        // prefactor (1 - S_{j-}) / (l (1 - t^{-1})) prod (1 - S_i)/(1 - t^{-D_i.e} S_i)
                        KExpr num = Rat(1, l) * (one - KExpr::S(git, pr.jminus));
                        KExpr den = one - KExpr::t_power(r, m, -1);
                        for (std::size_t i = 0; i < m; ++i) {
                            if (has(pr.dminus, i) || wall.De[i] >= 0) continue;
                            num = num * (one - KExpr::S(git, i));
                            den = den * (one - KExpr::t_power(r, m, to_long(-wall.De[i])) * KExpr::S(git, i));
                        }
                        pt.pref_num = chern_restriction(git, num, fp.delta, fp.f, &pt.pairing, opt.convention);
                        pt.pref_den = chern_restriction(git, den, fp.delta, fp.f, &pt.pairing, opt.convention);
                        // sub-identity (a) for the element living on this delta_-
                        if (b.delta == pr.dminus) {
                            KExpr rest = KExpr::line(git, b.rho_hat) *
                                         KExpr::t_power(r, m, to_long(idot(b.rho_hat, wall.e)));
                            for (std::size_t i = 0; i < m; ++i)
                                if (!has(pr.dminus, i))
                                    rest = rest * (one - KExpr::S(git, i) * KExpr::t_power(r, m, to_long(-wall.De[i])));
                            ++rep.subidentity_a_checked;
                            if (!(chern_restriction(git, rest, fp.delta, fp.f, &pt.pairing, opt.convention) ==
                                  pt.ch_minus))
                                rep.subidentity_a_failures.push_back(to_string(fp) + " <- " +
                                                                     to_string(FixedPoint{pr.dminus, cls}));
                        }
                        cell.terms.push_back(std::move(pt));
                    }
                }
            }
            if (!cell.adjacent) {
                ++rep.support_checked;
                if (cell.lhs.is_zero()) ++rep.support_exact_zero;
            }
            cells.push_back(std::move(cell));
        }
    }

    std::vector<double> worst(cells.size(), -1.0);
    rep.entries.resize(cells.size());
    for (const auto& p : draws) {
        bool shifted = false;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const auto& cell = cells[ci];
            cplx lhs = cell.lhs.eval(p), rhs = 0;
            if (cell.common_row) {
                rhs = cell.rhs_common.eval(p);
            } else {
                const auto& fp = rows[cell.row];
                for (const auto& pt : cell.terms) {
                    cplx C = connection_coefficient(git, wall, fp.delta, pt.pairing.fplus, pt.dminus,
                                                    pt.pairing.fminus, p, opt.w_shift);
                    cplx pref = pt.pref_num.eval(p) / pt.pref_den.eval(p);
                    rep.max_subidentity_b =
                        std::max(rep.max_subidentity_b,
                                 std::abs(pref - connection_coefficient(git, wall, fp.delta, pt.pairing.fplus,
                                                                        pt.dminus, pt.pairing.fminus, p)) /
                                     std::max(1.0, std::abs(pref)));
                    if (opt.c_shift != 0 && !shifted && cell.adjacent) {
                        C += opt.c_shift;
                        shifted = true;
                    }
                    rhs += C * pt.ch_minus.eval(p);
                }
            }
            double dev = std::abs(lhs - rhs);
            rep.max_deviation = std::max(rep.max_deviation, dev);
            if (!cell.adjacent) rep.max_support = std::max(rep.max_support, std::abs(lhs));
            if (dev > worst[ci]) {
                worst[ci] = dev;
                rep.entries[ci] = {basis[cell.element], rows[cell.row], cell.adjacent, lhs, rhs, dev};
            }
        }
    }
    return rep;
}

}  // namespace twc
