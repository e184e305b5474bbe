#include "toricwc/git.hpp"

#include "toricwc/lp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace twc {

int popcount(Mask s) { return std::popcount(s); }

std::vector<std::size_t> indices(Mask s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 32; ++i)
        if (has(s, i)) out.push_back(i);
    return out;
}

Mask mask_of(const std::vector<std::size_t>& idx) {
    Mask s = 0;
    for (auto i : idx) s |= bit(i);
    return s;
}

std::string mask_to_string(Mask s) {
    std::string out = "{";
    bool first = true;
    for (auto i : indices(s)) {
        if (!first) out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

GitData make_git(const IntMatrix& D, BaseData base) {
    GitData g;
    g.m = D.rows();
    g.r = D.cols();
    g.D = D;
    if (g.r == 0 || g.m < g.r) throw Error("ValidationError", "need m >= r >= 1 characters");
    if (g.m > 24) throw Error("ValidationError", "at most 24 characters are supported");
    if (rank(D) != g.r) throw Error("ValidationError", "characters do not have full rank");
    if (base.is_point) {
        base.h2_rank = 0;
        base.Lambda.assign(g.m, RatVec{});
    } else if (base.Lambda.size() != g.m) {
        throw Error("ValidationError", "base.Lambda needs one entry per character");
    }
    g.base = std::move(base);
    return g;
}

GitData git_from_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) throw Error("ValidationError", "no characters");
    IntMatrix D(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw Error("ValidationError", "ragged characters");
        for (std::size_t j = 0; j < rows[i].size(); ++j) D(i, j) = rows[i][j];
    }
    return make_git(D);
}

bool in_angle(const GitData& git, Mask I, const RatVec& omega) {
    std::vector<RatVec> gens;
    for (auto i : indices(I)) gens.push_back(git.character_q(i));
    return in_open_cone(gens, omega);
}

std::vector<Mask> anticones(const GitData& git, const RatVec& omega) {
    if (omega.size() != git.r) throw Error("ValidationError", "omega has the wrong dimension");
    if (is_zero(omega)) throw Error("DegenerateStability", "omega is zero");
    std::vector<Mask> out;
    for (Mask I = 0; I <= git.all(); ++I) {
        if (in_angle(git, I, omega)) out.push_back(I);
        if (I == git.all()) break;
    }
    if (std::find(out.begin(), out.end(), git.all()) == out.end())
        throw Error("DegenerateStability", "omega lies outside the cone spanned by the characters");
    for (Mask I : out) {
        IntMatrix sub(popcount(I), git.r);
        std::size_t row = 0;
        for (auto i : indices(I)) {
            for (std::size_t c = 0; c < git.r; ++c) sub(row, c) = git.D(i, c);
            ++row;
        }
        if (popcount(I) < static_cast<int>(git.r) || rank(sub) != git.r)
            throw Error("DegenerateStability", "omega lies on a wall: anticone " +
                                                   mask_to_string(I) + " does not span");
    }
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    return out;
}

std::vector<Mask> minimal_anticones(const std::vector<Mask>& A) {
    std::vector<Mask> out;
    for (Mask I : A) {
        bool minimal = true;
        for (Mask J : A)
            if (J != I && (J & I) == J) minimal = false;
        if (minimal) out.push_back(I);
    }
    return out;
}

Mask s_set(const std::vector<Mask>& A, std::size_t m) {
    const Mask all = m == 32 ? ~Mask(0) : bit(m) - 1;
    Mask S = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (std::find(A.begin(), A.end(), all & ~bit(i)) == A.end()) S |= bit(i);
    return S;
}

bool Chamber::is_anticone(Mask I) const {
    return std::find(anticones.begin(), anticones.end(), I) != anticones.end();
}

bool Chamber::contains(const RatVec& x) const {
    for (const auto& n : normals)
        if (dot(n, x) <= 0) return false;
    return true;
}

RatMatrix delta_inverse(const GitData& git, Mask delta) {
    auto idx = indices(delta);
    if (idx.size() != git.r) throw Error("SingularRestriction", "anticone size differs from rank");
    RatMatrix M(git.r, git.r);
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t k = 0; k < git.r; ++k) M(k, c) = Rat(git.D(idx[c], k));
    try {
        return inverse(M);
    } catch (const Error&) {
        throw Error("SingularRestriction", "characters of " + mask_to_string(delta) + " are dependent");
    }
}

Chamber make_chamber(const GitData& git, const RatVec& omega) {
    Chamber ch;
    ch.omega = omega;
    ch.anticones = anticones(git, omega);
    ch.minimal = minimal_anticones(ch.anticones);
    ch.S = s_set(ch.anticones, git.m);
    std::vector<IntVec> normals;
    for (Mask d : ch.minimal) {
        if (popcount(d) != static_cast<int>(git.r))
            throw Error("DegenerateStability", "minimal anticone " + mask_to_string(d) + " is not simplicial");
        RatMatrix inv = delta_inverse(git, d);
        for (std::size_t k = 0; k < git.r; ++k) {
            IntVec n = primitive(inv.row(k));
            if (std::find(normals.begin(), normals.end(), n) == normals.end()) normals.push_back(n);
        }
    }
    for (std::size_t i = 0; i < normals.size(); ++i) {
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < normals.size(); ++j)
            if (j != i) others.push_back(to_rat(normals[j]));
        if (!in_closed_cone(others, to_rat(normals[i]))) ch.normals.push_back(normals[i]);
    }
    std::sort(ch.normals.begin(), ch.normals.end());
    return ch;
}

Rat conifold_point(const std::vector<Int>& De) {
    Rat c = 1;
    bool any = false;
    for (const auto& x : De) {
        if (x == 0) continue;
        any = true;
        Int p;
        Int base = x;
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), Int(abs(x)).get_ui());
        c *= x > 0 ? Rat(p) : Rat(1) / Rat(p);
    }
    if (!any) throw Error("NotAdjacent", "e is orthogonal to every character");
    c.canonicalize();
    return c;
}

WallData wall_between(const GitData& git, const Chamber& plus, const Chamber& minus) {
    for (const auto& n : plus.normals) {
        IntVec neg = n;
        for (auto& x : neg) x = -x;
        if (std::find(minus.normals.begin(), minus.normals.end(), neg) == minus.normals.end()) continue;
        std::vector<RatVec> others;
        for (const auto& q : plus.normals)
            if (q != n) others.push_back(to_rat(q));
        for (const auto& q : minus.normals)
            if (q != neg) others.push_back(to_rat(q));
        auto [t, x] = deepest_point(others, {to_rat(n)}, git.r);
        if (t <= 0) continue;

        WallData w;
        w.e = n;
        Int sum = 0;
        for (std::size_t i = 0; i < git.m; ++i) {
            Int v = dot(git.character(i), n);
            w.De.push_back(v);
            sum += v;
            if (v > 0) w.plus |= bit(i);
            if (v < 0) w.minus |= bit(i);
            if (v == 0) w.zero |= bit(i);
            w.k.push_back(v > 0 ? v : Int(0));
            w.l.push_back(v < 0 ? Int(-v) : Int(0));
        }
        if (sum != 0) throw Error("NotCrepant", "sum of characters is not on the wall");
        Int neg_sum = 0, pos_sum = 0;
        for (const auto& v : w.De) (v < 0 ? neg_sum : pos_sum) += v;
        w.w = -1 - neg_sum;
        if (w.w != -1 + pos_sum) throw Error("NotCrepant", "the two evaluations of w disagree");
        w.conifold = conifold_point(w.De);
        IntMatrix et(1, git.r);
        for (std::size_t k = 0; k < git.r; ++k) et(0, k) = n[k];
        IntMatrix K = integer_kernel(et);
        for (std::size_t c = 0; c < K.cols(); ++c) w.W_basis.push_back(K.col(c));
        w.omega0 = is_zero(x) ? x : to_rat(primitive(x));
        return w;
    }
    throw Error("NotAdjacent", "the chambers share no codimension-one face");
}

std::vector<RatVec> fixed_classes(const GitData& git, Mask delta) {
    auto idx = indices(delta);
    IntMatrix M(idx.size(), git.r);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t k = 0; k < git.r; ++k) M(a, k) = git.D(idx[a], k);
    auto snf = smith_normal_form(M);
    auto d = snf.diagonal();
    if (d.size() != git.r) throw Error("SingularRestriction", "anticone characters do not span");
    // M f in Z^r  <=>  S (V^-1 f) in U Z^r = Z^r, so f = V S^-1 c with 0 <= c_i < d_i
    std::set<RatVec> out;
    std::vector<long> c(git.r, 0);
    for (;;) {
        RatVec g(git.r);
        for (std::size_t i = 0; i < git.r; ++i) g[i] = Rat(c[i]) / Rat(d[i]);
        RatVec f(git.r, Rat(0));
        for (std::size_t i = 0; i < git.r; ++i)
            for (std::size_t j = 0; j < git.r; ++j) f[i] += Rat(snf.V(i, j)) * g[j];
        out.insert(reduce_mod_lattice(f));
        std::size_t pos = 0;
        while (pos < git.r && ++c[pos] == to_long(d[pos])) c[pos++] = 0;
        if (pos == git.r) break;
    }
    return {out.begin(), out.end()};
}

RatVec reduce_mod_lattice(const RatVec& f) {
    RatVec out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = frac(f[i]);
    return out;
}

Mask integral_set(const GitData& git, const RatVec& f) {
    Mask I = 0;
    for (std::size_t i = 0; i < git.m; ++i)
        if (is_integer(dot(git.character(i), f))) I |= bit(i);
    return I;
}

Rat age(const GitData& git, const RatVec& f) {
    Rat a = 0;
    for (std::size_t i = 0; i < git.m; ++i) a += frac(dot(git.character(i), f));
    return a;
}

std::vector<KClass> k_classes(const GitData& git, const Chamber& ch) {
    std::set<RatVec> reps;
    for (Mask d : ch.minimal)
        for (auto& f : fixed_classes(git, d)) reps.insert(f);
    FgAbGroup N = cokernel_with_projection(git.D);
    std::vector<KClass> out;
    for (const auto& f : reps) {
        KClass k;
        k.f = f;
        k.I_f = integral_set(git, f);
        if (!ch.is_anticone(k.I_f)) throw Error("InternalError", "class outside K");
        k.age = age(git, f);
        IntVec c(git.m);
        for (std::size_t i = 0; i < git.m; ++i) c[i] = ceil_rat(-dot(git.character(i), f));
        k.box = N.apply(c);
        out.push_back(std::move(k));
    }
    return out;
}

std::vector<FixedPoint> fixed_points(const GitData& git, const Chamber& ch) {
    std::vector<FixedPoint> out;
    for (Mask d : ch.minimal)
        for (auto& f : fixed_classes(git, d)) out.push_back({d, f});
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const FixedPoint& p) { return mask_to_string(p.delta) + "@" + to_string(p.f); }

ExtendedStackyFan to_stacky_fan(const GitData& git, const Chamber& ch) {
    ExtendedStackyFan esf;
    esf.m = git.m;
    esf.S = ch.S;
    esf.N = cokernel_with_projection(git.D);
    for (std::size_t i = 0; i < git.m; ++i) {
        esf.b.push_back(esf.N.image_of_basis(i));
        esf.bbar.push_back(esf.N.free_part(esf.b.back()));
    }
    esf.fan.dim = esf.N.free_rank;
    std::vector<std::size_t> ray_of(git.m, SIZE_MAX);
    for (std::size_t i = 0; i < git.m; ++i) {
        if (has(ch.S, i)) continue;
        ray_of[i] = esf.fan.rays.size();
        esf.fan.rays.push_back(esf.bbar[i]);
        esf.ray_char.push_back(i);
    }
    for (Mask d : ch.minimal) {
        std::vector<std::size_t> cone;
        for (std::size_t i = 0; i < git.m; ++i)
            if (!has(d, i)) cone.push_back(ray_of[i]);
        esf.fan.max_cones.push_back(cone);
    }
    return esf;
}

std::pair<GitData, RatVec> from_stacky_fan(const ExtendedStackyFan& esf) {
    IntMatrix D = dual_characters(esf.N);
    GitData git = make_git(D);
    const std::size_t m = esf.m;
    // character sets of the maximal cones, and their complements
    std::vector<Mask> minimal;
    for (std::size_t k = 0; k < esf.fan.max_cones.size(); ++k) {
        Mask sigma = 0;
        std::vector<IntVec> gens;
        for (auto ray : esf.fan.max_cones[k]) {
            if (ray >= esf.ray_char.size()) throw Error("InvalidFan", "cone refers to a missing ray");
            sigma |= bit(esf.ray_char[ray]);
            gens.push_back(esf.fan.rays[ray]);
        }
        if (!gens.empty() && rank(IntMatrix::from_rows(gens, esf.fan.dim)) != gens.size())
            throw Error("InvalidFan", "maximal cone " + std::to_string(k) + " is not simplicial");
        if (sigma & esf.S) throw Error("InvalidFan", "a cone uses an extra (S) index");
        minimal.push_back(git.all() & ~sigma);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (has(esf.S, i)) continue;
        bool used = false;
        for (Mask d : minimal) used = used || !has(d, i);
        if (!used) throw Error("InvalidFan", "ray " + std::to_string(i + 1) + " lies in no cone");
    }
    std::set<Mask> A;
    for (Mask I = 0;; ++I) {
        if ((I & esf.S) == esf.S)
            for (Mask d : minimal)
                if ((d & I) == d) A.insert(I);
        if (I == git.all()) break;
    }
    std::vector<RatVec> normals;
    for (Mask d : minimal) {
        RatMatrix inv;
        try {
            inv = delta_inverse(git, d);
        } catch (const Error&) {
            throw Error("InvalidFan", "complement of a cone " + mask_to_string(d) + " is not a basis");
        }
        for (std::size_t k = 0; k < git.r; ++k) normals.push_back(inv.row(k));
    }
    auto [t, x] = deepest_point(normals, {}, git.r);
    if (t <= 0) throw Error("InvalidFan", "no stability parameter realizes this fan");
    RatVec omega = to_rat(primitive(x));
    auto got = anticones(git, omega);
    if (std::set<Mask>(got.begin(), got.end()) != A)
        throw Error("InvalidFan", "fan is not the fan of a GIT quotient");
    return {git, omega};
}

namespace {

// Basis (rows) of the dual of the lattice generated by Z^r and the class reps.
IntMatrix dual_overlattice(const GitData& git, const Chamber& ch, RatMatrix* basis_out) {
    std::set<RatVec> reps;
    for (Mask d : ch.minimal)
        for (auto& f : fixed_classes(git, d)) reps.insert(f);
    Int den = 1;
    for (const auto& f : reps)
        for (const auto& x : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix G(git.r, git.r + reps.size());
    for (std::size_t k = 0; k < git.r; ++k) G(k, k) = den;
    std::size_t c = git.r;
    for (const auto& f : reps) {
        for (std::size_t k = 0; k < git.r; ++k) G(k, c) = Int(f[k] * Rat(den));
        ++c;
    }
    IntMatrix B = lattice_basis(G);  // r columns, scaled by den
    RatMatrix Bq(git.r, git.r);
    for (std::size_t i = 0; i < git.r; ++i)
        for (std::size_t j = 0; j < git.r; ++j) Bq(i, j) = Rat(B(i, j)) / Rat(den);
    RatMatrix inv = inverse(Bq);
    IntMatrix P(git.r, git.r);
    for (std::size_t i = 0; i < git.r; ++i)
        for (std::size_t j = 0; j < git.r; ++j) {
            if (!is_integer(inv(i, j))) throw Error("InternalError", "dual basis is not integral");
            P(i, j) = inv(i, j).get_num();
        }
    if (basis_out) *basis_out = Bq;
    return P;
}

RatMatrix dual_columns(const std::vector<IntVec>& p, std::size_t r) {
    RatMatrix P(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) P(i, j) = Rat(p[i][j]);
    return inverse(P);  // P * Q = I, so the columns of Q are dual to the rows of P
}

}  // namespace

std::pair<AdaptedBasis, AdaptedBasis> adapted_coordinates(const GitData& git, const WallData& wall,
                                                          const Chamber& plus, const Chamber& minus) {
    const std::size_t r = git.r;
    IntMatrix P[2] = {dual_overlattice(git, plus, nullptr), dual_overlattice(git, minus, nullptr)};
    std::vector<IntVec> wall_part[2];
    IntVec off[2];
    for (int s = 0; s < 2; ++s) {
        IntMatrix v(r, 1);
        for (std::size_t i = 0; i < r; ++i) v(i, 0) = dot(P[s].row(i), wall.e);
        auto snf = smith_normal_form(v);
        IntMatrix Q = snf.U * P[s];
        off[s] = Q.row(0);
        for (std::size_t i = 1; i < r; ++i) wall_part[s].push_back(Q.row(i));
        Int pe = dot(off[s], wall.e);
        if ((s == 0 && pe < 0) || (s == 1 && pe > 0))
            for (auto& x : off[s]) x = -x;
    }
    if (r > 1) {
        IntMatrix A = IntMatrix::from_rows(wall_part[0], r).transpose();
        IntMatrix B = IntMatrix::from_rows(wall_part[1], r).transpose();
        if (!same_column_lattice(A, B))
            throw Error("InternalError", "wall parts of the two dual overlattices differ");
    }
    AdaptedBasis out[2];
    for (int s = 0; s < 2; ++s) {
        out[s].side = s == 0 ? +1 : -1;
        out[s].p = wall_part[0];
        out[s].p.push_back(off[s]);
        out[s].dual = dual_columns(out[s].p, r);
    }
    return {out[0], out[1]};
}

AdaptedBasis series_basis(const GitData& git, const Chamber& ch) {
    IntMatrix P = dual_overlattice(git, ch, nullptr);
    AdaptedBasis b;
    b.side = +1;
    for (std::size_t i = 0; i < git.r; ++i) {
        IntVec row = P.row(i);
        // orient each basis vector positively on the chamber
        if (dot(row, ch.omega) < 0)
            for (auto& x : row) x = -x;
        b.p.push_back(row);
    }
    b.dual = dual_columns(b.p, git.r);
    return b;
}

RatVec monomial_exponents(const AdaptedBasis& basis, const RatVec& d) {
    RatVec out;
    for (const auto& p : basis.p) out.push_back(dot(p, d));
    return out;
}

std::vector<AnticonePair> pair_anticones(const GitData& git, const WallData& wall,
                                         const Chamber& plus, const Chamber& minus) {
    (void)git;
    std::vector<AnticonePair> out;
    for (Mask dp : plus.minimal) {
        if (minus.is_anticone(dp)) continue;
        for (Mask dm : minus.minimal) {
            if (plus.is_anticone(dm)) continue;
            Mask common = dp & dm;
            if (popcount(common) + 1 != popcount(dp) || (common & ~wall.zero)) continue;
            std::size_t jp = indices(dp & ~common)[0], jm = indices(dm & ~common)[0];
            if (wall.De[jp] <= 0 || wall.De[jm] >= 0) continue;
            out.push_back({dp, dm, jp, jm});
        }
    }
    return out;
}

bool along_e(const RatVec& fplus, const RatVec& fminus, const IntVec& e, Rat* alpha) {
    const std::size_t r = e.size();
    IntMatrix ev(r, 1);
    for (std::size_t i = 0; i < r; ++i) ev(i, 0) = e[i];
    auto snf = smith_normal_form(ev);  // U e V = (1, 0, ..., 0), V = +-1
    RatVec g(r);
    for (std::size_t i = 0; i < r; ++i) g[i] = fminus[i] - fplus[i];
    RatVec ug(r, Rat(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ug[i] += Rat(snf.U(i, j)) * g[j];
    for (std::size_t i = 1; i < r; ++i)
        if (!is_integer(ug[i])) return false;
    if (alpha) *alpha = frac(ug[0] * Rat(snf.V(0, 0)));
    return true;
}

std::vector<ClassPair> pair_classes(const GitData& git, const WallData& wall,
                                    const std::vector<AnticonePair>& pairs) {
    std::vector<ClassPair> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto fp = fixed_classes(git, pairs[k].dplus);
        auto fm = fixed_classes(git, pairs[k].dminus);
        for (const auto& a : fp)
            for (const auto& b : fm) {
                Rat alpha;
                if (along_e(a, b, wall.e, &alpha)) out.push_back({k, a, b, alpha});
            }
    }
    return out;
}

}  // namespace twc
