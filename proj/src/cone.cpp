#include "toricwc/cone.hpp"

#include "toricwc/lp.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace twc {

namespace {

std::vector<RatVec> as_rat(const std::vector<IntVec>& gens) {
    std::vector<RatVec> out;
    for (const auto& g : gens) out.push_back(to_rat(g));
    return out;
}

bool is_zero_vec(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Enumerates k-subsets of {0..n-1}.
void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Cone Fan::cone(std::size_t k) const {
    Cone c{dim, {}};
    for (auto i : max_cones[k]) c.gens.push_back(rays[i]);
    return c;
}

std::vector<std::vector<std::size_t>> Fan::all_cones() const {
    std::set<std::vector<std::size_t>> seen;
    for (const auto& mc : max_cones) {
        std::vector<std::size_t> s = mc;
        std::sort(s.begin(), s.end());
        for (unsigned long mask = 0; mask < (1UL << s.size()); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t b = 0; b < s.size(); ++b)
                if (mask >> b & 1UL) face.push_back(s[b]);
            seen.insert(face);
        }
    }
    return {seen.begin(), seen.end()};
}

Cone dual_cone(const Cone& sigma) {
    const std::size_t n = sigma.dim;
    Cone out{n, {}};
    std::vector<IntVec> gens;
    for (const auto& g : sigma.gens)
        if (!is_zero_vec(g)) gens.push_back(g);
    // lineality of the dual: the orthogonal complement of span(sigma)
    RatMatrix G(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = Rat(gens[i][j]);
    auto perp = nullspace(G);
    for (const auto& v : perp) {
        IntVec p = primitive(v);
        out.gens.push_back(p);
        IntVec q = p;
        for (auto& x : q) x = -x;
        out.gens.push_back(q);
    }
    if (gens.empty()) return out;

    // pointed part inside span(sigma): m = B c with B a basis of the row space of G
    RatMatrix Gt = G.transpose();
    std::vector<RatVec> basis;
    {
        // independent generators give a basis of span(sigma)
        RatMatrix acc(0, n);
        for (const auto& g : gens) {
            RatMatrix trial(basis.size() + 1, n);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) trial(i, j) = basis[i][j];
            for (std::size_t j = 0; j < n; ++j) trial(basis.size(), j) = Rat(g[j]);
            if (rank(trial) == basis.size() + 1) basis.push_back(to_rat(g));
        }
    }
    const std::size_t k = basis.size();
    // constraint matrix A(i, c) = gens[i] . basis[c]
    RatMatrix A(gens.size(), k);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t c = 0; c < k; ++c) A(i, c) = dot(gens[i], basis[c]);

    std::set<IntVec> rays;
    std::vector<std::vector<std::size_t>> subs;
    std::vector<std::size_t> cur;
    subsets(gens.size(), k - 1, 0, cur, subs);
    for (const auto& s : subs) {
        RatMatrix M(s.size(), k);
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t c = 0; c < k; ++c) M(a, c) = A(s[a], c);
        auto ns = nullspace(M);
        if (ns.size() != 1) continue;
        RatVec cvec = ns[0];
        RatVec vals = A * cvec;
        bool pos = true, neg = true;
        for (const auto& v : vals) {
            if (v < 0) pos = false;
            if (v > 0) neg = false;
        }
        if (!pos && !neg) continue;
        if (!pos)
            for (auto& x : cvec) x = -x;
        RatVec m(n, Rat(0));
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < n; ++j) m[j] += cvec[c] * basis[c][j];
        rays.insert(primitive(m));
    }
    for (const auto& r : rays) out.gens.push_back(r);
    return out;
}

bool cone_contains(const Cone& sigma, const RatVec& v) { return in_closed_cone(as_rat(sigma.gens), v); }

bool same_cone(const Cone& a, const Cone& b) {
    for (const auto& g : a.gens)
        if (!cone_contains(b, to_rat(g))) return false;
    for (const auto& g : b.gens)
        if (!cone_contains(a, to_rat(g))) return false;
    return true;
}

std::vector<IntVec> minimal_generators(const Cone& sigma) {
    std::vector<IntVec> prim;
    std::set<IntVec> seen;
    for (const auto& g : sigma.gens) {
        if (is_zero_vec(g)) continue;
        IntVec p = primitive(to_rat(g));
        if (seen.insert(p).second) prim.push_back(p);
    }
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < prim.size(); ++i) {
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < prim.size(); ++j)
            if (j != i) others.push_back(to_rat(prim[j]));
        if (!in_closed_cone(others, to_rat(prim[i]))) out.push_back(prim[i]);
    }
    return out;
}

bool is_simplicial(const Cone& sigma) {
    auto g = minimal_generators(sigma);
    if (g.empty()) return true;
    return rank(IntMatrix::from_rows(g, sigma.dim)) == g.size();
}

bool is_smooth(const Cone& sigma) {
    auto g = minimal_generators(sigma);
    if (g.empty()) return true;
    IntMatrix M = IntMatrix::from_rows(g, sigma.dim);
    auto snf = smith_normal_form(M);
    auto d = snf.diagonal();
    if (d.size() != g.size()) return false;
    for (const auto& x : d)
        if (x != 1) return false;
    return true;
}

Fan star_subdivision(const Fan& fan, const std::vector<std::size_t>& tau_in) {
    std::vector<std::size_t> tau = tau_in;
    std::sort(tau.begin(), tau.end());
    auto contains_tau = [&](const std::vector<std::size_t>& mc) {
        for (auto t : tau)
            if (std::find(mc.begin(), mc.end(), t) == mc.end()) return false;
        return true;
    };
    bool is_cone = false;
    for (std::size_t k = 0; k < fan.max_cones.size(); ++k)
        if (contains_tau(fan.max_cones[k])) {
            is_cone = true;
            if (!is_smooth(fan.cone(k)))
                throw Error("NonSmoothStar", "a cone containing tau is not smooth");
        }
    if (!is_cone) throw Error("InvalidCone", "tau is not a cone of the fan");
    if (tau.size() <= 1) return fan;

    Fan out;
    out.dim = fan.dim;
    out.rays = fan.rays;
    IntVec u(fan.dim, Int(0));
    for (auto t : tau)
        for (std::size_t j = 0; j < fan.dim; ++j) u[j] += fan.rays[t][j];
    const std::size_t new_ray = out.rays.size();
    out.rays.push_back(u);
    for (const auto& mc : fan.max_cones) {
        if (!contains_tau(mc)) {
            out.max_cones.push_back(mc);
            continue;
        }
        for (auto drop : tau) {
            std::vector<std::size_t> c;
            for (auto i : mc)
                if (i != drop) c.push_back(i);
            c.push_back(new_ray);
            out.max_cones.push_back(c);
        }
    }
    return out;
}

Fan star_subdivision(const Fan& fan, const Cone& tau) {
    std::vector<std::size_t> idx;
    for (const auto& g : minimal_generators(tau)) {
        std::size_t found = fan.rays.size();
        for (std::size_t i = 0; i < fan.rays.size(); ++i)
            if (primitive(to_rat(fan.rays[i])) == g) found = i;
        if (found == fan.rays.size()) throw Error("InvalidCone", "tau generator is not a ray of the fan");
        idx.push_back(found);
    }
    return star_subdivision(fan, idx);
}

bool refines(const Fan& fine, const Fan& coarse, unsigned long seed, int samples) {
    for (std::size_t k = 0; k < fine.max_cones.size(); ++k) {
        Cone c = fine.cone(k);
        bool inside = false;
        for (std::size_t q = 0; q < coarse.max_cones.size() && !inside; ++q) {
            Cone big = coarse.cone(q);
            bool all = true;
            for (const auto& g : c.gens)
                if (!cone_contains(big, to_rat(g))) all = false;
            inside = all;
        }
        if (!inside) return false;
    }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const auto& mc = coarse.max_cones[rng() % coarse.max_cones.size()];
        RatVec v(coarse.dim, Rat(0));
        for (auto i : mc) {
            Rat w(static_cast<long>(rng() % 97), 13);
            for (std::size_t j = 0; j < coarse.dim; ++j) v[j] += w * Rat(coarse.rays[i][j]);
        }
        bool hit = false;
        for (std::size_t q = 0; q < fine.max_cones.size() && !hit; ++q)
            hit = cone_contains(fine.cone(q), v);
        if (!hit) return false;
    }
    return true;
}

}  // namespace twc
