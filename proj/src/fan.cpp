#include "toricwc/fan.hpp"

namespace twc {

IntMatrix blowup_characters(const GitData& git, const WallData& wall) {
    IntMatrix Dt(git.m + 1, git.r + 1);
    for (std::size_t i = 0; i < git.m; ++i) {
        for (std::size_t k = 0; k < git.r; ++k) Dt(i, k) = git.D(i, k);
        Dt(i, git.r) = wall.De[i] > 0 ? Int(-wall.De[i]) : Int(0);
    }
    Dt(git.m, git.r) = 1;
    return Dt;
}

namespace {

// Enumerates r-subsets of the blow-up characters spanning a hyperplane and
// returns the critical epsilon values where (omega0, -eps) crosses one.
std::vector<Rat> critical_epsilons(const IntMatrix& Dt, const RatVec& omega0) {
    const std::size_t m = Dt.rows(), n = Dt.cols();
    std::vector<Rat> out;
    std::vector<std::size_t> idx(n - 1);
    // iterate subsets of size n-1 via index vector
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (idx.size() > m) return out;
    for (;;) {
        RatMatrix M(idx.size(), n);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t k = 0; k < n; ++k) M(a, k) = Rat(Dt(idx[a], k));
        auto ns = nullspace(M);
        if (ns.size() == 1 && ns[0][n - 1] != 0) {
            Rat num = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) num += ns[0][k] * omega0[k];
            Rat eps = num / ns[0][n - 1];
            if (eps > 0) out.push_back(eps);
        }
        // next combination
        std::size_t k = idx.size();
        while (k > 0 && idx[k - 1] == m - idx.size() + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

bool inside_facet(const WallData& wall, const Chamber& plus, const Chamber& minus, const RatVec& x) {
    if (dot(wall.e, x) != 0) return false;
    IntVec neg = wall.e;
    for (auto& v : neg) v = -v;
    for (const auto& q : plus.normals)
        if (q != wall.e && dot(q, x) <= 0) return false;
    for (const auto& q : minus.normals)
        if (q != neg && dot(q, x) <= 0) return false;
    return true;
}

}  // namespace

Blowup blowup_git(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus) {
    Blowup out;
    out.git = make_git(blowup_characters(git, wall));
    // direction inside the wall used to move off accidental degeneracies
    RatVec dir(git.r, Rat(0));
    for (std::size_t k = 0; k < wall.W_basis.size(); ++k)
        for (std::size_t j = 0; j < git.r; ++j) dir[j] += Rat(static_cast<long>(2 * k + 3)) * Rat(wall.W_basis[k][j]);

    for (int attempt = 0; attempt < 40; ++attempt) {
        RatVec w0 = wall.omega0;
        if (attempt > 0)
            for (std::size_t j = 0; j < git.r; ++j) w0[j] += dir[j] / Rat(7 * attempt + 3);
        if (!inside_facet(wall, plus, minus, w0) && !(git.r == 1 && attempt == 0)) continue;
        auto crit = critical_epsilons(out.git.D, w0);
        Rat eps = 1;
        for (const auto& c : crit)
            if (c < eps) eps = c;
        eps /= 2;
        RatVec om(w0);
        om.push_back(-eps);
        RatVec scaled = to_rat(primitive(om));
        try {
            out.chamber = make_chamber(out.git, scaled);
        } catch (const Error& e) {
            if (e.code() != "DegenerateStability") throw;
            continue;
        }
        out.omega0 = w0;
        out.epsilon = eps;
        out.omega = scaled;
        return out;
    }
    throw Error("DegenerateStability", "no generic blow-up stability found near the wall");
}

}  // namespace twc
