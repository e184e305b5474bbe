#include "toricwc/lp.hpp"

#include "toricwc/lattice.hpp"

namespace twc {

std::size_t LinearProgram::add_var(bool free) {
    free_.push_back(free);
    return free_.size() - 1;
}

void LinearProgram::add_constraint(Row coeffs, Sense sense, Rat rhs) {
    cons_.push_back({std::move(coeffs), sense, std::move(rhs)});
}

namespace {

struct Tableau {
    RatMatrix T;  // last column is the right-hand side
    std::vector<std::size_t> basis;

    std::size_t ncols() const { return T.cols() - 1; }

    void pivot(std::size_t r, std::size_t c) {
        Rat inv = 1 / T(r, c);
        for (std::size_t j = 0; j < T.cols(); ++j) T(r, j) *= inv;
        for (std::size_t i = 0; i < T.rows(); ++i) {
            if (i == r || T(i, c) == 0) continue;
            Rat f = T(i, c);
            for (std::size_t j = 0; j < T.cols(); ++j) T(i, j) -= f * T(r, j);
        }
        basis[r] = c;
    }

    // Maximizes cost.x over columns allowed[j]; false when unbounded.
    bool optimize(const RatVec& cost, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = ncols();
            for (std::size_t j = 0; j < ncols() && enter == ncols(); ++j) {
                if (!allowed[j]) continue;
                Rat rc = cost[j];
                for (std::size_t i = 0; i < T.rows(); ++i) rc -= cost[basis[i]] * T(i, j);
                if (rc > 0) enter = j;
            }
            if (enter == ncols()) return true;
            std::size_t leave = T.rows();
            Rat best;
            for (std::size_t i = 0; i < T.rows(); ++i) {
                if (T(i, enter) <= 0) continue;
                Rat ratio = T(i, ncols()) / T(i, enter);
                if (leave == T.rows() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == T.rows()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LinearProgram::Result LinearProgram::solve() const {
    // standard form columns: user vars (split when free), slacks, artificials
    std::vector<std::size_t> pos_col(free_.size()), neg_col(free_.size(), SIZE_MAX);
    std::size_t n = 0;
    for (std::size_t v = 0; v < free_.size(); ++v) {
        pos_col[v] = n++;
        if (free_[v]) neg_col[v] = n++;
    }
    std::vector<std::size_t> slack_col(cons_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < cons_.size(); ++i)
        if (cons_[i].sense != Sense::Equal) slack_col[i] = n++;
    const std::size_t n_struct = n;
    const std::size_t m = cons_.size();
    const std::size_t ncols = n_struct + m;

    Tableau tab{RatMatrix(m, ncols + 1), std::vector<std::size_t>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = cons_[i];
        for (const auto& [v, a] : c.coeffs) {
            tab.T(i, pos_col[v]) += a;
            if (neg_col[v] != SIZE_MAX) tab.T(i, neg_col[v]) -= a;
        }
        if (c.sense == Sense::LessEq) tab.T(i, slack_col[i]) = 1;
        if (c.sense == Sense::GreaterEq) tab.T(i, slack_col[i]) = -1;
        tab.T(i, ncols) = c.rhs;
        if (c.rhs < 0)
            for (std::size_t j = 0; j < ncols + 1; ++j) tab.T(i, j) = -tab.T(i, j);
        tab.T(i, n_struct + i) = 1;
        tab.basis[i] = n_struct + i;
    }

    Result res;
    RatVec phase1(ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n_struct + i] = -1;
    std::vector<bool> all(ncols, true);
    tab.optimize(phase1, all);
    Rat infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= n_struct) infeas += tab.T(i, ncols);
    if (infeas != 0) {
        res.status = Status::Infeasible;
        return res;
    }
    // drive remaining (zero-level) artificials out of the basis
    for (std::size_t i = 0; i < tab.T.rows(); ++i) {
        if (tab.basis[i] < n_struct) continue;
        std::size_t j = 0;
        while (j < n_struct && tab.T(i, j) == 0) ++j;
        if (j < n_struct) tab.pivot(i, j);
    }
    std::vector<bool> structural(ncols, false);
    for (std::size_t j = 0; j < n_struct; ++j) structural[j] = true;
    RatVec cost(ncols, Rat(0));
    for (const auto& [v, a] : objective_) {
        cost[pos_col[v]] += a;
        if (neg_col[v] != SIZE_MAX) cost[neg_col[v]] -= a;
    }
    if (!tab.optimize(cost, structural)) {
        res.status = Status::Unbounded;
        return res;
    }
    RatVec xs(ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) xs[tab.basis[i]] = tab.T(i, ncols);
    res.status = Status::Optimal;
    res.x.assign(free_.size(), Rat(0));
    for (std::size_t v = 0; v < free_.size(); ++v) {
        res.x[v] = xs[pos_col[v]];
        if (neg_col[v] != SIZE_MAX) res.x[v] -= xs[neg_col[v]];
    }
    res.value = 0;
    for (const auto& [v, a] : objective_) res.value += a * res.x[v];
    return res;
}

bool in_open_cone(const std::vector<RatVec>& gens, const RatVec& v) {
    if (gens.empty()) return is_zero(v);
    // v = sum (s_i + eps) g_i with s_i >= 0; maximize eps <= 1
    LinearProgram lp;
    std::vector<std::size_t> s(gens.size());
    for (auto& x : s) x = lp.add_var();
    std::size_t eps = lp.add_var();
    for (std::size_t k = 0; k < v.size(); ++k) {
        LinearProgram::Row row;
        Rat tot = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i][k] == 0) continue;
            row.push_back({s[i], gens[i][k]});
            tot += gens[i][k];
        }
        if (tot != 0) row.push_back({eps, tot});
        lp.add_constraint(row, LinearProgram::Sense::Equal, v[k]);
    }
    lp.add_constraint({{eps, Rat(1)}}, LinearProgram::Sense::LessEq, Rat(1));
    lp.set_objective({{eps, Rat(1)}});
    auto r = lp.solve();
    return r.status == LinearProgram::Status::Optimal && r.value > 0;
}

bool in_closed_cone(const std::vector<RatVec>& gens, const RatVec& v) {
    LinearProgram lp;
    std::vector<std::size_t> a(gens.size());
    for (auto& x : a) x = lp.add_var();
    for (std::size_t k = 0; k < v.size(); ++k) {
        LinearProgram::Row row;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i][k] != 0) row.push_back({a[i], gens[i][k]});
        lp.add_constraint(row, LinearProgram::Sense::Equal, v[k]);
    }
    return lp.solve().status == LinearProgram::Status::Optimal;
}

std::pair<Rat, RatVec> deepest_point(const std::vector<RatVec>& normals,
                                     const std::vector<RatVec>& equalities, std::size_t dim) {
    LinearProgram lp;
    std::vector<std::size_t> x(dim);
    for (auto& v : x) v = lp.add_var(true);
    std::size_t t = lp.add_var(true);
    for (const auto& n : normals) {
        LinearProgram::Row row;
        for (std::size_t k = 0; k < dim; ++k)
            if (n[k] != 0) row.push_back({x[k], n[k]});
        row.push_back({t, Rat(-1)});
        lp.add_constraint(row, LinearProgram::Sense::GreaterEq, Rat(0));
    }
    for (const auto& h : equalities) {
        LinearProgram::Row row;
        for (std::size_t k = 0; k < dim; ++k)
            if (h[k] != 0) row.push_back({x[k], h[k]});
        lp.add_constraint(row, LinearProgram::Sense::Equal, Rat(0));
    }
    lp.add_constraint({{t, Rat(1)}}, LinearProgram::Sense::LessEq, Rat(1));
    lp.set_objective({{t, Rat(1)}});
    auto r = lp.solve();
    if (r.status != LinearProgram::Status::Optimal) return {Rat(-1), RatVec(dim, Rat(0))};
    return {r.value, RatVec(r.x.begin(), r.x.begin() + dim)};
}

}  // namespace twc
