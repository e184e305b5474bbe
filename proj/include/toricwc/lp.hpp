#pragma once
// Exact rational linear programming (two-phase simplex, Bland's rule).

#include "toricwc/rational.hpp"

#include <utility>

namespace twc {

class LinearProgram {
  public:
    enum class Sense { LessEq, GreaterEq, Equal };
    enum class Status { Optimal, Infeasible, Unbounded };
    using Row = std::vector<std::pair<std::size_t, Rat>>;

    struct Result {
        Status status = Status::Infeasible;
        Rat value;
        RatVec x;  // values of the user variables
    };

    /// Adds a variable (nonnegative unless free) and returns its index.
    std::size_t add_var(bool free = false);
    std::size_t num_vars() const { return free_.size(); }
    void add_constraint(Row coeffs, Sense sense, Rat rhs);
    /// The objective is maximized.
    void set_objective(Row coeffs) { objective_ = std::move(coeffs); }

    Result solve() const;

  private:
    std::vector<bool> free_;
    struct Constraint {
        Row coeffs;
        Sense sense;
        Rat rhs;
    };
    std::vector<Constraint> cons_;
    Row objective_;
};

/// True when v is a strictly positive combination of gens (v in the relative
/// interior of their cone). gens empty means the cone {0}.
bool in_open_cone(const std::vector<RatVec>& gens, const RatVec& v);
/// True when v is a nonnegative combination of gens.
bool in_closed_cone(const std::vector<RatVec>& gens, const RatVec& v);

/// Maximizes t subject to n.x >= t for every normal, t <= 1, and
/// h.x = 0 for every h in equalities. Returns the optimum and a maximizer.
/// A positive optimum certifies a point strictly inside all half-spaces.
std::pair<Rat, RatVec> deepest_point(const std::vector<RatVec>& normals,
                                     const std::vector<RatVec>& equalities, std::size_t dim);

}  // namespace twc
