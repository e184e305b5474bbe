#pragma once
// Rational polyhedral cones and simplicial fans.

#include "toricwc/lattice.hpp"

namespace twc {

struct Cone {
    std::size_t dim = 0;         // ambient dimension
    std::vector<IntVec> gens;    // may be empty: the cone {0}
};

/// Fan stored by its maximal cones (index lists into rays); faces are implied.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<std::size_t>> max_cones;

    Cone cone(std::size_t k) const;
    /// All cones (as sorted ray-index lists), each listed once.
    std::vector<std::vector<std::size_t>> all_cones() const;
};

Cone dual_cone(const Cone& sigma);
/// Extreme-ray generators with parallel and redundant generators removed.
std::vector<IntVec> minimal_generators(const Cone& sigma);
bool is_simplicial(const Cone& sigma);
bool is_smooth(const Cone& sigma);
bool cone_contains(const Cone& sigma, const RatVec& v);
/// Same set of points (mutual containment of generators).
bool same_cone(const Cone& a, const Cone& b);

/// Star subdivision along the cone spanned by the listed rays of the fan.
Fan star_subdivision(const Fan& fan, const std::vector<std::size_t>& tau);
/// Same, with tau given by generators that must be rays of the fan.
Fan star_subdivision(const Fan& fan, const Cone& tau);

/// Every cone of `fine` lies in a cone of `coarse` and every point sampled
/// from cones of `coarse` lies in some cone of `fine` (seeded sampling).
bool refines(const Fan& fine, const Fan& coarse, unsigned long seed = 1, int samples = 200);

}  // namespace twc
