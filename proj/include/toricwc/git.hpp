#pragma once
// GIT data, anticones, chambers, walls, K/L classes and the stacky fan.

#include "toricwc/cone.hpp"
#include "toricwc/lattice.hpp"

#include <cstdint>
#include <string>

namespace twc {

/// Subset of [m] as a bitmask; bit i is index i (0-based).
using Mask = std::uint32_t;

inline bool has(Mask s, std::size_t i) { return (s >> i) & 1U; }
inline Mask bit(std::size_t i) { return Mask(1) << i; }
int popcount(Mask s);
std::vector<std::size_t> indices(Mask s);
Mask mask_of(const std::vector<std::size_t>& idx);
/// 1-based set notation, e.g. "{1,3}".
std::string mask_to_string(Mask s);

/// One entry of a user-supplied base J-function table: degree D (over the
/// chosen basis of H_2(B)) and scalar coefficients of z^k.
struct BaseJEntry {
    IntVec degree;
    std::vector<std::pair<long, Rat>> z_coeffs;
};

struct BaseData {
    bool is_point = true;
    std::size_t h2_rank = 0;
    std::vector<RatVec> Lambda;  // m vectors of length h2_rank
    std::vector<BaseJEntry> J;
};

struct GitData {
    std::size_t r = 0, m = 0;
    IntMatrix D;  // m x r, row i is the character D_i
    BaseData base;

    IntVec character(std::size_t i) const { return D.row(i); }
    RatVec character_q(std::size_t i) const { return to_rat(D.row(i)); }
    Mask all() const { return m == 32 ? ~Mask(0) : bit(m) - 1; }
};

/// Validates full row rank and sizes; fills a point base when none given.
GitData make_git(const IntMatrix& D, BaseData base = {});
GitData git_from_rows(const std::vector<std::vector<long>>& rows);

bool in_angle(const GitData& git, Mask I, const RatVec& omega);

/// All anticones of omega, ordered by (size, mask). Throws DegenerateStability.
std::vector<Mask> anticones(const GitData& git, const RatVec& omega);
std::vector<Mask> minimal_anticones(const std::vector<Mask>& A);
Mask s_set(const std::vector<Mask>& A, std::size_t m);

struct Chamber {
    RatVec omega;
    std::vector<Mask> anticones;
    std::vector<Mask> minimal;
    Mask S = 0;
    std::vector<IntVec> normals;  // chamber = {x : n.x > 0 for all normals}

    bool is_anticone(Mask I) const;
    bool contains(const RatVec& x) const;
};

Chamber make_chamber(const GitData& git, const RatVec& omega);

/// Inverse of the square matrix whose columns are D_i, i in delta.
RatMatrix delta_inverse(const GitData& git, Mask delta);

struct WallData {
    IntVec e;
    std::vector<IntVec> W_basis;
    std::vector<Int> De;  // D_i . e
    Mask plus = 0, minus = 0, zero = 0;
    std::vector<Int> k, l;  // max(D.e, 0), max(-D.e, 0)
    Int w;
    Rat conifold;
    RatVec omega0;  // interior point of the shared facet

    /// l = -D_{j-} . e for the non-wall index of a minus-side anticone.
    Int l_of(std::size_t j_minus) const { return -De[j_minus]; }
};

WallData wall_between(const GitData& git, const Chamber& plus, const Chamber& minus);
Rat conifold_point(const std::vector<Int>& De);

/// Classes f in L(x)Q / L with D_i . f integral for every i in delta,
/// as representatives in [0,1)^r, sorted.
std::vector<RatVec> fixed_classes(const GitData& git, Mask delta);

struct KClass {
    RatVec f;
    Rat age;
    Mask I_f = 0;
    IntVec box;  // v_f in the presentation of the cokernel N
};

/// Reduces coordinates into [0,1).
RatVec reduce_mod_lattice(const RatVec& f);
Mask integral_set(const GitData& git, const RatVec& f);
Rat age(const GitData& git, const RatVec& f);
std::vector<KClass> k_classes(const GitData& git, const Chamber& ch);

struct FixedPoint {
    Mask delta = 0;
    RatVec f;
    bool operator<(const FixedPoint& o) const {
        return delta != o.delta ? delta < o.delta : f < o.f;
    }
    bool operator==(const FixedPoint& o) const { return delta == o.delta && f == o.f; }
};

std::vector<FixedPoint> fixed_points(const GitData& git, const Chamber& ch);
std::string to_string(const FixedPoint& p);

struct ExtendedStackyFan {
    FgAbGroup N;
    std::vector<IntVec> b;     // beta(e_i) in the presentation of N
    std::vector<IntVec> bbar;  // images in N (x) R
    Fan fan;
    std::vector<std::size_t> ray_char;  // fan ray -> character index
    Mask S = 0;
    std::size_t m = 0;
};

ExtendedStackyFan to_stacky_fan(const GitData& git, const Chamber& ch);
/// Rebuilds GIT data and a stability parameter; throws InvalidFan.
std::pair<GitData, RatVec> from_stacky_fan(const ExtendedStackyFan& esf);

struct AdaptedBasis {
    std::vector<IntVec> p;  // p[0..r-2] span the wall part, p[r-1] is off the wall
    int side = +1;
    RatMatrix dual;  // columns q_i with p_i . q_j = delta_ij
};

/// Basis of the dual overlattice on each side of the wall.
std::pair<AdaptedBasis, AdaptedBasis> adapted_coordinates(const GitData& git, const WallData& wall,
                                                          const Chamber& plus, const Chamber& minus);
/// Basis of the dual overlattice for a single chamber (no wall).
AdaptedBasis series_basis(const GitData& git, const Chamber& ch);
/// Exponents of y^d in the basis: (p_i . d)_i.
RatVec monomial_exponents(const AdaptedBasis& basis, const RatVec& d);

struct AnticonePair {
    Mask dplus = 0, dminus = 0;
    std::size_t jplus = 0, jminus = 0;
};

struct ClassPair {
    std::size_t pair = 0;  // index into the anticone pair list
    RatVec fplus, fminus;
    Rat alpha;  // fminus - fplus - alpha e is integral
};

std::vector<AnticonePair> pair_anticones(const GitData& git, const WallData& wall,
                                         const Chamber& plus, const Chamber& minus);
/// Returns alpha when f_minus - f_plus lies in Q e + Z^r.
bool along_e(const RatVec& fplus, const RatVec& fminus, const IntVec& e, Rat* alpha);
std::vector<ClassPair> pair_classes(const GitData& git, const WallData& wall,
                                    const std::vector<AnticonePair>& pairs);

}  // namespace twc
