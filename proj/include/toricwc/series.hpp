#pragma once
// Truncated I- and H-functions at fixed points: exponent enumeration, numeric
// summation of H restrictions, exact symbolic expansions and the I/H check.

#include "toricwc/cohomology.hpp"
#include "toricwc/poly.hpp"

#include <optional>

namespace twc {

struct SeriesTruncation {
    int max_y_degree = 2;  // bound on sum_i |p_i . d|
    Rat z_low = Rat(-2), z_high = Rat(1);
    int max_Q_degree = 0;
};

struct NumericParams {
    std::vector<cplx> lambda;
    std::vector<cplx> h;
};

/// Exponents d with D_j . d a nonnegative integer for j in delta, grouped by
/// n = (D_j . d)_{j in delta} with |n|_1 <= max_shell. When `f` is given only
/// d with [d] = f are kept.
struct Exponent {
    RatVec d;
    long shell = 0;  // |n|_1
};
std::vector<Exponent> exponents_at(const GitData& git, Mask delta, const std::optional<RatVec>& f,
                                   long max_shell);
/// Smallest shell bound covering every exponent of y-degree <= max_degree.
long shell_bound(const GitData& git, Mask delta, const AdaptedBasis& basis, int max_degree);
Rat y_degree(const AdaptedBasis& basis, const RatVec& d);

/// sigma(delta) = theta(Y)(delta) + c_0 at a numeric log-point Y.
cplx sigma_numeric(const GitData& git, Mask delta, const std::vector<cplx>& Y, const NumericParams& p);

/// One term of the H-restriction at (delta, [d]) without the exp(sigma/2 pi i)
/// prefactor: y^d / prod_j Gamma(1 + U_j(delta)/2 pi i + D_j . d).
cplx h_term(const GitData& git, Mask delta, const RatVec& d, const std::vector<cplx>& U_over_2pii,
            const std::vector<cplx>& Y);

struct HSumOptions {
    double tol = 1e-15;
    long max_shell = 4000;
    const WallData* wall = nullptr;  // enables the convergence-radius check
};

struct HSum {
    cplx value;
    std::size_t terms = 0;
    long shells = 0;
    double tail_estimate = 0;
};

/// i*_{(delta,f)} H at a numeric point, summed shell by shell.
/// Throws OutsideConvergence when |y^e| >= |conifold| for the given wall.
HSum restrict_h(const GitData& git, Mask delta, const RatVec& f, const NumericParams& p,
                const std::vector<cplx>& Y, HSumOptions opt = {});

/// Symbols and helpers for exact expansions.
struct SymbolicContext {
    SymbolTable syms;
    std::size_t m = 0, b = 0, r = 0;
    int lam0 = 0, h0 = 0, L0 = 0, logz = 0, tau = 0, euler = 0;

    explicit SymbolicContext(const GitData& git);
    Series form(const LinearForm& f, int W) const;
    int zeta(int k);
    int G(const Rat& c);       // Gamma(1 - c)
    int g(const Rat& c, int n);  // n-th Taylor coefficient of log Gamma(1 - c + x)

    /// Numeric value of a symbol (tau = 2 pi i).
    cplx value(int id, const NumericParams& p, const std::vector<cplx>& L, cplx logz_value) const;
};

/// Gamma(a + x) and 1/Gamma(a + x) for rational a and x of positive weight.
Series gamma_expansion(SymbolicContext& ctx, const Rat& a, const Series& x);
Series rgamma_expansion(SymbolicContext& ctx, const Rat& a, const Series& x);

/// Restriction of z^-1 I to (delta, [-d]) at y^d (point base, degree 0).
Series i_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                     const AdaptedBasis& basis, int W);
/// Restriction of the H-function to (delta, [d]) at y^d, with y replaced by
/// z^{-deg(y)/2} y when `substitute_y` is set.
Series h_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                     const AdaptedBasis& basis, int W, bool substitute_y);
/// The Gamma-class dressing of the H coefficient, restricted to (delta, [-d]).
Series dressed_h_coefficient(SymbolicContext& ctx, const GitData& git, Mask delta, const RatVec& d,
                             const AdaptedBasis& basis, int W, const LinearForm& rho_shift);

/// Sum of ceilings: the z-exponent of the weight-0 part of z^-1 I is -s(d).
Int z_shift(const GitData& git, const RatVec& d);

struct IHReport {
    std::size_t fixed_points = 0, exponents = 0, coefficients = 0, mismatch_count = 0;
    std::vector<std::string> mismatches;  // first few
    bool homogeneous = true;
    bool pass() const { return mismatch_count == 0 && homogeneous; }
};

/// Coefficientwise comparison of z^-1 I with the dressed H-function at every
/// fixed point, for z-powers in the window and y-degree up to the bound.
/// `rho_shift` is added to rho (a nonzero shift is a negative control).
IHReport verify_i_h_relation(const GitData& git, const Chamber& ch, const SeriesTruncation& trunc,
                             const LinearForm* rho_shift = nullptr);

}  // namespace twc
