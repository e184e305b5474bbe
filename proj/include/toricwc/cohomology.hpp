#pragma once
// Fixed-point restrictions of equivariant classes, the divisor lemma, the ring
// presentation, Chen-Ruan gradings and the Gamma-series constants.

#include "toricwc/git.hpp"

#include <complex>
#include <map>

namespace twc {

using cplx = std::complex<double>;

/// Linear form in the equivariant parameters lambda_1..lambda_m and the
/// nilpotent base classes h_1..h_b.
struct LinearForm {
    RatVec lam;
    RatVec h;

    LinearForm() = default;
    LinearForm(std::size_t m, std::size_t b) : lam(m, Rat(0)), h(b, Rat(0)) {}

    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    LinearForm& operator*=(const Rat& c);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(const Rat& c, LinearForm a) { return a *= c; }
    bool operator==(const LinearForm& o) const { return lam == o.lam && h == o.h; }
    bool is_zero() const;

    cplx eval(const std::vector<cplx>& lambda, const std::vector<cplx>& hval = {}) const;
    /// e.g. "l1 - l2 + 1/2 h1", or "0".
    std::string str() const;
};

/// mu_j = lambda_j + Lambda_j . h, the combined parameter of the j-th character.
LinearForm mu(const GitData& git, std::size_t j);
/// c_0 = lambda_1 + ... + lambda_m.
LinearForm c0(const GitData& git);

/// Coefficients c with p = sum_{i in delta} c_i D_i.
RatVec expand_in(const GitData& git, Mask delta, const RatVec& p);
/// theta(p) restricted to the fixed point of delta: -sum c_i(p) mu_i.
LinearForm theta_at(const GitData& git, Mask delta, const RatVec& p);
/// U_j restricted to delta: mu_j + theta(D_j)(delta); zero for j in delta.
LinearForm U_at(const GitData& git, Mask delta, std::size_t j);
/// rho = theta(D_1 + ... + D_m) restricted to delta.
LinearForm rho_at(const GitData& git, Mask delta);

struct RestrictionTable {
    std::map<Mask, std::vector<LinearForm>> U;  // per minimal anticone, all j
    const std::vector<LinearForm>& at(Mask delta) const;
};

RestrictionTable restriction_table(const GitData& git, const Chamber& ch);

struct DivLemmaReport {
    std::size_t pairs = 0, checks = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

/// Exact check of U_j(d+) = U_j(d-) + (D_j.e / D_{j-}.e) U_{j-}(d+) for all j and
/// the theta version for each p in `classes` (the standard basis when empty).
DivLemmaReport verify_div_lemma(const GitData& git, const WallData& wall, const Chamber& plus,
                                const Chamber& minus, std::vector<RatVec> classes = {});

struct RingPresentation {
    /// Each row a gives the relation sum_i a_i (u_i - lambda_i) = 0, i.e.
    /// chi = sum_i <chi, b_i> u_i for a basis chi of the dual of N.
    std::vector<IntVec> linear;
    /// Generators prod_{i in mask} u_i of the monomial ideal.
    std::vector<Mask> monomials;
    /// Indices whose class u_i is forced to vanish by the monomial ideal.
    Mask forced_zero = 0;
};

RingPresentation ring_presentation(const GitData& git, const Chamber& ch);

/// deg(y_i) solving sum_i deg(y_i) p_i = 2 sum_j D_j.
RatVec y_degrees(const GitData& git, const AdaptedBasis& basis);

struct GammaConstants {
    int digits = 0;
    double euler_gamma = 0;
    std::vector<double> zeta;  // zeta[k] for k >= 2; zeta[0], zeta[1] unused
    std::string euler_gamma_str;
    std::vector<std::string> zeta_str;
};

/// Euler's constant and zeta(2..n_max), computed once with MPFR.
const GammaConstants& gamma_constants(int n_max = 600);

/// Gamma(1+x) from log Gamma(1+x) = -gamma x + sum_{k>=2} zeta(k)(-x)^k/k.
/// Throws ConvergenceRadius for |x| >= 1.
cplx gamma_series(cplx x);

}  // namespace twc
