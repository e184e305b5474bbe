#pragma once
// Mellin-Barnes continuation of H-restrictions across a wall: integrand,
// pole layout, contour quadrature, residue sums, connection coefficients and
// the transformation between fixed-point restrictions on the two sides.

#include "toricwc/series.hpp"
#include "toricwc/special.hpp"

namespace twc {

/// The integrand for one line d = d_start + s e of the + side restriction at delta_plus.
struct MBIntegrand {
    Mask dplus = 0;
    std::size_t jplus = 0;
    RatVec dstart;
    IntVec e;
    std::vector<cplx> a;  // U_j(delta+)/2 pi i + D_j . d_start
    std::vector<long> De;
    long w = 0;
    cplx logx;  // log (y^+)^e on the chosen branch

    /// log of Gamma(s)Gamma(1-s) prod_{D.e<0} Gamma(l s - a) / prod_{D.e>=0} Gamma(1 + a + s D.e)
    /// times exp(s (log x - pi i w)); `zero` when a reciprocal Gamma vanishes.
    LogRecipGamma log_value(cplx s) const;
    cplx value(cplx s) const;
    /// prod_{D.e<0} sin(-pi a_j)/pi
    cplx K() const;
};

MBIntegrand make_integrand(const GitData& git, const WallData& wall, Mask dplus, const RatVec& dstart,
                           const NumericParams& p, cplx logx);

/// Lines of the + side restriction at (delta+, f+): exponents d in the class
/// with 0 <= D_{j+} . d < D_{j+} . e, ordered by shell.
std::vector<RatVec> line_starts(const GitData& git, const WallData& wall, Mask dplus, std::size_t jplus,
                                const RatVec& fplus, long max_shell);

struct Pole {
    cplx s;
    int family = -1;  // -1: Gamma(s)Gamma(1-s); otherwise the index j with D_j . e < 0
    long n = 0;
    bool zero_residue = false;
};

/// Right poles s = 0..n_max (and s = -1..-n_max, flagged zero) and the left
/// families s = (a_j - n)/l_j for n <= n_max. Throws NonGenericParameters when
/// two poles come within 1e-4.
std::vector<Pole> classify_poles(const MBIntegrand& ig, long n_max = 12);

struct Contour {
    double s0 = -0.5;
    double T = 0, h = 0;
    std::size_t corrected_poles = 0;  // left poles to the right of the line
};

struct MBResult {
    cplx value;  // -(1/2 pi i) int_C, which is the right residue sum inside the radius
    double error = 0;
    Contour contour;
    std::size_t evaluations = 0;
};

/// Trapezoid quadrature on Re s = s0 with step halving, plus the residues of
/// left poles lying right of the line. Throws QuadratureFailure or OutsideSector.
MBResult mb_integral(const MBIntegrand& ig, double tol = 1e-12);

cplx right_residue(const MBIntegrand& ig, long k);
cplx left_residue(const MBIntegrand& ig, std::size_t j, long n);

enum class Side { Left, Right };

struct ResidueSum {
    cplx value;
    long terms = 0;
    double tail_estimate = 0;
};

/// Right: sum of residues at s = k >= 0. Left: minus the sum over all left
/// families. Both equal mb_integral on their side of the radius.
ResidueSum residue_sum(const MBIntegrand& ig, Side side, double tol = 1e-15, long max_terms = 20000);

/// The exponent on the minus side reached by the n-th pole of family j-.
RatVec minus_exponent(const GitData& git, const MBIntegrand& ig, std::size_t jminus, long n);

/// Closed-form connection coefficient for the exponents fplus (on delta+) and
/// fminus (on delta-). `w_shift` perturbs w (negative control).
cplx connection_coefficient(const GitData& git, const WallData& wall, Mask dplus, const RatVec& fplus,
                            Mask dminus, const RatVec& fminus, const NumericParams& p, long w_shift = 0);

/// Sum over minus-side exponents d_n (n >= 0) of one line with n = n0 mod l,
/// including exp(sigma(delta-)/2 pi i) y^{d_n}.
ResidueSum minus_series(const GitData& git, const MBIntegrand& ig, std::size_t jminus, long n0,
                        const NumericParams& p, const std::vector<cplx>& Y, double tol = 1e-15,
                        long max_terms = 20000);

struct UHEntry {
    std::size_t row = 0, col = 0;
    bool identity = false;
    std::size_t pair = 0;  // index into the pair list for C entries
};

struct TransformUH {
    std::vector<FixedPoint> rows;  // plus side
    std::vector<FixedPoint> cols;  // minus side
    std::vector<AnticonePair> pairs;
    std::vector<UHEntry> entries;
};

TransformUH build_U_H(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus);

/// Dense numeric matrix (row-major) with C at canonical exponents: the first
/// line start of the row class and the first pole of the column class.
std::vector<cplx> numeric_U_H(const GitData& git, const WallData& wall, const TransformUH& u,
                              const NumericParams& p);
std::vector<cplx> apply(const TransformUH& u, const std::vector<cplx>& matrix, const std::vector<cplx>& v);

struct ThetaReport {
    std::size_t classes = 0, entries_checked = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

/// Theta_+(p) U_H = U_H Theta_-(p) entrywise, exactly, for each class p.
ThetaReport verify_theta_commutation(const GitData& git, const TransformUH& u, const std::vector<RatVec>& classes);

struct TheoremOptions {
    std::vector<double> radii;      // |y^e| samples, all beyond |conifold|
    double tol = 1e-6;
    long lines_per_row = 1;
    long w_shift = 0;               // perturbs w inside C only
    double c_shift = 0;             // added to one C entry
};

struct TheoremRow {
    FixedPoint row;
    RatVec dstart;
    double radius = 0;
    cplx mb_side, residue_side, closed_form_side;
    double deviation = 0;   // mb against the C-weighted minus series
    double two_route = 0;   // direct left residues against the C-weighted minus series
    std::size_t corrected_poles = 0;
    double quadrature_error = 0;
};

struct TheoremReport {
    std::vector<TheoremRow> rows;
    double max_deviation = 0;
    double max_two_route = 0;
    bool pass = true;
};

/// Sample log-point with Y.e = log R + i pi w.
std::vector<cplx> log_point(const GitData& git, const WallData& wall, double radius);

TheoremReport verify_wall_crossing(const GitData& git, const WallData& wall, const Chamber& plus,
                                   const Chamber& minus, const NumericParams& p, const TheoremOptions& opt);

struct InsideRow {
    FixedPoint row;
    double radius = 0;
    cplx mb, right, restriction;
    double deviation = 0;  // worst of |mb - right| and |prefactor right - restriction|, relative
};

struct InsideReport {
    std::vector<InsideRow> rows;
    double max_deviation = 0;
    bool pass = true;
};

/// Inside |y^e| < |conifold|: the contour integral equals the right residue sum
/// and, on rank 1 where each class is a single line, the H restriction.
InsideReport verify_inside_radius(const GitData& git, const WallData& wall, const Chamber& plus,
                                  const Chamber& minus, const NumericParams& p, const std::vector<double>& radii,
                                  double tol = 1e-8);

/// The wall of D = (1,1,-1,-1) up to order: both sides are 2F1-type.
bool is_gauss_wall(const GitData& git, const WallData& wall);

struct GaussRow {
    FixedPoint row;
    double radius = 0;
    cplx mb_side, closed_form_side, gauss;
    double deviation = 0;
};

struct GaussReport {
    std::vector<GaussRow> rows;
    double max_deviation = 0;
    bool pass = true;
};

/// Cross-checks both sides of the continuation at |y^e| = radius against the
/// classical connection formula of 2F1. Throws Unsupported unless is_gauss_wall.
GaussReport verify_gauss(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                         const NumericParams& p, const std::vector<double>& radii, double tol = 1e-6);

/// Uniform rational draws k/1000 in [-1, 1], redrawn until every row integrand
/// of the wall is generic.
NumericParams draw_params(const GitData& git, const WallData& wall, const Chamber& plus, std::uint64_t seed,
                          int max_attempts = 50);

}  // namespace twc
