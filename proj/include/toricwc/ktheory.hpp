#pragma once
// Localized equivariant K-theory: line-bundle monomials, the basis at fixed
// loci, the Fourier-Mukai image across a wall, the pull-push rule through
// the common blow-up, and the orbifold Chern character at fixed points.

#include "toricwc/continuation.hpp"

#include <map>

namespace twc {

/// Element of Q(zeta_N) in the power basis modulo the N-th cyclotomic polynomial.
class Cyclotomic {
  public:
    Cyclotomic() : Cyclotomic(Rat(0)) {}
    explicit Cyclotomic(const Rat& c);
    /// zeta_N^k
    static Cyclotomic root(long N, long k);
    /// exp(2 pi i q) for rational q.
    static Cyclotomic phase(const Rat& q);

    long order() const { return N_; }
    Cyclotomic lifted(long M) const;
    bool is_zero() const;
    cplx value() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rat& c);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(const Rat& c, Cyclotomic a) { return a *= c; }
    bool operator==(const Cyclotomic& o) const;
    std::string str() const;

  private:
    long N_ = 1;
    std::vector<Rat> c_;
    void reduce(std::vector<Rat> full);
};

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<Int>& cyclotomic_polynomial(long N);
/// Largest order accepted by the exact mode.
constexpr long kMaxCyclotomicOrder = 1024;

/// Finite sum of c * exp(linear form), c cyclotomic: exact fixed-point values.
class ExpSum {
  public:
    using Key = std::pair<RatVec, RatVec>;  // (lambda part, h part)

    static ExpSum exp_of(const LinearForm& f, const Cyclotomic& c = Cyclotomic(Rat(1)));

    ExpSum& operator+=(const ExpSum& o);
    ExpSum& operator-=(const ExpSum& o);
    ExpSum& operator*=(const Rat& c);
    friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
    friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
    bool operator==(const ExpSum& o) const { return (*this - o).is_zero(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, Cyclotomic>& terms() const { return terms_; }

    cplx eval(const NumericParams& p) const;
    std::string str() const;

  private:
    std::map<Key, Cyclotomic> terms_;
    void add(const Key& k, const Cyclotomic& c);
};

/// L(p) exp(c . lambda) t^n, with p in the character lattice and t a formal
/// l-th root of R_{j-} on the + side.
struct KMonomial {
    IntVec p;
    std::vector<long> c;
    long t = 0;
    bool operator<(const KMonomial& o) const;
    bool operator==(const KMonomial& o) const { return p == o.p && c == o.c && t == o.t; }
};

/// Laurent polynomial in line-bundle classes with rational coefficients.
class KExpr {
  public:
    KExpr() = default;
    KExpr(std::size_t r, std::size_t m) : r_(r), m_(m) {}

    static KExpr constant(std::size_t r, std::size_t m, const Rat& c);
    static KExpr line(const GitData& git, const IntVec& p);
    static KExpr R(const GitData& git, std::size_t i);
    static KExpr S(const GitData& git, std::size_t i);
    static KExpr t_power(std::size_t r, std::size_t m, long n);
    static KExpr monomial(std::size_t r, std::size_t m, const KMonomial& k, const Rat& c);

    KExpr& operator+=(const KExpr& o);
    KExpr& operator-=(const KExpr& o);
    KExpr& operator*=(const Rat& c);
    friend KExpr operator+(KExpr a, const KExpr& b) { return a += b; }
    friend KExpr operator-(KExpr a, const KExpr& b) { return a -= b; }
    friend KExpr operator*(const Rat& c, KExpr a) { return a *= c; }
    friend KExpr operator*(const KExpr& a, const KExpr& b);
    bool operator==(const KExpr& o) const { return terms_ == o.terms_; }

    bool has_roots() const;
    const std::map<KMonomial, Rat>& terms() const { return terms_; }
    std::size_t rank() const { return r_; }
    std::size_t size() const { return m_; }
    /// e.g. "L(1) e^{l2} t^-1 - S3"; monomials in the characters' own notation.
    std::string str() const;

  private:
    std::size_t r_ = 0, m_ = 0;
    std::map<KMonomial, Rat> terms_;
    void add(const KMonomial& k, const Rat& c);
};

/// (1/l) sum over the l roots t of R_{j-}: t^n -> R_{j-}^{n/l} when l | n, else 0.
KExpr average_roots(const GitData& git, const KExpr& x, std::size_t jminus, long l);

struct KBasisElement {
    Mask delta = 0;
    IntVec rho_hat;  // lift of a character of the isotropy group
};

/// Lifts of the characters of G_delta = Hom(L^v / <D_j : j in delta>, C^*):
/// integer p with coordinates in [0,1) in the basis {D_j : j in delta}.
std::vector<IntVec> character_lifts(const GitData& git, Mask delta);
std::vector<KBasisElement> basis_elements(const GitData& git, const Chamber& ch);
/// L(rho_hat) prod_{i not in delta} (1 - S_i)
KExpr basis_expr(const GitData& git, const KBasisElement& b);

/// Character (p, n) of the blow-up torus K x C^*.
struct KCharacter {
    IntVec p;
    Int n;
};

enum class WallSide { Plus, Minus };

/// f_-^* L_-(p) = L(p, 0); f_+^* L_+(p) = L(p, -p.e).
KCharacter pullback_to_blowup(const IntVec& p, const WallData& wall, WallSide side);
/// Exponents of (R~_1..R~_{m+1}) in the pullback of R_i: e_i + (k_i or l_i) e_{m+1}.
std::vector<long> pullback_R(const WallData& wall, std::size_t i, WallSide side);

/// Laurent polynomial in R~_1..R~_{m+1}: exponent vector -> coefficient.
using BlowupPoly = std::map<std::vector<long>, Rat>;

/// Push-forward along the gerbe over delta_+ of L(p,n) q(R~) restricted to
/// the fixed locus: (1/l) sum_t L_+(p) t^{p.e+n} q(t^{-l_1} R_1, ..., t^{-l_m} R_m, t).
/// Throws IndexMismatch if q does not have m+1 variables.
KExpr pushpull(const GitData& git, const WallData& wall, const IntVec& p, long n, const BlowupPoly& q,
               std::size_t jminus);
/// f_-^* of prod_{i not in delta} (1 - S_i) as a polynomial in R~.
BlowupPoly pulled_back_factors(const GitData& git, const WallData& wall, Mask delta);

/// The Fourier-Mukai image as the t-dependent expression before root
/// averaging (identity for a common anticone).
KExpr fm_unaveraged(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                    const KBasisElement& b);
KExpr fm_transform(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                   const KBasisElement& b);

/// How exp(c . lambda) factors are evaluated when the base is not a point:
/// Combined uses the combined parameters mu_j (so ch S_j = e^{-2 pi i D_j f} e^{-U_j}),
/// Literal uses the bare lambda_j.
enum class LambdaConvention { Combined, Literal };

/// Root pairing for t at a + side fixed point: t = exp(2 pi i D_{j-}.(f_+ - f_-)/l) exp(U_{j-}(delta_+)/l),
/// with the representatives f_+ and f_- given exactly.
struct RootPairing {
    std::size_t jminus = 0;
    long l = 1;
    RatVec fplus, fminus;
};

/// ch~(x) restricted to (delta, f). Throws UnresolvedRoot when x has t-powers
/// and no pairing is given.
ExpSum chern_restriction(const GitData& git, const KExpr& x, Mask delta, const RatVec& f,
                         const RootPairing* pairing = nullptr,
                         LambdaConvention conv = LambdaConvention::Combined);

struct FMOptions {
    double tol = 1e-9;
    long w_shift = 0;    // perturbs w inside C
    double c_shift = 0;  // added to one C entry
    LambdaConvention convention = LambdaConvention::Combined;
};

struct FMEntry {
    KBasisElement element;
    FixedPoint at;
    bool adjacent = false;  // row paired with delta_- or the common anticone itself
    cplx lhs, rhs;
    double deviation = 0;
};

struct FMReport {
    std::vector<FMEntry> entries;
    std::size_t draws = 0;
    double max_deviation = 0;
    double max_support = 0;           // |ch FM(e)| at non-adjacent fixed data
    std::size_t support_exact_zero = 0, support_checked = 0;
    std::size_t subidentity_a_checked = 0;
    std::vector<std::string> subidentity_a_failures;  // exact
    double max_subidentity_b = 0;     // prefactor restriction against C
    std::size_t common_checked = 0;
    std::vector<std::string> common_failures;  // exact FM(e) = e and equal restrictions
    double tol = 1e-9;
    bool pass() const;
};

/// ch~ . FM = U_H . ch~ on every basis element of the minus side and every
/// plus-side fixed point, for each parameter draw.
FMReport verify_fm(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus,
                   const std::vector<NumericParams>& draws, const FMOptions& opt = {});

}  // namespace twc
