#pragma once
// Exact integers and rationals (GMP) plus small helpers shared by every module.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace twc {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Error carrying a stable machine-readable code (see report "error.code").
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

inline Rat make_rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int floor_rat(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

inline Int ceil_rat(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

/// <x> = x - floor(x), in [0,1).
inline Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

struct FracCeil {
    Int ceil;
    Rat frac;
};

inline FracCeil frac_ceil_parts(const Rat& x) { return {ceil_rat(x), frac(x)}; }

/// "p/q", or "p" for integers.
inline std::string to_string(const Rat& x) { return x.get_str(); }
inline std::string to_string(const Int& x) { return x.get_str(); }

/// Accepts "p/q", "p", or a finite decimal such as "-0.125".
Rat parse_rat(const std::string& s);

inline long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw Error("Overflow", "integer does not fit in a machine word");
    return x.get_si();
}

inline double to_double(const Rat& x) { return x.get_d(); }

RatVec to_rat(const IntVec& v);
Rat dot(const RatVec& a, const RatVec& b);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);
bool is_zero(const RatVec& v);
bool is_integral(const RatVec& v);

/// Scales a nonzero rational vector to the primitive integer vector on its ray.
IntVec primitive(const RatVec& v);

std::string to_string(const RatVec& v);

}  // namespace twc
