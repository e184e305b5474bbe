#pragma once
// Complex Gamma function and Gauss hypergeometric series in double precision.

#include <complex>

namespace twc {

using cplx = std::complex<double>;

/// log Gamma(z) on any branch (Lanczos, g = 607/128, with reflection).
/// Only exp() of the result is meaningful.
cplx log_gamma(cplx z);

/// log sin(pi z), stable for large |Im z|.
cplx log_sin_pi(cplx z);

struct LogRecipGamma {
    bool zero = false;  // 1/Gamma vanishes (nonpositive integer argument)
    cplx log;
};

LogRecipGamma log_rgamma(cplx z);
cplx gamma_complex(cplx z);
/// 1/Gamma(z), entire.
cplx rgamma(cplx z);

/// 2F1(a,b;c;x) by its power series, |x| < 1. Throws SlowConvergence.
cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx x, double tol = 1e-16, int max_terms = 20000);

/// 2F1 for |x| > 1 via the connection formula in 1/x with principal powers of
/// -x. Requires a - b not an integer.
cplx hyp2f1_outside(cplx a, cplx b, cplx c, cplx x);

}  // namespace twc
