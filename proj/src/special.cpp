#include "toricwc/special.hpp"

#include "toricwc/rational.hpp"

#include <cmath>

namespace twc {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

cplx log_gamma_right(cplx z) {
    // Re z >= 1/2
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 15; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_sin_pi(cplx z) {
    if (z.imag() > 0) return -kI * kPi * z + std::log((std::exp(2.0 * kI * kPi * z) - 1.0) / (2.0 * kI));
    return kI * kPi * z + std::log((1.0 - std::exp(-2.0 * kI * kPi * z)) / (2.0 * kI));
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw Error("GammaPole", "Gamma has a pole at a nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_right(z);
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

LogRecipGamma log_rgamma(cplx z) {
    if (is_nonpositive_integer(z)) return {true, 0.0};
    return {false, -log_gamma(z)};
}

cplx gamma_complex(cplx z) { return std::exp(log_gamma(z)); }

cplx rgamma(cplx z) {
    auto r = log_rgamma(z);
    return r.zero ? cplx(0.0) : std::exp(r.log);
}

cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx x, double tol, int max_terms) {
    if (std::abs(x) >= 1.0) throw Error("OutsideConvergence", "2F1 series needs |x| < 1");
    cplx term = 1.0, sum = 1.0;
    int small = 0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * x;
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw Error("SlowConvergence", "2F1 series did not converge");
}

cplx hyp2f1_outside(cplx a, cplx b, cplx c, cplx x) {
    if (std::abs(x) <= 1.0) throw Error("OutsideConvergence", "connection formula needs |x| > 1");
    cplx amb = a - b;
    if (amb.imag() == 0.0 && std::floor(amb.real()) == amb.real())
        throw Error("DegenerateExponents", "a - b is an integer");
    cplx mx = -x;
    auto piece = [&](cplx p, cplx q) {
        // Gamma(c)Gamma(q-p)/(Gamma(q)Gamma(c-p)) (-x)^-p 2F1(p, p-c+1; p-q+1; 1/x)
        cplx coef = gamma_complex(c) * gamma_complex(q - p) * rgamma(q) * rgamma(c - p);
        return coef * std::exp(-p * std::log(mx)) * hyp2f1_series(p, p - c + 1.0, p - q + 1.0, 1.0 / x);
    };
    return piece(a, b) + piece(b, a);
}

}  // namespace twc
