#pragma once
// Truncated power series in weighted symbols with rational z-exponents and
// Laurent symbols, exact over the rationals.

#include "toricwc/rational.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

namespace twc {

/// Named symbols; weighted symbols (equivariant parameters) drive truncation.
class SymbolTable {
  public:
    int intern(const std::string& name, int weight = 0);
    int find(const std::string& name) const;
    const std::string& name(int id) const { return names_.at(id); }
    int weight(int id) const { return weights_.at(id); }
    std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::vector<int> weights_;
    std::unordered_map<std::string, int> index_;
};

struct Monomial {
    Rat z;                                // exponent of z
    std::vector<std::pair<int, int>> e;   // (symbol, power), sorted by symbol, powers nonzero
    int weight = 0;

    bool operator<(const Monomial& o) const { return z != o.z ? z < o.z : e < o.e; }
    bool operator==(const Monomial& o) const { return z == o.z && e == o.e; }
};

Monomial operator*(const Monomial& a, const Monomial& b);

class Series {
  public:
    explicit Series(int max_weight = 0) : max_w_(max_weight) {}

    static Series constant(const Rat& c, int max_weight);
    static Series symbol(const SymbolTable& t, int id, int power, int max_weight);
    static Series zpow(const Rat& exponent, int max_weight);

    int max_weight() const { return max_w_; }
    const std::map<Monomial, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add_term(const Monomial& mono, const Rat& c);
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Rat& c);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Rat& c, Series a) { return a *= c; }

    Series truncated(int max_weight) const;
    /// exp of a series without weight-zero terms.
    Series exp() const;
    /// Inverse of (unit monomial) + (positive weight part).
    Series inverse() const;
    /// Multiplies each weight-w monomial by sym^(w * sym_power) z^(w * z_power).
    Series scale_by_weight(int sym, int sym_power, const Rat& z_power) const;

    /// Numeric value; z^q is exp(q * logz).
    std::complex<double> eval(const std::function<std::complex<double>(int)>& value,
                              std::complex<double> logz) const;
    std::string str(const SymbolTable& t, std::size_t max_terms = 12) const;

  private:
    int max_w_;
    std::map<Monomial, Rat> t_;
};

std::string to_string(const Monomial& m, const SymbolTable& t);

}  // namespace twc
