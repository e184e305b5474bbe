#include "toricwc/poly.hpp"

#include <sstream>

namespace twc {

int SymbolTable::intern(const std::string& name, int weight) {
    auto it = index_.find(name);
    if (it != index_.end()) {
        if (weights_[it->second] != weight)
            throw Error("InvalidSymbol", "symbol " + name + " re-registered with another weight");
        return it->second;
    }
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    weights_.push_back(weight);
    index_.emplace(name, id);
    return id;
}

int SymbolTable::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.z = a.z + b.z;
    out.weight = a.weight + b.weight;
    std::size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) {
            out.e.push_back(a.e[i++]);
        } else if (i == a.e.size() || b.e[j].first < a.e[i].first) {
            out.e.push_back(b.e[j++]);
        } else {
            int p = a.e[i].second + b.e[j].second;
            if (p != 0) out.e.emplace_back(a.e[i].first, p);
            ++i;
            ++j;
        }
    }
    return out;
}

Series Series::constant(const Rat& c, int max_weight) {
    Series s(max_weight);
    s.add_term(Monomial{Rat(0), {}, 0}, c);
    return s;
}

Series Series::symbol(const SymbolTable& t, int id, int power, int max_weight) {
    Series s(max_weight);
    if (power == 0) return constant(Rat(1), max_weight);
    s.add_term(Monomial{Rat(0), {{id, power}}, t.weight(id) * power}, Rat(1));
    return s;
}

Series Series::zpow(const Rat& exponent, int max_weight) {
    Series s(max_weight);
    s.add_term(Monomial{exponent, {}, 0}, Rat(1));
    return s;
}

void Series::add_term(const Monomial& mono, const Rat& c) {
    if (c == 0 || mono.weight > max_w_) return;
    if (mono.weight < 0) throw Error("InvalidSeries", "negative weight monomial");
    auto [it, inserted] = t_.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    max_w_ = std::min(max_w_, o.max_w_);
    for (auto it = t_.begin(); it != t_.end();)
        it = it->first.weight > max_w_ ? t_.erase(it) : std::next(it);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    Series neg = o;
    neg *= Rat(-1);
    return *this += neg;
}

Series& Series::operator*=(const Rat& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& kv : t_) kv.second *= c;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    Series out(std::min(a.max_w_, b.max_w_));
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            if (ma.weight + mb.weight > out.max_w_) continue;
            out.add_term(ma * mb, ca * cb);
        }
    return out;
}

Series Series::truncated(int max_weight) const {
    Series out(std::min(max_w_, max_weight));
    for (const auto& [m, c] : t_) out.add_term(m, c);
    return out;
}

Series Series::exp() const {
    for (const auto& kv : t_)
        if (kv.first.weight == 0) throw Error("InvalidSeries", "exp of a series with a weight-zero part");
    Series sum = constant(Rat(1), max_w_);
    Series term = sum;
    for (int k = 1; k <= max_w_; ++k) {
        term = term * *this;
        term *= Rat(1, k);
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

Series Series::inverse() const {
    Series unit(max_w_), rest(max_w_);
    for (const auto& [m, c] : t_) (m.weight == 0 ? unit : rest).add_term(m, c);
    if (unit.size() != 1) throw Error("NotInvertible", "leading part of the series is not a unit monomial");
    const auto& [um, uc] = *unit.t_.begin();
    Monomial inv_m{-um.z, um.e, 0};
    for (auto& p : inv_m.e) p.second = -p.second;
    Series u_inv(max_w_);
    u_inv.add_term(inv_m, 1 / uc);
    // 1/(u + r) = u^-1 sum_k (-r u^-1)^k
    Series x = rest * u_inv;
    x *= Rat(-1);
    Series sum = constant(Rat(1), max_w_), term = sum;
    for (int k = 1; k <= max_w_; ++k) {
        term = term * x;
        if (term.is_zero()) break;
        sum += term;
    }
    return u_inv * sum;
}

Series Series::scale_by_weight(int sym, int sym_power, const Rat& z_power) const {
    Series out(max_w_);
    for (const auto& [m, c] : t_) {
        Monomial f{z_power * m.weight, {}, 0};
        if (sym_power * m.weight != 0) f.e.emplace_back(sym, sym_power * m.weight);
        out.add_term(m * f, c);
    }
    return out;
}

std::complex<double> Series::eval(const std::function<std::complex<double>(int)>& value,
                                  std::complex<double> logz) const {
    std::complex<double> s = 0;
    for (const auto& [m, c] : t_) {
        std::complex<double> v = to_double(c) * std::exp(to_double(m.z) * logz);
        for (auto [id, p] : m.e) v *= std::pow(value(id), p);
        s += v;
    }
    return s;
}

std::string to_string(const Monomial& m, const SymbolTable& t) {
    std::ostringstream os;
    bool first = true;
    if (m.z != 0) {
        os << "z^" << (m.z.get_den() == 1 ? m.z.get_str() : "(" + m.z.get_str() + ")");
        first = false;
    }
    for (auto [id, p] : m.e) {
        if (!first) os << "*";
        os << t.name(id);
        if (p != 1) os << "^" << p;
        first = false;
    }
    return first ? "1" : os.str();
}

std::string Series::str(const SymbolTable& t, std::size_t max_terms) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    std::size_t n = 0;
    for (const auto& [m, c] : t_) {
        if (n == max_terms) {
            os << " + ... (" << t_.size() << " terms)";
            break;
        }
        if (n++) os << " + ";
        os << "(" << c.get_str() << ")*" << to_string(m, t);
    }
    return os.str();
}

}  // namespace twc
