#include "toricwc/rational.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace twc {

Rat parse_rat(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("ParseError", "empty rational");
    auto bad = [&]() { return Error("ParseError", "malformed rational '" + raw + "'"); };
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!digits_ok(n, true) || !digits_ok(d, false)) throw bad();
        if (n[0] == '+') n.erase(0, 1);
        Int den(d, 10);
        if (den == 0) throw Error("ParseError", "zero denominator in '" + raw + "'");
        Rat q(Int(n, 10), den);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        if (!digits_ok(ip, false) || (!fp.empty() && !digits_ok(fp, false))) throw bad();
        Int den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rat q(Int(ip + fp, 10), den);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    }
    if (!digits_ok(s, true)) throw bad();
    if (s[0] == '+') s.erase(0, 1);
    return Rat(Int(s, 10));
}

RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_integral(const RatVec& v) {
    for (const auto& x : v)
        if (!is_integer(x)) return false;
    return true;
}

IntVec primitive(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVec out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(l);
        out[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g == 0) throw Error("ZeroVector", "primitive() of the zero vector");
    for (auto& x : out) x /= g;
    return out;
}

std::string to_string(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

}  // namespace twc
