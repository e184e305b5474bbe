#include "toricwc/problem.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace twc {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
    throw ProblemError("ValidationError", field + ": " + msg, field);
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

Rat read_rat(const Json& v, const std::string& field) {
    try {
        if (v.is_number_integer()) return Rat(v.is_number_unsigned() ? Int(std::to_string(v.get<std::uint64_t>()))
                                                                   : Int(std::to_string(v.get<std::int64_t>())));
        if (v.is_number_float()) {
            // shortest round-trip decimal, so 0.1 reads as 1/10
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>(), std::chars_format::fixed);
            if (res.ec != std::errc()) invalid(field, "number out of range");
            return parse_rat(std::string(buf, res.ptr));
        }
        if (v.is_string()) return parse_rat(v.get<std::string>());
    } catch (const ProblemError&) {
        throw;
    } catch (const Error& e) {
        invalid(field, e.what());
    }
    invalid(field, "expected a rational (number or \"p/q\" string)");
}

Int read_int(const Json& v, const std::string& field) {
    Rat x = read_rat(v, field);
    if (!is_integer(x)) invalid(field, "expected an integer, got " + to_string(x));
    return x.get_num();
}

long read_long(const Json& v, const std::string& field) {
    Int x = read_int(v, field);
    if (!x.fits_slong_p()) invalid(field, "integer out of range");
    return x.get_si();
}

const Json& array_of(const Json& v, const std::string& field, std::optional<std::size_t> size = std::nullopt) {
    if (!v.is_array()) invalid(field, "expected an array");
    if (size && v.size() != *size)
        invalid(field, "expected " + std::to_string(*size) + " entries, got " + std::to_string(v.size()));
    return v;
}

RatVec read_rats(const Json& v, const std::string& field, std::size_t size) {
    RatVec out;
    for (std::size_t i = 0; i < array_of(v, field, size).size(); ++i) out.push_back(read_rat(v[i], at(field, i)));
    return out;
}

void check_keys(const Json& obj, const std::string& field, const std::set<std::string>& allowed) {
    if (!obj.is_object()) invalid(field.empty() ? "(root)" : field, "expected an object");
    for (const auto& [k, _] : obj.items())
        if (!allowed.count(k)) invalid(field.empty() ? k : field + "." + k, "unknown key");
}

BaseData read_base(const Json& v, std::size_t m) {
    BaseData base;
    check_keys(v, "base", {"type", "H2_rank", "Lambda", "J"});
    if (!v.contains("type") || !v["type"].is_string()) invalid("base.type", "expected \"point\" or \"table\"");
    std::string type = v["type"];
    if (type == "point") {
        if (v.size() != 1) invalid("base", "a point base takes no further keys");
        return base;
    }
    if (type != "table") invalid("base.type", "expected \"point\" or \"table\", got \"" + type + "\"");
    base.is_point = false;
    if (!v.contains("H2_rank")) invalid("base.H2_rank", "missing");
    long b = read_long(v["H2_rank"], "base.H2_rank");
    if (b < 0 || b > 16) invalid("base.H2_rank", "expected 0..16");
    base.h2_rank = std::size_t(b);
    if (!v.contains("Lambda")) invalid("base.Lambda", "missing");
    for (std::size_t i = 0; i < array_of(v["Lambda"], "base.Lambda", m).size(); ++i)
        base.Lambda.push_back(read_rats(v["Lambda"][i], at("base.Lambda", i), base.h2_rank));
    if (v.contains("J")) {
        const auto& J = array_of(v["J"], "base.J");
        for (std::size_t i = 0; i < J.size(); ++i) {
            std::string f = at("base.J", i);
            check_keys(J[i], f, {"D", "z_coeffs"});
            BaseJEntry entry;
            if (!J[i].contains("D")) invalid(f + ".D", "missing");
            for (std::size_t k = 0; k < array_of(J[i]["D"], f + ".D", base.h2_rank).size(); ++k)
                entry.degree.push_back(read_int(J[i]["D"][k], at(f + ".D", k)));
            if (J[i].contains("z_coeffs")) {
                const auto& zc = array_of(J[i]["z_coeffs"], f + ".z_coeffs");
                for (std::size_t k = 0; k < zc.size(); ++k) {
                    std::string g = at(f + ".z_coeffs", k);
                    array_of(zc[k], g, 2);
                    entry.z_coeffs.emplace_back(read_long(zc[k][0], g + "[0]"), read_rat(zc[k][1], g + "[1]"));
                }
            }
            base.J.push_back(std::move(entry));
        }
    }
    return base;
}

Chamber chamber_for(const GitData& git, const RatVec& omega, const std::string& field) {
    try {
        return make_chamber(git, omega);
    } catch (const Error& e) {
        if (e.code() != "DegenerateStability") throw;
        throw ProblemError("DegenerateStability", field + ": " + e.what(), field, 0, 0,
                           "move " + field + " into the interior of a chamber, e.g. perturb one coordinate by 1/7");
    }
}

std::pair<long, long> line_col(const std::string& text, std::size_t byte) {
    long line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

const Chamber& Problem::minus_chamber() const {
    if (!minus) throw Error("MissingWall", "this command needs omega_minus");
    return *minus;
}

const WallData& Problem::wall_data() const {
    if (!wall) throw Error("MissingWall", "this command needs omega_minus");
    return *wall;
}

Problem parse_problem_text(const std::string& text, const std::string& origin) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ProblemError("ParseError",
                           origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON", "",
                           line, col);
    }
    check_keys(doc, "", {"schema", "name", "description", "rank", "characters", "omega_plus", "omega_minus", "base",
                         "lambda", "truncation", "seed"});
    if (!doc.contains("schema")) invalid("schema", "missing (expected 1)");
    if (read_long(doc["schema"], "schema") != 1) invalid("schema", "unsupported version");

    Problem p;
    p.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : origin;
    if (!doc.contains("rank")) invalid("rank", "missing");
    long r = read_long(doc["rank"], "rank");
    if (r < 1) invalid("rank", "must be positive");
    if (!doc.contains("characters")) invalid("characters", "missing");
    const auto& chars = array_of(doc["characters"], "characters");
    IntMatrix D(chars.size(), std::size_t(r));
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t k = 0; k < array_of(chars[i], at("characters", i), std::size_t(r)).size(); ++k)
            D(i, k) = read_int(chars[i][k], at(at("characters", i), k));

    BaseData base = doc.contains("base") ? read_base(doc["base"], chars.size()) : BaseData{};
    try {
        p.git = make_git(D, base);
    } catch (const Error& e) {
        if (e.code() != "ValidationError") throw;
        invalid("characters", e.what());
    }

    if (!doc.contains("omega_plus")) invalid("omega_plus", "missing");
    p.omega_plus = read_rats(doc["omega_plus"], "omega_plus", p.git.r);
    p.plus = chamber_for(p.git, p.omega_plus, "omega_plus");
    if (doc.contains("omega_minus") && !doc["omega_minus"].is_null()) {
        p.omega_minus = read_rats(doc["omega_minus"], "omega_minus", p.git.r);
        p.minus = chamber_for(p.git, *p.omega_minus, "omega_minus");
        try {
            p.wall = wall_between(p.git, p.plus, *p.minus);
        } catch (const Error& e) {
            throw ProblemError(e.code(), std::string("omega_minus: ") + e.what(), "omega_minus");
        }
    }

    if (doc.contains("lambda")) {
        const Json& l = doc["lambda"];
        if (l.is_string()) {
            if (l.get<std::string>() != "symbolic") invalid("lambda", "expected \"symbolic\" or a list of numbers");
        } else {
            p.lambda = read_rats(l, "lambda", p.git.m);
        }
    }

    if (doc.contains("truncation")) {
        const Json& t = doc["truncation"];
        check_keys(t, "truncation", {"y_degree", "z_low", "z_high", "Q_degree"});
        if (t.contains("y_degree")) {
            long y = read_long(t["y_degree"], "truncation.y_degree");
            if (y < 0 || y > 12) invalid("truncation.y_degree", "expected 0..12");
            p.trunc.max_y_degree = int(y);
        }
        if (t.contains("z_low")) p.trunc.z_low = read_rat(t["z_low"], "truncation.z_low");
        if (t.contains("z_high")) p.trunc.z_high = read_rat(t["z_high"], "truncation.z_high");
        if (p.trunc.z_low > p.trunc.z_high) invalid("truncation", "z_low exceeds z_high");
        if (p.trunc.z_low < -12) invalid("truncation.z_low", "window deeper than z^-12 is not supported");
        if (t.contains("Q_degree")) {
            long qd = read_long(t["Q_degree"], "truncation.Q_degree");
            if (qd < 0) invalid("truncation.Q_degree", "must be nonnegative");
            p.trunc.max_Q_degree = int(qd);
        }
    }

    if (doc.contains("seed")) {
        Int s = read_int(doc["seed"], "seed");
        if (s < 0 || !s.fits_ulong_p()) invalid("seed", "expected a nonnegative 64-bit integer");
        p.seed = s.get_ui();
    }
    return p;
}

Problem parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemError("IOError", "cannot read " + path, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), std::filesystem::path(path).stem().string());
}

Json json_rat(const Rat& x) { return to_string(x); }

Json json_int(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Json json_rats(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(json_rat(x));
    return a;
}

Json json_ints(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(json_int(x));
    return a;
}

Json json_mask(Mask s) {
    Json a = Json::array();
    for (auto i : indices(s)) a.push_back(i + 1);
    return a;
}

Json json_cplx(cplx z) { return Json::array({z.real(), z.imag()}); }

Json problem_to_json(const Problem& p) {
    Json j;
    j["name"] = p.name;
    j["rank"] = p.git.r;
    Json chars = Json::array();
    for (std::size_t i = 0; i < p.git.m; ++i) chars.push_back(json_ints(p.git.character(i)));
    j["characters"] = chars;
    j["omega_plus"] = json_rats(p.omega_plus);
    j["omega_minus"] = p.omega_minus ? json_rats(*p.omega_minus) : Json();
    if (p.git.base.is_point) {
        j["base"] = {{"type", "point"}};
    } else {
        Json lam = Json::array();
        for (const auto& v : p.git.base.Lambda) lam.push_back(json_rats(v));
        Json J = Json::array();
        for (const auto& e : p.git.base.J) {
            Json zc = Json::array();
            for (const auto& [k, c] : e.z_coeffs) zc.push_back(Json::array({k, json_rat(c)}));
            J.push_back({{"D", json_ints(e.degree)}, {"z_coeffs", zc}});
        }
        j["base"] = {{"type", "table"}, {"H2_rank", p.git.base.h2_rank}, {"Lambda", lam}, {"J", J}};
    }
    j["lambda"] = p.lambda ? json_rats(*p.lambda) : Json("symbolic");
    j["truncation"] = {{"y_degree", p.trunc.max_y_degree},
                       {"z_low", json_rat(p.trunc.z_low)},
                       {"z_high", json_rat(p.trunc.z_high)},
                       {"Q_degree", p.trunc.max_Q_degree}};
    j["seed"] = p.seed;
    return j;
}

}  // namespace twc
