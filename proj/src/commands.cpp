#include "toricwc/commands.hpp"

#include "toricwc/continuation.hpp"
#include "toricwc/fan.hpp"
#include "toricwc/ktheory.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <set>

namespace twc {

namespace {

struct Checks {
    Json list = Json::array();
    bool pass = true;

    void add(const std::string& name, bool ok, std::optional<double> value = std::nullopt,
             std::optional<double> tol = std::nullopt) {
        Json c;
        c["name"] = name;
        c["pass"] = ok;
        if (value) c["value"] = *value;
        if (tol) c["tol"] = *tol;
        list.push_back(c);
        pass = pass && ok;
    }
};

struct Output {
    Json results;
    Checks checks;
};

using Handler = std::function<Output(const Problem&, const RunOptions&)>;

double tol_or(const RunOptions& opt, double fallback) { return opt.tol.value_or(fallback); }

std::uint64_t base_seed(const Problem& p, const RunOptions& opt) { return opt.seed.value_or(p.seed); }

struct Draw {
    std::optional<std::uint64_t> seed;  // absent for the problem's own lambda
    NumericParams params;
};

std::vector<Draw> draws_for(const Problem& p, const RunOptions& opt, int fallback) {
    std::vector<Draw> out;
    if (p.lambda) {
        Draw d;
        for (const auto& x : *p.lambda) d.params.lambda.push_back(to_double(x));
        d.params.h.assign(p.git.base.h2_rank, cplx(0.0));
        out.push_back(d);
        return out;
    }
    int n = opt.draws.value_or(fallback);
    if (n < 1) throw Error("InvalidArgument", "--draws must be positive");
    for (int i = 0; i < n; ++i) {
        std::uint64_t s = base_seed(p, opt) + std::uint64_t(i);
        out.push_back({s, draw_params(p.git, p.wall_data(), p.plus, s)});
    }
    return out;
}

Json json_draw(const Draw& d) {
    Json j;
    j["seed"] = d.seed ? Json(*d.seed) : Json("problem");
    Json lam = Json::array();
    for (auto x : d.params.lambda) lam.push_back(x.real());
    j["lambda"] = lam;
    if (!d.params.h.empty()) {
        Json h = Json::array();
        for (auto x : d.params.h) h.push_back(x.real());
        j["h"] = h;
    }
    return j;
}

Json json_point(const FixedPoint& fp) { return {{"delta", json_mask(fp.delta)}, {"f", json_rats(fp.f)}}; }

Json json_masks(const std::vector<Mask>& v) {
    Json a = Json::array();
    for (Mask s : v) a.push_back(json_mask(s));
    return a;
}

std::vector<std::pair<std::string, const Chamber*>> sides(const Problem& p) {
    std::vector<std::pair<std::string, const Chamber*>> out{{"plus", &p.plus}};
    if (p.minus) out.emplace_back("minus", &*p.minus);
    return out;
}

Json json_kexpr(const KExpr& x) {
    Json terms = Json::array();
    for (const auto& [k, c] : x.terms()) {
        Json lam = Json::array();
        for (long v : k.c) lam.push_back(v);
        terms.push_back({{"coefficient", json_rat(c)}, {"p", json_ints(k.p)}, {"lambda", lam}, {"t", k.t}});
    }
    return {{"text", x.str()}, {"terms", terms}};
}

std::vector<double> default_radii(const WallData& w, std::initializer_list<double> factors) {
    double c = std::abs(to_double(w.conifold));
    std::vector<double> r;
    for (double f : factors) r.push_back(f * c);
    return r;
}

// ------------------------------------------------------------------ commands

Output cmd_chambers(const Problem& p, const RunOptions&) {
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        Json normals = Json::array();
        for (const auto& n : ch->normals) normals.push_back(json_ints(n));
        o.results[name] = {{"omega", json_rats(ch->omega)},
                           {"anticone_count", ch->anticones.size()},
                           {"minimal_anticones", json_masks(ch->minimal)},
                           {"S", json_mask(ch->S)},
                           {"normals", normals}};
    }
    return o;
}

Output cmd_anticones(const Problem& p, const RunOptions&) {
    Output o;
    for (const auto& [name, ch] : sides(p))
        o.results[name] = {{"omega", json_rats(ch->omega)},
                           {"anticones", json_masks(ch->anticones)},
                           {"minimal", json_masks(ch->minimal)}};
    return o;
}

Output cmd_wall(const Problem& p, const RunOptions&) {
    const auto& w = p.wall_data();
    Output o;
    Json W = Json::array();
    for (const auto& v : w.W_basis) W.push_back(json_ints(v));
    Json pairs = Json::array();
    for (const auto& pr : pair_anticones(p.git, w, p.plus, p.minus_chamber()))
        pairs.push_back({{"delta_plus", json_mask(pr.dplus)},
                         {"delta_minus", json_mask(pr.dminus)},
                         {"j_plus", pr.jplus + 1},
                         {"j_minus", pr.jminus + 1},
                         {"l", json_int(w.l_of(pr.jminus))}});
    Json De = Json::array(), k = Json::array(), l = Json::array();
    for (std::size_t i = 0; i < w.De.size(); ++i) {
        De.push_back(json_int(w.De[i]));
        k.push_back(json_int(w.k[i]));
        l.push_back(json_int(w.l[i]));
    }
    o.results = {{"e", json_ints(w.e)},
                 {"W_basis", W},
                 {"De", De},
                 {"k", k},
                 {"l", l},
                 {"w", json_int(w.w)},
                 {"conifold", json_rat(w.conifold)},
                 {"plus_indices", json_mask(w.plus)},
                 {"minus_indices", json_mask(w.minus)},
                 {"wall_indices", json_mask(w.zero)},
                 {"omega0", json_rats(w.omega0)},
                 {"pairs", pairs}};
    return o;
}

Output cmd_boxes(const Problem& p, const RunOptions&) {
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        Json list = Json::array();
        for (const auto& k : k_classes(p.git, *ch))
            list.push_back(
                {{"f", json_rats(k.f)}, {"age", json_rat(k.age)}, {"I_f", json_mask(k.I_f)}, {"box", json_ints(k.box)}});
        o.results[name] = list;
    }
    return o;
}

Json json_stacky_fan(const ExtendedStackyFan& esf) {
    Json rays = Json::array();
    for (const auto& r : esf.fan.rays) rays.push_back(json_ints(r));
    Json cones = Json::array();
    for (const auto& c : esf.fan.max_cones) {
        Json idx = Json::array();
        for (auto i : c) idx.push_back(i);
        cones.push_back(idx);
    }
    Json torsion = Json::array();
    for (const auto& t : esf.N.torsion) torsion.push_back(json_int(t));
    Json b = Json::array();
    for (const auto& v : esf.b) b.push_back(json_ints(v));
    Json ray_char = Json::array();
    for (auto c : esf.ray_char) ray_char.push_back(c + 1);
    return {{"N", {{"free_rank", esf.N.free_rank}, {"torsion", torsion}}},
            {"beta", b},
            {"rays", rays},
            {"ray_characters", ray_char},
            {"max_cones", cones},
            {"S", json_mask(esf.S)}};
}

Output cmd_fan(const Problem& p, const RunOptions&) {
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        auto esf = to_stacky_fan(p.git, *ch);
        auto [g2, om2] = from_stacky_fan(esf);
        auto a = anticones(g2, om2);
        bool same = same_column_lattice(g2.D, p.git.D) &&
                    std::set<Mask>(a.begin(), a.end()) == std::set<Mask>(ch->anticones.begin(), ch->anticones.end());
        o.results[name] = json_stacky_fan(esf);
        o.results[name]["round_trip_omega"] = json_rats(om2);
        o.checks.add("fan_round_trip_" + name, same);
    }
    return o;
}

Output cmd_blowup(const Problem& p, const RunOptions&) {
    const auto& w = p.wall_data();
    const auto& minus = p.minus_chamber();
    auto b = blowup_git(p.git, w, p.plus, minus);
    Output o;
    Json chars = Json::array();
    for (std::size_t i = 0; i < b.git.m; ++i) chars.push_back(json_ints(b.git.character(i)));
    o.results = {{"characters", chars},
                 {"omega0", json_rats(b.omega0)},
                 {"epsilon", json_rat(b.epsilon)},
                 {"omega", json_rats(b.omega)},
                 {"minimal_anticones", json_masks(b.chamber.minimal)},
                 {"fan", json_stacky_fan(to_stacky_fan(b.git, b.chamber))}};
    // common fixed loci gain the exceptional index; paired ones merge
    std::set<Mask> expected;
    for (Mask d : p.plus.minimal)
        if (minus.is_anticone(d)) expected.insert(d | bit(p.git.m));
    for (const auto& pr : pair_anticones(p.git, w, p.plus, minus)) expected.insert(pr.dplus | pr.dminus);
    o.checks.add("blowup_fixed_loci",
                 std::set<Mask>(b.chamber.minimal.begin(), b.chamber.minimal.end()) == expected);
    return o;
}

Output cmd_restrictions(const Problem& p, const RunOptions&) {
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        Json list = Json::array();
        for (Mask d : ch->minimal) {
            Json U = Json::array();
            for (std::size_t j = 0; j < p.git.m; ++j) U.push_back(U_at(p.git, d, j).str());
            list.push_back({{"delta", json_mask(d)}, {"U", U}, {"rho", rho_at(p.git, d).str()}});
        }
        o.results[name] = list;
    }
    if (p.wall) {
        auto rep = verify_div_lemma(p.git, *p.wall, p.plus, *p.minus);
        o.results["divisor_lemma"] = {
            {"pairs", rep.pairs}, {"checks", rep.checks}, {"failures", rep.failures}};
        o.checks.add("divisor_lemma", rep.pass(), double(rep.failures.size()), 0.0);
    }
    return o;
}

Output series_listing(const Problem& p, const RunOptions& opt, bool i_function) {
    if (!p.git.base.is_point) throw Error("Unsupported", "series listings are implemented for a point base");
    SeriesTruncation t = p.trunc;
    if (opt.trunc_y) t.max_y_degree = *opt.trunc_y;
    if (opt.trunc_z) t.z_low = *opt.trunc_z;
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        SymbolicContext ctx(p.git);
        AdaptedBasis basis = series_basis(p.git, *ch);
        Json list = Json::array();
        for (Mask delta : ch->minimal) {
            long K = shell_bound(p.git, delta, basis, t.max_y_degree);
            for (const auto& ex : exponents_at(p.git, delta, std::nullopt, K)) {
                if (y_degree(basis, ex.d) > t.max_y_degree) continue;
                Int s = z_shift(p.git, ex.d);
                Rat top = -t.z_low - Rat(s);
                if (top < 0) continue;
                int W = int(to_long(floor_rat(top)));
                Series coeff = i_function ? i_coefficient(ctx, p.git, delta, ex.d, basis, W)
                                          : h_coefficient(ctx, p.git, delta, ex.d, basis, W, false);
                Json terms = Json::array();
                for (const auto& [mono, c] : coeff.terms()) {
                    if (i_function && (mono.z < t.z_low || mono.z > t.z_high)) continue;
                    terms.push_back({{"z", json_rat(mono.z)},
                                     {"monomial", to_string(mono, ctx.syms)},
                                     {"coefficient", json_rat(c)}});
                }
                RatVec f = ex.d;
                if (i_function)
                    for (auto& x : f) x = -x;
                list.push_back({{"delta", json_mask(delta)},
                                {"f", json_rats(reduce_mod_lattice(f))},
                                {"d", json_rats(ex.d)},
                                {"y", json_rats(monomial_exponents(basis, ex.d))},
                                {"Q_degree", 0},
                                {"weight_bound", W},
                                {"terms", terms}});
            }
        }
        o.results[name] = list;
    }
    o.results["truncation"] = {{"y_degree", t.max_y_degree}, {"z_low", json_rat(t.z_low)}, {"z_high", json_rat(t.z_high)}};
    return o;
}

Output cmd_hseries(const Problem& p, const RunOptions& opt) { return series_listing(p, opt, false); }
Output cmd_ifun(const Problem& p, const RunOptions& opt) { return series_listing(p, opt, true); }

Output cmd_verify_ih(const Problem& p, const RunOptions& opt) {
    SeriesTruncation t = p.trunc;
    if (opt.trunc_y) t.max_y_degree = *opt.trunc_y;
    if (opt.trunc_z) t.z_low = *opt.trunc_z;
    Output o;
    for (const auto& [name, ch] : sides(p)) {
        auto rep = verify_i_h_relation(p.git, *ch, t);
        o.results[name] = {{"fixed_points", rep.fixed_points},
                           {"exponents", rep.exponents},
                           {"coefficients", rep.coefficients},
                           {"mismatch_count", rep.mismatch_count},
                           {"mismatches", rep.mismatches},
                           {"homogeneous", rep.homogeneous}};
        o.checks.add("i_h_relation_" + name, rep.pass(), double(rep.mismatch_count), 0.0);
    }
    o.results["truncation"] = {{"y_degree", t.max_y_degree}, {"z_low", json_rat(t.z_low)}, {"z_high", json_rat(t.z_high)}};
    return o;
}

Output cmd_coeffs(const Problem& p, const RunOptions& opt) {
    const auto& w = p.wall_data();
    auto u = build_U_H(p.git, w, p.plus, p.minus_chamber());
    Output o;
    Json rows = Json::array(), cols = Json::array(), entries = Json::array();
    for (const auto& r : u.rows) rows.push_back(json_point(r));
    for (const auto& c : u.cols) cols.push_back(json_point(c));
    for (const auto& e : u.entries) {
        Json j = {{"row", e.row}, {"col", e.col}, {"identity", e.identity}};
        if (!e.identity) {
            j["delta_plus"] = json_mask(u.pairs[e.pair].dplus);
            j["delta_minus"] = json_mask(u.pairs[e.pair].dminus);
        }
        entries.push_back(j);
    }
    auto draw = draws_for(p, opt, 1).front();
    auto M = numeric_U_H(p.git, w, u, draw.params);
    Json values = Json::array();
    for (const auto& e : u.entries) values.push_back(json_cplx(M[e.row * u.cols.size() + e.col]));
    std::vector<RatVec> classes;
    for (const auto& v : w.W_basis) classes.push_back(to_rat(v));
    auto theta = verify_theta_commutation(p.git, u, classes);
    o.results = {{"rows", rows},
                 {"cols", cols},
                 {"entries", entries},
                 {"draw", json_draw(draw)},
                 {"values", values},
                 {"theta_commutation",
                  {{"classes", theta.classes}, {"entries_checked", theta.entries_checked}, {"failures", theta.failures}}}};
    if (!classes.empty()) o.checks.add("theta_commutation", theta.pass(), double(theta.failures.size()), 0.0);
    return o;
}

Output cmd_mb_verify(const Problem& p, const RunOptions& opt) {
    const auto& w = p.wall_data();
    const auto& minus = p.minus_chamber();
    double c = std::abs(to_double(w.conifold));
    std::vector<double> outside, inside;
    if (opt.y.empty()) {
        outside = default_radii(w, {1.5, 2.0, 4.0});
        inside = default_radii(w, {0.25, 0.5});
    } else {
        for (double y : opt.y) {
            if (!(y > 0)) throw Error("InvalidArgument", "--y samples must be positive");
            if (y == c) throw Error("InvalidArgument", "--y sample sits on the conifold radius");
            (y > c ? outside : inside).push_back(y);
        }
    }
    double theorem_tol = tol_or(opt, 1e-6), inside_tol = tol_or(opt, 1e-8);
    Output o;
    Json per_draw = Json::array();
    double max_dev = 0, max_two = 0, max_in = 0, max_gauss = 0;
    bool theorem_ok = true, inside_ok = true, gauss_ok = true, gauss = is_gauss_wall(p.git, w);
    for (const auto& d : draws_for(p, opt, 3)) {
        Json entry = {{"draw", json_draw(d)}};
        if (!outside.empty()) {
            TheoremOptions topt;
            topt.radii = outside;
            topt.tol = theorem_tol;
            auto rep = verify_wall_crossing(p.git, w, p.plus, minus, d.params, topt);
            Json rows = Json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"row", json_point(r.row)},
                                {"d_start", json_rats(r.dstart)},
                                {"radius", r.radius},
                                {"mb", json_cplx(r.mb_side)},
                                {"residues", json_cplx(r.residue_side)},
                                {"connection", json_cplx(r.closed_form_side)},
                                {"deviation", r.deviation},
                                {"two_route", r.two_route},
                                {"corrected_poles", r.corrected_poles},
                                {"quadrature_error", r.quadrature_error}});
            entry["outside"] = rows;
            max_dev = std::max(max_dev, rep.max_deviation);
            max_two = std::max(max_two, rep.max_two_route);
            theorem_ok = theorem_ok && rep.pass;
            if (gauss) {
                auto g = verify_gauss(p.git, w, p.plus, minus, d.params, outside, theorem_tol);
                Json grows = Json::array();
                for (const auto& r : g.rows)
                    grows.push_back({{"row", json_point(r.row)},
                                     {"radius", r.radius},
                                     {"gauss", json_cplx(r.gauss)},
                                     {"deviation", r.deviation}});
                entry["gauss"] = grows;
                max_gauss = std::max(max_gauss, g.max_deviation);
                gauss_ok = gauss_ok && g.pass;
            }
        }
        if (!inside.empty()) {
            auto rep = verify_inside_radius(p.git, w, p.plus, minus, d.params, inside, inside_tol);
            Json rows = Json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"row", json_point(r.row)},
                                {"radius", r.radius},
                                {"mb", json_cplx(r.mb)},
                                {"right_residues", json_cplx(r.right)},
                                {"restriction", json_cplx(r.restriction)},
                                {"deviation", r.deviation}});
            entry["inside"] = rows;
            max_in = std::max(max_in, rep.max_deviation);
            inside_ok = inside_ok && rep.pass;
        }
        per_draw.push_back(entry);
    }
    o.results = {{"conifold_radius", c}, {"outside_radii", outside}, {"inside_radii", inside}, {"draws", per_draw}};
    if (!outside.empty()) {
        o.checks.add("continuation", theorem_ok, max_dev, theorem_tol);
        o.checks.add("continuation_two_route", max_two < theorem_tol, max_two, theorem_tol);
        if (gauss) o.checks.add("gauss_connection", gauss_ok, max_gauss, theorem_tol);
    }
    if (!inside.empty()) o.checks.add("inside_radius", inside_ok, max_in, inside_tol);
    return o;
}

Output cmd_fm(const Problem& p, const RunOptions&) {
    const auto& w = p.wall_data();
    const auto& minus = p.minus_chamber();
    Output o;
    Json list = Json::array();
    for (const auto& b : basis_elements(p.git, minus))
        list.push_back({{"delta", json_mask(b.delta)},
                        {"rho_hat", json_ints(b.rho_hat)},
                        {"common", p.plus.is_anticone(b.delta)},
                        {"element", json_kexpr(basis_expr(p.git, b))},
                        {"image", json_kexpr(fm_transform(p.git, w, p.plus, minus, b))}});
    o.results["images"] = list;
    return o;
}

Output cmd_verify_fm(const Problem& p, const RunOptions& opt) {
    const auto& w = p.wall_data();
    FMOptions fo;
    fo.tol = tol_or(opt, 1e-9);
    auto ds = draws_for(p, opt, 20);
    std::vector<NumericParams> params;
    Json draws = Json::array();
    for (const auto& d : ds) {
        params.push_back(d.params);
        draws.push_back(json_draw(d));
    }
    auto rep = verify_fm(p.git, w, p.plus, p.minus_chamber(), params, fo);
    Output o;
    Json entries = Json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"delta", json_mask(e.element.delta)},
                           {"rho_hat", json_ints(e.element.rho_hat)},
                           {"at", json_point(e.at)},
                           {"adjacent", e.adjacent},
                           {"lhs", json_cplx(e.lhs)},
                           {"rhs", json_cplx(e.rhs)},
                           {"deviation", e.deviation}});
    o.results = {{"draws", draws},
                 {"entries", entries},
                 {"max_deviation", rep.max_deviation},
                 {"support", {{"max", rep.max_support}, {"exact_zero", rep.support_exact_zero}, {"checked", rep.support_checked}}},
                 {"prefactor_identity", {{"checked", rep.subidentity_a_checked}, {"failures", rep.subidentity_a_failures}}},
                 {"prefactor_against_C", rep.max_subidentity_b},
                 {"common", {{"checked", rep.common_checked}, {"failures", rep.common_failures}}}};
    o.checks.add("fm_chern", !rep.entries.empty() && rep.max_deviation < fo.tol, rep.max_deviation, fo.tol);
    o.checks.add("fm_support", rep.max_support < 1e-12, rep.max_support, 1e-12);
    o.checks.add("fm_prefactor", rep.subidentity_a_failures.empty() && rep.max_subidentity_b < 1e-10,
                 rep.max_subidentity_b, 1e-10);
    o.checks.add("fm_common", rep.common_failures.empty(), double(rep.common_failures.size()), 0.0);
    return o;
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"chambers", cmd_chambers},   {"anticones", cmd_anticones},       {"wall", cmd_wall},
        {"boxes", cmd_boxes},         {"fan", cmd_fan},                   {"blowup", cmd_blowup},
        {"restrictions", cmd_restrictions}, {"hseries", cmd_hseries},     {"ifun", cmd_ifun},
        {"verify-ih", cmd_verify_ih}, {"coeffs", cmd_coeffs},             {"mb-verify", cmd_mb_verify},
        {"fm", cmd_fm},               {"verify-fm", cmd_verify_fm}};
    return h;
}

const Handler* find_handler(const std::string& name) {
    for (const auto& [n, h] : handlers())
        if (n == name) return &h;
    return nullptr;
}

Json error_block(const std::exception& e) {
    Json err;
    if (const auto* pe = dynamic_cast<const ProblemError*>(&e)) {
        err["code"] = pe->code();
        err["message"] = pe->what();
        if (!pe->field().empty()) err["field"] = pe->field();
        if (pe->line() > 0) {
            err["line"] = pe->line();
            err["column"] = pe->column();
        }
        if (!pe->hint().empty()) err["hint"] = pe->hint();
    } else if (const auto* te = dynamic_cast<const Error*>(&e)) {
        err["code"] = te->code();
        err["message"] = te->what();
    } else {
        err["code"] = "InternalError";
        err["message"] = e.what();
    }
    return err;
}

// Commands whose checks make up `all`; a missing wall or an unsupported base skips them.
const std::vector<std::string> kSuite = {"fan", "blowup", "restrictions", "verify-ih", "coeffs", "mb-verify", "verify-fm"};

Output run_suite(const Problem& p, const RunOptions& opt) {
    auto run_one = [&](const std::string& name) {
        try {
            return std::pair<Json, std::optional<Output>>{Json(), (*find_handler(name))(p, opt)};
        } catch (const std::exception& e) {
            return std::pair<Json, std::optional<Output>>{error_block(e), std::nullopt};
        }
    };
    std::vector<std::pair<Json, std::optional<Output>>> done(kSuite.size());
    std::size_t batch = std::size_t(std::max(1, opt.parallel));
    for (std::size_t i = 0; i < kSuite.size(); i += batch) {
        std::vector<std::future<std::pair<Json, std::optional<Output>>>> jobs;
        for (std::size_t k = i; k < std::min(kSuite.size(), i + batch); ++k)
            jobs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, run_one, kSuite[k]));
        for (std::size_t k = 0; k < jobs.size(); ++k) done[i + k] = jobs[k].get();
    }
    Output o;
    for (std::size_t i = 0; i < kSuite.size(); ++i) {
        auto& [err, out] = done[i];
        Json entry;
        if (out) {
            entry["checks"] = out->checks.list;
            entry["pass"] = out->checks.pass;
            for (const auto& c : out->checks.list) {
                Json tagged = {{"command", kSuite[i]}};
                tagged.update(c);
                o.checks.list.push_back(tagged);
            }
            o.checks.pass = o.checks.pass && out->checks.pass;
        } else if (err["code"] == "MissingWall" || err["code"] == "Unsupported") {
            entry["skipped"] = err;
        } else {
            entry["error"] = err;
            entry["pass"] = false;
            o.checks.add(kSuite[i], false);
        }
        o.results[kSuite[i]] = entry;
    }
    return o;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, _] : handlers()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

Json options_to_json(const RunOptions& opt) {
    Json j;
    j["tol"] = opt.tol ? Json(*opt.tol) : Json();
    j["draws"] = opt.draws ? Json(*opt.draws) : Json();
    j["y"] = opt.y;
    j["seed"] = opt.seed ? Json(*opt.seed) : Json();
    j["trunc_y"] = opt.trunc_y ? Json(*opt.trunc_y) : Json();
    j["trunc_z"] = opt.trunc_z ? json_rat(*opt.trunc_z) : Json();
    return j;
}

Json run_command(const std::string& command, const Problem& problem, const RunOptions& opt) {
    const Handler* h = command == "all" ? nullptr : find_handler(command);
    if (!h && command != "all") throw Error("UnknownCommand", "unknown command '" + command + "'");
    Json report;
    report["schema"] = 1;
    report["command"] = command;
    report["problem"] = problem_to_json(problem);
    report["options"] = options_to_json(opt);
    report["seed"] = base_seed(problem, opt);
    report["rng"] = "mt19937_64, lambda_j = k/1000 with k uniform in [-1000, 1000], seed + i for draw i";
    try {
        Output out = h ? (*h)(problem, opt) : run_suite(problem, opt);
        report["results"] = out.results;
        report["checks"] = out.checks.list;
        report["pass"] = out.checks.pass;
    } catch (const std::exception& e) {
        report["checks"] = Json::array();
        report["pass"] = false;
        report["error"] = error_block(e);
    }
    return report;
}

Json error_report(const std::string& command, const std::exception& e) {
    Json report;
    report["schema"] = 1;
    report["command"] = command;
    report["checks"] = Json::array();
    report["pass"] = false;
    report["error"] = error_block(e);
    return report;
}

}  // namespace twc
