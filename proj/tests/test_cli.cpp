#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toricwc/problem.hpp"
#include "toricwc/toricwc.h"

#include <string>

using namespace twc;

namespace {

std::string problem_path(const std::string& name) { return std::string(TWC_PROBLEM_DIR) + "/" + name + ".json"; }

struct Loaded {
    twc_problem* problem = nullptr;
    twc_status status = TWC_OK;
    Json error;

    explicit Loaded(const std::string& text) {
        char* err = nullptr;
        status = twc_problem_parse(text.c_str(), "inline", &problem, &err);
        if (err) {
            error = Json::parse(err)["error"];
            twc_string_free(err);
        }
    }
    ~Loaded() { twc_problem_free(problem); }
};

struct Run {
    twc_status status;
    std::string text;
    Json report;
};

Run run(const std::string& name, const std::string& command, const std::string& options = "") {
    twc_problem* p = nullptr;
    REQUIRE(twc_problem_load(problem_path(name).c_str(), &p, nullptr) == TWC_OK);
    char* out = nullptr;
    Run r;
    r.status = twc_run(p, command.c_str(), options.empty() ? nullptr : options.c_str(), &out);
    REQUIRE(out != nullptr);
    r.text = out;
    r.report = Json::parse(out);
    twc_string_free(out);
    twc_problem_free(p);
    return r;
}

const char* kMinimal = R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": [1]})";

}  // namespace

TEST_CASE("bundled problems parse") {
    auto flop = parse_problem(problem_path("flop"));
    CHECK(flop.git.r == 1);
    CHECK(flop.git.m == 4);
    CHECK(flop.git.D == IntMatrix::from_rows({{Int(1)}, {Int(1)}, {Int(-1)}, {Int(-1)}}, 1));
    CHECK(flop.wall);
    CHECK(flop.name == "flop");
    for (const char* name : {"c3z3", "rank2", "p1", "gerbe", "flop_bundle"}) CHECK_NOTHROW(parse_problem(problem_path(name)));
    auto bundle = parse_problem(problem_path("flop_bundle"));
    CHECK_FALSE(bundle.git.base.is_point);
    CHECK(bundle.git.base.Lambda[2] == RatVec{Rat(-2)});
}

TEST_CASE("problem echo round-trips") {
    for (const char* name : {"flop", "c3z3", "rank2", "p1", "gerbe", "flop_bundle"}) {
        auto p = parse_problem(problem_path(name));
        Json echo = problem_to_json(p);
        echo["schema"] = 1;
        auto again = parse_problem_text(echo.dump(), name);
        CHECK(problem_to_json(again) == problem_to_json(p));
    }
}

TEST_CASE("rationals and defaults") {
    auto p = parse_problem_text(
        R"({"schema": 1, "rank": 2, "characters": [[1,0],[1,0],[-1,1],[-1,1],[0,1]],
            "omega_plus": ["1/2", 1], "omega_minus": [-0.5, "1"], "lambda": [0.1, "1/3", -1, 0, 2],
            "truncation": {"z_low": "-3"}, "seed": 42})");
    CHECK(p.omega_plus == RatVec{make_rat(1, 2), Rat(1)});
    CHECK(*p.omega_minus == RatVec{make_rat(-1, 2), Rat(1)});
    CHECK((*p.lambda)[0] == make_rat(1, 10));
    CHECK((*p.lambda)[1] == make_rat(1, 3));
    CHECK(p.trunc.z_low == -3);
    CHECK(p.trunc.z_high == 1);
    CHECK(p.trunc.max_y_degree == 2);
    CHECK(p.seed == 42);
    CHECK(problem_to_json(p)["omega_minus"] == Json::array({"-1/2", "1"}));
}

TEST_CASE("validation errors carry the field path") {
    auto field_of = [](const std::string& text) {
        Loaded l(text);
        CHECK(l.problem == nullptr);
        return std::pair{l.status, l.error.value("field", std::string())};
    };
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1.5]], "omega_plus": [1]})") ==
          std::pair{TWC_ERR_VALIDATION, std::string("characters[1][0]")});
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], ["1/2"]], "omega_plus": [1]})").second ==
          "characters[1][0]");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1, 0]], "omega_plus": [1]})").second ==
          "characters[1]");
    CHECK(field_of(R"({"schema": 2, "rank": 1, "characters": [[1], [1]], "omega_plus": [1]})").second == "schema");
    CHECK(field_of(R"({"rank": 1, "characters": [[1], [1]], "omega_plus": [1]})").second == "schema");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": ["x"]})").second ==
          "omega_plus[0]");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": [1], "lamda": 1})").second ==
          "lamda");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": [1], "lambda": [1]})")
              .second == "lambda");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": [1],
                       "base": {"type": "table", "H2_rank": 1, "Lambda": [[1]]}})")
              .second == "base.Lambda");
    CHECK(field_of(R"({"schema": 1, "rank": 1, "characters": [[1], [1]], "omega_plus": [1],
                       "truncation": {"z_low": 2, "z_high": 1}})")
              .second == "truncation");
}

TEST_CASE("stability on a wall is reported with a hint") {
    Loaded l(R"({"schema": 1, "rank": 2, "characters": [[1,0],[1,0],[-1,1],[-1,1],[0,1]], "omega_plus": [0, 1]})");
    CHECK(l.status == TWC_ERR_VALIDATION);
    CHECK(l.error["code"] == "DegenerateStability");
    CHECK(l.error["field"] == "omega_plus");
    CHECK(l.error.contains("hint"));
    Loaded same(R"({"schema": 1, "rank": 1, "characters": [[1],[1],[-1],[-1]], "omega_plus": [1], "omega_minus": [2]})");
    CHECK(same.status == TWC_ERR_VALIDATION);
    CHECK(same.error["field"] == "omega_minus");
}

TEST_CASE("malformed JSON reports line and column") {
    Loaded l("{\"schema\": 1,\n \"rank\": 1,\n \"characters\": [[1] [1]]}");
    CHECK(l.status == TWC_ERR_PARSE);
    CHECK(l.error["code"] == "ParseError");
    CHECK(l.error["line"] == 3);
    CHECK(l.error["column"] == 21);
    twc_problem* p = nullptr;
    char* err = nullptr;
    CHECK(twc_problem_load("/nonexistent/problem.json", &p, &err) == TWC_ERR_PARSE);
    CHECK(Json::parse(err)["error"]["code"] == "IOError");
    twc_string_free(err);
}

TEST_CASE("C API argument checks") {
    CHECK(twc_problem_parse(nullptr, nullptr, nullptr, nullptr) == TWC_ERR_ARGUMENT);
    Loaded l(kMinimal);
    REQUIRE(l.status == TWC_OK);
    CHECK(twc_run(l.problem, "wall", nullptr, nullptr) == TWC_ERR_ARGUMENT);
    CHECK(std::string(twc_status_name(TWC_CHECK_FAILED)) == "check_failed");
    CHECK(twc_command_count() == 15);
    CHECK(std::string(twc_command_name(twc_command_count() - 1)) == "all");
    CHECK(twc_command_name(99) == nullptr);
}

TEST_CASE("unknown commands and bad options") {
    Loaded l(kMinimal);
    char* out = nullptr;
    CHECK(twc_run(l.problem, "frobnicate", nullptr, &out) == TWC_ERR_UNKNOWN_COMMAND);
    CHECK(Json::parse(out)["error"]["code"] == "UnknownCommand");
    twc_string_free(out);
    CHECK(twc_run(l.problem, "chambers", R"({"tolerance": 1})", &out) == TWC_ERR_VALIDATION);
    CHECK(Json::parse(out)["error"]["code"] == "InvalidArgument");
    twc_string_free(out);
    CHECK(twc_run(l.problem, "chambers", R"({"tol": -1})", &out) == TWC_ERR_VALIDATION);
    twc_string_free(out);
    CHECK(twc_run(l.problem, "wall", nullptr, &out) == TWC_ERR_VALIDATION);
    CHECK(Json::parse(out)["error"]["code"] == "MissingWall");
    twc_string_free(out);
}

TEST_CASE("wall report") {
    auto r = run("flop", "wall");
    CHECK(r.status == TWC_OK);
    const auto& w = r.report["results"];
    CHECK(w["e"] == Json::array({1}));
    CHECK(w["w"] == 1);
    CHECK(w["k"] == Json::array({1, 1, 0, 0}));
    CHECK(w["conifold"] == "1");
    CHECK(w["pairs"].size() == 4);
    auto c = run("c3z3", "wall");
    CHECK(c.report["results"]["conifold"] == "-1/27");
    CHECK(c.report["results"]["w"] == 2);
    CHECK(c.report["results"]["pairs"][0]["l"] == 3);
}

TEST_CASE("boxes and fans") {
    auto b = run("c3z3", "boxes");
    Json ages = Json::array();
    for (const auto& k : b.report["results"]["minus"]) ages.push_back(k["age"]);
    CHECK(ages == Json::array({"0", "1", "2"}));
    auto f = run("gerbe", "fan");
    CHECK(f.status == TWC_OK);
    CHECK(f.report["results"]["plus"]["N"]["torsion"] == Json::array({2}));
    auto bl = run("flop", "blowup");
    CHECK(bl.status == TWC_OK);
    CHECK(bl.report["results"]["minimal_anticones"].size() == 4);
}

TEST_CASE("series listings") {
    auto h = run("p1", "hseries");
    CHECK(h.status == TWC_OK);
    // d = 0, 1 at each fixed point: z-shift 2d leaves d <= 1 in the window
    CHECK(h.report["results"]["plus"].size() == 4);
    auto i = run("p1", "ifun", R"({"trunc_y": 1, "trunc_z": "-1"})");
    CHECK(i.report["results"]["truncation"]["z_low"] == "-1");
    for (const auto& entry : i.report["results"]["plus"])
        for (const auto& t : entry["terms"]) CHECK(parse_rat(t["z"].get<std::string>()) >= -1);
    CHECK(run("flop_bundle", "hseries").status == TWC_ERR_MODULE);
}

TEST_CASE("verification commands pass on the bundled examples") {
    auto fm = run("c3z3", "verify-fm", R"({"draws": 20, "tol": 1e-9})");
    CHECK(fm.status == TWC_OK);
    CHECK(fm.report["results"]["draws"].size() == 20);
    CHECK(fm.report["checks"][0]["tol"] == 1e-9);
    auto mb = run("flop", "mb-verify", R"({"y": [2.0], "tol": 1e-6})");
    CHECK(mb.status == TWC_OK);
    std::set<std::string> names;
    for (const auto& c : mb.report["checks"]) names.insert(c["name"]);
    CHECK(names == std::set<std::string>{"continuation", "continuation_two_route", "gauss_connection"});
    CHECK(run("rank2", "coeffs").report["results"]["theta_commutation"]["entries_checked"] == 8);
    CHECK(run("flop", "verify-ih").status == TWC_OK);
    CHECK(run("rank2", "restrictions").status == TWC_OK);
}

TEST_CASE("a tolerance below the achievable accuracy fails the check") {
    auto r = run("rank2", "verify-fm", R"({"draws": 3, "tol": 1e-30})");
    CHECK(r.status == TWC_CHECK_FAILED);
    CHECK(r.report["pass"] == false);
}

TEST_CASE("reports are deterministic") {
    for (const char* cmd : {"verify-fm", "mb-verify", "coeffs", "all"}) {
        auto a = run("c3z3", cmd), b = run("c3z3", cmd);
        CHECK(a.text == b.text);
    }
    auto p1 = run("rank2", "all"), p4 = run("rank2", "all", R"({"parallel": 4})");
    CHECK(p1.report["results"] == p4.report["results"]);
    auto s1 = run("flop", "verify-fm", R"({"seed": 7, "draws": 2})");
    CHECK(s1.report["seed"] == 7);
    CHECK(s1.report["results"]["draws"][1]["seed"] == 8);
}

TEST_CASE("all skips what a problem cannot support") {
    auto r = run("p1", "all");
    CHECK(r.status == TWC_OK);
    CHECK(r.report["results"]["verify-fm"].contains("skipped"));
    CHECK(r.report["results"]["verify-ih"]["pass"] == true);
    auto b = run("flop_bundle", "all");
    CHECK(b.status == TWC_OK);
    CHECK(b.report["results"]["verify-ih"]["skipped"]["code"] == "Unsupported");
}

TEST_CASE("explicit lambda replaces the seeded draws") {
    auto p = parse_problem(problem_path("flop"));
    Json j = problem_to_json(p);
    j["schema"] = 1;
    j["lambda"] = Json::array({"0.31", "-0.17", "0.53", "0.07"});
    Loaded l(j.dump());
    REQUIRE(l.status == TWC_OK);
    char* out = nullptr;
    CHECK(twc_run(l.problem, "verify-fm", nullptr, &out) == TWC_OK);
    auto rep = Json::parse(out);
    twc_string_free(out);
    CHECK(rep["results"]["draws"].size() == 1);
    CHECK(rep["results"]["draws"][0]["seed"] == "problem");
}
