#include "toricwc/toricwc.h"

#include "toricwc/commands.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>

struct twc_problem {
    twc::Problem problem;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

char* dump(const twc::Json& j) { return dup_string(j.dump(2) + "\n"); }

twc_status status_of(const std::string& code) {
    if (code == "ParseError" || code == "IOError") return TWC_ERR_PARSE;
    if (code == "ValidationError" || code == "InvalidArgument" || code == "DegenerateStability" ||
        code == "NotAdjacent" || code == "NotCrepant" || code == "MissingWall")
        return TWC_ERR_VALIDATION;
    if (code == "UnknownCommand") return TWC_ERR_UNKNOWN_COMMAND;
    return TWC_ERR_MODULE;
}

twc_status load(const std::function<twc::Problem()>& parse, twc_problem** problem, char** error_report) {
    if (!problem) return TWC_ERR_ARGUMENT;
    *problem = nullptr;
    if (error_report) *error_report = nullptr;
    try {
        *problem = new twc_problem{parse()};
        return TWC_OK;
    } catch (const twc::Error& e) {
        if (error_report) *error_report = dump(twc::error_report("load", e));
        return status_of(e.code());
    } catch (const std::exception& e) {
        if (error_report) *error_report = dump(twc::error_report("load", e));
        return TWC_ERR_MODULE;
    }
}

twc::RunOptions parse_options(const char* text) {
    twc::RunOptions opt;
    if (!text || !*text) return opt;
    twc::Json j;
    try {
        j = twc::Json::parse(text);
    } catch (const twc::Json::parse_error&) {
        throw twc::Error("InvalidArgument", "options are not valid JSON");
    }
    if (!j.is_object()) throw twc::Error("InvalidArgument", "options must be a JSON object");
    try {
        for (const auto& [k, v] : j.items()) {
            if (v.is_null()) continue;
            if (k == "tol") opt.tol = v.get<double>();
            else if (k == "draws") opt.draws = v.get<int>();
            else if (k == "y") opt.y = v.get<std::vector<double>>();
            else if (k == "seed") opt.seed = v.get<std::uint64_t>();
            else if (k == "trunc_y") opt.trunc_y = v.get<int>();
            else if (k == "trunc_z") opt.trunc_z = v.is_string() ? twc::parse_rat(v.get<std::string>()) : twc::Rat(v.get<long>());
            else if (k == "parallel") opt.parallel = v.get<int>();
            else throw twc::Error("InvalidArgument", "unknown option '" + k + "'");
        }
    } catch (const twc::Json::exception& e) {
        throw twc::Error("InvalidArgument", std::string("bad option value: ") + e.what());
    }
    if (opt.tol && !(*opt.tol > 0)) throw twc::Error("InvalidArgument", "tol must be positive");
    if (opt.trunc_y && (*opt.trunc_y < 0 || *opt.trunc_y > 12)) throw twc::Error("InvalidArgument", "trunc_y must be in 0..12");
    if (opt.trunc_z && *opt.trunc_z < -12) throw twc::Error("InvalidArgument", "trunc_z below -12 is not supported");
    if (opt.parallel < 1) throw twc::Error("InvalidArgument", "parallel must be at least 1");
    return opt;
}

}  // namespace

extern "C" {

const char* twc_version(void) { return "0.1.0"; }

const char* twc_status_name(twc_status status) {
    switch (status) {
        case TWC_OK: return "ok";
        case TWC_CHECK_FAILED: return "check_failed";
        case TWC_ERR_PARSE: return "parse_error";
        case TWC_ERR_VALIDATION: return "validation_error";
        case TWC_ERR_UNKNOWN_COMMAND: return "unknown_command";
        case TWC_ERR_MODULE: return "module_error";
        case TWC_ERR_ARGUMENT: return "argument_error";
    }
    return "unknown";
}

int twc_command_count(void) { return int(twc::command_names().size()); }

const char* twc_command_name(int index) {
    const auto& names = twc::command_names();
    if (index < 0 || std::size_t(index) >= names.size()) return nullptr;
    return names[std::size_t(index)].c_str();
}

twc_status twc_problem_load(const char* path, twc_problem** problem, char** error_report) {
    if (!path) return TWC_ERR_ARGUMENT;
    return load([&] { return twc::parse_problem(path); }, problem, error_report);
}

twc_status twc_problem_parse(const char* json_text, const char* origin, twc_problem** problem, char** error_report) {
    if (!json_text) return TWC_ERR_ARGUMENT;
    return load([&] { return twc::parse_problem_text(json_text, origin ? origin : "problem"); }, problem,
                error_report);
}

void twc_problem_free(twc_problem* problem) { delete problem; }

twc_status twc_run(const twc_problem* problem, const char* command, const char* options_json, char** report) {
    if (!problem || !command || !report) return TWC_ERR_ARGUMENT;
    *report = nullptr;
    twc::Json out;
    try {
        out = twc::run_command(command, problem->problem, parse_options(options_json));
    } catch (const twc::Error& e) {
        *report = dump(twc::error_report(command, e));
        return status_of(e.code());
    } catch (const std::exception& e) {
        *report = dump(twc::error_report(command, e));
        return TWC_ERR_MODULE;
    }
    *report = dump(out);
    if (out.contains("error")) return status_of(out["error"]["code"].get<std::string>());
    return out["pass"].get<bool>() ? TWC_OK : TWC_CHECK_FAILED;
}

char* twc_error_report(const char* command, const char* code, const char* message) {
    twc::Error e(code ? code : "InvalidArgument", message ? message : "");
    return dump(twc::error_report(command ? command : "", e));
}

void twc_string_free(char* s) { std::free(s); }

}  // extern "C"
