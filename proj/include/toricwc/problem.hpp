#pragma once
// Problem files (JSON, schema 1): parsing, validation and the normalized echo.

#include "toricwc/series.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>

namespace twc {

using Json = nlohmann::ordered_json;

/// Parse or validation failure with the offending field path ("characters[2][0]")
/// or, for malformed JSON, the line and column.
class ProblemError : public Error {
  public:
    ProblemError(std::string code, const std::string& msg, std::string field, long line = 0, long column = 0,
                 std::string hint = {})
        : Error(std::move(code), msg), field_(std::move(field)), line_(line), column_(column),
          hint_(std::move(hint)) {}
    const std::string& field() const { return field_; }
    long line() const { return line_; }
    long column() const { return column_; }
    const std::string& hint() const { return hint_; }

  private:
    std::string field_;
    long line_, column_;
    std::string hint_;
};

struct Problem {
    std::string name;
    GitData git;
    RatVec omega_plus;
    std::optional<RatVec> omega_minus;
    std::optional<RatVec> lambda;  // numeric equivariant parameters; symbolic when absent
    SeriesTruncation trunc;
    std::uint64_t seed = 1;

    Chamber plus;
    std::optional<Chamber> minus;
    std::optional<WallData> wall;

    /// Throws Error("MissingWall") when no omega_minus was given.
    const Chamber& minus_chamber() const;
    const WallData& wall_data() const;
};

/// `origin` names the source in messages and becomes the problem name.
Problem parse_problem_text(const std::string& text, const std::string& origin = "problem");
Problem parse_problem(const std::string& path);
/// Normalized input: rationals as "p/q" strings, defaults filled in.
Json problem_to_json(const Problem& p);

Json json_rat(const Rat& x);
Json json_int(const Int& x);
Json json_rats(const RatVec& v);
Json json_ints(const IntVec& v);
/// 1-based index list.
Json json_mask(Mask s);
Json json_cplx(cplx z);

}  // namespace twc
