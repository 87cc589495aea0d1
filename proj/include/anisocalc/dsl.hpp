#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "anisocalc/appsuite.hpp"
#include "anisocalc/errors.hpp"
#include "anisocalc/psolver.hpp"

namespace anisocalc {

/// Aliases a query can refer to: domains (slice dimension tuples), value
/// spaces and named spaces, plus the registered products.
struct Prelude {
  std::map<std::string, std::vector<int>> domains;
  std::map<std::string, TargetSpace> targets;
  std::map<std::string, std::string> spaces;  // name -> space text
  SignatureRegistry registry;

  /// J = 1 and the value spaces R, C and Lp.
  static Prelude standard();
  /// standard() plus Sigma = n-1, Rdot = n and Rn = n.
  static Prelude for_dimension(int n);

  /// Directives, one per line:
  ///   domain NAME = k | (k1,...,kv)
  ///   target NAME [umd] [alpha] [algebra] [unital]
  ///   space NAME = SPACE
  ///   signature A * B -> C
  void load(const std::string& text);
};

struct IndexPayload { SpaceDescr space; };
struct SolvePayload { DecisionQuery query; };
struct InterpPayload {
  bool real = false;
  Rational theta;
  std::optional<Rational> y;  // 1/q for the real method; empty means q = p
  SpaceDescr a, b;
};
struct RealizePayload { std::vector<Rational> sigma, pi; Rational rho; };
struct MinimizePayload { std::vector<Rational> sigma, pi; long n = 0; };
struct SeminormPayload {
  std::string function = "gaussian";  // gaussian | modulated
  Rational width = Rational(1);
  Rational freq = Rational(0);
  SpaceDescr space;
  std::vector<Rational> lambdas{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)};
  Rational spacing = Rational(1, 100);
  Rational decay = Rational(20);
};
struct AppPayload { bool stefan = true; int n = 3; std::optional<Rational> p; };

using QueryPayload = std::variant<IndexPayload, DecisionQuery, SolvePayload, InterpPayload, RealizePayload,
                                  MinimizePayload, SeminormPayload, AppPayload>;

struct Query {
  QueryPayload payload;
  /// index, embed, mult, multiplier, algebra, nemytskij, solve-p, interp,
  /// realize, minimize, seminorm or app.
  std::string kind() const;
  friend bool operator==(const Query& a, const Query& b);
};

bool operator==(const IndexPayload& a, const IndexPayload& b);
bool operator==(const SolvePayload& a, const SolvePayload& b);
bool operator==(const InterpPayload& a, const InterpPayload& b);
bool operator==(const RealizePayload& a, const RealizePayload& b);
bool operator==(const MinimizePayload& a, const MinimizePayload& b);
bool operator==(const SeminormPayload& a, const SeminormPayload& b);
bool operator==(const AppPayload& a, const AppPayload& b);

SpaceDescr parse_space(const std::string& text, const Prelude& prelude = Prelude::standard());
/// Throws ParseError with the position of the offending character.
Query parse_query(const std::string& text, const Prelude& prelude = Prelude::standard());
/// Inverse of parse_query under the same prelude.
std::string format(const Query& q);

/// One query per line; blank lines and '#' comments are skipped. Parse
/// errors report the line inside `text`.
struct QueryLine {
  int line = 0;
  std::string text;
};
std::vector<QueryLine> split_query_file(const std::string& text);

struct ReportError {
  ErrorKind kind;
  std::string message;
  std::string anchor;
};

struct Report {
  std::string query;
  std::string kind;
  std::optional<Verdict> verdict;
  std::vector<std::string> value;
  std::vector<TraceEntry> trace;
  std::optional<ParamSet> params;
  nlohmann::json details;  // kind-specific structured output
  std::optional<ReportError> error;
  double millis = 0;

  /// 0 success or COVERED, 1 NOT_COVERED, 2 parse error, 3 engine error.
  int exit_code() const;
};

struct RunOptions {
  std::optional<Rational> p;  // binds p in non-solve queries
  bool csv = false;           // seminorm: append the (lambda, seminorm) table
};

Report run(const Query& q, const Prelude& prelude, const RunOptions& opts = {});
/// Parses and runs; parse failures become reports with exit code 2.
Report run_text(const std::string& text, const Prelude& prelude, const RunOptions& opts = {});

inline constexpr const char* kReportSchema = "anisocalc.report/1";

std::string render_text(const Report& r);
/// Timing is left out when `with_timing` is false so outputs are stable.
nlohmann::json to_json(const Report& r, bool with_timing = true);
nlohmann::json to_json(const ParamSet& s);

}  // namespace anisocalc
