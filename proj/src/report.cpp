#include <chrono>
#include <cmath>
#include <sstream>

#include "anisocalc/dsl.hpp"
#include "anisocalc/embed.hpp"
#include "anisocalc/lemmas.hpp"
#include "anisocalc/normlab.hpp"

namespace anisocalc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_symbolic(const DecisionQuery& q) {
  for (const auto& sp : spaces_of(q))
    if (sp.symbolic()) return true;
  return false;
}

// Binds p when the caller supplied one; refuses leftover symbolic queries.
DecisionQuery bind(const DecisionQuery& q, const RunOptions& opts) {
  if (!is_symbolic(q)) return q;
  if (!opts.p)
    throw EngineError(ErrorKind::Unsupported, "the query depends on p; bind it with --p or ask 'solve p: ...'");
  return substitute(q, Rational(1) / *opts.p);
}

SpaceDescr bind(const SpaceDescr& sp, const RunOptions& opts) {
  if (!sp.symbolic() || !opts.p) return sp;
  return sp.at(Rational(1) / *opts.p);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i] + 1);
  return out + "}";
}

std::string join(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

void take(Report& r, const Decision& d) {
  r.verdict = d.verdict;
  r.trace = d.trace;
}

void run_index(Report& r, const IndexPayload& ip, const RunOptions& opts) {
  SpaceDescr sp = bind(ip.space, opts);
  AffineExpr ind = sobolev_index(sp);
  std::string rendered = ind.is_constant() ? ind.constant.str() : ind.p_str();
  if (sp.scale == Scale::L) {
    r.value.push_back("omega-ind = -(omega.n)/(omega_dot p) with omega.n = " + std::to_string(sp.aniso.omega_dot_n()) +
                      ", omega_dot = " + std::to_string(sp.aniso.omega_dot()) + ": " + rendered);
  } else {
    r.value.push_back("ind = (s - (omega.n)/p)/omega_dot = " + rendered);
  }
  r.details["index"] = rendered;
}

void run_decision(Report& r, const DecisionQuery& q, const Prelude& pre, const RunOptions& opts) {
  DecisionQuery bound = bind(q, opts);
  if (const auto* n = std::get_if<NemytskijQuery>(&bound)) {
    AnalyticSpec phi{n->radius, n->vanishes_at_zero, "phi"};
    NemytskijResult res = decide_nemytskij(n->args, n->target, phi, pre.registry);
    take(r, res.decision);
    if (res.ledger) {
      r.details["constants"] = {{"rho_rule", res.ledger->rho_rule},
                                {"embedding_constants", res.ledger->embedding_constants},
                                {"bound_constants", res.ledger->bound_constants},
                                {"lipschitz_dependencies", res.ledger->lipschitz_dependencies}};
      r.value.push_back("rho rule: " + res.ledger->rho_rule);
    }
    return;
  }
  take(r, decide(bound, pre.registry));
}

void run_solve(Report& r, const SolvePayload& sp, const Prelude& pre) {
  ParamSet set = solve_param(sp.query, pre.registry);
  r.params = set;
  r.value.push_back(set.p_str());
  r.value.push_back(set.x_str());
  for (const auto& u : set.undefined) r.value.push_back("undefined at p = " + (Rational(1) / u.x).str() + ": " + u.reason);
  r.verdict = set.empty() ? Verdict::NotCovered : Verdict::Covered;
  if (set.empty()) {
    // Explain the empty answer through a sample point.
    r.value.push_back("sample p = 2:");
    take(r, decide(substitute(sp.query, Rational(1, 2)), pre.registry));
    r.verdict = Verdict::NotCovered;
  }
}

void run_interp(Report& r, const InterpPayload& ip, const RunOptions& opts) {
  SpaceDescr a = bind(ip.a, opts), b = bind(ip.b, opts);
  SpaceDescr out = ip.real ? interpolate_real(a, b, ip.theta, ip.y) : interpolate_complex(a, b, ip.theta);
  r.value.push_back("= " + to_string(out));
  r.details["result"] = to_string(out);
}

void run_realize(Report& r, const RealizePayload& rp) {
  Realization res = realize_exponents(rp.sigma, rp.pi, rp.rho);
  r.value.push_back("rho_j = " + join(res.rho));
  r.value.push_back("theta0 = " + res.theta0.str());
  r.value.push_back(std::string("strict = ") + (res.strict ? "yes" : "no"));
  std::vector<std::string> rho;
  for (const auto& v : res.rho) rho.push_back(v.str());
  r.details = {{"rho", rho}, {"theta0", res.theta0.str()}, {"strict", res.strict}};
}

void run_minimize(Report& r, const MinimizePayload& mp) {
  Minimization res = minimize_phi(mp.sigma, mp.pi, mp.n);
  static const char* cases[] = {"every nu with |nu| <= n", "concentrate on one index of M_bullet",
                                "avoid the indices of M_+"};
  r.value.push_back("min = " + res.value.str());
  r.value.push_back("mu = " + res.rule.mu.str() + ", minimizers: " + cases[static_cast<int>(res.rule.kind)]);
  r.value.push_back("M_+ = " + join(res.rule.m_plus) + ", M_- = " + join(res.rule.m_minus) +
                    ", M_0 = " + join(res.rule.m_zero) + ", M_bullet = " + join(res.rule.m_bullet));
  r.details = {{"value", res.value.str()}, {"mu", res.rule.mu.str()}};
}

void run_seminorm(Report& r, const SeminormPayload& sp, const RunOptions& opts) {
  SpaceDescr space = bind(sp.space, opts);
  if (space.symbolic()) throw EngineError(ErrorKind::Unsupported, "seminorm needs a concrete p; bind it with --p");
  if (space.scale != Scale::W && space.scale != Scale::B)
    throw EngineError(ErrorKind::WrongScale, "seminorms are evaluated on the W and B scales");
  const int dims = [&] {
    int d = 0;
    for (int n : space.aniso.dims) d += n;
    return d;
  }();
  TestFunction base = sp.function == "gaussian"
                          ? gaussian(dims, sp.width.to_double())
                          : modulated_gaussian(dims, sp.freq.to_double(), sp.width.to_double());
  GridSpec grid = GridSpec::around(space.aniso, sp.spacing.to_double(), sp.decay.to_double());
  std::vector<double> lambdas, values;
  std::ostringstream csv;
  csv << "lambda,seminorm,truncation_error_estimate\n";
  csv.precision(12);
  for (const auto& l : sp.lambdas) {
    TestFunction f = dilate(base, space.aniso, l.to_double());
    GridFunction u = GridFunction::sample(grid, f.eval);
    SeminormResult res = space.scale == Scale::W ? seminorm_slobodeckij(u, space) : seminorm_besov(u, space);
    lambdas.push_back(l.to_double());
    values.push_back(res.value);
    csv << l.to_double() << "," << res.value << "," << res.truncation_error_estimate << "\n";
    std::ostringstream line;
    line.precision(8);
    line << "lambda = " << l.str() << ": seminorm = " << res.value << " (truncation <= "
         << res.truncation_error_estimate << ")";
    r.value.push_back(line.str());
  }
  Rational expected = sobolev_index(space).constant * Rational(space.aniso.omega_dot());
  if (lambdas.size() >= 2) {
    double slope = fit_scaling_exponent(lambdas, values);
    std::ostringstream line;
    line.precision(6);
    line << "scaling exponent = " << slope << " (omega_dot * ind = " << expected.str() << ")";
    r.value.push_back(line.str());
    r.details["exponent"] = slope;
  }
  r.details["expected_exponent"] = expected.str();
  r.details["csv"] = csv.str();
}

void run_app(Report& r, const AppPayload& ap, const RunOptions& opts) {
  std::optional<Rational> p = ap.p ? ap.p : opts.p;
  AppReport app = ap.stefan ? run_stefan(ap.n, p) : run_nvs(ap.n, p);
  nlohmann::json facts = nlohmann::json::array(), terms = nlohmann::json::array();
  for (const auto& f : app.facts) {
    r.value.push_back("fact " + f.anchor + ": " + f.statement);
    facts.push_back({{"quantity", f.quantity}, {"space", to_string(f.space)}, {"anchor", f.anchor}});
  }
  for (const auto& t : app.terms) {
    nlohmann::json tj = {{"term", t.term},
                         {"query", format(Query{t.query})},
                         {"expected", to_json(t.expected)},
                         {"condition", t.expected_anchor}};
    if (app.p) {
      const Decision& d = *t.decision;
      const TraceEntry* fail = d.first_failure();
      r.trace.push_back({t.term, fail ? fail->anchor : t.expected_anchor, fail ? Status::Fail : Status::Pass,
                         fail ? fail->label + ": " + fail->detail : "covered"});
      tj["verdict"] = to_string(d.verdict);
    } else {
      bool match = t.computed == t.expected;
      r.trace.push_back({t.term, t.expected_anchor, match ? Status::Pass : Status::Fail,
                         t.computed.p_str() + (match ? "" : "; expected " + t.expected.p_str())});
      tj["computed"] = to_json(t.computed);
    }
    terms.push_back(tj);
  }
  r.details = {{"problem", app.problem}, {"n", app.n}, {"facts", facts}, {"terms", terms}};
  if (app.p) {
    r.verdict = app.all_covered ? Verdict::Covered : Verdict::NotCovered;
  } else {
    r.params = app.intersection;
    r.value.push_back("intersection: " + app.intersection.p_str());
    r.value.push_back("with linear-theory exclusions: " + app.with_exclusions.p_str());
    for (const auto& e : app.exclusion_notes) r.value.push_back("  " + e);
    r.details["with_exclusions"] = to_json(app.with_exclusions);
    bool mismatch = std::any_of(r.trace.begin(), r.trace.end(), [](const auto& e) { return e.status == Status::Fail; });
    r.verdict = app.intersection.empty() || mismatch ? Verdict::NotCovered : Verdict::Covered;
  }
  for (const auto& f : app.footer) r.value.push_back("compatibility: " + f);
  r.details["footer"] = app.footer;
}

}  // namespace

int Report::exit_code() const {
  if (error) return error->kind == ErrorKind::ParseError ? 2 : 3;
  if (verdict && *verdict == Verdict::NotCovered) return 1;
  return 0;
}

Report run(const Query& q, const Prelude& pre, const RunOptions& opts) {
  Report r;
  r.query = format(q);
  r.kind = q.kind();
  r.details = nlohmann::json::object();
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::visit(Overloaded{
                   [&](const IndexPayload& v) { run_index(r, v, opts); },
                   [&](const DecisionQuery& v) { run_decision(r, v, pre, opts); },
                   [&](const SolvePayload& v) { run_solve(r, v, pre); },
                   [&](const InterpPayload& v) { run_interp(r, v, opts); },
                   [&](const RealizePayload& v) { run_realize(r, v); },
                   [&](const MinimizePayload& v) { run_minimize(r, v); },
                   [&](const SeminormPayload& v) { run_seminorm(r, v, opts); },
                   [&](const AppPayload& v) { run_app(r, v, opts); },
               },
               q.payload);
  } catch (const EngineError& e) {
    r.verdict.reset();
    r.value.clear();
    r.trace.clear();
    r.params.reset();
    r.error = ReportError{e.kind(), e.what(), e.anchor()};
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Report run_text(const std::string& text, const Prelude& pre, const RunOptions& opts) {
  try {
    return run(parse_query(text, pre), pre, opts);
  } catch (const ParseError& e) {
    Report r;
    r.query = text;
    r.kind = "parse";
    r.error = ReportError{ErrorKind::ParseError, e.what(), {}};
    return r;
  }
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "> " << r.query << "\n";
  if (r.error) {
    out << "error: " << to_string(r.error->kind) << ": " << r.error->message;
    if (!r.error->anchor.empty()) out << " [" << r.error->anchor << "]";
    out << "\n";
    return out.str();
  }
  if (r.verdict) out << to_string(*r.verdict) << "\n";
  for (const auto& v : r.value) out << "  " << v << "\n";
  for (const auto& e : r.trace) {
    out << "  " << to_string(e.status) << "  " << e.label << "  [" << e.anchor << "]";
    if (!e.detail.empty()) out << "  " << e.detail;
    out << "\n";
  }
  if (r.verdict == Verdict::NotCovered) {
    for (const auto& e : r.trace)
      if (e.status == Status::Fail) {
        out << "  first failure: " << e.label << " [" << e.anchor << "]\n";
        break;
      }
  }
  return out.str();
}

nlohmann::json to_json(const ParamSet& s) {
  nlohmann::json j;
  j["p"] = s.p_str();
  j["x"] = s.x_str();
  j["intervals"] = nlohmann::json::array();
  for (const auto& iv : s.intervals)
    j["intervals"].push_back(
        {{"lo", iv.lo.str()}, {"hi", iv.hi.str()}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}});
  auto points = [](const std::vector<ExcludedPoint>& pts) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : pts) a.push_back({{"x", e.x.str()}, {"reason", e.reason}});
    return a;
  };
  j["excluded"] = points(s.excluded);
  j["undefined"] = points(s.undefined);
  return j;
}

nlohmann::json to_json(const Report& r, bool with_timing) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["query"] = r.query;
  j["kind"] = r.kind;
  j["verdict"] = r.verdict ? nlohmann::json(to_string(*r.verdict)) : nlohmann::json();
  j["value"] = r.value;
  j["trace"] = nlohmann::json::array();
  for (const auto& e : r.trace)
    j["trace"].push_back(
        {{"label", e.label}, {"anchor", e.anchor}, {"status", to_string(e.status)}, {"detail", e.detail}});
  j["params"] = r.params ? to_json(*r.params) : nlohmann::json();
  j["details"] = r.details;
  j["error"] = r.error ? nlohmann::json{{"kind", to_string(r.error->kind)},
                                        {"message", r.error->message},
                                        {"anchor", r.error->anchor}}
                       : nlohmann::json();
  j["exit_code"] = r.exit_code();
  if (with_timing) j["millis"] = r.millis;
  return j;
}

}  // namespace anisocalc
