// anisocalc: command-line front end of the function-space calculus engine.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "anisocalc/dsl.hpp"

using namespace anisocalc;

namespace {

struct Globals {
  bool machine = false;
  bool batch = false;
  bool timing = true;
  bool csv = false;
  int n = 3;
  std::string prelude_file;
  std::string p;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_csv(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

void emit(const Report& r, const Globals& g) {
  if (g.csv && r.details.contains("csv")) {
    std::cout << r.details["csv"].get<std::string>();
    return;
  }
  if (g.machine) std::cout << to_json(r, g.timing).dump() << "\n";
  else std::cout << render_text(r);
}

// Runs numbered query lines; parse errors carry the file line.
int run_lines(const std::vector<QueryLine>& lines, const Prelude& pre, const RunOptions& opts, const Globals& g) {
  auto one = [&](const QueryLine& ql) {
    try {
      return run(parse_query(ql.text, pre), pre, opts);
    } catch (const ParseError& e) {
      Report r;
      r.query = ql.text;
      r.kind = "parse";
      r.error = ReportError{ErrorKind::ParseError,
                            std::to_string(ql.line) + ":" + std::to_string(e.column()) + ": " +
                                std::string(e.what()).substr(std::string(e.what()).find(' ') + 1),
                            {}};
      return r;
    }
  };
  std::vector<Report> reports(lines.size());
  if (g.batch) {
    std::vector<std::future<Report>> jobs;
    for (const auto& ql : lines) jobs.push_back(std::async(std::launch::async, one, ql));
    for (std::size_t i = 0; i < jobs.size(); ++i) reports[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < lines.size(); ++i) reports[i] = one(lines[i]);
  }
  int code = 0;
  for (const auto& r : reports) {
    emit(r, g);
    code = std::max(code, r.exit_code());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisocalc: exact decisions for anisotropic Sobolev, Besov and Bessel-potential spaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--machine", g.machine, "emit one JSON document per query");
  app.add_flag("--batch", g.batch, "evaluate queries concurrently (output order is kept)");
  app.add_flag("!--no-timing", g.timing, "leave timing out of machine output");
  app.add_option("--prelude", g.prelude_file, "prelude file with domain, target, space and signature directives");
  app.add_option("--n", g.n, "dimension n binding Sigma = n-1 and Rdot = n")->check(CLI::Range(2, 64));
  app.add_option("--p", g.p, "binds p in queries that are not parameter solves");

  std::vector<std::string> query_texts;
  auto* q_cmd = app.add_subcommand("query", "run queries given as text");
  q_cmd->add_option("text", query_texts, "query text")->required();

  std::string file;
  auto* f_cmd = app.add_subcommand("file", "run a query file (one query per line, '#' comments)");
  f_cmd->add_option("path", file)->required();

  std::string space, dst, product, target, decision_text;
  auto* index_cmd = app.add_subcommand("index", "Sobolev index of a space");
  index_cmd->add_option("space", space)->required();

  auto* embed_cmd = app.add_subcommand("embed", "decide SRC -> DST");
  embed_cmd->add_option("src", space)->required();
  embed_cmd->add_option("dst", dst)->required();

  auto* mult_cmd = app.add_subcommand("mult", "decide a product, e.g. 'A * B -> C'");
  mult_cmd->add_option("product", product)->required();

  int ell = 1;
  auto* multiplier_cmd = app.add_subcommand("multiplier", "decide a product with a multiplier factor");
  multiplier_cmd->add_option("--ell", ell, "1-based position of the factor matching the target")->required();
  multiplier_cmd->add_option("product", product)->required();

  auto* algebra_cmd = app.add_subcommand("algebra", "decide whether a space is an algebra");
  algebra_cmd->add_option("space", space)->required();

  std::vector<std::string> nem_args;
  std::string radius;
  bool nonvanishing = false;
  auto* nem_cmd = app.add_subcommand("nemytskij", "decide continuity of an analytic Nemytskij operator");
  nem_cmd->add_option("args", nem_args)->required();
  nem_cmd->add_option("--to", target)->required();
  nem_cmd->add_option("--radius", radius);
  nem_cmd->add_flag("--nonvanishing", nonvanishing, "phi(0) != 0");

  auto* solve_cmd = app.add_subcommand("solve-p", "exact set of p for which a decision query is covered");
  solve_cmd->add_option("query", decision_text)->required();

  std::string method, theta, qexp;
  std::vector<std::string> pair;
  auto* interp_cmd = app.add_subcommand("interp", "interpolate two spaces");
  interp_cmd->add_option("method", method)->required()->check(CLI::IsMember({"complex", "real"}));
  interp_cmd->add_option("--theta", theta)->required();
  interp_cmd->add_option("--q", qexp, "micro-scale for the real method; omit for q = p");
  interp_cmd->add_option("spaces", pair)->required()->expected(2);

  std::string sigma, pi, rho;
  long lemma_n = 0;
  auto* realize_cmd = app.add_subcommand("realize", "realize exponents rho_j");
  realize_cmd->add_option("--sigma", sigma, "comma separated")->required();
  realize_cmd->add_option("--pi", pi, "comma separated")->required();
  realize_cmd->add_option("--rho", rho)->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "minimize the exponent deficit over nu");
  minimize_cmd->add_option("--sigma", sigma)->required();
  minimize_cmd->add_option("--pi", pi)->required();
  minimize_cmd->add_option("--n", lemma_n)->required();

  std::string function, width, freq, lambdas, spacing, decay;
  auto* semi_cmd = app.add_subcommand("seminorm", "difference-quotient seminorms of dilated test functions");
  semi_cmd->add_option("function", function)->required()->check(CLI::IsMember({"gaussian", "modulated"}));
  semi_cmd->add_option("space", space)->required();
  semi_cmd->add_option("--width", width);
  semi_cmd->add_option("--freq", freq);
  semi_cmd->add_option("--lambda", lambdas, "comma separated dilation factors");
  semi_cmd->add_option("--spacing", spacing);
  semi_cmd->add_option("--decay", decay);
  semi_cmd->add_flag("--csv", g.csv, "print the (lambda, seminorm) table as CSV");

  std::string problem;
  int app_n = 0;
  std::string app_p;
  bool solve_p = false;
  auto* app_cmd = app.add_subcommand("app", "nonlinearity checklist of the Stefan or two-phase Navier-Stokes problem");
  app_cmd->add_option("problem", problem)->required()->check(CLI::IsMember({"stefan", "nvs"}));
  app_cmd->add_option("--n", app_n)->required()->check(CLI::Range(2, 64));
  app_cmd->add_option("--p", app_p);
  app_cmd->add_flag("--solve-p", solve_p, "solve for the admissible range of p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app_n) g.n = app_n;
    Prelude pre = Prelude::for_dimension(g.n);
    if (!g.prelude_file.empty()) pre.load(read_file(g.prelude_file));
    RunOptions opts;
    if (!g.p.empty()) opts.p = Rational::parse(g.p);

    std::vector<std::string> texts;
    if (*q_cmd) {
      texts = query_texts;
    } else if (*f_cmd) {
      return run_lines(split_query_file(read_file(file)), pre, opts, g);
    } else if (*index_cmd) {
      texts = {"index " + space};
    } else if (*embed_cmd) {
      texts = {space + " -> " + dst + " ?"};
    } else if (*mult_cmd) {
      texts = {product + " ?"};
    } else if (*multiplier_cmd) {
      texts = {"multiplier[" + std::to_string(ell) + "] " + product + " ?"};
    } else if (*algebra_cmd) {
      texts = {"algebra " + space + " ?"};
    } else if (*nem_cmd) {
      std::string t = "nemytskij ";
      for (std::size_t i = 0; i < nem_args.size(); ++i) t += (i ? ", " : "") + nem_args[i];
      t += " -> " + target;
      if (!radius.empty()) t += " radius=" + radius;
      if (nonvanishing) t += " nonvanishing";
      texts = {t + " ?"};
    } else if (*solve_cmd) {
      std::string body = decision_text;
      if (body.find('?') == std::string::npos) body += " ?";
      texts = {"solve p: " + body};
    } else if (*interp_cmd) {
      std::string t = "interp " + method + " theta=" + theta;
      if (!qexp.empty()) t += " q=" + qexp;
      texts = {t + ": " + pair[0] + ", " + pair[1]};
    } else if (*realize_cmd) {
      texts = {"realize sigma=(" + sigma + ") pi=(" + pi + ") rho=" + rho};
    } else if (*minimize_cmd) {
      texts = {"minimize sigma=(" + sigma + ") pi=(" + pi + ") n=" + std::to_string(lemma_n)};
    } else if (*semi_cmd) {
      std::vector<std::string> params;
      if (!freq.empty()) params.push_back("freq=" + freq);
      if (!width.empty()) params.push_back("width=" + width);
      std::string t = "seminorm " + function;
      if (!params.empty()) t += "(" + join_csv(params) + ")";
      t += " in " + space;
      if (!lambdas.empty()) t += " lambda=(" + lambdas + ")";
      if (!spacing.empty()) t += " spacing=" + spacing;
      if (!decay.empty()) t += " decay=" + decay;
      texts = {t};
    } else if (*app_cmd) {
      std::string t = "app " + problem + " n=" + std::to_string(app_n);
      if (!solve_p) {
        std::string pv = !app_p.empty() ? app_p : g.p;
        if (pv.empty()) {
          std::cerr << "app: give --p P or --solve-p\n";
          return 2;
        }
        t += " p=" + pv;
      }
      texts = {t};
    }
    std::vector<QueryLine> lines;
    for (std::size_t i = 0; i < texts.size(); ++i) lines.push_back({static_cast<int>(i + 1), texts[i]});
    return run_lines(lines, pre, opts, g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
