#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "anisocalc/dsl.hpp"

using namespace anisocalc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational r(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST(Dsl, ParsesAnisotropicBesselPotentialSpace) {
  SpaceDescr sp = parse_space("H^{2,(2,1)}_p(R^{1x3})");
  EXPECT_EQ(sp.scale, Scale::H);
  EXPECT_EQ(sp.aniso.nu(), 2);
  EXPECT_EQ(sp.aniso.dims, (std::vector<int>{1, 3}));
  EXPECT_EQ(sp.aniso.weights, (std::vector<int>{2, 1}));
  EXPECT_EQ(sp.s, AffineExpr(r(2)));
  EXPECT_EQ(sp.x, AffineExpr::variable());
}

TEST(Dsl, ResolvesDomainAliasesAgainstDimension) {
  SpaceDescr sp = parse_space("W^{1-1/p,(2,1)}_p(JxSigma)", Prelude::for_dimension(3));
  EXPECT_EQ(sp.scale, Scale::W);
  EXPECT_EQ(sp.aniso.dims, (std::vector<int>{1, 2}));
  EXPECT_EQ(sp.s, AffineExpr(r(1), r(-1)));
  EXPECT_EQ(sp.domain, "JxSigma");

  SpaceDescr four = parse_space("W^{1-1/p,(2,1)}_p(JxSigma)", Prelude::for_dimension(4));
  EXPECT_EQ(four.aniso.dims, (std::vector<int>{1, 3}));
}

TEST(Dsl, ExponentForms) {
  Prelude pre = Prelude::standard();
  EXPECT_EQ(parse_space("B^{1/2-1/2p}_{2p}(R^2)", pre).s, AffineExpr(r(1, 2), r(-1, 2)));
  EXPECT_EQ(parse_space("B^{1/2-1/2p}_{2p}(R^2)", pre).x, AffineExpr(r(0), r(1, 2)));
  EXPECT_EQ(parse_space("W^{2-2/p,(2,1)}_p(R^{1x1})", pre).s, AffineExpr(r(2), r(-2)));
  EXPECT_EQ(parse_space("L_{3/2}(R)", pre).x, AffineExpr(r(2, 3)));
  EXPECT_EQ(parse_space("L_{inf}(R)", pre).x, AffineExpr(r(0)));
  EXPECT_EQ(parse_space("B^{1}_4_{inf}(R)", pre).y, std::optional<Rational>(r(0)));
  EXPECT_EQ(parse_space("H^{1}_2(R;Lp)", pre).target.name, "Lp");
}

TEST(Dsl, PreludeSpaceAliasInSolveQuery) {
  Prelude pre = Prelude::for_dimension(3);
  pre.load("# named space\nspace Y = W^{1-1/p,(2,1)}_p(JxSigma)\n");
  Query q = parse_query("solve p: algebra Y ?", pre);
  EXPECT_EQ(q.kind(), "solve-p");
  Report rep = run(q, pre);
  ASSERT_TRUE(rep.params);
  EXPECT_EQ(rep.params->p_str(), "p in (5, inf)");
  EXPECT_EQ(rep.exit_code(), 0);
}

TEST(Dsl, PreludeDirectives) {
  Prelude pre = Prelude::standard();
  pre.load("domain Box = (1,2)\ntarget A algebra unital\nsignature A * A -> A\n");
  SpaceDescr sp = parse_space("H^{2,(2,1)}_3(Box;A)", pre);
  EXPECT_EQ(sp.aniso.dims, (std::vector<int>{1, 2}));
  EXPECT_TRUE(sp.target.banach_algebra);
  EXPECT_THROW(pre.load("frobnicate X\n"), ParseError);
}

TEST(Dsl, CorpusRoundTrips) {
  Prelude pre = Prelude::for_dimension(3);
  auto lines = split_query_file(slurp(std::string(ANISOCALC_TEST_DATA) + "/golden/corpus.txt"));
  int parsed = 0;
  for (const auto& ql : lines) {
    Query q;
    try {
      q = parse_query(ql.text, pre);
    } catch (const ParseError&) {
      continue;  // the corpus ends with malformed samples
    }
    std::string once = format(q);
    Query again = parse_query(once, pre);
    EXPECT_EQ(again, q) << "line " << ql.line << ": " << ql.text << " -> " << once;
    EXPECT_EQ(format(again), once);
    ++parsed;
  }
  EXPECT_GE(parsed, 50);
}

TEST(Dsl, ParseErrorsCarryPositions) {
  Prelude pre = Prelude::for_dimension(3);
  auto column_of = [&](const std::string& text) {
    try {
      parse_query(text, pre);
    } catch (const ParseError& e) {
      return e.column();
    }
    return -1;
  };
  EXPECT_EQ(column_of("W^{1-p}_p(R) ?"), 6);
  EXPECT_EQ(column_of("H^{1}_p(Omega) ?"), 9);
  EXPECT_EQ(column_of("W^{1-1/p,(2,1)_p(JxSigma) ?"), 15);
  EXPECT_GT(column_of("H^{1}_2(R) -> ?"), 0);
  EXPECT_GT(column_of("bogus"), 0);

  auto lines = split_query_file("# header\n\nindex L_2(R)\nH^{1}_p(Omega) ?\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].line, 3);
  EXPECT_EQ(lines[1].line, 4);
}

TEST(Dsl, ExitCodes) {
  Prelude pre = Prelude::for_dimension(3);
  EXPECT_EQ(run_text("L_4(R) * L_4(R) -> L_2(R) ?", pre).exit_code(), 0);
  EXPECT_EQ(run_text("L_4(R) * L_4(R) -> L_3(R) ?", pre).exit_code(), 1);
  EXPECT_EQ(run_text("H^{1}_p(Omega) ?", pre).exit_code(), 2);
  EXPECT_EQ(run_text("algebra H^{2,(2,1)}_7(JxSigma;Lp) ?", pre).exit_code(), 3);
  EXPECT_EQ(run_text("index C0(R)", pre).exit_code(), 3);

  Report unbound = run_text("algebra W^{1-1/p,(2,1)}_p(JxSigma) ?", pre);
  ASSERT_TRUE(unbound.error);
  EXPECT_EQ(unbound.error->kind, ErrorKind::Unsupported);
  RunOptions at6;
  at6.p = r(6);
  EXPECT_EQ(run_text("algebra W^{1-1/p,(2,1)}_p(JxSigma) ?", pre, at6).exit_code(), 0);
}

TEST(Dsl, EveryTraceLineHasAnAnchor) {
  Prelude pre = Prelude::for_dimension(3);
  for (const auto& ql : split_query_file(slurp(std::string(ANISOCALC_TEST_DATA) + "/golden/corpus.txt"))) {
    Report rep = run_text(ql.text, pre);
    for (const auto& e : rep.trace) EXPECT_FALSE(e.anchor.empty()) << ql.text << " / " << e.label;
    if (rep.verdict == Verdict::NotCovered) {
      bool failing = std::any_of(rep.trace.begin(), rep.trace.end(),
                                 [](const TraceEntry& e) { return e.status == Status::Fail; });
      EXPECT_TRUE(failing) << ql.text;
    }
  }
}

TEST(Dsl, IndexOfLebesgueSpace) {
  Report rep = run_text("index L^{(2,1)}_4(JxSigma)", Prelude::for_dimension(3));
  ASSERT_FALSE(rep.error);
  EXPECT_EQ(rep.details["index"], "-1/2");
  ASSERT_FALSE(rep.value.empty());
  EXPECT_NE(rep.value[0].find("omega.n = 4"), std::string::npos);
}

TEST(Dsl, HoelderCaseCitesRemark) {
  Report rep = run_text("L_4(R) * L_4(R) -> L_2(R) ?", Prelude::standard());
  EXPECT_EQ(rep.verdict, Verdict::Covered);
  bool cited = std::any_of(rep.trace.begin(), rep.trace.end(), [](const TraceEntry& e) {
    return e.anchor == "Remark Multiplication-Anisotropic (e)" && e.status == Status::Pass;
  });
  EXPECT_TRUE(cited);
}

TEST(Dsl, JsonReportShape) {
  Report rep = run_text("solve p: algebra W^{1-1/p,(2,1)}_p(JxSigma) ?", Prelude::for_dimension(3));
  nlohmann::json j = to_json(rep, false);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["kind"], "solve-p");
  EXPECT_EQ(j["verdict"], "COVERED");
  EXPECT_EQ(j["params"]["p"], "p in (5, inf)");
  EXPECT_EQ(j["params"]["intervals"][0]["lo"], "0");
  EXPECT_EQ(j["params"]["intervals"][0]["hi"], "1/5");
  EXPECT_FALSE(j.contains("millis"));
  EXPECT_TRUE(to_json(rep, true).contains("millis"));
  EXPECT_EQ(j["exit_code"], 0);
}

TEST(Dsl, TextRenderingNamesFirstFailure) {
  Report rep = run_text("app stefan n=3 p=2", Prelude::for_dimension(3));
  std::string text = render_text(rep);
  EXPECT_NE(text.find("NOT_COVERED"), std::string::npos);
  EXPECT_NE(text.find("first failure:"), std::string::npos);
  EXPECT_NE(text.find("Thm Multiplication-Anisotropic (iii)"), std::string::npos);
}
