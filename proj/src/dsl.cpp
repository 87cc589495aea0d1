#include "anisocalc/dsl.hpp"

#include <cctype>
#include <sstream>

#include "anisocalc/errors.hpp"

namespace anisocalc {

// ---------------------------------------------------------------- prelude

Prelude Prelude::standard() {
  Prelude p;
  p.domains["J"] = {1};
  p.targets["R"] = TargetSpace::scalar();
  TargetSpace c = TargetSpace::scalar();
  c.name = "C";
  p.targets["C"] = c;
  p.targets["Lp"] = TargetSpace::lebesgue("Lp");
  return p;
}

Prelude Prelude::for_dimension(int n) {
  if (n < 2) throw EngineError(ErrorKind::InvalidArgument, "--n must be at least 2");
  Prelude p = standard();
  p.domains["Sigma"] = {n - 1};
  p.domains["Rdot"] = {n};
  p.domains["Rn"] = {n};
  return p;
}

// ----------------------------------------------------------------- parser

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(const std::string& text, const Prelude& prelude) : src_(text), pre_(prelude) {}

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() {
    ws();
    return pos_ >= src_.size();
  }
  char peek() {
    ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    ws();
    if (src_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string ident() {
    ws();
    if (pos_ >= src_.size() || !is_ident_start(src_[pos_])) fail("expected a name");
    std::size_t b = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    return src_.substr(b, pos_ - b);
  }
  std::string peek_ident() {
    std::size_t save = pos_;
    ws();
    std::string out;
    if (pos_ < src_.size() && is_ident_start(src_[pos_])) out = ident();
    pos_ = save;
    return out;
  }
  bool accept_keyword(std::string_view kw) {
    std::size_t save = pos_;
    ws();
    if (src_.compare(pos_, kw.size(), kw) == 0 &&
        (pos_ + kw.size() >= src_.size() || !is_ident_char(src_[pos_ + kw.size()]))) {
      pos_ += kw.size();
      return true;
    }
    pos_ = save;
    return false;
  }
  long integer() {
    ws();
    std::size_t b = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (b == pos_) fail("expected an integer");
    if (pos_ - b > 12) fail_at(b, "integer too large");
    return std::stol(src_.substr(b, pos_ - b));
  }
  bool at_digit() {
    ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }
  Rational rational() {
    bool neg = accept("-");
    long num = integer();
    Rational r(num);
    std::size_t save = pos_;
    if (accept("/")) {
      if (!at_digit()) {
        pos_ = save;
      } else {
        std::size_t at = pos_;
        long den = integer();
        if (den == 0) fail_at(at, "zero denominator");
        r = Rational(num, den);
      }
    }
    return neg ? -r : r;
  }
  std::vector<Rational> tuple() {
    expect("(");
    std::vector<Rational> out{rational()};
    while (accept(",")) out.push_back(rational());
    expect(")");
    return out;
  }
  std::size_t pos() const { return pos_; }

  // SEXPR: sums of rationals and terms a/p or a/bp (= a/(b p)).
  AffineExpr sexpr() {
    ws();
    std::size_t start = pos_;
    AffineExpr out;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (accept("-")) sign = -1;
      else if (!first && !accept("+")) break;
      if (!at_digit()) {
        if (first && sign == 1) fail("malformed exponent");
        fail("malformed exponent: expected a number");
      }
      long num = integer();
      AffineExpr term{Rational(num)};
      if (accept("/")) {
        if (accept("p")) {
          term = {Rational(0), Rational(num)};
        } else if (accept("(")) {
          long den = integer();
          expect("p");
          expect(")");
          if (den == 0) fail("zero denominator");
          term = {Rational(0), Rational(num, den)};
        } else {
          std::size_t at = pos_;
          if (!at_digit()) fail("malformed exponent");
          long den = integer();
          if (den == 0) fail_at(at, "zero denominator");
          if (src_.compare(pos_, 1, "p") == 0 && (pos_ + 1 >= src_.size() || !is_ident_char(src_[pos_ + 1]))) {
            ++pos_;
            term = {Rational(0), Rational(num, den)};
          } else {
            term = AffineExpr{Rational(num, den)};
          }
        }
      } else if (src_.compare(pos_, 1, "p") == 0) {
        fail("malformed exponent: p may only appear as 1/p");
      }
      out += sign < 0 ? -term : term;
      first = false;
    }
    if (pos_ == start) fail("malformed exponent");
    return out;
  }

  // PEXPR: p, an integer, or {inf}, {r}, {c p}, {c*p}, {p}. Returns 1/PEXPR.
  AffineExpr pexpr() {
    ws();
    if (accept_keyword("p")) return AffineExpr::variable();
    if (at_digit()) {
      std::size_t at = pos_;
      long v = integer();
      if (v == 0) fail_at(at, "integrability must be positive");
      return AffineExpr{Rational(1, v)};
    }
    expect("{");
    AffineExpr out;
    if (accept_keyword("inf")) {
      out = AffineExpr{Rational(0)};
    } else if (accept_keyword("p")) {
      out = AffineExpr::variable();
    } else {
      std::size_t at = pos_;
      Rational c = rational();
      if (c.sign() <= 0) fail_at(at, "integrability must be positive");
      bool times = accept("*");
      if (accept_keyword("p")) out = {Rational(0), Rational(1) / c};
      else if (times) fail("expected 'p'");
      else out = AffineExpr{Rational(1) / c};
    }
    expect("}");
    return out;
  }

  std::vector<int> weights() {
    expect("(");
    std::vector<int> out;
    do {
      std::size_t at = pos_;
      long w = integer();
      if (w < 1 || w > 1000) fail_at(at, "weights must be positive integers");
      out.push_back(static_cast<int>(w));
    } while (accept(","));
    expect(")");
    return out;
  }

  // Dimension tuple of a domain label such as R, R^3, R^{1x3}, JxSigma.
  std::optional<std::vector<int>> resolve_domain(const std::string& d) const {
    if (auto it = pre_.domains.find(d); it != pre_.domains.end()) return it->second;
    if (d == "R") return std::vector<int>{1};
    if (d.size() > 2 && d.compare(0, 2, "R^") == 0) {
      std::string body = d.substr(2);
      if (body.size() > 2 && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
      std::vector<int> dims;
      std::stringstream ss(body);
      std::string part;
      while (std::getline(ss, part, 'x')) {
        if (part.empty() || part.size() > 4 ||
            part.find_first_not_of("0123456789") != std::string::npos)
          return std::nullopt;
        int v = std::stoi(part);
        if (v < 1) return std::nullopt;
        dims.push_back(v);
      }
      if (dims.empty()) return std::nullopt;
      if (d[2] != '{' && dims.size() > 1) return std::nullopt;
      return dims;
    }
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
      if (d[i] != 'x') continue;
      auto head = resolve_domain(d.substr(0, i));
      if (!head) continue;
      auto tail = resolve_domain(d.substr(i + 1));
      if (!tail) continue;
      head->insert(head->end(), tail->begin(), tail->end());
      return head;
    }
    return std::nullopt;
  }

  SpaceDescr space() {
    ws();
    std::size_t start = pos_;
    std::string name = ident();
    Scale scale;
    if (name == "B") scale = Scale::B;
    else if (name == "H") scale = Scale::H;
    else if (name == "W") scale = Scale::W;
    else if (name == "L") scale = Scale::L;
    else if (name == "C0") scale = Scale::C0;
    else {
      auto it = pre_.spaces.find(name);
      if (it == pre_.spaces.end()) fail_at(start, "unknown space alias '" + name + "'");
      Parser inner(it->second, pre_);
      return inner.space();
    }
    SpaceDescr sp;
    sp.scale = scale;
    std::optional<std::vector<int>> w;
    bool exponent = false;
    if (src_.compare(pos_, 1, "^") == 0) {
      ++pos_;
      exponent = true;
      expect("{");
      if ((scale == Scale::L || scale == Scale::C0) && peek() == '(') {
        w = weights();
      } else {
        std::size_t at = pos_;
        sp.s = sexpr();
        if ((scale == Scale::L || scale == Scale::C0) && !(sp.s == AffineExpr(0)))
          fail_at(at, "malformed exponent: L and C0 carry no smoothness");
        if (accept(",")) w = weights();
      }
      expect("}");
    }
    if (!exponent && scale != Scale::L && scale != Scale::C0) fail("malformed exponent: expected '^{'");
    if (scale == Scale::C0) {
      sp.x = AffineExpr(0);
    } else {
      if (src_.compare(pos_, 1, "_") != 0) fail("expected '_' and an integrability exponent");
      ++pos_;
      sp.x = pexpr();
      if (src_.compare(pos_, 1, "_") == 0) {
        ++pos_;
        std::size_t at = pos_;
        AffineExpr q = pexpr();
        if (scale != Scale::B) fail_at(at, "a second exponent q is only allowed on the Besov scale");
        if (!(q == sp.x)) {
          if (!q.is_constant()) fail_at(at, "q must be a constant or equal to p");
          sp.y = q.constant;
        }
      }
    }
    if (src_.compare(pos_, 1, "(") != 0) fail("expected '(' and a domain");
    ++pos_;
    std::size_t dom_at = pos_;
    while (pos_ < src_.size() && src_[pos_] != ')' && src_[pos_] != ';' && !std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string domain = src_.substr(dom_at, pos_ - dom_at);
    auto dims = resolve_domain(domain);
    if (!dims) fail_at(dom_at, "unknown domain '" + domain + "'");
    sp.domain = domain;
    if (accept(";")) {
      std::size_t at = pos_;
      std::string t = ident();
      auto it = pre_.targets.find(t);
      if (it == pre_.targets.end()) fail_at(at, "unknown target '" + t + "'");
      sp.target = it->second;
    }
    expect(")");
    std::vector<int> wt = w ? *w : std::vector<int>(dims->size(), 1);
    if (wt.size() != dims->size())
      fail_at(dom_at, "domain '" + domain + "' has " + std::to_string(dims->size()) + " slices but " +
                          std::to_string(wt.size()) + " weights are given");
    sp.aniso = Anisotropy::make(*dims, wt);
    try {
      if (sp.symbolic()) {
        sp.at(Rational(1, 2)).validate();
      } else {
        sp.validate();
      }
    } catch (const EngineError& e) {
      fail_at(start, e.what());
    }
    return sp;
  }

  std::pair<std::vector<SpaceDescr>, SpaceDescr> product() {
    std::vector<SpaceDescr> factors{space()};
    while (accept("*")) factors.push_back(space());
    expect("->");
    SpaceDescr target = space();
    return {std::move(factors), std::move(target)};
  }

  DecisionQuery decision() {
    if (accept_keyword("algebra")) {
      SpaceDescr sp = space();
      expect("?");
      return AlgebraQuery{sp};
    }
    if (accept_keyword("multiplier")) {
      expect("[");
      std::size_t at = pos_;
      long k = integer();
      expect("]");
      auto [f, t] = product();
      if (k < 1 || static_cast<std::size_t>(k) > f.size())
        fail_at(at, "multiplier position out of range");
      expect("?");
      return MultiplierQuery{{std::move(f), std::move(t)}, static_cast<std::size_t>(k - 1)};
    }
    if (accept_keyword("nemytskij")) {
      std::vector<SpaceDescr> args{space()};
      while (accept(",")) args.push_back(space());
      expect("->");
      SpaceDescr target = space();
      NemytskijQuery q{std::move(args), std::move(target), Rational(1), true};
      for (;;) {
        if (accept_keyword("radius")) {
          expect("=");
          std::size_t at = pos_;
          q.radius = rational();
          if (q.radius.sign() <= 0) fail_at(at, "radius must be positive");
        } else if (accept_keyword("nonvanishing")) {
          q.vanishes_at_zero = false;
        } else {
          break;
        }
      }
      expect("?");
      return q;
    }
    auto [f, t] = product();
    expect("?");
    if (f.size() == 1) return EmbedQuery{f.front(), t};
    if (f.size() > 16) fail("at most 16 factors");
    return MultQuery{{std::move(f), std::move(t)}};
  }

  Query query() {
    Query q;
    std::size_t at = pos_;
    std::string head = peek_ident();
    if (head == "solve") {
      accept_keyword("solve");
      expect("p");
      expect(":");
      q.payload = SolvePayload{decision()};
    } else if (head == "index") {
      accept_keyword("index");
      q.payload = IndexPayload{space()};
    } else if (head == "interp") {
      accept_keyword("interp");
      InterpPayload ip;
      if (accept_keyword("real")) ip.real = true;
      else if (!accept_keyword("complex")) fail("expected 'complex' or 'real'");
      expect("theta");
      expect("=");
      ip.theta = rational();
      if (ip.real && accept_keyword("q")) {
        expect("=");
        std::size_t qa = pos_;
        AffineExpr y = pexpr();
        if (!y.is_constant()) fail_at(qa, "q must be constant; omit it for q = p");
        ip.y = y.constant;
      }
      expect(":");
      ip.a = space();
      expect(",");
      ip.b = space();
      q.payload = ip;
    } else if (head == "realize") {
      accept_keyword("realize");
      RealizePayload rp;
      expect("sigma");
      expect("=");
      rp.sigma = tuple();
      expect("pi");
      expect("=");
      rp.pi = tuple();
      expect("rho");
      expect("=");
      rp.rho = rational();
      q.payload = rp;
    } else if (head == "minimize") {
      accept_keyword("minimize");
      MinimizePayload mp;
      expect("sigma");
      expect("=");
      mp.sigma = tuple();
      expect("pi");
      expect("=");
      mp.pi = tuple();
      expect("n");
      expect("=");
      mp.n = integer();
      q.payload = mp;
    } else if (head == "seminorm") {
      accept_keyword("seminorm");
      SeminormPayload sp;
      std::size_t fa = pos_;
      sp.function = ident();
      if (sp.function != "gaussian" && sp.function != "modulated")
        fail_at(fa, "unknown test function '" + sp.function + "'");
      if (accept("(")) {
        do {
          std::string key = ident();
          expect("=");
          Rational v = rational();
          if (key == "width") sp.width = v;
          else if (key == "freq") sp.freq = v;
          else fail("unknown parameter '" + key + "'");
        } while (accept(","));
        expect(")");
      }
      if (sp.width.sign() <= 0) fail("width must be positive");
      expect("in");
      sp.space = space();
      for (;;) {
        if (accept_keyword("lambda")) {
          expect("=");
          sp.lambdas = tuple();
        } else if (accept_keyword("spacing")) {
          expect("=");
          sp.spacing = rational();
        } else if (accept_keyword("decay")) {
          expect("=");
          sp.decay = rational();
        } else {
          break;
        }
      }
      for (const auto& l : sp.lambdas)
        if (l.sign() <= 0) fail("dilation factors must be positive");
      if (sp.spacing.sign() <= 0 || sp.decay.sign() <= 0) fail("spacing and decay must be positive");
      q.payload = sp;
    } else if (head == "app") {
      accept_keyword("app");
      AppPayload ap;
      if (accept_keyword("nvs")) ap.stefan = false;
      else if (!accept_keyword("stefan")) fail("expected 'stefan' or 'nvs'");
      expect("n");
      expect("=");
      std::size_t na = pos_;
      long n = integer();
      if (n < 2 || n > 64) fail_at(na, "n must lie in [2, 64]");
      ap.n = static_cast<int>(n);
      if (accept_keyword("p")) {
        expect("=");
        ap.p = rational();
      }
      q.payload = ap;
    } else if (head.empty() && !at_end()) {
      fail_at(at, "expected a query");
    } else {
      q.payload = decision();
    }
    if (!at_end()) fail("unexpected trailing input");
    return q;
  }

 private:
  const std::string& src_;
  const Prelude& pre_;
  std::size_t pos_ = 0;
};

std::string join_tuple(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

std::string q_token(const Rational& y) {
  if (y.sign() == 0) return "{inf}";
  Rational q = Rational(1) / y;
  return q.is_integer() ? q.str() : "{" + q.str() + "}";
}

std::string product_str(const MultInstance& inst) {
  std::string out;
  for (std::size_t i = 0; i < inst.factors.size(); ++i) out += (i ? " * " : "") + to_string(inst.factors[i]);
  return out + " -> " + to_string(inst.target);
}

std::string format_decision(const DecisionQuery& q) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EmbedQuery>) {
          return to_string(v.src) + " -> " + to_string(v.dst) + " ?";
        } else if constexpr (std::is_same_v<T, MultQuery>) {
          return product_str(v.inst) + " ?";
        } else if constexpr (std::is_same_v<T, MultiplierQuery>) {
          return "multiplier[" + std::to_string(v.ell + 1) + "] " + product_str(v.inst) + " ?";
        } else if constexpr (std::is_same_v<T, AlgebraQuery>) {
          return "algebra " + to_string(v.space) + " ?";
        } else {
          std::string out = "nemytskij ";
          for (std::size_t i = 0; i < v.args.size(); ++i) out += (i ? ", " : "") + to_string(v.args[i]);
          out += " -> " + to_string(v.target);
          if (!(v.radius == Rational(1))) out += " radius=" + v.radius.str();
          if (!v.vanishes_at_zero) out += " nonvanishing";
          return out + " ?";
        }
      },
      q);
}

}  // namespace

void Prelude::load(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    Parser p(line, *this);
    if (p.at_end()) continue;
    try {
      std::string kw = p.ident();
      if (kw == "domain") {
        std::string name = p.ident();
        p.expect("=");
        std::vector<int> dims;
        if (p.peek() == '(') {
          for (const auto& r : p.tuple()) {
            if (!r.is_integer() || r.sign() <= 0) p.fail("dimensions must be positive integers");
            dims.push_back(static_cast<int>(r.numerator()));
          }
        } else {
          long d = p.integer();
          if (d < 1) p.fail("dimensions must be positive integers");
          dims.push_back(static_cast<int>(d));
        }
        if (!p.at_end()) p.fail("unexpected trailing input");
        domains[name] = dims;
      } else if (kw == "target") {
        TargetSpace t{p.ident(), false, false, false, false};
        while (!p.at_end()) {
          std::string flag = p.ident();
          if (flag == "umd") t.umd = true;
          else if (flag == "alpha") t.prop_alpha = true;
          else if (flag == "algebra") t.banach_algebra = true;
          else if (flag == "unital") t.unital = true;
          else p.fail("unknown target property '" + flag + "'");
        }
        targets[t.name] = t;
      } else if (kw == "space") {
        std::string name = p.ident();
        p.expect("=");
        std::size_t at = p.pos();
        p.space();
        if (!p.at_end()) p.fail("unexpected trailing input");
        spaces[name] = line.substr(at);
      } else if (kw == "signature") {
        MultSignature sig;
        sig.factors.push_back(p.ident());
        while (p.accept("*")) sig.factors.push_back(p.ident());
        p.expect("->");
        sig.result = p.ident();
        if (!p.at_end()) p.fail("unexpected trailing input");
        registry.add(sig);
      } else {
        p.fail("unknown directive '" + kw + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(' ') + 1), lineno, e.column());
    }
  }
}

std::string Query::kind() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndexPayload>) return "index";
        else if constexpr (std::is_same_v<T, SolvePayload>) return "solve-p";
        else if constexpr (std::is_same_v<T, InterpPayload>) return "interp";
        else if constexpr (std::is_same_v<T, RealizePayload>) return "realize";
        else if constexpr (std::is_same_v<T, MinimizePayload>) return "minimize";
        else if constexpr (std::is_same_v<T, SeminormPayload>) return "seminorm";
        else if constexpr (std::is_same_v<T, AppPayload>) return "app";
        else {
          static const char* names[] = {"embed", "mult", "multiplier", "algebra", "nemytskij"};
          return names[v.index()];
        }
      },
      payload);
}

bool operator==(const Query& a, const Query& b) { return a.payload == b.payload; }
bool operator==(const IndexPayload& a, const IndexPayload& b) { return a.space == b.space; }
bool operator==(const SolvePayload& a, const SolvePayload& b) { return a.query == b.query; }
bool operator==(const InterpPayload& a, const InterpPayload& b) {
  return a.real == b.real && a.theta == b.theta && a.y == b.y && a.a == b.a && a.b == b.b;
}
bool operator==(const RealizePayload& a, const RealizePayload& b) {
  return a.sigma == b.sigma && a.pi == b.pi && a.rho == b.rho;
}
bool operator==(const MinimizePayload& a, const MinimizePayload& b) {
  return a.sigma == b.sigma && a.pi == b.pi && a.n == b.n;
}
bool operator==(const SeminormPayload& a, const SeminormPayload& b) {
  return a.function == b.function && a.width == b.width && a.freq == b.freq && a.space == b.space &&
         a.lambdas == b.lambdas && a.spacing == b.spacing && a.decay == b.decay;
}
bool operator==(const AppPayload& a, const AppPayload& b) {
  return a.stefan == b.stefan && a.n == b.n && a.p == b.p;
}

SpaceDescr parse_space(const std::string& text, const Prelude& prelude) {
  Parser p(text, prelude);
  SpaceDescr sp = p.space();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return sp;
}

Query parse_query(const std::string& text, const Prelude& prelude) {
  Parser p(text, prelude);
  if (p.at_end()) p.fail("empty query");
  return p.query();
}

std::string format(const Query& q) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndexPayload>) {
          return "index " + to_string(v.space);
        } else if constexpr (std::is_same_v<T, SolvePayload>) {
          return "solve p: " + format_decision(v.query);
        } else if constexpr (std::is_same_v<T, InterpPayload>) {
          std::string out = std::string("interp ") + (v.real ? "real" : "complex") + " theta=" + v.theta.str();
          if (v.y) out += " q=" + q_token(*v.y);
          return out + ": " + to_string(v.a) + ", " + to_string(v.b);
        } else if constexpr (std::is_same_v<T, RealizePayload>) {
          return "realize sigma=" + join_tuple(v.sigma) + " pi=" + join_tuple(v.pi) + " rho=" + v.rho.str();
        } else if constexpr (std::is_same_v<T, MinimizePayload>) {
          return "minimize sigma=" + join_tuple(v.sigma) + " pi=" + join_tuple(v.pi) + " n=" + std::to_string(v.n);
        } else if constexpr (std::is_same_v<T, SeminormPayload>) {
          std::string out = "seminorm " + v.function + "(";
          if (v.function == "modulated") out += "freq=" + v.freq.str() + ",";
          out += "width=" + v.width.str() + ") in " + to_string(v.space);
          return out + " lambda=" + join_tuple(v.lambdas) + " spacing=" + v.spacing.str() +
                 " decay=" + v.decay.str();
        } else if constexpr (std::is_same_v<T, AppPayload>) {
          std::string out = std::string("app ") + (v.stefan ? "stefan" : "nvs") + " n=" + std::to_string(v.n);
          if (v.p) out += " p=" + v.p->str();
          return out;
        } else {
          return format_decision(v);
        }
      },
      q.payload);
}

std::vector<QueryLine> split_query_file(const std::string& text) {
  std::vector<QueryLine> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back({lineno, line.substr(b, e - b + 1)});
  }
  return out;
}

}  // namespace anisocalc
