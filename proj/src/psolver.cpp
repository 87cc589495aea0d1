#include "anisocalc/psolver.hpp"

#include <algorithm>

#include "anisocalc/embed.hpp"
#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr std::size_t kMaxSubsetFamily = 12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void add_root(std::vector<Rational>& out, const AffineExpr& e) {
  auto r = e.root();
  if (r && Rational(0) < *r && *r < Rational(1)) out.push_back(*r);
}

// Subset sums of `family` (size >= 2) minus each atom.
void add_subset_roots(std::vector<Rational>& out, const std::vector<AffineExpr>& family,
                      const std::vector<AffineExpr>& atoms) {
  if (family.size() > kMaxSubsetFamily)
    throw EngineError(ErrorKind::Unsupported, "too many spaces for an exact parameter solve");
  for (unsigned mask = 1; mask < (1u << family.size()); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    AffineExpr sum;
    for (std::size_t j = 0; j < family.size(); ++j)
      if (mask & (1u << j)) sum += family[j];
    for (const auto& a : atoms) add_root(out, sum - a);
  }
}

std::string render_p(const Rational& x) { return x.sign() == 0 ? "inf" : (Rational(1) / x).str(); }

}  // namespace

std::vector<SpaceDescr> spaces_of(const DecisionQuery& q) {
  return std::visit(Overloaded{
                        [](const EmbedQuery& e) { return std::vector<SpaceDescr>{e.src, e.dst}; },
                        [](const MultQuery& m) {
                          auto v = m.inst.factors;
                          v.push_back(m.inst.target);
                          return v;
                        },
                        [](const MultiplierQuery& m) {
                          auto v = m.inst.factors;
                          v.push_back(m.inst.target);
                          return v;
                        },
                        [](const AlgebraQuery& a) { return std::vector<SpaceDescr>{a.space}; },
                        [](const NemytskijQuery& n) {
                          auto v = n.args;
                          v.push_back(n.target);
                          return v;
                        },
                    },
                    q);
}

DecisionQuery substitute(const DecisionQuery& q, const Rational& x) {
  return std::visit(Overloaded{
                        [&](const EmbedQuery& e) -> DecisionQuery { return EmbedQuery{e.src.at(x), e.dst.at(x)}; },
                        [&](const MultQuery& m) -> DecisionQuery { return MultQuery{m.inst.at(x)}; },
                        [&](const MultiplierQuery& m) -> DecisionQuery {
                          return MultiplierQuery{m.inst.at(x), m.ell};
                        },
                        [&](const AlgebraQuery& a) -> DecisionQuery { return AlgebraQuery{a.space.at(x)}; },
                        [&](const NemytskijQuery& n) -> DecisionQuery {
                          NemytskijQuery out = n;
                          for (auto& a : out.args) a = a.at(x);
                          out.target = n.target.at(x);
                          return out;
                        },
                    },
                    q);
}

Decision decide(const DecisionQuery& q, const SignatureRegistry& reg) {
  return std::visit(Overloaded{
                        [&](const EmbedQuery& e) { return embeds(e.src, e.dst); },
                        [&](const MultQuery& m) { return decide_multiplication(m.inst, reg); },
                        [&](const MultiplierQuery& m) { return decide_multiplier(m.inst, m.ell, reg); },
                        [&](const AlgebraQuery& a) { return decide_algebra(a.space, reg); },
                        [&](const NemytskijQuery& n) {
                          AnalyticSpec phi{n.radius, n.vanishes_at_zero, "phi"};
                          return decide_nemytskij(n.args, n.target, phi, reg).decision;
                        },
                    },
                    q);
}

bool XInterval::contains(const Rational& x) const {
  bool above = lo_closed ? lo <= x : lo < x;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool ParamSet::is_excluded(const Rational& x) const {
  auto hit = [&](const ExcludedPoint& e) { return e.x == x; };
  return std::any_of(excluded.begin(), excluded.end(), hit) || std::any_of(undefined.begin(), undefined.end(), hit);
}

bool ParamSet::contains(const Rational& x) const {
  if (is_excluded(x)) return false;
  return std::any_of(intervals.begin(), intervals.end(), [&](const XInterval& i) { return i.contains(x); });
}

std::string ParamSet::p_str() const {
  if (intervals.empty()) return "p in {}";
  std::string out = "p in ";
  for (auto it = intervals.rbegin(); it != intervals.rend(); ++it) {
    if (it != intervals.rbegin()) out += " u ";
    if (it->lo == it->hi) {
      out += "{" + render_p(it->lo) + "}";
      continue;
    }
    out += (it->hi_closed ? "[" : "(") + render_p(it->hi) + ", " + render_p(it->lo) + (it->lo_closed ? "]" : ")");
  }
  if (!excluded.empty()) {
    std::vector<Rational> ps;
    for (const auto& e : excluded) ps.push_back(Rational(1) / e.x);
    std::sort(ps.begin(), ps.end());
    out += " \\ {";
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].str();
    out += "}";
  }
  return out;
}

std::string ParamSet::x_str() const {
  if (intervals.empty()) return "1/p in {}";
  std::string out = "1/p in ";
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& it = intervals[i];
    if (i) out += " u ";
    out += (it.lo_closed ? "[" : "(") + it.lo.str() + ", " + it.hi.str() + (it.hi_closed ? "]" : ")");
  }
  if (!excluded.empty()) {
    out += " \\ {";
    for (std::size_t i = 0; i < excluded.size(); ++i) out += (i ? ", " : "") + excluded[i].x.str();
    out += "}";
  }
  return out;
}

ParamSet ParamSet::from_p_interval(const Rational& p_lo, bool lo_closed, std::optional<Rational> p_hi,
                                   bool hi_closed) {
  XInterval iv;
  iv.lo = p_hi ? Rational(1) / *p_hi : Rational(0);
  iv.lo_closed = p_hi && hi_closed;
  if (p_lo <= Rational(1)) {
    iv.hi = Rational(1);
    iv.hi_closed = false;
  } else {
    iv.hi = Rational(1) / p_lo;
    iv.hi_closed = lo_closed;
  }
  ParamSet out;
  if (iv.lo < iv.hi || (iv.lo == iv.hi && iv.lo_closed && iv.hi_closed)) out.intervals.push_back(iv);
  return out;
}

ParamSet ParamSet::intersect(const ParamSet& other) const {
  ParamSet out;
  for (const auto& a : intervals)
    for (const auto& b : other.intervals) {
      XInterval c;
      if (a.lo == b.lo) {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed && b.lo_closed;
      } else {
        const XInterval& w = a.lo < b.lo ? b : a;
        c.lo = w.lo;
        c.lo_closed = w.lo_closed;
      }
      if (a.hi == b.hi) {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed && b.hi_closed;
      } else {
        const XInterval& w = a.hi < b.hi ? a : b;
        c.hi = w.hi;
        c.hi_closed = w.hi_closed;
      }
      if (c.lo < c.hi || (c.lo == c.hi && c.lo_closed && c.hi_closed)) out.intervals.push_back(c);
    }
  std::sort(out.intervals.begin(), out.intervals.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (const auto* src : {&excluded, &other.excluded})
    for (const auto& e : *src) {
      bool inside = std::any_of(out.intervals.begin(), out.intervals.end(),
                                [&](const XInterval& i) { return i.contains(e.x); });
      bool seen = std::any_of(out.excluded.begin(), out.excluded.end(), [&](const auto& f) { return f.x == e.x; });
      if (inside && !seen) out.excluded.push_back(e);
    }
  std::sort(out.excluded.begin(), out.excluded.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

std::vector<Rational> breakpoints(const DecisionQuery& q) {
  std::vector<SpaceDescr> spaces = spaces_of(q);
  std::vector<AffineExpr> atoms, xs, inds;
  std::vector<Rational> out;
  for (const auto& sp : spaces) {
    atoms.push_back(sp.s);
    if (sp.scale == Scale::C0) continue;
    atoms.push_back(sp.x);
    xs.push_back(sp.x);
    add_root(out, sp.x - AffineExpr(1));
    if (sp.y) atoms.push_back(AffineExpr(*sp.y));
    AffineExpr ind = sobolev_index(sp);
    atoms.push_back(ind);
    inds.push_back(ind);
    // Points where s meets w * Z for a weight w or omega_dot: the
    // identification of W and the lattice conditions change there.
    if (!sp.s.is_constant()) {
      std::vector<long> ws(sp.aniso.weights.begin(), sp.aniso.weights.end());
      ws.push_back(sp.aniso.omega_dot());
      Rational a = sp.s.at(Rational(0)), b = sp.s.at(Rational(1));
      Rational lo = min(a, b), hi = max(a, b);
      for (long w : ws) {
        Rational wr(w);
        for (Rational t = (lo / wr).floor(); t * wr <= hi; t += Rational(1)) add_root(out, sp.s - AffineExpr(t * wr));
      }
    }
  }
  for (const auto& a : atoms) {
    add_root(out, a);
    for (const auto& b : atoms) add_root(out, a - b);
  }
  add_subset_roots(out, inds, atoms);
  add_subset_roots(out, xs, atoms);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ParamSet solve_param(const DecisionQuery& q, const SignatureRegistry& reg) {
  std::vector<Rational> bps = breakpoints(q);
  std::vector<Rational> edges;
  edges.push_back(Rational(0));
  edges.insert(edges.end(), bps.begin(), bps.end());
  edges.push_back(Rational(1));

  // Elements alternate: cell 0, point 1, cell 1, ..., cell k.
  enum class State { Covered, NotCovered, Error };
  struct Element {
    State state;
    Rational x;
    std::string reason;
  };
  std::vector<Element> elems;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Rational mid = (edges[i] + edges[i + 1]) / Rational(2);
    State st;
    try {
      st = decide(substitute(q, mid), reg).covered() ? State::Covered : State::NotCovered;
    } catch (const EngineError& e) {
      if (e.kind() != ErrorKind::InvalidArgument) throw;
      st = State::NotCovered;
    }
    elems.push_back({st, mid, {}});
    if (i + 1 < edges.size() - 1) {
      const Rational& b = edges[i + 1];
      try {
        bool ok = decide(substitute(q, b), reg).covered();
        elems.push_back({ok ? State::Covered : State::NotCovered, b, {}});
      } catch (const EngineError& e) {
        elems.push_back({State::Error, b, std::string(to_string(e.kind())) + ": " + e.what()});
      }
    }
  }

  ParamSet out;
  auto covered_like = [&](std::size_t i) {
    if (elems[i].state == State::Covered) return true;
    if (elems[i].state == State::NotCovered) return false;
    return elems[i - 1].state == State::Covered && elems[i + 1].state == State::Covered;
  };
  std::size_t i = 0;
  while (i < elems.size()) {
    if (!covered_like(i)) {
      if (elems[i].state == State::Error) out.undefined.push_back({elems[i].x, elems[i].reason});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < elems.size() && covered_like(j + 1)) ++j;
    XInterval iv;
    bool starts_at_point = i % 2 == 1;
    iv.lo = starts_at_point ? elems[i].x : edges[i / 2];
    iv.lo_closed = starts_at_point;
    bool ends_at_point = j % 2 == 1;
    iv.hi = ends_at_point ? elems[j].x : edges[j / 2 + 1];
    iv.hi_closed = ends_at_point;
    out.intervals.push_back(iv);
    for (std::size_t k = i; k <= j; ++k)
      if (elems[k].state == State::Error) out.excluded.push_back({elems[k].x, elems[k].reason});
    i = j + 1;
  }
  return out;
}

}  // namespace anisocalc
