#include "anisocalc/normlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "anisocalc/errors.hpp"

namespace anisocalc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kNodesPerDecade = 16;

struct Direction {
  std::vector<double> v;
  double weight;
};

std::vector<Direction> directions(int n) {
  std::vector<Direction> out;
  if (n == 1) {
    out.push_back({{1.0}, 1.0});
    out.push_back({{-1.0}, 1.0});
  } else if (n == 2) {
    const int count = 16;
    for (int i = 0; i < count; ++i) {
      double a = 2 * kPi * i / count;
      out.push_back({{std::cos(a), std::sin(a)}, 2 * kPi / count});
    }
  } else if (n == 3) {
    const double w = 4 * kPi / 14;
    for (int c = 0; c < 3; ++c)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> v(3, 0.0);
        v[c] = sgn;
        out.push_back({v, w});
      }
    const double d = 1.0 / std::sqrt(3.0);
    for (int mask = 0; mask < 8; ++mask)
      out.push_back({{(mask & 1 ? -d : d), (mask & 2 ? -d : d), (mask & 4 ? -d : d)}, w});
  } else {
    throw EngineError(ErrorKind::Unsupported, "h-quadrature supports slices of dimension <= 3");
  }
  return out;
}

// Runs fn(i) for i in [0, n) on all cores; callers reduce in index order.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Flattened coordinates of every grid node.
struct Nodes {
  int dims = 0;
  std::size_t count = 0;
  std::vector<double> coords;
  double cell_volume = 1.0;
};

Nodes nodes_of(const GridSpec& g) {
  Nodes out;
  out.dims = g.total_dims();
  std::vector<int> n = g.points_per_coordinate();
  std::vector<double> step;
  for (int k = 0; k < g.aniso.nu(); ++k)
    for (int c = 0; c < g.aniso.dims[k]; ++c) step.push_back(g.spacing[k]);
  out.count = 1;
  for (int v : n) out.count *= static_cast<std::size_t>(v);
  for (double h : step) out.cell_volume *= h;
  out.coords.resize(out.count * out.dims);
  for (std::size_t i = 0; i < out.count; ++i) {
    std::size_t rest = i;
    for (int c = out.dims - 1; c >= 0; --c) {
      int idx = static_cast<int>(rest % n[c]);
      rest /= n[c];
      out.coords[i * out.dims + c] = (idx - (n[c] - 1) / 2) * step[c];
    }
  }
  return out;
}

std::vector<int> slice_offsets(const Anisotropy& a) {
  std::vector<int> off{0};
  for (int d : a.dims) off.push_back(off.back() + d);
  return off;
}

Evaluator evaluator_of(const GridFunction& u) {
  return [&u](const std::vector<double>& x) { return u.value_at(x); };
}

Evaluator partial(Evaluator f, int coord, double delta) {
  return [f = std::move(f), coord, delta](const std::vector<double>& x) {
    std::vector<double> a = x, b = x;
    a[coord] += delta;
    b[coord] -= delta;
    return (f(a) - f(b)) / (2 * delta);
  };
}

// All multi-indices over `n` coordinates with |alpha| = order.
void multi_indices(int n, int order, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(order);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = order; a >= 0; --a) {
    cur.push_back(a);
    multi_indices(n, order - a, cur, out);
    cur.pop_back();
  }
}

std::string alpha_str(const std::vector<int>& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
  return s + ")";
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Concrete {
  double s, p, q;
};

Concrete concrete(const SpaceDescr& sp) {
  Rational x = sp.x_value();
  if (x.sign() <= 0) throw EngineError(ErrorKind::Unsupported, "p = inf is outside the quadrature");
  double p = 1.0 / x.to_double();
  double q = p;
  if (sp.y) {
    if (sp.y->sign() <= 0) throw EngineError(ErrorKind::Unsupported, "q = inf is outside the quadrature");
    q = 1.0 / sp.y->to_double();
  }
  return {sp.s_value().to_double(), p, q};
}

// Integrates r^{-gamma q} || (Delta^h)^order D ||_p^q over h in R^{n_k},
// using the log-radius t = log r so that |h|^{-n_k} dh = dt dS.
struct SliceTerm {
  double integral = 0;
  double core = 0;
  double tail = 0;
};

SliceTerm slice_term(const GridFunction& u, const Nodes& nodes, const Evaluator& D, int slice, int order,
                     double gamma, double p, double q, const std::string& alpha,
                     std::vector<IntegrandSample>& samples) {
  const GridSpec& g = u.grid;
  double h_min = g.spacing[slice] / 2, h_max = 4 * g.decay_radius;
  double decades = std::log10(h_max / h_min);
  if (decades < 2)
    throw EngineError(ErrorKind::ResolutionError,
                      "h-range covers " + std::to_string(decades) + " decades; need at least 2");
  int count = static_cast<int>(std::ceil(kNodesPerDecade * decades)) + 1;
  double t0 = std::log(h_min), t1 = std::log(h_max), dt = (t1 - t0) / (count - 1);
  std::vector<Direction> dirs = directions(g.aniso.dims[slice]);
  int offset = slice_offsets(g.aniso)[slice];

  std::vector<double> on_grid(nodes.count);
  for (std::size_t i = 0; i < nodes.count; ++i)
    on_grid[i] = D(std::vector<double>(nodes.coords.begin() + i * nodes.dims,
                                       nodes.coords.begin() + (i + 1) * nodes.dims));

  std::vector<double> f(count);
  parallel_for(count, [&](std::size_t node) {
    double r = std::exp(t0 + node * dt);
    double acc = 0;
    std::vector<double> pt(nodes.dims);
    for (const auto& dir : dirs) {
      double norm_p = 0;
      for (std::size_t i = 0; i < nodes.count; ++i) {
        double diff = (order % 2 == 0 ? 1.0 : -1.0) * on_grid[i];
        for (int j = 1; j <= order; ++j) {
          for (int c = 0; c < nodes.dims; ++c) pt[c] = nodes.coords[i * nodes.dims + c];
          for (int c = 0; c < g.aniso.dims[slice]; ++c) pt[offset + c] += j * r * dir.v[c];
          diff += ((order - j) % 2 == 0 ? 1.0 : -1.0) * binomial(order, j) * D(pt);
        }
        norm_p += std::pow(std::abs(diff), p);
      }
      norm_p *= nodes.cell_volume;
      acc += dir.weight * std::pow(r, -gamma * q) * std::pow(norm_p, q / p);
    }
    f[node] = acc;
  });

  SliceTerm out;
  for (int node = 0; node < count; ++node) {
    double w = (node == 0 || node == count - 1) ? dt / 2 : dt;
    out.integral += w * f[node];
    samples.push_back({slice + 1, alpha, std::exp(t0 + node * dt), f[node]});
  }
  // Near 0 the integrand behaves like r^{(order - gamma) q}, at infinity like r^{-gamma q}.
  out.core = f.front() / ((order - gamma) * q);
  out.tail = gamma > 0 ? f.back() / (gamma * q) : 0;
  return out;
}

void check_grid(const GridFunction& u, const SpaceDescr& sp) {
  if (!(u.grid.aniso.dims == sp.aniso.dims))
    throw EngineError(ErrorKind::IncompatibleSpaces, "grid slices differ from the space's splitting");
}

SeminormResult finish(double total, double extra, double q, std::vector<IntegrandSample> samples) {
  SeminormResult r;
  r.value = std::pow(total, 1 / q);
  r.truncation_error_estimate = std::pow(total + extra, 1 / q) - r.value;
  r.samples = std::move(samples);
  return r;
}

}  // namespace

int GridSpec::total_dims() const { return std::accumulate(aniso.dims.begin(), aniso.dims.end(), 0); }

std::vector<int> GridSpec::points_per_coordinate() const {
  std::vector<int> out;
  for (int k = 0; k < aniso.nu(); ++k)
    for (int c = 0; c < aniso.dims[k]; ++c)
      out.push_back(2 * static_cast<int>(std::round(half_width[k] / spacing[k])) + 1);
  return out;
}

GridSpec GridSpec::around(const Anisotropy& aniso, double spacing, double decay_radius) {
  GridSpec g;
  g.aniso = aniso;
  g.spacing.assign(aniso.nu(), spacing);
  g.half_width.assign(aniso.nu(), 5 * decay_radius);
  g.decay_radius = decay_radius;
  return g;
}

GridFunction GridFunction::sample(const GridSpec& grid, Evaluator f) {
  if (grid.spacing.size() != static_cast<std::size_t>(grid.aniso.nu()) ||
      grid.half_width.size() != grid.spacing.size())
    throw EngineError(ErrorKind::InvalidArgument, "grid needs one spacing and half width per slice");
  GridFunction u;
  u.grid = grid;
  Nodes nodes = nodes_of(grid);
  u.samples.resize(nodes.count);
  for (std::size_t i = 0; i < nodes.count; ++i) {
    u.samples[i] = f(std::vector<double>(nodes.coords.begin() + i * nodes.dims,
                                         nodes.coords.begin() + (i + 1) * nodes.dims));
    if (!std::isfinite(u.samples[i])) throw EngineError(ErrorKind::InvalidArgument, "non-finite sample");
  }
  u.eval = std::move(f);
  return u;
}

double GridFunction::value_at(const std::vector<double>& point) const {
  if (eval) return eval(point);
  std::vector<int> n = grid.points_per_coordinate();
  std::vector<double> step;
  for (int k = 0; k < grid.aniso.nu(); ++k)
    for (int c = 0; c < grid.aniso.dims[k]; ++c) step.push_back(grid.spacing[k]);
  const int dims = static_cast<int>(n.size());
  std::vector<int> base(dims);
  std::vector<double> frac(dims);
  for (int c = 0; c < dims; ++c) {
    double pos = point[c] / step[c] + (n[c] - 1) / 2;
    double fl = std::floor(pos);
    if (fl < 0 || fl + 1 > n[c] - 1) return 0.0;
    base[c] = static_cast<int>(fl);
    frac[c] = pos - fl;
  }
  double acc = 0;
  for (int corner = 0; corner < (1 << dims); ++corner) {
    double w = 1;
    std::size_t idx = 0;
    for (int c = 0; c < dims; ++c) {
      int bit = (corner >> c) & 1;
      w *= bit ? frac[c] : 1 - frac[c];
      idx = idx * n[c] + base[c] + bit;
    }
    acc += w * samples[idx];
  }
  return acc;
}

GridFunction GridFunction::times(const GridFunction& other) const {
  if (!(grid.aniso == other.grid.aniso) || grid.spacing != other.grid.spacing ||
      grid.half_width != other.grid.half_width)
    throw EngineError(ErrorKind::IncompatibleSpaces, "products need identical grids");
  GridFunction out;
  out.grid = grid;
  out.grid.decay_radius = std::max(grid.decay_radius, other.grid.decay_radius);
  out.samples.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out.samples[i] = samples[i] * other.samples[i];
  if (eval && other.eval) {
    Evaluator a = eval, b = other.eval;
    out.eval = [a, b](const std::vector<double>& x) { return a(x) * b(x); };
  }
  return out;
}

TestFunction gaussian(int dims, double width, std::vector<double> center) {
  if (center.empty()) center.assign(dims, 0.0);
  return {"gaussian", [dims, width, center](const std::vector<double>& x) {
            double r2 = 0;
            for (int c = 0; c < dims; ++c) r2 += (x[c] - center[c]) * (x[c] - center[c]);
            return std::exp(-r2 / (width * width));
          }};
}

TestFunction modulated_gaussian(int dims, double freq, double width) {
  return {"modulated_gaussian", [dims, freq, width](const std::vector<double>& x) {
            double r2 = 0;
            for (int c = 0; c < dims; ++c) r2 += x[c] * x[c];
            return std::cos(freq * x[0]) * std::exp(-r2 / (width * width));
          }};
}

TestFunction dilate(const TestFunction& f, const Anisotropy& aniso, double lambda) {
  std::vector<double> factor;
  for (int k = 0; k < aniso.nu(); ++k)
    for (int c = 0; c < aniso.dims[k]; ++c) factor.push_back(std::pow(lambda, aniso.weights[k]));
  Evaluator inner = f.eval;
  return {f.name + "_dilated", [inner, factor](const std::vector<double>& x) {
            std::vector<double> y(x.size());
            for (std::size_t c = 0; c < x.size(); ++c) y[c] = factor[c] * x[c];
            return inner(y);
          }};
}

SeminormResult seminorm_slobodeckij(const GridFunction& u, const SpaceDescr& space) {
  if (space.scale != Scale::W)
    throw EngineError(ErrorKind::WrongScale, "the Slobodeckij seminorm needs a W space");
  check_grid(u, space);
  Concrete c = concrete(space);
  const Rational s = space.s_value();
  for (int w : space.aniso.weights)
    if ((s / Rational(w)).is_integer())
      throw EngineError(ErrorKind::WrongScale, "s/omega_k is an integer; the seminorm needs fractional order");
  Nodes nodes = nodes_of(u.grid);
  Evaluator base = evaluator_of(u);
  double total = 0, extra = 0;
  std::vector<IntegrandSample> samples;
  std::vector<int> off = slice_offsets(space.aniso);
  for (int k = 0; k < space.aniso.nu(); ++k) {
    double sigma = c.s / space.aniso.weights[k];
    int m = static_cast<int>(std::floor(sigma));
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur;
    multi_indices(space.aniso.dims[k], m, cur, alphas);
    double delta = u.grid.spacing[k] / 4;
    for (const auto& alpha : alphas) {
      Evaluator D = base;
      for (int ci = 0; ci < space.aniso.dims[k]; ++ci)
        for (int r = 0; r < alpha[ci]; ++r) D = partial(D, off[k] + ci, delta);
      SliceTerm t = slice_term(u, nodes, D, k, 1, sigma - m, c.p, c.p, alpha_str(alpha), samples);
      total += t.integral;
      extra += t.core + t.tail;
    }
  }
  return finish(total, extra, c.p, std::move(samples));
}

SeminormResult seminorm_besov(const GridFunction& u, const SpaceDescr& space) {
  if (space.scale != Scale::B) throw EngineError(ErrorKind::WrongScale, "the Besov seminorm needs a B space");
  check_grid(u, space);
  Concrete c = concrete(space);
  if (c.s <= 0) throw EngineError(ErrorKind::InvalidArgument, "the Besov seminorm needs s > 0");
  Nodes nodes = nodes_of(u.grid);
  Evaluator base = evaluator_of(u);
  double total = 0, extra = 0;
  std::vector<IntegrandSample> samples;
  for (int k = 0; k < space.aniso.nu(); ++k) {
    double sigma = c.s / space.aniso.weights[k];
    int order = static_cast<int>(std::floor(sigma)) + 1;
    SliceTerm t = slice_term(u, nodes, base, k, order, sigma, c.p, c.q, "-", samples);
    total += t.integral;
    extra += t.core + t.tail;
  }
  return finish(total, extra, c.q, std::move(samples));
}

double lp_norm(const GridFunction& u, double p) {
  Nodes nodes = nodes_of(u.grid);
  double acc = 0;
  for (double v : u.samples) acc += std::pow(std::abs(v), p);
  return std::pow(acc * nodes.cell_volume, 1 / p);
}

double full_norm(const GridFunction& u, const SpaceDescr& raw) {
  check_grid(u, raw);
  SpaceDescr sp = normalize(raw);
  Concrete c = concrete(sp);
  switch (sp.scale) {
    case Scale::L:
      return lp_norm(u, c.p);
    case Scale::H: {
      if (!in_omega_dot_lattice(sp.s_value(), sp.aniso))
        throw EngineError(ErrorKind::Unsupported, "H norms are computed for s in omega_dot N_0 only");
      // Sum over slices of all derivatives of order <= s/omega_k.
      double acc = std::pow(lp_norm(u, c.p), c.p);
      std::vector<int> off = slice_offsets(sp.aniso);
      Nodes nodes = nodes_of(u.grid);
      for (int k = 0; k < sp.aniso.nu(); ++k) {
        int top = static_cast<int>(std::lround(c.s / sp.aniso.weights[k]));
        for (int order = 1; order <= top; ++order) {
          std::vector<std::vector<int>> alphas;
          std::vector<int> cur;
          multi_indices(sp.aniso.dims[k], order, cur, alphas);
          for (const auto& alpha : alphas) {
            Evaluator D = evaluator_of(u);
            for (int ci = 0; ci < sp.aniso.dims[k]; ++ci)
              for (int r = 0; r < alpha[ci]; ++r) D = partial(D, off[k] + ci, u.grid.spacing[k] / 4);
            double part = 0;
            for (std::size_t i = 0; i < nodes.count; ++i)
              part += std::pow(std::abs(D(std::vector<double>(nodes.coords.begin() + i * nodes.dims,
                                                              nodes.coords.begin() + (i + 1) * nodes.dims))),
                               c.p);
            acc += part * nodes.cell_volume;
          }
        }
      }
      return std::pow(acc, 1 / c.p);
    }
    case Scale::B: {
      SpaceDescr as_w = sp;
      bool fractional = true;
      for (int w : sp.aniso.weights)
        if ((sp.s_value() / Rational(w)).is_integer()) fractional = false;
      if (!sp.y && fractional) {
        as_w.scale = Scale::W;
        double semi = seminorm_slobodeckij(u, as_w).value;
        return std::pow(std::pow(lp_norm(u, c.p), c.p) + std::pow(semi, c.p), 1 / c.p);
      }
      return lp_norm(u, c.p) + seminorm_besov(u, sp).value;
    }
    default:
      throw EngineError(ErrorKind::Unsupported, "no norm quadrature for this scale");
  }
}

ProductEstimate check_product_estimate(const MultInstance& inst,
                                       const std::vector<std::vector<GridFunction>>& family) {
  Decision d = decide_multiplication(inst);
  if (!d.covered()) {
    const TraceEntry* f = d.first_failure();
    throw EngineError(ErrorKind::NotCovered, "the product is not covered, so there is no estimate to probe",
                      f ? f->anchor : "");
  }
  ProductEstimate out;
  for (const auto& tuple : family) {
    if (tuple.size() != inst.factors.size())
      throw EngineError(ErrorKind::InvalidArgument, "tuple size differs from the number of factors");
    GridFunction prod = tuple.front();
    double denom = full_norm(tuple.front(), inst.factors.front());
    for (std::size_t j = 1; j < tuple.size(); ++j) {
      prod = prod.times(tuple[j]);
      denom *= full_norm(tuple[j], inst.factors[j]);
    }
    out.ratios.push_back(full_norm(prod, inst.target) / denom);
  }
  if (!out.ratios.empty()) {
    out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    out.min_ratio = *std::min_element(out.ratios.begin(), out.ratios.end());
  }
  return out;
}

double fit_scaling_exponent(const std::vector<double>& lambdas, const std::vector<double>& values) {
  const std::size_t n = lambdas.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(lambdas[i]), ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string to_csv(const SeminormResult& r) {
  std::ostringstream out;
  out.precision(12);
  out << "slice,alpha,h,integrand\n";
  for (const auto& s : r.samples) out << s.slice << "," << s.alpha << "," << s.h << "," << s.value << "\n";
  return out.str();
}

}  // namespace anisocalc
