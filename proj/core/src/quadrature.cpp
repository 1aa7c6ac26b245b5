#include "rtmix/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace rtmix {

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return cache.emplace(order, std::move(rule)).first->second;
}

double integrate_gl(const ScalarFn& f, double a, double b, int order, int panels) {
  std::vector<double> br(panels + 1);
  for (int k = 0; k <= panels; ++k) br[k] = a + (b - a) * k / panels;
  br.back() = b;
  return integrate_gl_breaks(f, br, order);
}

double integrate_gl_breaks(const ScalarFn& f, const std::vector<double>& breaks, int order) {
  const GaussRule& g = gauss_legendre(order);
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double part = 0.0;
    for (int i = 0; i < order; ++i) part += g.weights[i] * f(mid + half * g.nodes[i]);
    sum += half * part;
  }
  return sum;
}

namespace {

// Kronrod 15 / Gauss 7 abscissae and weights (positive half, center first).
constexpr std::array<double, 8> kXk = {0.0,
                                       0.207784955007898467600689403773245,
                                       0.405845151377397166906606412076961,
                                       0.586087235467691130294144845693013,
                                       0.741531185599394439863864773280788,
                                       0.864864423359769072789712788640926,
                                       0.949107912342758524526189684047851,
                                       0.991455371120812639206854697526329};
constexpr std::array<double, 8> kWk = {0.209482141084727828012999174891714,
                                       0.204432940075298892414161999234649,
                                       0.190350578064785409913256402421014,
                                       0.169004726639267902826583426598550,
                                       0.140653259715525918745189590510238,
                                       0.104790010322250183839876322541518,
                                       0.063092092629978553290700663189204,
                                       0.022935322010529224963732008058970};
constexpr std::array<double, 4> kWg = {0.417959183673469387755102040816327,
                                       0.381830050505118944950369775488975,
                                       0.279705391489276667901467771423780,
                                       0.129484966168869693270611432679082};

struct Panel {
  double value, error;
};

Panel gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWk[0] * fc, g = kWg[0] * fc;
  for (int i = 1; i < 8; ++i) {
    const double s = f(c - h * kXk[i]) + f(c + h * kXk[i]);
    k += kWk[i] * s;
    if (i % 2 == 0) g += kWg[i / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

}  // namespace

AdaptiveResult integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol,
                                  int max_depth) {
  // Global strategy: always split the panel with the largest error estimate.
  struct Item {
    double a, b;
    Panel p;
    int depth;
    bool operator<(const Item& o) const { return p.error < o.p.error; }
  };
  constexpr int kMaxPanels = 20000;
  AdaptiveResult out;
  std::priority_queue<Item> heap;
  heap.push({a, b, gk15(f, a, b), 0});
  out.evaluations = 15;
  double value = heap.top().p.value, error = heap.top().p.error;
  std::vector<Item> done;
  while (!heap.empty()) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(value));
    if (error <= tol) break;
    Item it = heap.top();
    heap.pop();
    // Panels at roundoff level or maximal depth cannot improve.
    const bool floor = it.p.error <= 50.0 * std::numeric_limits<double>::epsilon() * std::abs(it.p.value);
    if (floor || it.depth >= max_depth || out.evaluations >= 30 * kMaxPanels) {
      done.push_back(it);
      continue;
    }
    const double m = 0.5 * (it.a + it.b);
    const Item l{it.a, m, gk15(f, it.a, m), it.depth + 1}, r{m, it.b, gk15(f, m, it.b), it.depth + 1};
    out.evaluations += 30;
    value += l.p.value + r.p.value - it.p.value;
    error += l.p.error + r.p.error - it.p.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to avoid drift from the running updates.
  out.value = 0.0;
  out.error = 0.0;
  for (const Item& it : done) {
    out.value += it.p.value;
    out.error += it.p.error;
  }
  while (!heap.empty()) {
    out.value += heap.top().p.value;
    out.error += heap.top().p.error;
    heap.pop();
  }
  out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value)) || heap.empty();
  return out;
}

std::vector<double> halton(long k, int dims) {
  static constexpr std::array<int, 8> primes = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dims > 8) throw std::invalid_argument("halton supports up to 8 dimensions");
  std::vector<double> out(dims);
  for (int d = 0; d < dims; ++d) {
    const int b = primes[d];
    double f = 1.0, r = 0.0;
    for (long i = k; i > 0; i /= b) {
      f /= b;
      r += f * static_cast<double>(i % b);
    }
    out[d] = r;
  }
  return out;
}

}  // namespace rtmix
