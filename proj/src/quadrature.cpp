#include "pshlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

namespace pshlab {

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> rule(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n with the Chebyshev-like initial guess.
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[order - 1 - i] = {x, w};
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

struct Interval {
  double a, b;
  double value, error;
};

// Order-16 estimate with an order-8 companion on the same interval.
Interval evaluate_interval(const Fn1& f, double a, double b, long* evals) {
  const auto& g16 = gauss_legendre(16);
  const auto& g8 = gauss_legendre(8);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double v16 = 0.0, v8 = 0.0;
  for (const auto& [x, w] : g16) v16 += w * f(mid + half * x);
  for (const auto& [x, w] : g8) v8 += w * f(mid + half * x);
  *evals += 24;
  v16 *= half;
  v8 *= half;
  return {a, b, v16, std::abs(v16 - v8)};
}

struct WorstFirst {
  bool operator()(const Interval& l, const Interval& r) const {
    return l.error < r.error;
  }
};

QuadResult adaptive(const Fn1& f, const std::vector<std::pair<double, double>>& spans,
                    const QuadOptions& opts) {
  QuadResult out;
  std::priority_queue<Interval, std::vector<Interval>, WorstFirst> heap;
  double total = 0.0, err = 0.0;
  for (const auto& [a, b] : spans) {
    if (!(b > a)) continue;
    Interval iv = evaluate_interval(f, a, b, &out.evals);
    total += iv.value;
    err += iv.error;
    heap.push(iv);
  }
  int budget = opts.max_intervals;
  while (err > opts.abs_tol && !heap.empty() && budget-- > 0) {
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // width exhausted
    Interval left = evaluate_interval(f, worst.a, mid, &out.evals);
    Interval right = evaluate_interval(f, mid, worst.b, &out.evals);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  out.value = total;
  out.error = std::max(err, 0.0);
  out.converged = out.error <= opts.abs_tol * 1.000001 || heap.empty();
  return out;
}

}  // namespace

QuadResult integrate_1d(const Fn1& f, double a, double b,
                        const QuadOptions& opts) {
  return adaptive(f, {{a, b}}, opts);
}

std::vector<std::pair<double, double>> negative_intervals(
    const Fn1& level, double a, double b, const QuadOptions& opts,
    double feature_scale) {
  const double len = b - a;
  int n0 = opts.initial_probes;
  if (feature_scale > 0.0)
    n0 = std::clamp(static_cast<int>(std::ceil(4.0 * len / feature_scale)),
                    n0, 8192);

  std::vector<std::pair<double, double>> probes;  // (t, level)
  probes.reserve(n0 + 1);
  for (int i = 0; i <= n0; ++i) {
    const double t = a + len * i / n0;
    probes.emplace_back(t, level(t));
  }

  // Subdivide same-sign gaps whose end values are small compared to the
  // locally observed slope; thin dips across the zero level hide there.
  std::vector<std::pair<double, double>> refined = probes;
  const double slope0 = [&] {
    double s = 0.0;
    for (int i = 0; i + 1 <= n0; ++i)
      s = std::max(s, std::abs(probes[i + 1].second - probes[i].second) /
                          (len / n0));
    return s;
  }();
  std::vector<std::tuple<double, double, double, double, int>> work;
  for (int i = 0; i + 1 <= n0; ++i)
    work.emplace_back(probes[i].first, probes[i].second, probes[i + 1].first,
                      probes[i + 1].second, 0);
  while (!work.empty()) {
    auto [t0, v0, t1, v1, depth] = work.back();
    work.pop_back();
    if (depth >= opts.bracket_refine_depth) continue;
    if ((v0 < 0.0) != (v1 < 0.0)) continue;  // crossing already visible
    const double h = t1 - t0;
    const double vmin = std::min(std::abs(v0), std::abs(v1));
    if (vmin > 2.0 * slope0 * h) continue;
    const double tm = 0.5 * (t0 + t1);
    const double vm = level(tm);
    refined.emplace_back(tm, vm);
    work.emplace_back(t0, v0, tm, vm, depth + 1);
    work.emplace_back(tm, vm, t1, v1, depth + 1);
  }
  std::sort(refined.begin(), refined.end());

  // Bisect every sign change.
  std::vector<double> cuts{a};
  for (std::size_t i = 0; i + 1 < refined.size(); ++i) {
    double t0 = refined[i].first, v0 = refined[i].second;
    double t1 = refined[i + 1].first, v1 = refined[i + 1].second;
    if ((v0 < 0.0) == (v1 < 0.0)) continue;
    for (int it = 0; it < 60 && (t1 - t0) > 1e-14 * len; ++it) {
      const double tm = 0.5 * (t0 + t1);
      const double vm = level(tm);
      if ((vm < 0.0) == (v0 < 0.0)) {
        t0 = tm;
        v0 = vm;
      } else {
        t1 = tm;
        v1 = vm;
      }
    }
    cuts.push_back(0.5 * (t0 + t1));
  }
  cuts.push_back(b);

  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15 * len) continue;
    if (level(0.5 * (cuts[i] + cuts[i + 1])) < 0.0)
      spans.emplace_back(cuts[i], cuts[i + 1]);
  }
  return spans;
}

QuadResult integrate_1d_region(const Fn1& f, const Fn1& level, double a,
                               double b, const QuadOptions& opts,
                               double feature_scale) {
  if (!level) return integrate_1d(f, a, b, opts);
  const auto spans = negative_intervals(level, a, b, opts, feature_scale);
  if (spans.empty()) return {0.0, 0.0, true, 0};
  return adaptive(f, spans, opts);
}

QuadResult integrate_2d_region(const Fn2& f, const Fn2& level, double s0,
                               double s1, double t0, double t1,
                               const QuadOptions& opts, double feature_scale) {
  QuadOptions inner_opts = opts;
  inner_opts.abs_tol = 0.1 * opts.abs_tol / std::max(s1 - s0, 1e-12);

  long inner_evals = 0;
  bool inner_ok = true;
  const Fn1 column = [&](double s) {
    const Fn1 fs = [&, s](double t) { return f(s, t); };
    Fn1 ls;
    if (level) ls = [&, s](double t) { return level(s, t); };
    const QuadResult r = integrate_1d_region(fs, ls, t0, t1, inner_opts,
                                             feature_scale);
    inner_evals += r.evals;
    inner_ok = inner_ok && r.converged;
    return r.value;
  };

  QuadOptions outer_opts = opts;
  outer_opts.abs_tol = 0.9 * opts.abs_tol;
  QuadResult out = integrate_1d(column, s0, s1, outer_opts);
  out.evals += inner_evals;
  out.error += 0.1 * opts.abs_tol;
  out.converged = out.converged && inner_ok;
  return out;
}

}  // namespace pshlab
