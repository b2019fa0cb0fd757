// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swipt/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "swipt/errors.hpp"

namespace swipt::numerics {
namespace {

struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};

  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussLegendre16& gl16() {
  static const GaussLegendre16 rule;
  return rule;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, abs_value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double gauss = fc * kWg[3];
  double kron = fc * kWgk[7];
  double absk = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double f1 = f(c - h * kXgk[j]);
    const double f2 = f(c + h * kXgk[j]);
    kron += kWgk[j] * (f1 + f2);
    absk += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kron * h, absk * h, std::abs((kron - gauss) * h)};
}

struct FixedResult {
  double value;
  double abs_value;
};

FixedResult fixed_sum(const std::function<double(double)>& f, const NodeSet& nodes) {
  double sum = 0.0;
  double abs_sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = f(nodes.y[k]);
    sum += nodes.w[k] * v;
    abs_sum += nodes.w[k] * std::abs(v);
  }
  return {sum, abs_sum};
}

double adaptive(const std::function<double(double)>& f, const QuadratureRule& rule,
                int eval_budget) {
  const auto edges = graded_edges(rule.y_max(), std::max(1, rule.nodes / QuadratureRule::kPanelOrder));
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_abs = 0.0;
  double total_err = 0.0;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Segment s = kronrod(f, edges[i], edges[i + 1]);
    evals += 15;
    total += s.value;
    total_abs += s.abs_value;
    total_err += s.error;
    heap.push(s);
  }
  while (total_err > rule.rel_tol * total_abs + rule.abs_tol && total_err > 1e-300) {
    if (evals + 30 > eval_budget) {
      throw AccuracyError("integrate_halfline: adaptive subdivision exhausted its budget of " +
                              std::to_string(eval_budget) + " evaluations",
                          total, total_err);
    }
    const Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    const Segment left = kronrod(f, s.a, mid);
    const Segment right = kronrod(f, mid, s.b);
    evals += 30;
    total += left.value + right.value - s.value;
    total_abs += left.abs_value + right.abs_value - s.abs_value;
    total_err += left.error + right.error - s.error;
    heap.push(left);
    heap.push(right);
  }
  return total;
}

}  // namespace

void QuadratureRule::validate() const {
  if (nodes < kPanelOrder) {
    throw ContractError("QuadratureRule: node budget must be >= 16");
  }
  if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) {
    throw ContractError("QuadratureRule: relative tolerance must lie in (0, 1e-4]");
  }
  if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) {
    throw ContractError("QuadratureRule: absolute tolerance must be finite and >= 0");
  }
  if (!(scale >= 1.0) || !std::isfinite(scale)) {
    throw ContractError("QuadratureRule: scale must be finite and >= 1");
  }
}

QuadratureRule QuadratureRule::with_scale(double s) const {
  QuadratureRule r = *this;
  r.scale = s;
  return r;
}

QuadratureRule QuadratureRule::with_nodes(int n) const {
  QuadratureRule r = *this;
  r.nodes = n;
  return r;
}

std::vector<double> graded_edges(double y_max, int panels) {
  std::vector<double> edges(panels + 1);
  edges[0] = 0.0;
  const double first = 1.0;
  if (y_max <= first * panels) {
    for (int k = 1; k <= panels; ++k) edges[k] = y_max * k / panels;
    return edges;
  }
  // Solve first * (g^P - 1) / (g - 1) = y_max for the growth factor g.
  auto total = [&](double g) { return first * (std::pow(g, panels) - 1.0) / (g - 1.0); };
  double lo = 1.0 + 1e-12;
  double hi = 2.0;
  while (total(hi) < y_max) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < y_max ? lo : hi) = mid;
  }
  const double g = 0.5 * (lo + hi);
  double width = first;
  for (int k = 1; k <= panels; ++k) {
    edges[k] = edges[k - 1] + width;
    width *= g;
  }
  edges[panels] = y_max;
  return edges;
}

NodeSet make_nodes(const QuadratureRule& rule) {
  rule.validate();
  const int panels = rule.nodes / QuadratureRule::kPanelOrder;
  const auto edges = graded_edges(rule.y_max(), panels);
  const auto& gl = gl16();
  NodeSet out;
  out.y_max = rule.y_max();
  out.y.reserve(panels * QuadratureRule::kPanelOrder);
  out.w.reserve(panels * QuadratureRule::kPanelOrder);
  for (int p = 0; p < panels; ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < QuadratureRule::kPanelOrder; ++i) {
      out.y.push_back(c + h * gl.x[i]);
      out.w.push_back(h * gl.w[i]);
    }
  }
  return out;
}

double integrate_halfline(const std::function<double(double)>& f, const QuadratureRule& rule) {
  rule.validate();
  if (rule.scheme == QuadratureScheme::kAdaptive) {
    return adaptive(f, rule, 15 * rule.nodes);
  }
  const FixedResult coarse = fixed_sum(f, make_nodes(rule));
  const FixedResult fine = fixed_sum(f, make_nodes(rule.with_nodes(2 * rule.nodes)));
  if (std::abs(fine.value - coarse.value) <= rule.rel_tol * fine.abs_value + rule.abs_tol) {
    return fine.value;
  }
  return adaptive(f, rule, 8 * 15 * rule.nodes);
}

}  // namespace swipt::numerics
