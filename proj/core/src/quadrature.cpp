#include "lineint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace lineint {

const char* to_string(RuleLevel level) noexcept {
  switch (level) {
    case RuleLevel::kGK21: return "GK21";
    case RuleLevel::kGK43: return "GK43";
    case RuleLevel::kGK87: return "GK87";
    case RuleLevel::kAdaptive: return "ADAPTIVE";
    case RuleLevel::kClosedForm: return "CLOSED_FORM";
    case RuleLevel::kComposite: return "COMPOSITE";
  }
  return "?";
}

const char* to_string(QuadStatus status) noexcept {
  switch (status) {
    case QuadStatus::kConverged: return "converged";
    case QuadStatus::kToleranceNotReached: return "tolerance-not-reached";
    case QuadStatus::kDepthCapReached: return "depth-cap-reached";
  }
  return "?";
}

Tolerance::Tolerance(double abs, double rel) : eps_abs(abs), eps_rel(rel) {
  if (!(abs >= 0.0) || !(rel >= 0.0)) {
    throw std::invalid_argument("tolerance components must be non-negative");
  }
  if (abs == 0.0 && rel == 0.0) {
    throw std::invalid_argument("tolerance components must not both be zero");
  }
}

Tolerance Tolerance::sqrt_epsilon() noexcept {
  constexpr double kSqrtEps = 1.4901161193847656e-8;
  return Tolerance(kSqrtEps, kSqrtEps);
}

Tolerance Tolerance::oracle_default() noexcept { return Tolerance(1e-15, 1e-15); }

namespace {

// QUADPACK qk15: Kronrod abscissae (descending, last is the centre) and
// weights; the Gauss 7-point nodes are the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Node15 {
  std::array<double, 15> x;   // offsets on [-1, 1]
  std::array<double, 15> wk;  // Kronrod weights
  std::array<double, 15> wg;  // Gauss weights, zero off the Gauss nodes
};

constexpr Node15 make_nodes() {
  Node15 n{};
  for (int k = 0; k < 7; ++k) {
    n.x[k] = -kXgk[k];
    n.x[14 - k] = kXgk[k];
    n.wk[k] = n.wk[14 - k] = kWgk[k];
    const double g = (k % 2 == 1) ? kWg[k / 2] : 0.0;
    n.wg[k] = n.wg[14 - k] = g;
  }
  n.x[7] = 0.0;
  n.wk[7] = kWgk[7];
  n.wg[7] = kWg[3];
  return n;
}

constexpr Node15 kNodes = make_nodes();

struct Panel {
  Box box;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
};

bool error_less(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

// Tensor 15x15 Kronrod estimate with the embedded 7x7 Gauss estimate as the
// comparison. The QUADPACK rescaling is applied, without the 50 eps floor so
// that tolerances near 1e-15 remain reachable on small panels.
Panel integrate_panel(const std::function<double(double, double)>& f, const Box& box,
                      int depth) {
  const double ht = 0.5 * (box.t_hi - box.t_lo);
  const double hs = 0.5 * (box.s_hi - box.s_lo);
  const double ct = 0.5 * (box.t_hi + box.t_lo);
  const double cs = 0.5 * (box.s_hi + box.s_lo);

  std::array<double, 225> fv;
  double res_k = 0.0;
  double res_g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double t = ct + ht * kNodes.x[i];
    double row_k = 0.0;
    double row_g = 0.0;
    for (int j = 0; j < 15; ++j) {
      const double v = f(t, cs + hs * kNodes.x[j]);
      fv[15 * i + j] = v;
      row_k += kNodes.wk[j] * v;
      row_g += kNodes.wg[j] * v;
    }
    res_k += kNodes.wk[i] * row_k;
    res_g += kNodes.wg[i] * row_g;
  }
  const double mean = 0.25 * res_k;
  double res_asc = 0.0;
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) {
      res_asc += kNodes.wk[i] * kNodes.wk[j] * std::fabs(fv[15 * i + j] - mean);
    }
  }
  const double jac = std::fabs(ht * hs);
  res_asc *= jac;
  double err = std::fabs((res_k - res_g) * jac);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }

  Panel p;
  p.box = box;
  p.value = res_k * jac;
  p.error = err;
  p.depth = depth;
  return p;
}

struct Totals {
  double value = 0.0;
  double error = 0.0;
};

// Neumaier-compensated sums over all live panels.
Totals exact_totals(const std::vector<Panel>& panels) {
  double v = 0.0, cv = 0.0, e = 0.0, ce = 0.0;
  auto add = [](double& sum, double& comp, double x) {
    const double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  for (const Panel& p : panels) {
    add(v, cv, p.value);
    add(e, ce, p.error);
  }
  return {v + cv, e + ce};
}

}  // namespace

IntegralResult oracle_2d(const std::function<double(double, double)>& f, Tolerance tol,
                         const Box& box, const OracleOptions& options) {
  if (!(box.t_lo <= box.t_hi) || !(box.s_lo <= box.s_hi)) {
    throw std::invalid_argument("oracle_2d: box bounds out of order");
  }
  if (options.initial_grid < 1) throw std::invalid_argument("oracle_2d: initial_grid must be >= 1");
  const int g = options.initial_grid;
  std::vector<Panel> heap;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const Box cell{box.t_lo + (box.t_hi - box.t_lo) * i / g,
                     i + 1 == g ? box.t_hi : box.t_lo + (box.t_hi - box.t_lo) * (i + 1) / g,
                     box.s_lo + (box.s_hi - box.s_lo) * j / g,
                     j + 1 == g ? box.s_hi : box.s_lo + (box.s_hi - box.s_lo) * (j + 1) / g};
      heap.push_back(integrate_panel(f, cell, 0));
    }
  }
  std::make_heap(heap.begin(), heap.end(), error_less);
  int evaluations = 225 * g * g;

  IntegralResult out;
  out.level = RuleLevel::kAdaptive;

  Totals running = exact_totals(heap);
  for (long iteration = 1;; ++iteration) {
    if (iteration % 64 == 0) running = exact_totals(heap);
    if (running.error <= tol.target(running.value)) {
      // Incremental updates drift; confirm against a fresh compensated sum.
      running = exact_totals(heap);
      if (running.error <= tol.target(running.value)) break;
    }
    const Panel worst = heap.front();
    if (worst.depth >= options.max_depth ||
        static_cast<int>(heap.size()) + 3 > options.max_panels) {
      running = exact_totals(heap);
      out.status = QuadStatus::kDepthCapReached;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), error_less);
    heap.pop_back();

    const Box& b = worst.box;
    const double tm = 0.5 * (b.t_lo + b.t_hi);
    const double sm = 0.5 * (b.s_lo + b.s_hi);
    const std::array<Box, 4> quads = {Box{b.t_lo, tm, b.s_lo, sm}, Box{tm, b.t_hi, b.s_lo, sm},
                                      Box{b.t_lo, tm, sm, b.s_hi}, Box{tm, b.t_hi, sm, b.s_hi}};
    running.value -= worst.value;
    running.error -= worst.error;
    for (const Box& q : quads) {
      Panel child = integrate_panel(f, q, worst.depth + 1);
      running.value += child.value;
      running.error += child.error;
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), error_less);
    }
    evaluations += 4 * 225;
  }

  out.value = running.value;
  out.abs_error = std::max(running.error, 0.0);
  out.evaluations = evaluations;
  return out;
}

}  // namespace lineint
