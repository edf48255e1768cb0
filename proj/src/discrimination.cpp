#include "discrimlab/discrimination.hpp"

#include <cmath>
#include <string>

namespace discrimlab {

Label label_from_int(int v) {
  if (v < 0 || v > 2) throw std::invalid_argument("outcome label must be 0, 1 or 2, got " + std::to_string(v));
  return static_cast<Label>(v);
}

Instance Instance::Default() {
  Op4 rho0 = tensor(qubit::p0(), qubit::p0());
  Op4 rho1 = (tensor(qubit::p_plus(), qubit::p_plus()) + tensor(qubit::p_minus(), qubit::p_minus())) * 0.5;
  return {rho0, rho1};
}

bool Instance::is_default(double tol) const {
  const Instance d = Default();
  return rho0.max_abs_diff(d.rho0) <= tol && rho1.max_abs_diff(d.rho1) <= tol;
}

Op4 Povm::sum_for(Label l) const {
  Op4 s;
  for (const auto& e : elements)
    if (e.label == l) s += e.op;
  return s;
}

Op4 Povm::total() const {
  Op4 s;
  for (const auto& e : elements) s += e.op;
  return s;
}

PovmReport validate_povm(const Povm& p) {
  PovmReport r;
  for (const auto& e : p.elements) {
    r.min_eigenvalues.push_back(min_eigenvalue(e.op));
    if (!is_positive(e.op, kPositivityTol)) r.positive = false;
  }
  r.completeness_residual = p.total().max_abs_diff(Op4::Identity());
  r.complete = r.completeness_residual <= 1e-9;
  return r;
}

UdReport ud_constraints(const Povm& p, const Instance& inst) {
  UdReport r;
  r.zero_on_rho1 = p.sum_for(Label::Zero).trace_with(inst.rho1);
  r.one_on_rho0 = p.sum_for(Label::One).trace_with(inst.rho0);
  return r;
}

SuccessPair success_probs(const Povm& p, const Instance& inst) {
  return {p.sum_for(Label::Zero).trace_with(inst.rho0), p.sum_for(Label::One).trace_with(inst.rho1)};
}

Priors Priors::FromEta0(double eta0) {
  if (!(eta0 >= 0.0 && eta0 <= 1.0)) throw DomainError("prior eta0 must lie in [0,1]");
  return {eta0, 1.0 - eta0};
}

RateOptimum averaged_rate(const SuccessCurve& curve, const Priors& priors, double grid_step, Exec exec) {
  if (!(grid_step > 0.0)) throw DomainError("grid step must be positive");
  constexpr double kLo = 0.0;
  constexpr double kHi = 0.5;
  auto objective = [&](double g) { return priors.eta0 * g + priors.eta1 * curve(g); };

  const auto n = static_cast<long>(std::floor((kHi - kLo) / grid_step + 1e-9)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i < n; ++i) grid[i] = std::min(kHi, kLo + grid_step * static_cast<double>(i));
  grid[n] = kHi;
  std::vector<double> values(grid.size());

  // Grid points are independent; the argmax below is serial so the result
  // does not depend on the thread count.
  const long m = static_cast<long>(grid.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) values[i] = objective(grid[i]);
  } else {
    for (long i = 0; i < m; ++i) values[i] = objective(grid[i]);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;

  double lo = std::max(kLo, grid[best] - grid_step);
  double hi = std::min(kHi, grid[best] + grid_step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }

  RateOptimum out{grid[best], values[best]};
  for (double g : {lo, hi, 0.5 * (lo + hi)}) {
    const double v = objective(g);
    if (v > out.q) out = {g, v};
  }
  return out;
}

}  // namespace discrimlab
