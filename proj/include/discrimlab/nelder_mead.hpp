#pragma once

// Plain Nelder-Mead simplex minimizer (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Deterministic for a given start.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace discrimlab {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step, std::size_t max_evals,
                             double ftol = 1e-13) {
  const std::size_t n = x0.size();
  NelderMeadResult out;
  if (n == 0) {
    out.x = std::move(x0);
    out.value = f(out.x);
    out.evaluations = 1;
    return out;
  }

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double t, std::vector<double>& dst, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) dst[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best]))) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    }

    along(1.0, trial, pts[worst]);
    const double fr = eval(trial);
    if (fr < vals[best]) {
      along(2.0, trial2, pts[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    along(-0.5, trial2, pts[worst]);
    const double fc = eval(trial2);
    if (fc < vals[worst]) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = eval(pts[i]);
    }
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  out.x = pts[static_cast<std::size_t>(it - vals.begin())];
  out.value = *it;
  out.evaluations = evals;
  return out;
}

}  // namespace discrimlab
