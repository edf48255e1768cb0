#include "discrimlab/operator.hpp"

#include <Eigen/Eigenvalues>

namespace discrimlab {

Op4 tensor(const Op2& a, const Op2& b) {
  Op4::Matrix m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(pair_index(i, j), pair_index(k, l)) = a(i, k) * b(j, l);
  return Op4::FromTrusted(m);
}

namespace {

struct Extremes {
  double lo;
  double hi;
};

Extremes block_eigs(double a, double d, Complex off) {
  const double mid = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), std::abs(off));
  return {mid - rad, mid + rad};
}

// Entries outside the {00,11} x {00,11} and {01,10} x {01,10} blocks.
bool is_block_diagonal(const Op4& op) {
  static constexpr int kEven[2] = {0, 3};
  static constexpr int kOdd[2] = {1, 2};
  for (int e : kEven)
    for (int o : kOdd)
      if (op(e, o) != Complex(0.0, 0.0)) return false;
  return true;
}

Extremes extremes(const Op2& op) { return block_eigs(op(0, 0).real(), op(1, 1).real(), op(0, 1)); }

Extremes extremes(const Op4& op) {
  if (is_block_diagonal(op)) {
    const Extremes even = block_eigs(op(0, 0).real(), op(3, 3).real(), op(0, 3));
    const Extremes odd = block_eigs(op(1, 1).real(), op(2, 2).real(), op(1, 2));
    return {std::min(even.lo, odd.lo), std::max(even.hi, odd.hi)};
  }
  Eigen::SelfAdjointEigenSolver<Op4::Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(3)};
}

template <int N>
bool positive_impl(const HermitianOp<N>& op, double tol) {
  const Extremes e = extremes(op);
  const double norm = std::max(std::abs(e.lo), std::abs(e.hi));
  return e.lo >= -tol * std::max(1.0, norm);
}

}  // namespace

double min_eigenvalue(const Op2& op) { return extremes(op).lo; }
double min_eigenvalue(const Op4& op) { return extremes(op).lo; }

double spectral_norm(const Op2& op) {
  const Extremes e = extremes(op);
  return std::max(std::abs(e.lo), std::abs(e.hi));
}
double spectral_norm(const Op4& op) {
  const Extremes e = extremes(op);
  return std::max(std::abs(e.lo), std::abs(e.hi));
}

bool is_positive(const Op2& op, double tol) { return positive_impl(op, tol); }
bool is_positive(const Op4& op, double tol) { return positive_impl(op, tol); }

Op4 partial_transpose(const Op4& op) {
  Op4::Matrix m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(pair_index(i, j), pair_index(k, l)) = op(pair_index(i, l), pair_index(k, j));
  return Op4::FromTrusted(m);
}

bool is_ppt_separable(const Op4& op, double tol) {
  if (!is_positive(op, tol)) {
    throw NotPositive("PPT test on a non-positive operator (min eigenvalue " +
                      std::to_string(min_eigenvalue(op)) + ")");
  }
  return is_positive(partial_transpose(op), tol);
}

namespace qubit {

Op2 p0() { return Op2::Real((Eigen::Matrix2d() << 1, 0, 0, 0).finished()); }
Op2 p1() { return Op2::Real((Eigen::Matrix2d() << 0, 0, 0, 1).finished()); }
Op2 p_plus() { return Op2::Real((Eigen::Matrix2d() << 0.5, 0.5, 0.5, 0.5).finished()); }
Op2 p_minus() { return Op2::Real((Eigen::Matrix2d() << 0.5, -0.5, -0.5, 0.5).finished()); }

Op2 real_projector(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Op2::Real((Eigen::Matrix2d() << c * c, c * s, c * s, s * s).finished());
}

}  // namespace qubit

}  // namespace discrimlab
