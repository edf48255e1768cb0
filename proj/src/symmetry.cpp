#include "discrimlab/symmetry.hpp"

#include <stdexcept>

namespace discrimlab {

double SymForm::max_abs_diff(const SymForm& o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(mu - o.mu)});
}

std::string_view to_string(SymmetryMap m) {
  switch (m) {
    case SymmetryMap::Swap: return "swap";
    case SymmetryMap::PhaseFlip: return "phase_flip";
    case SymmetryMap::Transpose: return "transpose";
    case SymmetryMap::PartialTranspose: return "partial_transpose";
  }
  return "?";
}

Op4 apply_symmetry(SymmetryMap m, const Op4& op) {
  if (m == SymmetryMap::PartialTranspose) return partial_transpose(op);
  if (m == SymmetryMap::Transpose) return Op4::FromTrusted(op.matrix().transpose());
  Op4::Matrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const int row = pair_index(i, j);
          const int col = pair_index(k, l);
          if (m == SymmetryMap::Swap) {
            out(pair_index(j, i), pair_index(l, k)) = op(row, col);
          } else {
            const double sign = ((i + j + k + l) % 2 == 0) ? 1.0 : -1.0;
            out(row, col) = sign * op(row, col);
          }
        }
  return Op4::FromTrusted(out);
}

namespace {

bool on_x_pattern(int r, int c) { return r == c || r + c == 3; }

}  // namespace

Op4 symmetrize_matrix(const Op4& op) {
  Op4 acc = op;
  for (SymmetryMap m : kAllSymmetryMaps) acc = (acc + apply_symmetry(m, acc)) * 0.5;

  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!on_x_pattern(r, c) && std::abs(acc(r, c)) > 1e-12 * scale) {
        throw std::logic_error("symmetrized operator left the X pattern");
      }
  return acc;
}

SymForm symmetrize(const Op4& op) {
  const Op4 s = symmetrize_matrix(op);
  return {s(0, 0).real(), s(3, 3).real(), s(1, 1).real(), s(0, 3).real()};
}

Op4 symform_to_matrix(const SymForm& s) {
  Op4::Matrix m = Op4::Matrix::Zero();
  m(0, 0) = s.a;
  m(1, 1) = s.c;
  m(2, 2) = s.c;
  m(3, 3) = s.b;
  m(0, 3) = m(3, 0) = s.mu;
  m(1, 2) = m(2, 1) = s.mu;
  return Op4::FromTrusted(m);
}

bool symform_is_positive(const SymForm& s, double tol) {
  return s.a >= -tol && s.b >= -tol && s.a * s.b - s.mu * s.mu >= -tol && s.c - std::abs(s.mu) >= -tol;
}

}  // namespace discrimlab
