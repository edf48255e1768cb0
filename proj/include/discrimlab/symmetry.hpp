#pragma once

// The 16-element symmetry group of the discrimination instance and the
// four-parameter X-shaped form it projects onto:
//
//            | a  0  0  mu |
//   [a,b,c;mu] = | 0  c  mu 0  |
//            | 0  mu c  0  |
//            | mu 0  0  b  |
//
// in the basis |00>, |01>, |10>, |11>.

#include <string_view>

#include "discrimlab/operator.hpp"

namespace discrimlab {

struct SymForm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double mu = 0.0;

  SymForm operator*(double s) const { return {a * s, b * s, c * s, mu * s}; }
  SymForm operator+(const SymForm& o) const { return {a + o.a, b + o.b, c + o.c, mu + o.mu}; }
  SymForm operator-(const SymForm& o) const { return {a - o.a, b - o.b, c - o.c, mu - o.mu}; }
  double max_abs_diff(const SymForm& o) const;
};

enum class SymmetryMap { Swap, PhaseFlip, Transpose, PartialTranspose };

inline constexpr SymmetryMap kAllSymmetryMaps[] = {SymmetryMap::Swap, SymmetryMap::PhaseFlip,
                                                   SymmetryMap::Transpose,
                                                   SymmetryMap::PartialTranspose};

std::string_view to_string(SymmetryMap m);

/// Swap: |ij><kl| -> |ji><lk|; PhaseFlip: multiply by (-1)^(i+j+k+l);
/// Transpose: |ij><kl| -> |kl><ij|; PartialTranspose: |ij><kl| -> |il><kj|.
Op4 apply_symmetry(SymmetryMap m, const Op4& op);

/// The full averaging map, returned as a matrix. Throws std::logic_error if
/// the result is not X-shaped to 1e-12 (relative to the input scale).
Op4 symmetrize_matrix(const Op4& op);

/// Four-parameter form of the averaged operator.
SymForm symmetrize(const Op4& op);

Op4 symform_to_matrix(const SymForm& s);

/// Closed-form positivity: a >= 0, b >= 0, ab >= mu^2, c >= |mu|, each with
/// additive slack `tol`.
bool symform_is_positive(const SymForm& s, double tol = 0.0);

}  // namespace discrimlab
