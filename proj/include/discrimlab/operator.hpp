#pragma once

// Small fixed-dimension Hermitian operator algebra for a qubit pair.
//
// Every operator lives either on one qubit (dimension 2) or on the pair
// (dimension 4). Two-qubit matrices use the global basis order
// |00>, |01>, |10>, |11>, so the element <ij|F|kl> sits at row 2i+j and
// column 2k+l.
//
// Separability is decided with the partial transpose. For a positive
// operator on 2x2 dimensions, positivity of the partial transpose is both
// necessary and sufficient for separability (rescaling a positive operator
// to unit trace preserves both properties, so the state criterion applies).

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace discrimlab {

using Complex = std::complex<double>;

/// Default relative tolerance for positivity tests.
inline constexpr double kPositivityTol = 1e-9;
/// Absolute tolerance on |F_jk - conj(F_kj)| accepted at construction.
inline constexpr double kHermitianTol = 1e-12;

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operator expected to be positive is not.
class NotPositive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <int N>
class HermitianOp {
  static_assert(N == 2 || N == 4, "only one- and two-qubit operators");

 public:
  using Matrix = Eigen::Matrix<Complex, N, N>;
  using Vector = Eigen::Matrix<Complex, N, 1>;
  static constexpr int kDim = N;

  HermitianOp() : m_(Matrix::Zero()) {}

  /// Checks Hermiticity (within kHermitianTol scaled by the largest entry)
  /// and finiteness, then stores the exactly Hermitian part.
  explicit HermitianOp(const Matrix& m) {
    double scale = 1.0;
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        const Complex z = m(r, c);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
          throw NotHermitian("operator has a non-finite entry");
        }
        scale = std::max(scale, std::abs(z));
      }
    }
    for (int r = 0; r < N; ++r) {
      for (int c = r; c < N; ++c) {
        if (std::abs(m(r, c) - std::conj(m(c, r))) > kHermitianTol * scale) {
          throw NotHermitian("operator is not Hermitian at (" + std::to_string(r) + "," +
                             std::to_string(c) + ")");
        }
      }
    }
    m_ = Hermitize(m);
  }

  static HermitianOp Identity() { return FromTrusted(Matrix::Identity()); }
  static HermitianOp Zero() { return HermitianOp(); }

  /// |v><v| (v is not normalized).
  static HermitianOp Projector(const Vector& v) { return FromTrusted(v * v.adjoint()); }

  /// Real symmetric operator from real entries; used heavily by literals.
  static HermitianOp Real(const Eigen::Matrix<double, N, N>& m) {
    return HermitianOp(Matrix(m.template cast<Complex>()));
  }

  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double trace() const { return m_.trace().real(); }

  HermitianOp operator+(const HermitianOp& o) const { return FromTrusted(m_ + o.m_); }
  HermitianOp operator-(const HermitianOp& o) const { return FromTrusted(m_ - o.m_); }
  HermitianOp operator*(double s) const { return FromTrusted(m_ * s); }
  friend HermitianOp operator*(double s, const HermitianOp& op) { return op * s; }
  HermitianOp& operator+=(const HermitianOp& o) {
    m_ += o.m_;
    return *this;
  }

  /// Largest entrywise modulus of the difference.
  double max_abs_diff(const HermitianOp& o) const { return (m_ - o.m_).cwiseAbs().maxCoeff(); }

  /// Re Tr(this * other); both Hermitian so the trace is real.
  double trace_with(const HermitianOp& o) const { return (m_ * o.m_).trace().real(); }

  /// Builds from a matrix already known to be Hermitian (sums, products of
  /// commuting Hermitian factors). Still hermitizes to kill rounding.
  static HermitianOp FromTrusted(const Matrix& m) {
    HermitianOp op;
    op.m_ = Hermitize(m);
    return op;
  }

 private:
  static Matrix Hermitize(const Matrix& m) {
    Matrix h = (m + m.adjoint()) * 0.5;
    for (int i = 0; i < N; ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
    return h;
  }

  Matrix m_;
};

using Op2 = HermitianOp<2>;
using Op4 = HermitianOp<4>;

/// Alice's and Bob's local factors of a product operator A (x) B.
struct ProductOp {
  Op2 alice;
  Op2 bob;
};

/// Kronecker product; <ij|a (x) b|kl> = a[i][k] * b[j][l].
Op4 tensor(const Op2& a, const Op2& b);
inline Op4 tensor(const ProductOp& p) { return tensor(p.alice, p.bob); }

/// Smallest eigenvalue. Closed form in dimension 2 and for X-shaped
/// two-qubit operators, self-adjoint eigensolver otherwise.
double min_eigenvalue(const Op2& op);
double min_eigenvalue(const Op4& op);

/// Largest absolute eigenvalue.
double spectral_norm(const Op2& op);
double spectral_norm(const Op4& op);

/// True iff min_eigenvalue >= -tol * max(1, spectral_norm).
bool is_positive(const Op2& op, double tol = kPositivityTol);
bool is_positive(const Op4& op, double tol = kPositivityTol);

/// |ij><kl| -> |il><kj| (transpose on Bob's qubit).
Op4 partial_transpose(const Op4& op);

/// PPT test; exact separability criterion for positive two-qubit operators.
/// Throws NotPositive if `op` itself fails positivity.
bool is_ppt_separable(const Op4& op, double tol = kPositivityTol);

/// Basis index of |ij>.
constexpr int pair_index(int i, int j) { return 2 * i + j; }

namespace qubit {
/// Single-qubit projectors used across the library.
Op2 p0();
Op2 p1();
Op2 p_plus();
Op2 p_minus();
/// |theta><theta| with |theta> = cos(theta)|0> + sin(theta)|1>.
Op2 real_projector(double theta);
}  // namespace qubit

}  // namespace discrimlab
