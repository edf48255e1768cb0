#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "discrimlab/exec.hpp"
#include "discrimlab/operator.hpp"

namespace discrimlab {

/// Outcome label: 0 and 1 identify the corresponding state, 2 is failure.
enum class Label : int { Zero = 0, One = 1, Fail = 2 };

inline constexpr int to_int(Label l) { return static_cast<int>(l); }
Label label_from_int(int v);  // throws std::invalid_argument outside {0,1,2}

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The state pair to discriminate.
struct Instance {
  Op4 rho0;
  Op4 rho1;

  /// rho0 = |00><00|, rho1 = (|++><++| + |--><--|) / 2.
  static Instance Default();
  bool is_default(double tol = 1e-12) const;
};

struct PovmElement {
  Label label;
  Op4 op;
};

/// Labels may repeat; probabilities are summed per label.
struct Povm {
  std::vector<PovmElement> elements;

  Op4 sum_for(Label l) const;
  Op4 total() const;
};

struct PovmReport {
  std::vector<double> min_eigenvalues;  ///< one per element
  double completeness_residual = 0.0;   ///< max |sum F - 1| entrywise
  bool positive = true;
  bool complete = true;
  bool passed() const { return positive && complete; }
};

/// Positivity (relative 1e-9) of every element and completeness (1e-9).
PovmReport validate_povm(const Povm& p);

struct UdReport {
  double zero_on_rho1 = 0.0;  ///< Tr(F_0 rho_1)
  double one_on_rho0 = 0.0;   ///< Tr(F_1 rho_0)
  bool passed() const { return zero_on_rho1 <= kUdTol && one_on_rho0 <= kUdTol; }

  static constexpr double kUdTol = 1e-9;
};

UdReport ud_constraints(const Povm& p, const Instance& inst);

struct SuccessPair {
  double gamma0 = 0.0;
  double gamma1 = 0.0;

  /// Convex combination (1 - t) * this + t * other.
  SuccessPair mix(const SuccessPair& other, double t) const {
    return {(1 - t) * gamma0 + t * other.gamma0, (1 - t) * gamma1 + t * other.gamma1};
  }
};

SuccessPair success_probs(const Povm& p, const Instance& inst);

struct Priors {
  double eta0 = 0.5;
  double eta1 = 0.5;

  /// Throws DomainError unless eta0 in [0,1].
  static Priors FromEta0(double eta0);
};

struct RateOptimum {
  double gamma = 0.0;
  double q = 0.0;
};

using SuccessCurve = std::function<double(double)>;

/// max over gamma in [0, 1/2] of eta0*gamma + eta1*curve(gamma): grid scan
/// at `grid_step`, then golden-section refinement to 1e-10 in gamma.
RateOptimum averaged_rate(const SuccessCurve& curve, const Priors& priors, double grid_step,
                          Exec exec = Exec::Parallel);

}  // namespace discrimlab
