#pragma once

// Closed-form success curves gamma1(gamma0) for the default instance and
// explicit measurements that attain the global and separable optima.
//
// All functions here are valid for the default state pair only and take
// gamma0 in [0, 1/2]; anything else raises DomainError.

#include <vector>

#include "discrimlab/discrimination.hpp"
#include "discrimlab/exec.hpp"
#include "discrimlab/symmetry.hpp"

namespace discrimlab {

/// gamma0 / (1 - gamma0).
double xi0(double gamma0);

/// sqrt(1-gamma0)|0> + sign*sqrt(gamma0)|1>, as a projector.
Op2 gamma_projector(double gamma0, int sign);

double p_glo(double gamma0);
double p_sep(double gamma0);
/// Upper bound on any finite-round LOCC protocol.
double u_bound(double gamma0);
/// Alice measures in the +/- basis, Bob discriminates the remaining pure pair.
double l1(double gamma0);
/// Mixing point of the (0, 3/4) protocol with the l1 protocol.
double l1_mixing_point();
/// Line from (0, 3/4) to the mixing point; l1 beyond it.
double l2(double gamma0);

struct CurvePoint {
  double gamma0 = 0.0;
  double p_glo = 0.0;
  double p_sep = 0.0;
  double u = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

CurvePoint curve_point(double gamma0);
std::vector<CurvePoint> sweep_curve(const std::vector<double>& gammas, Exec exec = Exec::Parallel);

/// Largest violation of p_glo - p_sep = gamma0, p_sep >= u >= max(l1, l2).
double max_ordering_violation(const std::vector<CurvePoint>& pts);

/// F0 = 2g(P+ P- + P- P+), F1 = (1-2g)(P0 P1 + P1 P0) + (1-xi0) P1 P1,
/// F2 = (1+xi0)/2 (Pg+ Pg+ + Pg- Pg-), labels 0, 1, 2 in that order.
Povm optimal_sep_povm(double gamma0);

/// Closed-form symmetrized elements of the separable optimum.
struct SepSymForms {
  SymForm f0;
  SymForm f1;
  SymForm f2;
};
SepSymForms optimal_sep_symforms(double gamma0);

/// Two pure states in the even-parity subspace span{|00>, |11>}.
struct PureStatePair {
  Op4::Vector psi0;
  Op4::Vector psi1;

  /// |<psi0|psi1>|^2.
  double overlap() const;
  /// psi0 = |00>, psi1 = (|00> + |11>)/sqrt(2); overlap 1/2.
  static PureStatePair Default();
};

/// Parity projection followed by optimal unambiguous discrimination of the
/// pure pair left in the even subspace. Elements labelled 0, 1, 2.
Povm optimal_glo_povm(double gamma0);

}  // namespace discrimlab
