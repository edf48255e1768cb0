#include "discrimlab/bounds.hpp"

#include <cmath>
#include <string>

namespace discrimlab {

namespace {

void check_domain(double gamma0, const char* what) {
  if (!(gamma0 >= 0.0 && gamma0 <= 0.5)) {
    throw DomainError(std::string(what) + ": gamma0 must lie in [0, 1/2], got " + std::to_string(gamma0));
  }
}

}  // namespace

double xi0(double gamma0) {
  check_domain(gamma0, "xi0");
  return gamma0 / (1.0 - gamma0);
}

Op2 gamma_projector(double gamma0, int sign) {
  check_domain(gamma0, "gamma_projector");
  const double c = std::sqrt(1.0 - gamma0);
  const double s = (sign >= 0 ? 1.0 : -1.0) * std::sqrt(gamma0);
  return Op2::Real((Eigen::Matrix2d() << c * c, c * s, c * s, s * s).finished());
}

double p_glo(double gamma0) {
  check_domain(gamma0, "p_glo");
  return 1.0 - 1.0 / (4.0 * (1.0 - gamma0));
}

double p_sep(double gamma0) {
  check_domain(gamma0, "p_sep");
  return 1.0 - gamma0 - 1.0 / (4.0 * (1.0 - gamma0));
}

double u_bound(double gamma0) {
  check_domain(gamma0, "u_bound");
  const double one_minus = 1.0 - gamma0;
  const double penalty =
      std::pow(1.0 - 2.0 * gamma0, 4) * gamma0 / (4.0 * one_minus * one_minus * (1.0 + 4.0 * one_minus * one_minus));
  return p_sep(gamma0) - penalty;
}

double l1(double gamma0) {
  check_domain(gamma0, "l1");
  return 1.0 - 1.0 / (2.0 * (1.0 - gamma0));
}

double l1_mixing_point() { return std::sqrt(2.0) - 1.0; }

double l2(double gamma0) {
  check_domain(gamma0, "l2");
  const double t = l1_mixing_point();
  if (gamma0 > t) return l1(gamma0);
  return 0.75 + gamma0 * (l1(t) - 0.75) / t;
}

CurvePoint curve_point(double gamma0) {
  return {gamma0, p_glo(gamma0), p_sep(gamma0), u_bound(gamma0), l1(gamma0), l2(gamma0)};
}

std::vector<CurvePoint> sweep_curve(const std::vector<double>& gammas, Exec exec) {
  std::vector<CurvePoint> out(gammas.size());
  const long n = static_cast<long>(gammas.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = curve_point(gammas[i]);
    return out;
  }
  for (double g : gammas) check_domain(g, "sweep_curve");
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = curve_point(gammas[i]);
  return out;
}

double max_ordering_violation(const std::vector<CurvePoint>& pts) {
  double worst = 0.0;
  for (const auto& p : pts) {
    worst = std::max(worst, std::abs((p.p_glo - p.p_sep) - p.gamma0));
    worst = std::max(worst, p.u - p.p_sep);
    worst = std::max(worst, std::max(p.l1, p.l2) - p.u);
    worst = std::max(worst, -std::max(p.l1, p.l2));
  }
  return worst;
}

Povm optimal_sep_povm(double gamma0) {
  check_domain(gamma0, "optimal_sep_povm");
  using namespace qubit;
  const double xi = xi0(gamma0);
  const Op4 f0 = 2.0 * gamma0 * (tensor(p_plus(), p_minus()) + tensor(p_minus(), p_plus()));
  const Op4 f1 = (1.0 - 2.0 * gamma0) * (tensor(p0(), p1()) + tensor(p1(), p0())) + (1.0 - xi) * tensor(p1(), p1());
  const Op2 gp = gamma_projector(gamma0, +1);
  const Op2 gm = gamma_projector(gamma0, -1);
  const Op4 f2 = 0.5 * (1.0 + xi) * (tensor(gp, gp) + tensor(gm, gm));
  return Povm{{{Label::Zero, f0}, {Label::One, f1}, {Label::Fail, f2}}};
}

SepSymForms optimal_sep_symforms(double gamma0) {
  const double xi = xi0(gamma0);
  return {SymForm{gamma0, gamma0, gamma0, -gamma0}, SymForm{0.0, 1.0 - xi, 1.0 - 2.0 * gamma0, 0.0},
          SymForm{1.0 - gamma0, gamma0 * xi, gamma0, gamma0}};
}

double PureStatePair::overlap() const { return std::norm(psi0.dot(psi1)); }

PureStatePair PureStatePair::Default() {
  Op4::Vector a = Op4::Vector::Zero();
  a(pair_index(0, 0)) = 1.0;
  Op4::Vector b = Op4::Vector::Zero();
  b(pair_index(0, 0)) = b(pair_index(1, 1)) = 1.0 / std::sqrt(2.0);
  return {a, b};
}

Povm optimal_glo_povm(double gamma0) {
  check_domain(gamma0, "optimal_glo_povm");
  const PureStatePair pair = PureStatePair::Default();
  const double s = pair.overlap();

  // Vectors inside span{psi0, psi1} orthogonal to psi1 and to psi0.
  Op4::Vector perp1 = pair.psi0 - pair.psi1.dot(pair.psi0) * pair.psi1;
  perp1.normalize();
  Op4::Vector perp0 = pair.psi1 - pair.psi0.dot(pair.psi1) * pair.psi0;
  perp0.normalize();

  // <psi0|F0|psi0> = gamma0 with |<psi0|perp1>|^2 = 1 - s.
  const double alpha = gamma0 / (1.0 - s);
  const Op4 f0 = alpha * Op4::Projector(perp1);

  // Largest beta with Pi_even - F0 - beta |perp0><perp0| >= 0, from the 2x2
  // restriction in the basis (perp0, psi0).
  const Op4::Vector e1 = perp0;
  const Op4::Vector e2 = pair.psi0;
  const Op4::Matrix rest = Op4::Matrix::Identity() - f0.matrix();
  const double r11 = (e1.adjoint() * rest * e1)(0).real();
  const double r22 = (e2.adjoint() * rest * e2)(0).real();
  const Complex r12 = (e1.adjoint() * rest * e2)(0);
  const double beta = std::max(0.0, r11 - std::norm(r12) / r22);

  Op4::Vector odd_a = Op4::Vector::Zero();
  odd_a(pair_index(0, 1)) = 1.0;
  Op4::Vector odd_b = Op4::Vector::Zero();
  odd_b(pair_index(1, 0)) = 1.0;
  const Op4 f1 = Op4::Projector(odd_a) + Op4::Projector(odd_b) + beta * Op4::Projector(perp0);
  const Op4 f2 = Op4::Identity() - f0 - f1;
  return Povm{{{Label::Zero, f0}, {Label::One, f1}, {Label::Fail, f2}}};
}

}  // namespace discrimlab
