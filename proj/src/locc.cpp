#include "discrimlab/locc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "discrimlab/bounds.hpp"

namespace discrimlab {

std::string path_to_string(const Path& p) {
  std::ostringstream os;
  os << "/";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "/" : "") << p[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// LoccTree

LoccTree::LoccTree() {
  Vertex root;
  root.acc = {Op2::Identity(), Op2::Identity()};
  vertices_.push_back(std::move(root));
}

LoccTree LoccTree::Leaf(Label label) {
  LoccTree t;
  t.set_label(root(), label);
  return t;
}

LoccTree::NodeId LoccTree::add_outcome(NodeId at, Party party, const Op2& op) {
  Vertex& parent = vertices_.at(at);
  if (parent.label) throw InvalidTree("cannot refine a labelled outcome", path_of(at));
  if (parent.measurer && *parent.measurer != party) {
    throw InvalidTree("outcomes at one vertex must belong to one party", path_of(at));
  }
  if (parent.depth + 1 > kMaxTreeDepth) throw InvalidTree("tree deeper than 32 rounds", path_of(at));
  parent.measurer = party;

  Vertex child;
  child.parent = at;
  child.position = parent.children.size();
  child.depth = parent.depth + 1;
  child.mover = party;
  child.acc = parent.acc;
  (party == Party::Alice ? child.acc.alice : child.acc.bob) = op;

  const NodeId id = vertices_.size();
  parent.children.push_back(id);
  vertices_.push_back(std::move(child));
  return id;
}

std::vector<LoccTree::NodeId> LoccTree::split(NodeId at, Party party, const std::vector<Op2>& ops) {
  std::vector<NodeId> ids;
  ids.reserve(ops.size());
  for (const Op2& op : ops) ids.push_back(add_outcome(at, party, op));
  return ids;
}

void LoccTree::set_label(NodeId leaf, Label label) {
  Vertex& v = vertices_.at(leaf);
  if (!v.children.empty()) throw InvalidTree("only leaves carry labels", path_of(leaf));
  v.label = label;
}

std::vector<LoccTree::NodeId> LoccTree::leaves() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const auto& kids = vertices_[id].children;
    if (kids.empty()) {
      out.push_back(id);
      continue;
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

Path LoccTree::path_of(NodeId id) const {
  Path p;
  for (NodeId cur = id; vertices_.at(cur).parent; cur = *vertices_[cur].parent) p.push_back(vertices_[cur].position);
  return {p.rbegin(), p.rend()};
}

LoccTree::NodeId LoccTree::at(const Path& path) const {
  NodeId cur = root();
  for (std::size_t step : path) {
    const auto& kids = vertices_[cur].children;
    if (step >= kids.size()) throw BadPath("path " + path_to_string(path) + " leaves the tree");
    cur = kids[step];
  }
  return cur;
}

std::vector<LoccTree::NodeId> LoccTree::lineage(NodeId id) const {
  std::vector<NodeId> out;
  for (std::optional<NodeId> cur = id; cur; cur = vertices_.at(*cur).parent) out.push_back(*cur);
  return {out.rbegin(), out.rend()};
}

bool LoccTree::is_alternating() const {
  for (const Vertex& v : vertices_) {
    if (!v.parent || !v.measurer) continue;
    if (*v.measurer == v.mover) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation and measurement

TreeReport validate_tree(const LoccTree& t) {
  TreeReport r;
  r.worst_min_eigenvalue = 1.0;
  for (LoccTree::NodeId id = 0; id < t.size(); ++id) {
    const auto& v = t.vertex(id);
    r.depth = std::max(r.depth, v.depth);
    if (v.depth > kMaxTreeDepth) r.problems.push_back({t.path_of(id), "depth exceeds 32"});

    for (const Op2* op : {&v.acc.alice, &v.acc.bob}) {
      r.worst_min_eigenvalue = std::min(r.worst_min_eigenvalue, min_eigenvalue(*op));
      if (!is_positive(*op)) r.problems.push_back({t.path_of(id), "local operator is not positive"});
    }

    if (v.children.empty()) {
      if (!v.label) r.problems.push_back({t.path_of(id), "leaf without a label"});
      continue;
    }
    const Party p = *v.measurer;
    const Op2& parent_op = p == Party::Alice ? v.acc.alice : v.acc.bob;
    Op2 sum;
    for (auto c : v.children) {
      const auto& child = t.vertex(c);
      sum += p == Party::Alice ? child.acc.alice : child.acc.bob;
    }
    const double residual = sum.max_abs_diff(parent_op);
    r.worst_refinement_residual = std::max(r.worst_refinement_residual, residual);
    if (residual > 1e-9) {
      std::ostringstream os;
      os << "children do not sum to the parent operator (residual " << residual << ")";
      r.problems.push_back({t.path_of(id), os.str()});
    }
  }
  return r;
}

namespace {

void require_valid(const LoccTree& t) {
  const TreeReport r = validate_tree(t);
  if (!r.passed()) throw InvalidTree(r.problems.front().what, r.problems.front().path);
}

}  // namespace

Povm leaf_povm(const LoccTree& t) {
  require_valid(t);
  Povm p;
  for (auto id : t.leaves()) {
    const auto& v = t.vertex(id);
    p.elements.push_back({*v.label, tensor(v.acc)});
  }
  return p;
}

double weight(const Op4& g) { return g(0, 0).real(); }

namespace {

// A positive operator with a zero top-left entry has a zero first row.
void check_degenerate(const Op2& op) {
  const double a00 = op(0, 0).real(), a11 = op(1, 1).real();
  const double off = std::norm(op(0, 1));
  if (off > std::max(a00, 0.0) * std::max(a11, 0.0) + 1e-12 * std::max(1.0, a11 * a11)) {
    throw NotPositive("local operator has A01 != 0 beyond what A00 allows");
  }
}

}  // namespace

TrajectoryPoint trajectory_point(const ProductOp& acc) {
  const double a00 = acc.alice(0, 0).real();
  const double b00 = acc.bob(0, 0).real();
  check_degenerate(acc.alice);
  check_degenerate(acc.bob);
  TrajectoryPoint pt;
  pt.w = a00 * b00;
  if (pt.w <= kWeightFloor || a00 <= 0.0 || b00 <= 0.0) {
    pt.w = std::max(pt.w, 0.0);
    return pt;
  }
  pt.x = acc.alice(0, 1).real() / a00;
  pt.y = acc.bob(0, 1).real() / b00;
  pt.defined = true;
  return pt;
}

std::vector<TrajectoryPoint> trajectory(const LoccTree& t, const Path& path) {
  const auto leaf = t.at(path);
  if (!t.is_leaf(leaf)) throw BadPath("path " + path_to_string(path) + " does not end on a leaf");
  std::vector<TrajectoryPoint> out;
  bool alive = true;
  for (auto id : t.lineage(leaf)) {
    TrajectoryPoint pt = trajectory_point(t.vertex(id).acc);
    if (!alive) {
      pt = TrajectoryPoint{0.0, 0.0, pt.w, false};
    }
    alive = alive && pt.defined;
    out.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functionals

double chi(double x, double y, double xi, Sign s) {
  const double k = sign_value(s) * (1.0 + xi);
  return (2.0 * x - k) * (2.0 * y + k);
}

double f_functional(const Op4& f, double xi, Sign s) {
  auto e = [&](int i, int j, int k, int l) { return f(pair_index(i, j), pair_index(k, l)).real(); };
  const double cross = e(0, 0, 1, 1) + e(0, 1, 1, 0) + e(1, 0, 0, 1) + e(1, 1, 0, 0);
  const double shift = e(0, 0, 1, 0) + e(1, 0, 0, 0) - e(0, 0, 0, 1) - e(0, 1, 0, 0);
  return cross - 4.0 * xi * e(0, 0, 0, 0) + sign_value(s) * (1.0 + xi) * shift;
}

double penalty_g(const Op4& n, double xi) {
  const Op4 kernel = symform_to_matrix({xi * xi, 1.0, 1.0, -(1.0 + xi) / 2.0});
  return 0.25 * n.trace_with(kernel);
}

double penalty_scale(double xi) { return 16.0 * (4.0 + (1.0 + xi) * (1.0 + xi)); }

std::string to_string(Group g) {
  switch (g) {
    case Group::Gamma0: return "gamma0";
    case Group::GammaPlus: return "gamma_plus";
    case Group::GammaMinus: return "gamma_minus";
  }
  return "?";
}

Op4 GammaDecomposition::group_total(Group g) const {
  const auto& row = k[static_cast<int>(g)];
  return row[0] + row[1] + row[2];
}

Op4 GammaDecomposition::total() const {
  return group_total(Group::Gamma0) + group_total(Group::GammaPlus) + group_total(Group::GammaMinus);
}

Classification classify_leaves(const LoccTree& t, double xi) {
  require_valid(t);
  Classification out;
  for (auto id : t.leaves()) {
    LeafRecord rec;
    const auto& v = t.vertex(id);
    rec.path = t.path_of(id);
    rec.g = tensor(v.acc);
    rec.label = *v.label;
    rec.trajectory = trajectory(t, rec.path);
    rec.f_plus = f_functional(rec.g, xi, Sign::Plus);
    rec.f_minus = f_functional(rec.g, xi, Sign::Minus);
    for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
      const auto& pt = rec.trajectory[i];
      if (!pt.defined) break;
      if (chi(pt.x, pt.y, xi, Sign::Plus) >= -kRegionTol) {
        rec.group = Group::GammaPlus;
      } else if (chi(pt.x, pt.y, xi, Sign::Minus) >= -kRegionTol) {
        rec.group = Group::GammaMinus;
      } else {
        continue;
      }
      rec.first_entry = i;
      break;
    }
    out.decomposition.at(rec.group, rec.label) += rec.g;
    out.leaves.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificate

namespace {

constexpr double kCheckTol = 1e-9;
constexpr double kCornerTol = 1e-6;

double corner_offset(const TrajectoryPoint& p, double cx, double cy) {
  return std::min(std::max(std::abs(p.x - cx), std::abs(p.y - cy)),
                  std::max(std::abs(p.x + cx), std::abs(p.y + cy)));
}

}  // namespace

GapCertificate certify_gap(const LoccTree& t, std::optional<double> gamma0_target) {
  const Povm povm = leaf_povm(t);
  const Instance inst = Instance::Default();
  const UdReport ud = ud_constraints(povm, inst);
  if (!ud.passed()) {
    std::ostringstream os;
    os << "protocol is not unambiguous: Tr(F0 rho1) = " << ud.zero_on_rho1 << ", Tr(F1 rho0) = " << ud.one_on_rho0;
    throw UdViolation(os.str());
  }

  GapCertificate c;
  c.gammas = success_probs(povm, inst);
  const double g0 = std::clamp(c.gammas.gamma0, 0.0, 0.5);
  c.xi = xi0(g0);
  c.u = u_bound(g0);
  c.gamma0_target = gamma0_target;
  if (gamma0_target) c.target_matches = std::abs(c.gammas.gamma0 - *gamma0_target) <= kCheckTol;

  const double xi = c.xi;
  const double gap2 = (1.0 - xi) * (1.0 - xi);
  const Classification cls = classify_leaves(t, xi);
  const GammaDecomposition& dec = cls.decomposition;
  for (int g = 0; g < 3; ++g)
    for (int m = 0; m < 3; ++m) c.k_weights[g][m] = weight(dec.k[g][m]);

  const double root_xi = std::sqrt(xi);
  for (const LeafRecord& leaf : cls.leaves) {
    const TrajectoryPoint& end = leaf.trajectory.back();
    const double w = weight(leaf.g);
    if (leaf.label == Label::One) {
      c.m1_worst_weight = std::max(c.m1_worst_weight, w);
      continue;
    }
    if (!end.defined) continue;
    if (leaf.label == Label::Fail) {
      if (corner_offset(end, root_xi, root_xi) > kCornerTol) ++c.m2_off_optimum;
      continue;
    }

    // m = 0 with positive weight.
    c.m0_worst_offset = std::max(c.m0_worst_offset, corner_offset(end, 1.0, -1.0));
    if (leaf.group == Group::Gamma0) ++c.m0_in_gamma0;

    // A zigzag path from (0,0) to the (1,-1) quadrant must stop in R+; the
    // mirrored corner (-1,1) is reached through R-.
    const Sign s = end.x >= 0.0 ? Sign::Plus : Sign::Minus;
    const auto lineage = t.lineage(t.at(leaf.path));
    bool landed = false;
    for (std::size_t i = 0; i < leaf.trajectory.size() && !landed; ++i) {
      const auto& pt = leaf.trajectory[i];
      if (!pt.defined || chi(pt.x, pt.y, xi, s) < -kRegionTol) continue;
      const double f = f_functional(tensor(t.vertex(lineage[i]).acc), xi, s);
      landed = f >= w * gap2 - kCheckTol * std::max(1.0, std::abs(f));
    }
    ++c.landing_checked;
    if (!landed) c.landing_holds = false;
  }
  c.m0_on_corners = c.m0_worst_offset <= kCornerTol;
  c.m1_weightless = c.m1_worst_weight <= kCheckTol;

  const double scale = penalty_scale(xi);
  const Group signed_groups[2] = {Group::GammaPlus, Group::GammaMinus};
  const Sign signs[2] = {Sign::Plus, Sign::Minus};
  for (int i = 0; i < 2; ++i) {
    const Op4& k0 = dec.at(signed_groups[i], Label::Zero);
    const Op4& k2 = dec.at(signed_groups[i], Label::Fail);
    auto& fk = c.k2_functional[i];
    fk.lhs = f_functional(k2, xi, signs[i]);
    fk.rhs = (weight(k0) + weight(k2)) * gap2;
    fk.holds = fk.lhs >= fk.rhs - kCheckTol;
    auto& gk = c.k2_penalty[i];
    gk.lhs = penalty_g(k2, xi);
    gk.rhs = 4.0 * std::pow(1.0 - xi, 4) * weight(k0) / scale;
    gk.holds = gk.lhs >= gk.rhs - kCheckTol;
  }
  c.k0_weight_sum.lhs = weight(dec.at(Group::GammaPlus, Label::Zero)) + weight(dec.at(Group::GammaMinus, Label::Zero));
  c.k0_weight_sum.rhs = c.gammas.gamma0;
  c.k0_weight_sum.holds = std::abs(c.k0_weight_sum.lhs - c.k0_weight_sum.rhs) <= kCheckTol;

  c.convexity_slack = std::numeric_limits<double>::infinity();
  for (const auto& row : dec.k)
    for (const Op4& k : row)
      for (Sign s : signs) {
        const double f = f_functional(k, xi, s);
        const double slack = (scale * weight(k) * penalty_g(k, xi) - f * f) / std::max(1.0, f * f);
        c.convexity_slack = std::min(c.convexity_slack, slack);
      }
  c.convexity_holds = c.convexity_slack >= -kCheckTol;

  const Op4 n = dec.at(Group::GammaPlus, Label::Fail) + dec.at(Group::GammaMinus, Label::Fail);
  c.penalty_lemma.lhs = c.gammas.gamma1;
  c.penalty_lemma.rhs = p_sep(g0) - penalty_g(n, xi);
  c.penalty_lemma.holds = c.penalty_lemma.lhs <= c.penalty_lemma.rhs + kCheckTol;

  c.bound_holds = c.gammas.gamma1 <= c.u + kCheckTol;
  return c;
}

ProtocolReport simulate_protocol(const LoccTree& t, std::optional<double> gamma0_target) {
  ProtocolReport r;
  const Povm povm = leaf_povm(t);
  r.gammas = success_probs(povm, Instance::Default());
  r.classification = classify_leaves(t, xi0(std::clamp(r.gammas.gamma0, 0.0, 0.5)));
  try {
    r.certificate = certify_gap(t, gamma0_target);
  } catch (const UdViolation& e) {
    r.certificate_error = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reference protocols

namespace protocols {

namespace {

using NodeId = LoccTree::NodeId;

// Alice measures Z at `at`, Bob measures Z after |0>; Bob's current operator
// is `bob_scale` times the identity.
void graft_both_z(LoccTree& t, NodeId at, double bob_scale) {
  const auto alice = t.split(at, Party::Alice, {qubit::p0(), qubit::p1()});
  const auto bob = t.split(alice[0], Party::Bob, {bob_scale * qubit::p0(), bob_scale * qubit::p1()});
  t.set_label(bob[0], Label::Fail);
  t.set_label(bob[1], Label::One);
  t.set_label(alice[1], Label::One);
}

void graft_alice_x_bob_ud(LoccTree& t, NodeId at, double gamma0, double bob_scale) {
  const double alpha = 2.0 * gamma0;
  const double beta = 2.0 * l1(gamma0);
  const auto alice = t.split(at, Party::Alice, {qubit::p_plus(), qubit::p_minus()});
  // After |+> Bob holds |0> or |+>; after |-> he holds |0> or |->. The state
  // orthogonal to Bob's rho1 candidate identifies rho0, |1> identifies rho1.
  const Op2 zero_id[2] = {qubit::p_minus(), qubit::p_plus()};
  for (int b = 0; b < 2; ++b) {
    const Op2 e0 = alpha * zero_id[b];
    const Op2 e1 = beta * qubit::p1();
    const Op2 e2 = Op2::Identity() - e0 - e1;
    const auto bob = t.split(alice[b], Party::Bob, {bob_scale * e0, bob_scale * e1, bob_scale * e2});
    t.set_label(bob[0], Label::Zero);
    t.set_label(bob[1], Label::One);
    t.set_label(bob[2], Label::Fail);
  }
}

void check_gamma(double gamma0) {
  if (!(gamma0 >= 0.0 && gamma0 <= 0.5)) throw DomainError("protocol gamma0 must lie in [0, 1/2]");
}

}  // namespace

LoccTree both_z() {
  LoccTree t;
  graft_both_z(t, LoccTree::root(), 1.0);
  return t;
}

LoccTree alice_x_bob_ud(double gamma0) {
  check_gamma(gamma0);
  LoccTree t;
  graft_alice_x_bob_ud(t, LoccTree::root(), gamma0, 1.0);
  return t;
}

LoccTree l2_mixture(double gamma0) {
  check_gamma(gamma0);
  const double t_mix = l1_mixing_point();
  const double p = std::min(1.0, gamma0 / t_mix);
  const double target = gamma0 > t_mix ? gamma0 : t_mix;
  LoccTree t;
  const auto coin = t.split(LoccTree::root(), Party::Bob, {(1.0 - p) * Op2::Identity(), p * Op2::Identity()});
  graft_both_z(t, coin[0], 1.0 - p);
  graft_alice_x_bob_ud(t, coin[1], target, p);
  return t;
}

}  // namespace protocols

}  // namespace discrimlab
