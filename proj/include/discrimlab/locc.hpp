#pragma once

// Finite-round LOCC protocols as refinement trees, the (x, y) trajectory of
// each outcome, and the functionals used to show that the optimal separable
// measurement is out of reach for such protocols.
//
// A tree vertex holds the accumulated product operator A (x) B reached after
// the outcomes on its path. A measurement by Alice at a vertex splits A into
// children A_i with sum_i A_i = A and leaves B alone (and symmetrically for
// Bob). The root is 1 (x) 1. Every leaf carries an outcome label.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "discrimlab/discrimination.hpp"

namespace discrimlab {

enum class Party { Alice, Bob };

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

/// Child positions from the root down to a vertex.
using Path = std::vector<std::size_t>;

std::string path_to_string(const Path& p);

class InvalidTree : public std::runtime_error {
 public:
  InvalidTree(const std::string& what, Path path)
      : std::runtime_error(what + " at " + path_to_string(path)), path_(std::move(path)) {}
  const Path& path() const { return path_; }

 private:
  Path path_;
};

class BadPath : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UdViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxTreeDepth = 32;

class LoccTree {
 public:
  using NodeId = std::size_t;

  struct Vertex {
    std::optional<NodeId> parent;
    std::size_t position = 0;  ///< index among the parent's children
    std::size_t depth = 0;
    Party mover = Party::Alice;      ///< who produced this outcome (ignored at the root)
    ProductOp acc;                   ///< accumulated A (x) B
    std::optional<Party> measurer;   ///< who measures here, internal vertices only
    std::vector<NodeId> children;
    std::optional<Label> label;      ///< leaves only
  };

  /// Root 1 (x) 1, no outcomes yet.
  LoccTree();
  /// A root that is itself the single outcome.
  static LoccTree Leaf(Label label);

  static constexpr NodeId root() { return 0; }

  /// Appends one outcome of `party`'s measurement at `at`; `op` is that
  /// party's new accumulated operator. All outcomes at a vertex belong to one
  /// party. Throws InvalidTree on a party clash, a labelled vertex, or depth
  /// beyond kMaxTreeDepth.
  NodeId add_outcome(NodeId at, Party party, const Op2& op);
  std::vector<NodeId> split(NodeId at, Party party, const std::vector<Op2>& ops);
  void set_label(NodeId leaf, Label label);

  const Vertex& vertex(NodeId id) const { return vertices_.at(id); }
  std::size_t size() const { return vertices_.size(); }
  bool is_leaf(NodeId id) const { return vertices_.at(id).children.empty(); }

  /// Leaves in depth-first order.
  std::vector<NodeId> leaves() const;
  Path path_of(NodeId id) const;
  /// Throws BadPath if the path does not address a vertex.
  NodeId at(const Path& path) const;
  /// Vertices from the root down to `id`, root first.
  std::vector<NodeId> lineage(NodeId id) const;

  /// True when no vertex is measured by the same party as its parent.
  bool is_alternating() const;

 private:
  std::vector<Vertex> vertices_;
};

struct TreeProblem {
  Path path;
  std::string what;
};

struct TreeReport {
  double worst_min_eigenvalue = 0.0;  ///< over all accumulated local ops
  double worst_refinement_residual = 0.0;
  std::size_t depth = 0;
  std::vector<TreeProblem> problems;
  bool passed() const { return problems.empty(); }
};

/// Positivity of every local operator, sum of children equal to the parent
/// (entrywise 1e-9), a label on every leaf and none elsewhere, depth cap.
TreeReport validate_tree(const LoccTree& t);

/// One element per leaf, A_leaf (x) B_leaf, in leaves() order.
Povm leaf_povm(const LoccTree& t);

/// w = <00|G|00>. For products this is A00 * B00.
double weight(const Op4& g);

/// Below this the weight counts as zero and (x, y) is undefined.
inline constexpr double kWeightFloor = 1e-14;

struct TrajectoryPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  bool defined = false;
};

/// Point for an accumulated product; x = Re A01/A00, y = Re B01/B00. Throws
/// NotPositive if a factor has |A01|^2 > A00 A11 (beyond rounding).
TrajectoryPoint trajectory_point(const ProductOp& acc);

/// One point per prefix of `path`, root first. Undefined from the first
/// zero-weight prefix on. Throws BadPath unless the path ends on a leaf.
std::vector<TrajectoryPoint> trajectory(const LoccTree& t, const Path& path);

enum class Sign { Plus = 1, Minus = -1 };
inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

/// chi_+(x,y) = [2x - (1+xi)][2y + (1+xi)], chi_- with both signs flipped.
double chi(double x, double y, double xi, Sign s);

/// f_+-(F) = F0011 + F0110 + F1001 + F1100 - 4 xi F0000
///           +- (1+xi)(F0010 + F1000 - F0001 - F0100).
double f_functional(const Op4& f, double xi, Sign s);

/// g(N) = Tr(N [xi^2, 1, 1; -(1+xi)/2]) / 4.
double penalty_g(const Op4& n, double xi);

/// 16 [4 + (1+xi)^2]; the constant with scale * w * g >= f^2 on separable ops.
double penalty_scale(double xi);

/// Closed regions chi >= -kRegionTol.
inline constexpr double kRegionTol = 1e-12;

enum class Group { Gamma0 = 0, GammaPlus = 1, GammaMinus = 2 };
std::string to_string(Group g);

struct LeafRecord {
  Path path;
  Op4 g;
  Label label = Label::Fail;
  std::vector<TrajectoryPoint> trajectory;
  double f_plus = 0.0;
  double f_minus = 0.0;
  Group group = Group::Gamma0;
  /// Index into `trajectory` of the first point in R+ or R-, if any.
  std::optional<std::size_t> first_entry;
};

/// K[group][label]: sum of the leaf operators with that group and label.
struct GammaDecomposition {
  std::array<std::array<Op4, 3>, 3> k{};

  const Op4& at(Group g, Label l) const { return k[static_cast<int>(g)][to_int(l)]; }
  Op4& at(Group g, Label l) { return k[static_cast<int>(g)][to_int(l)]; }
  Op4 group_total(Group g) const;
  Op4 total() const;
};

struct Classification {
  std::vector<LeafRecord> leaves;
  GammaDecomposition decomposition;
};

/// Walks every leaf's trajectory while w > 0; the first point in R+ or R-
/// decides the group (R+ wins ties), no entry means Gamma0.
/// Throws InvalidTree if the tree fails validation.
Classification classify_leaves(const LoccTree& t, double xi);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct GapCertificate {
  SuccessPair gammas;
  double xi = 0.0;
  double u = 0.0;
  std::optional<double> gamma0_target;
  bool target_matches = true;

  /// w(K[group][label]).
  std::array<std::array<double, 3>, 3> k_weights{};

  /// m=0 leaves of positive weight sit at (1,-1) or (-1,1).
  double m0_worst_offset = 0.0;
  bool m0_on_corners = true;
  /// m=1 leaves have zero weight.
  double m1_worst_weight = 0.0;
  bool m1_weightless = true;
  /// m=2 leaves of positive weight away from (+-sqrt(xi), +-sqrt(xi)).
  std::size_t m2_off_optimum = 0;
  /// positive-weight m=0 leaves that never entered R+ or R-.
  std::size_t m0_in_gamma0 = 0;

  /// f_+-(K2) >= [w(K0) + w(K2)] (1-xi)^2, index 0 for +, 1 for -.
  std::array<InequalityCheck, 2> k2_functional{};
  /// w(K0+) + w(K0-) = gamma0.
  InequalityCheck k0_weight_sum;
  /// g(K2) >= 4 (1-xi)^4 w(K0) / scale.
  std::array<InequalityCheck, 2> k2_penalty{};

  /// min over all nine K and both signs of scale*w*g - f^2 (relative).
  double convexity_slack = 0.0;
  bool convexity_holds = true;

  /// Every m=0 corner leaf has a prefix in the matching region with
  /// f >= w_leaf (1-xi)^2.
  std::size_t landing_checked = 0;
  bool landing_holds = true;

  /// gamma1 <= p_sep - g(K2+ + K2-).
  InequalityCheck penalty_lemma;
  /// gamma1 <= u(gamma0) + 1e-9.
  bool bound_holds = true;

  bool passed() const {
    return bound_holds && convexity_holds && landing_holds && penalty_lemma.holds && target_matches;
  }
};

/// Evaluates the impossibility machinery on a concrete protocol for the
/// default instance. Throws InvalidTree for malformed trees and UdViolation
/// when the leaf measurement is not unambiguous.
GapCertificate certify_gap(const LoccTree& t, std::optional<double> gamma0_target = std::nullopt);

/// Certificate bundled with the leaf records it was computed from.
struct ProtocolReport {
  SuccessPair gammas;
  Classification classification;
  std::optional<GapCertificate> certificate;
  std::string certificate_error;  ///< why `certificate` is empty
};
ProtocolReport simulate_protocol(const LoccTree& t, std::optional<double> gamma0_target = std::nullopt);

namespace protocols {

/// Alice and Bob both measure {|0>, |1>}; 00 fails, everything else names rho1.
LoccTree both_z();

/// Alice measures {|+>, |->}; Bob unambiguously discriminates |0> against
/// |+-> with identifier weights 2*gamma0 and 2*l1(gamma0).
LoccTree alice_x_bob_ud(double gamma0);

/// Shared coin (Bob measures {(1-p) 1, p 1}) choosing between both_z and
/// alice_x_bob_ud at the l1 mixing point; attains (gamma0, l2(gamma0)).
LoccTree l2_mixture(double gamma0);

}  // namespace protocols

}  // namespace discrimlab
