#pragma once

// Numerical searches: the separable optimum over the symmetrized
// parametrization, a Monte Carlo oracle for it, and a heuristic search over
// finite-round LOCC trees with real local measurements.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "discrimlab/bounds.hpp"
#include "discrimlab/exec.hpp"
#include "discrimlab/locc.hpp"

namespace discrimlab {

class SearchFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SepSearchConfig {
  double gamma0_target = 0.0;
  int grid_n = 101;          ///< points per axis, at least 11
  double refine_tol = 1e-10; ///< final pattern-search step
};

struct SepSearchResult {
  SepSymForms forms;
  double b = 0.0;
  double c = 0.0;
  SuccessPair gammas;
};

/// Maximizes gamma1 = (b + 2c)/4 over S(F1) = [0,b,c;0] with S(F0) fixed to
/// gamma0[1,1,1;-1] and S(F2) = 1 - S(F0) - S(F1) positive. Grid scan, then
/// pattern search. Throws DomainError for a bad config.
SepSearchResult optimize_sep(const SepSearchConfig& cfg);

/// Largest gamma1 over `samples` uniform (b, c) in [0,1]^2 whose failure
/// element passes an eigenvalue test. Needs samples >= 10^4.
double brute_force_sep_oracle(double gamma0, std::int64_t samples, std::uint64_t seed,
                              Exec exec = Exec::Parallel);

struct LoccSearchConfig {
  double gamma0_target = 0.0;
  int rounds = 3;              ///< 1..6
  int outcomes_per_round = 3;  ///< 2 or 3
  int restarts = 50;
  std::uint64_t seed = 0;
  double penalty_weight = 1e3;
  int max_evals = 3000;        ///< objective evaluations per restart
};

/// Throws DomainError unless the config is usable.
void validate(const LoccSearchConfig& cfg);

/// Fixed-shape LOCC tree: every internal vertex is a k-outcome real local
/// measurement, movers alternate starting with `first_mover`, vertices are
/// stored in heap order (children of n are n*k+1 .. n*k+k).
///
/// Outcome i of a vertex has parameters (theta, p, q) giving
/// M_i = p P(theta) + q P(theta + pi/2) with p, q clamped to [0, 1]. The
/// measurement is E_i = S^-1/2 M_i S^-1/2 with S = sum M_i (the kernel of S,
/// if any, goes to the last outcome), and a child's local operator is
/// X^1/2 E_i X^1/2 for the mover's current operator X. Any parameter vector
/// therefore induces a valid tree.
///
/// With `coin` set the root is a shared coin instead of a measurement: the
/// party opposite `first_mover` splits the identity into weights p_i (theta
/// and q are ignored), and `rounds` measurement layers follow. This is how
/// mixtures of protocols are expressed; the coin is not counted as a round.
struct ParamTree {
  Party first_mover = Party::Alice;
  int rounds = 1;
  int outcomes = 3;
  bool coin = false;
  std::vector<double> params;  ///< 3 per outcome, node_count() * outcomes * 3
  std::vector<Label> labels;   ///< one per leaf
  /// When below 1 every label-0 leaf is split once more by the other party
  /// into keep and (1 - keep) parts labelled 0 and 2.
  double zero_keep = 1.0;

  int layers() const { return rounds + (coin ? 1 : 0); }
  /// Party acting at heap depth d.
  Party mover(std::size_t depth) const;
  std::size_t node_count() const;  ///< internal vertices
  std::size_t leaf_count() const;
  std::size_t param_count() const { return node_count() * static_cast<std::size_t>(outcomes) * 3; }

  LoccTree induce() const;
};

struct LoccSearchResult {
  ParamTree params;
  LoccTree tree;
  SuccessPair gammas;
  GapCertificate certificate;
  int best_restart = 0;
};

/// Restarts from the known protocols, perturbed copies and random points;
/// each runs Nelder-Mead on random coordinate blocks of a penalized
/// objective, then candidates are labelled exactly, trimmed to the target
/// gamma0 and scored. Best gamma1 wins, ties go to the lower restart.
/// Throws SearchFailed when no restart yields a feasible tree.
LoccSearchResult optimize_locc(const LoccSearchConfig& cfg, Exec exec = Exec::Parallel);

/// Seed parameter vectors used by optimize_locc for this config.
std::vector<ParamTree> seed_trees(const LoccSearchConfig& cfg);

/// Relabels to failure every leaf whose unambiguity constraint exceeds
/// 1e-9 / (number of leaves). Throws InvalidTree for malformed trees.
LoccTree ud_project(const LoccTree& t);

}  // namespace discrimlab
