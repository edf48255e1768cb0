#include "discrimlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "discrimlab/nelder_mead.hpp"
#include "discrimlab/rng.hpp"

namespace discrimlab {

// ---------------------------------------------------------------------------
// Separable optimum

namespace {

SepSymForms sep_forms(double g, double b, double c) {
  SepSymForms f;
  f.f0 = SymForm{1.0, 1.0, 1.0, -1.0} * g;
  f.f1 = SymForm{0.0, b, c, 0.0};
  f.f2 = SymForm{1.0, 1.0, 1.0, 0.0} - f.f0 - f.f1;
  return f;
}

bool sep_feasible(double g, double b, double c) {
  if (b < 0.0 || c < 0.0 || b > 1.0 || c > 1.0) return false;
  return symform_is_positive(sep_forms(g, b, c).f2, 0.0);
}

void check_gamma0(double g, const char* what) {
  if (!(g >= 0.0 && g <= 0.5)) throw DomainError(std::string(what) + ": gamma0 must lie in [0, 1/2]");
}

}  // namespace

SepSearchResult optimize_sep(const SepSearchConfig& cfg) {
  check_gamma0(cfg.gamma0_target, "optimize_sep");
  if (cfg.grid_n < 11) throw DomainError("optimize_sep: grid_n must be at least 11");
  if (!(cfg.refine_tol > 0.0)) throw DomainError("optimize_sep: refine_tol must be positive");

  const double g = cfg.gamma0_target;
  auto value = [](double b, double c) { return (b + 2.0 * c) / 4.0; };

  double best_b = 0.0, best_c = 0.0;
  double best = -1.0;
  const double step = 1.0 / (cfg.grid_n - 1);
  for (int i = 0; i < cfg.grid_n; ++i) {
    for (int j = 0; j < cfg.grid_n; ++j) {
      const double b = i * step, c = j * step;
      if (sep_feasible(g, b, c) && value(b, c) > best) {
        best = value(b, c);
        best_b = b;
        best_c = c;
      }
    }
  }
  if (best < 0.0) throw SearchFailed("optimize_sep: no feasible grid point");

  static constexpr int kMoves[8][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}, {1, -1}, {-1, 0}, {0, -1}, {-1, -1}};
  for (double h = step; h >= cfg.refine_tol * 0.5;) {
    bool moved = false;
    for (const auto& mv : kMoves) {
      const double b = best_b + mv[0] * h, c = best_c + mv[1] * h;
      if (sep_feasible(g, b, c) && value(b, c) > best) {
        best = value(b, c);
        best_b = b;
        best_c = c;
        moved = true;
        break;
      }
    }
    if (!moved) h *= 0.5;
  }

  SepSearchResult r;
  r.b = best_b;
  r.c = best_c;
  r.forms = sep_forms(g, best_b, best_c);
  const Instance inst = Instance::Default();
  r.gammas.gamma0 = symform_to_matrix(r.forms.f0).trace_with(inst.rho0);
  r.gammas.gamma1 = symform_to_matrix(r.forms.f1).trace_with(inst.rho1);
  return r;
}

double brute_force_sep_oracle(double gamma0, std::int64_t samples, std::uint64_t seed, Exec exec) {
  check_gamma0(gamma0, "brute_force_sep_oracle");
  if (samples < 10000) throw DomainError("brute_force_sep_oracle: need at least 10^4 samples");

  const CounterRng rng(seed, 0);
  const Op4 rho1 = Instance::Default().rho1;
  const SymForm f0 = SymForm{1.0, 1.0, 1.0, -1.0} * gamma0;
  const SymForm one{1.0, 1.0, 1.0, 0.0};

  auto sample = [&](std::int64_t i) {
    const double b = rng.uniform_at(2 * static_cast<std::uint64_t>(i));
    const double c = rng.uniform_at(2 * static_cast<std::uint64_t>(i) + 1);
    const SymForm f1{0.0, b, c, 0.0};
    if (min_eigenvalue(symform_to_matrix(one - f0 - f1)) < 0.0) return 0.0;
    return symform_to_matrix(f1).trace_with(rho1);
  };

  // (b, c) = (0, 0) is always feasible, so the maximum starts at 0.
  double best = 0.0;
  if (exec == Exec::Parallel) {
#pragma omp parallel for reduction(max : best) schedule(static)
    for (std::int64_t i = 0; i < samples; ++i) best = std::max(best, sample(i));
  } else {
    for (std::int64_t i = 0; i < samples; ++i) best = std::max(best, sample(i));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Parametrized LOCC trees

namespace {

/// Real symmetric 2x2 matrix [[a, b], [b, d]].
struct Sym2 {
  double a = 0.0, b = 0.0, d = 0.0;
};

constexpr Sym2 kIdentity{1.0, 0.0, 1.0};

Sym2 operator+(const Sym2& x, const Sym2& y) { return {x.a + y.a, x.b + y.b, x.d + y.d}; }
Sym2 operator*(double s, const Sym2& x) { return {s * x.a, s * x.b, s * x.d}; }

/// r m r for symmetric r and m.
Sym2 sandwich(const Sym2& r, const Sym2& m) {
  const double t00 = r.a * m.a + r.b * m.b, t01 = r.a * m.b + r.b * m.d;
  const double t10 = r.b * m.a + r.d * m.b, t11 = r.b * m.b + r.d * m.d;
  const double off = 0.5 * ((t00 * r.b + t01 * r.d) + (t10 * r.a + t11 * r.b));
  return {t00 * r.a + t01 * r.b, off, t10 * r.b + t11 * r.d};
}

/// Principal square root of a positive matrix.
Sym2 sqrt_psd(const Sym2& x) {
  const double s = std::sqrt(std::max(0.0, x.a * x.d - x.b * x.b));
  const double t = x.a + x.d + 2.0 * s;
  if (t <= 0.0) return {};
  const double k = 1.0 / std::sqrt(t);
  return {(x.a + s) * k, x.b * k, (x.d + s) * k};
}

struct Eig2 {
  double theta = 0.0;  ///< first eigenvector (cos, sin)
  double hi = 0.0;
  double lo = 0.0;
};

Eig2 eig2(const Sym2& m) {
  const double mean = 0.5 * (m.a + m.d);
  const double r = std::hypot(0.5 * (m.a - m.d), m.b);
  return {0.5 * std::atan2(2.0 * m.b, m.a - m.d), mean + r, mean - r};
}

Sym2 projector(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * c, c * s, s * s};
}

Sym2 outcome_matrix(const double* p) {
  const double c = std::cos(p[0]), s = std::sin(p[0]);
  const double u = std::clamp(p[1], 0.0, 1.0), v = std::clamp(p[2], 0.0, 1.0);
  return {u * c * c + v * s * s, (u - v) * c * s, u * s * s + v * c * c};
}

void encode_outcome(const Sym2& m, double* p) {
  const Eig2 e = eig2(m);
  p[0] = e.theta;
  p[1] = std::clamp(e.hi, 0.0, 1.0);
  p[2] = std::clamp(e.lo, 0.0, 1.0);
}

/// Normalized measurement from raw outcome parameters; a coin uses p_i 1.
void decode_measurement(const double* p, int k, bool coin, Sym2* e) {
  Sym2 s{};
  for (int i = 0; i < k; ++i) {
    e[i] = coin ? std::clamp(p[3 * i + 1], 0.0, 1.0) * kIdentity : outcome_matrix(p + 3 * i);
    s = s + e[i];
  }
  const Eig2 ev = eig2(s);
  // S^-1/2 amplifies rounding by about eps / lo, so near-kernel directions are
  // cut off early enough to keep the children summing to the parent (1e-9).
  const double floor = 1e-6 * std::max(1.0, ev.hi);
  const Sym2 v_hi = projector(ev.theta), v_lo = projector(ev.theta + std::numbers::pi / 2);
  Sym2 inv{}, kernel{};
  if (ev.hi > floor) {
    inv = (1.0 / std::sqrt(ev.hi)) * v_hi;
  } else {
    kernel = v_hi;
  }
  if (ev.lo > floor) {
    inv = inv + (1.0 / std::sqrt(ev.lo)) * v_lo;
  } else {
    kernel = kernel + v_lo;
  }
  for (int i = 0; i < k; ++i) e[i] = sandwich(inv, e[i]);
  e[k - 1] = e[k - 1] + kernel;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Forward evaluation of a ParamTree shape: local operators at every heap
/// vertex and (w, Tr(G rho1)) at every leaf.
class Evaluator {
 public:
  explicit Evaluator(const ParamTree& shape)
      : k_(shape.outcomes), coin_(shape.coin), nodes_(shape.node_count()), leaves_(shape.leaf_count()) {
    alice_moves_.assign(nodes_, false);
    std::vector<std::size_t> depth(nodes_, 0);
    for (std::size_t n = 0; n < nodes_; ++n) {
      alice_moves_[n] = shape.mover(depth[n]) == Party::Alice;
      for (int i = 0; i < k_; ++i) {
        const std::size_t c = n * k_ + 1 + i;
        if (c < nodes_) depth[c] = depth[n] + 1;
      }
    }
    alice_.resize(nodes_ + leaves_);
    bob_.resize(nodes_ + leaves_);
    w_.resize(leaves_);
    t1_.resize(leaves_);
  }

  void run(const double* params) {
    alice_[0] = bob_[0] = kIdentity;
    Sym2 e[3];
    for (std::size_t n = 0; n < nodes_; ++n) {
      decode_measurement(params + n * k_ * 3, k_, coin_ && n == 0, e);
      const bool alice_moves = alice_moves_[n];
      const Sym2 root = sqrt_psd(alice_moves ? alice_[n] : bob_[n]);
      for (int i = 0; i < k_; ++i) {
        const std::size_t c = n * k_ + 1 + i;
        alice_[c] = alice_moves ? sandwich(root, e[i]) : alice_[n];
        bob_[c] = alice_moves ? bob_[n] : sandwich(root, e[i]);
      }
    }
    for (std::size_t l = 0; l < leaves_; ++l) {
      const Sym2& a = alice_[nodes_ + l];
      const Sym2& b = bob_[nodes_ + l];
      w_[l] = a.a * b.a;
      const double pa = 0.5 * (a.a + a.d) + a.b, ma = 0.5 * (a.a + a.d) - a.b;
      const double pb = 0.5 * (b.a + b.d) + b.b, mb = 0.5 * (b.a + b.d) - b.b;
      t1_[l] = 0.5 * (pa * pb + ma * mb);
    }
  }

  std::size_t leaves() const { return leaves_; }
  double w(std::size_t l) const { return w_[l]; }
  double t1(std::size_t l) const { return t1_[l]; }
  Sym2 alice(std::size_t v) const { return alice_[v]; }
  Sym2 bob(std::size_t v) const { return bob_[v]; }

 private:
  int k_;
  bool coin_;
  std::size_t nodes_;
  std::size_t leaves_;
  std::vector<bool> alice_moves_;
  std::vector<Sym2> alice_, bob_;
  std::vector<double> w_, t1_;
};

Op2 to_op(const Sym2& m) {
  Eigen::Matrix2d r;
  r << m.a, m.b, m.b, m.d;
  return Op2::Real(r);
}

}  // namespace

Party ParamTree::mover(std::size_t depth) const {
  if (!coin) return depth % 2 == 0 ? first_mover : other(first_mover);
  if (depth == 0) return other(first_mover);
  return (depth - 1) % 2 == 0 ? first_mover : other(first_mover);
}

std::size_t ParamTree::node_count() const {
  return (ipow(outcomes, layers()) - 1) / static_cast<std::size_t>(outcomes - 1);
}

std::size_t ParamTree::leaf_count() const { return ipow(outcomes, layers()); }

LoccTree ParamTree::induce() const {
  if (outcomes < 2 || outcomes > 3 || rounds < 1 || rounds > 6) {
    throw DomainError("ParamTree: needs 2 or 3 outcomes and 1 to 6 rounds");
  }
  if (params.size() != param_count() || labels.size() != leaf_count()) {
    throw DomainError("ParamTree: parameter or label count does not match the shape");
  }
  Evaluator ev(*this);
  ev.run(params.data());
  const std::size_t nodes = node_count();

  LoccTree t;
  std::vector<std::size_t> depth(nodes + leaf_count(), 0);
  // Visit children in order so that heap leaf l becomes DFS leaf l.
  struct Frame {
    std::size_t heap;
    LoccTree::NodeId id;
  };
  std::vector<Frame> todo{{0, LoccTree::root()}};
  while (!todo.empty()) {
    const Frame f = todo.back();
    todo.pop_back();
    if (f.heap >= nodes) {
      const std::size_t l = f.heap - nodes;
      const Label lab = labels[l];
      if (lab == Label::Zero && zero_keep < 1.0) {
        const Party trimmer = other(mover(static_cast<std::size_t>(layers() - 1)));
        const Sym2 x = trimmer == Party::Alice ? ev.alice(f.heap) : ev.bob(f.heap);
        const auto ids = t.split(f.id, trimmer, {to_op(zero_keep * x), to_op((1.0 - zero_keep) * x)});
        t.set_label(ids[0], Label::Zero);
        t.set_label(ids[1], Label::Fail);
      } else {
        t.set_label(f.id, lab);
      }
      continue;
    }
    const std::size_t d = depth[f.heap];
    const Party party = mover(d);
    std::vector<Op2> ops;
    for (int i = 0; i < outcomes; ++i) {
      const std::size_t c = f.heap * outcomes + 1 + i;
      depth[c] = d + 1;
      ops.push_back(to_op(party == Party::Alice ? ev.alice(c) : ev.bob(c)));
    }
    const auto ids = t.split(f.id, party, ops);
    for (int i = outcomes - 1; i >= 0; --i) todo.push_back({f.heap * outcomes + 1 + i, ids[i]});
  }
  return t;
}

void validate(const LoccSearchConfig& cfg) {
  check_gamma0(cfg.gamma0_target, "optimize_locc");
  if (cfg.rounds < 1 || cfg.rounds > 6) throw DomainError("optimize_locc: rounds must lie in 1..6");
  if (cfg.outcomes_per_round < 2 || cfg.outcomes_per_round > 3) {
    throw DomainError("optimize_locc: outcomes_per_round must be 2 or 3");
  }
  if (cfg.restarts < 1) throw DomainError("optimize_locc: restarts must be positive");
  if (!(cfg.penalty_weight > 0.0)) throw DomainError("optimize_locc: penalty_weight must be positive");
  if (cfg.max_evals < 1) throw DomainError("optimize_locc: max_evals must be positive");
}

LoccTree ud_project(const LoccTree& t) {
  const TreeReport rep = validate_tree(t);
  if (!rep.passed()) throw InvalidTree(rep.problems.front().what, rep.problems.front().path);
  const Instance inst = Instance::Default();
  const auto leaves = t.leaves();
  const double tau = UdReport::kUdTol / static_cast<double>(std::max<std::size_t>(1, leaves.size()));
  LoccTree out = t;
  for (auto id : leaves) {
    const auto& v = t.vertex(id);
    if (!v.label || *v.label == Label::Fail) continue;
    const Op4 g = tensor(v.acc);
    const double leak = *v.label == Label::Zero ? g.trace_with(inst.rho1) : g.trace_with(inst.rho0);
    if (leak > tau) out.set_label(id, Label::Fail);
  }
  return out;
}

namespace {

ParamTree blank_tree(const LoccSearchConfig& cfg) {
  ParamTree p;
  p.first_mover = Party::Alice;
  p.coin = true;
  p.rounds = cfg.rounds;
  p.outcomes = cfg.outcomes_per_round;
  p.params.assign(p.param_count(), 0.0);
  p.labels.assign(p.leaf_count(), Label::Fail);
  // Trivial measurement everywhere: {1, 0, ...}.
  for (std::size_t n = 0; n < p.node_count(); ++n) {
    double* q = &p.params[n * p.outcomes * 3];
    q[1] = q[2] = 1.0;
  }
  return p;
}

/// Builds seed protocols by overwriting measurements of a blank tree.
class SeedBuilder {
 public:
  explicit SeedBuilder(ParamTree p) : p_(std::move(p)) {
    depth_.assign(p_.node_count(), 0);
    for (std::size_t n = 0; n < p_.node_count(); ++n)
      for (int i = 0; i < p_.outcomes; ++i) {
        const std::size_t c = child(n, i);
        if (c < p_.node_count()) depth_[c] = depth_[n] + 1;
      }
  }

  std::size_t child(std::size_t n, int i) const { return n * p_.outcomes + 1 + i; }

  /// First vertex at or below n along outcome 0 where `party` moves.
  std::optional<std::size_t> descend(std::size_t n, Party party) const {
    while (n < p_.node_count()) {
      if (p_.mover(depth_[n]) == party) return n;
      n = child(n, 0);
    }
    return std::nullopt;
  }

  bool measure(std::size_t n, const std::vector<Sym2>& ops) {
    if (n >= p_.node_count() || static_cast<int>(ops.size()) > p_.outcomes) return false;
    double* q = &p_.params[n * p_.outcomes * 3];
    for (int i = 0; i < p_.outcomes; ++i) {
      if (i < static_cast<int>(ops.size())) {
        encode_outcome(ops[i], q + 3 * i);
      } else {
        q[3 * i] = q[3 * i + 1] = q[3 * i + 2] = 0.0;
      }
    }
    return true;
  }

  bool both_z(std::size_t at) {
    const auto a = descend(at, Party::Alice);
    if (!a || !measure(*a, {projector(0.0), projector(std::numbers::pi / 2)})) return false;
    const auto b = descend(child(*a, 0), Party::Bob);
    return b && measure(*b, {projector(0.0), projector(std::numbers::pi / 2)});
  }

  bool alice_x_bob_ud(std::size_t at, double gamma0) {
    if (p_.outcomes < 3) return false;
    const double alpha = 2.0 * gamma0, beta = 2.0 * l1(gamma0);
    const Sym2 plus = projector(std::numbers::pi / 4), minus = projector(-std::numbers::pi / 4);
    const auto a = descend(at, Party::Alice);
    if (!a || !measure(*a, {plus, minus})) return false;
    const Sym2 zero_id[2] = {minus, plus};
    const Sym2 one = projector(std::numbers::pi / 2);
    for (int i = 0; i < 2; ++i) {
      const auto b = descend(child(*a, i), Party::Bob);
      const Sym2 e0 = alpha * zero_id[i], e1 = beta * one;
      const Sym2 e2 = kIdentity + (-1.0) * (e0 + e1);
      if (!b || !measure(*b, {e0, e1, e2})) return false;
    }
    return true;
  }

  bool mixture(double gamma0) {
    if (p_.outcomes < 3 || !p_.coin) return false;
    const double t = l1_mixing_point();
    const double lam = std::min(1.0, gamma0 / t);
    if (!measure(0, {(1.0 - lam) * kIdentity, lam * kIdentity})) return false;
    return both_z(child(0, 0)) && alice_x_bob_ud(child(0, 1), std::max(gamma0, t));
  }

  const ParamTree& tree() const { return p_; }

 private:
  ParamTree p_;
  std::vector<std::size_t> depth_;
};

struct Scored {
  ParamTree tree;
  SuccessPair gammas;
};

/// Exact labels, trimming to the target and the projected tree's success
/// pair; nullopt if the target gamma0 cannot be met.
std::optional<Scored> score_exact(ParamTree p, double target, Evaluator& ev) {
  ev.run(p.params.data());
  const std::size_t n = ev.leaves();
  const double tau = 0.5 * UdReport::kUdTol / static_cast<double>(n);
  double g0 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double w = ev.w(l), t1 = ev.t1(l);
    Label lab = Label::Fail;
    if (t1 <= tau && w > tau) {
      lab = Label::Zero;
      g0 += w;
    } else if (w <= tau && t1 > tau) {
      lab = Label::One;
    }
    p.labels[l] = lab;
  }
  if (g0 < target - 1e-12) return std::nullopt;
  p.zero_keep = 1.0;
  if (g0 > target) {
    if (target <= 0.0) {
      for (auto& lab : p.labels)
        if (lab == Label::Zero) lab = Label::Fail;
    } else {
      p.zero_keep = target / g0;
    }
  }
  const LoccTree t = ud_project(p.induce());
  const SuccessPair sp = success_probs(leaf_povm(t), Instance::Default());
  if (std::abs(sp.gamma0 - target) > 1e-10) return std::nullopt;
  return Scored{std::move(p), sp};
}

double soft_objective(const Evaluator& ev, double target, double penalty) {
  double g0 = 0.0, g1 = 0.0, violation = 0.0;
  for (std::size_t l = 0; l < ev.leaves(); ++l) {
    const double w = ev.w(l), t1 = ev.t1(l);
    if (t1 > penalty * w) {
      g1 += t1;
      violation += w;
    } else if (penalty * t1 < w) {
      g0 += w;
      violation += t1;
    }
  }
  return -(g1 - penalty * (violation + std::max(0.0, target - g0)));
}

void snap(std::vector<double>& x) {
  constexpr double kSnap = 1e-3;
  const double quarter = std::numbers::pi / 4;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j % 3 == 0) {
      const double r = std::round(x[j] / quarter) * quarter;
      if (std::abs(x[j] - r) < kSnap) x[j] = r;
    } else {
      if (x[j] < kSnap) x[j] = 0.0;
      if (x[j] > 1.0 - kSnap) x[j] = 1.0;
    }
  }
}

std::optional<Scored> run_restart(const LoccSearchConfig& cfg, const std::vector<ParamTree>& seeds, int r) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(r));
  ParamTree base = blank_tree(cfg);
  const std::size_t dim = base.params.size();
  const int ns = static_cast<int>(seeds.size());

  std::vector<double> x(dim);
  if (r < ns) {
    x = seeds[r].params;
  } else if (ns > 0 && (r - ns) % 2 == 0) {
    x = seeds[((r - ns) / 2) % ns].params;
    for (double& v : x) v += rng.uniform(-0.05, 0.05);
  } else {
    for (std::size_t j = 0; j < dim; ++j) x[j] = j % 3 == 0 ? rng.uniform(0.0, std::numbers::pi) : rng.uniform();
  }
  const std::vector<double> start = x;

  Evaluator ev(base);
  auto objective = [&](const std::vector<double>& p) {
    ev.run(p.data());
    return soft_objective(ev, cfg.gamma0_target, cfg.penalty_weight);
  };

  double fx = objective(x);
  int evals = 1;
  std::vector<std::size_t> idx(dim);
  while (evals < cfg.max_evals) {
    const std::size_t m = std::min<std::size_t>(12, dim);
    for (std::size_t j = 0; j < dim; ++j) idx[j] = j;
    for (std::size_t j = 0; j < m; ++j) std::swap(idx[j], idx[j + rng.next() % (dim - j)]);
    std::vector<double> sub(m);
    for (std::size_t j = 0; j < m; ++j) sub[j] = x[idx[j]];
    std::vector<double> trial = x;
    auto f_sub = [&](const std::vector<double>& s) {
      for (std::size_t j = 0; j < m; ++j) trial[idx[j]] = s[j];
      return objective(trial);
    };
    const std::size_t budget = std::min<std::size_t>(cfg.max_evals - evals, 40 * m + 20);
    const NelderMeadResult nm = nelder_mead(f_sub, sub, 0.1, budget);
    evals += static_cast<int>(nm.evaluations);
    if (nm.value < fx) {
      for (std::size_t j = 0; j < m; ++j) x[idx[j]] = nm.x[j];
      fx = nm.value;
    }
  }

  std::vector<double> snapped = x;
  snap(snapped);
  std::optional<Scored> best;
  const std::vector<double>* candidates[] = {&start, &x, &snapped};
  for (const auto* cand : candidates) {
    ParamTree p = base;
    p.params = *cand;
    auto s = score_exact(std::move(p), cfg.gamma0_target, ev);
    if (s && (!best || s->gammas.gamma1 > best->gammas.gamma1)) best = std::move(s);
  }
  return best;
}

}  // namespace

std::vector<ParamTree> seed_trees(const LoccSearchConfig& cfg) {
  validate(cfg);
  const ParamTree blank = blank_tree(cfg);
  std::vector<ParamTree> out;
  Evaluator ev(blank);
  auto add = [&](SeedBuilder& b, bool ok) {
    if (!ok) return;
    auto s = score_exact(b.tree(), cfg.gamma0_target, ev);
    out.push_back(s ? s->tree : b.tree());
  };
  const double g = cfg.gamma0_target;
  {
    SeedBuilder b(blank);
    add(b, b.mixture(g));
  }
  {
    SeedBuilder b(blank);
    add(b, b.alice_x_bob_ud(0, g));
  }
  {
    SeedBuilder b(blank);
    add(b, b.both_z(0));
  }
  return out;
}

LoccSearchResult optimize_locc(const LoccSearchConfig& cfg, Exec exec) {
  validate(cfg);
  const std::vector<ParamTree> seeds = seed_trees(cfg);
  std::vector<std::optional<Scored>> results(static_cast<std::size_t>(cfg.restarts));

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < cfg.restarts; ++r) results[r] = run_restart(cfg, seeds, r);
  } else {
    for (int r = 0; r < cfg.restarts; ++r) results[r] = run_restart(cfg, seeds, r);
  }

  int best = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    if (results[r] && (best < 0 || results[r]->gammas.gamma1 > results[best]->gammas.gamma1)) best = r;
  }
  if (best < 0) throw SearchFailed("optimize_locc: no restart produced a UD-feasible tree at the target gamma0");

  LoccSearchResult out;
  out.params = results[best]->tree;
  out.tree = ud_project(out.params.induce());
  out.gammas = success_probs(leaf_povm(out.tree), Instance::Default());
  if (out.gammas.gamma0 > 0.5 + 1e-9) throw std::logic_error("optimize_locc: UD tree with gamma0 above 1/2");
  out.certificate = certify_gap(out.tree, cfg.gamma0_target);
  out.best_restart = best;
  return out;
}

}  // namespace discrimlab
