// discrimlab command-line tool. JSON reports go to stdout, a short summary
// to stderr. Exit codes: 0 ok, 2 usage or domain, 3 parse, 4 validation.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "discrimlab/bounds.hpp"
#include "discrimlab/json_io.hpp"
#include "discrimlab/locc.hpp"
#include "discrimlab/search.hpp"

using namespace discrimlab;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kParse = 3;
constexpr int kInvalid = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("grid must look like start:stop:step");
  const double start = parse_real(text.substr(0, a));
  const double stop = parse_real(text.substr(a + 1, b - a - 1));
  const double step = parse_real(text.substr(b + 1));
  if (!(start >= 0.0 && start < stop && stop <= 0.5)) throw UsageError("grid needs 0 <= start < stop <= 0.5");
  if (!(step > 0.0)) throw UsageError("grid step must be positive");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + static_cast<double>(i) * step;
  if (std::abs(g.back() - stop) <= 1e-9 * step) g.back() = stop;
  return g;
}

int run_bounds(const std::string& grid, const std::string& out) {
  const auto pts = sweep_curve(parse_grid(grid));
  const double viol = max_ordering_violation(pts);
  if (out.empty() || out == "-") {
    write_curve_csv(std::cout, pts);
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    write_curve_csv(f, pts);
  }
  std::cerr << pts.size() << " points, max ordering violation " << viol << '\n';
  return viol <= 1e-12 ? kOk : kInvalid;
}

int run_verify_povm(const std::string& path, bool require_separable) {
  const Povm p = povm_from_json(read_json_file(path));
  const PovmReport rep = validate_povm(p);
  const Instance inst = Instance::Default();
  const UdReport ud = ud_constraints(p, inst);
  const SuccessPair sp = success_probs(p, inst);

  Json seps = Json::array();
  bool all_sep = true;
  for (const auto& e : p.elements) {
    try {
      const bool s = is_ppt_separable(e.op);
      all_sep = all_sep && s;
      seps.push_back(s);
    } catch (const NotPositive&) {
      all_sep = false;
      seps.push_back(nullptr);
    }
  }
  const bool ok = rep.passed() && ud.passed() && (!require_separable || all_sep);
  emit({{"passed", ok},
        {"positive", rep.positive},
        {"complete", rep.complete},
        {"min_eigenvalues", rep.min_eigenvalues},
        {"completeness_residual", rep.completeness_residual},
        {"ud", {{"zero_on_rho1", ud.zero_on_rho1}, {"one_on_rho0", ud.one_on_rho0}, {"passed", ud.passed()}}},
        {"separable", seps},
        {"gammas", to_json(sp)}});
  std::fprintf(stderr, "povm %s: gamma0 = %.12g, gamma1 = %.12g\n", ok ? "passes" : "fails", sp.gamma0, sp.gamma1);
  return ok ? kOk : kInvalid;
}

int run_symmetrize(const std::string& path) {
  const Json in = read_json_file(path);
  if (in.is_object() && in.contains("elements")) {
    const Povm p = povm_from_json(in);
    Json out = Json::array();
    for (const auto& e : p.elements) out.push_back({{"label", to_int(e.label)}, {"form", to_json(symmetrize(e.op))}});
    emit({{"elements", out}});
  } else {
    emit(to_json(symmetrize(op4_from_json(in))));
  }
  return kOk;
}

LoccTree load_protocol(const std::string& path) {
  LoccTree t = protocol_from_json(read_json_file(path));
  const TreeReport rep = validate_tree(t);
  if (!rep.passed()) throw InvalidTree(rep.problems.front().what, rep.problems.front().path);
  return t;
}

int run_simulate(const std::string& path, std::optional<double> gamma0) {
  const ProtocolReport r = simulate_protocol(load_protocol(path), gamma0);
  emit(to_json(r));
  std::fprintf(stderr, "gamma0 = %.12g, gamma1 = %.12g, certificate %s\n", r.gammas.gamma0, r.gammas.gamma1,
               r.certificate ? (r.certificate->passed() ? "passed" : "FAILED") : "unavailable");
  return kOk;
}

int run_certify(const std::string& path, std::optional<double> gamma0) {
  const GapCertificate c = certify_gap(load_protocol(path), gamma0);
  emit(to_json(c));
  std::fprintf(stderr, "gamma1 = %.12g <= u = %.12g: %s\n", c.gammas.gamma1, c.u, c.passed() ? "certified" : "NOT certified");
  return c.passed() ? kOk : kInvalid;
}

int run_optimize_sep(const SepSearchConfig& cfg, std::uint64_t seed, std::int64_t samples) {
  const SepSearchResult r = optimize_sep(cfg);
  Json j = to_json(r);
  j["p_sep"] = p_sep(cfg.gamma0_target);
  if (samples > 0) {
    j["oracle"] = {{"samples", samples}, {"seed", seed}, {"best", brute_force_sep_oracle(cfg.gamma0_target, samples, seed)}};
  }
  emit(j);
  std::fprintf(stderr, "gamma1 = %.12g (closed form %.12g)\n", r.gammas.gamma1, p_sep(cfg.gamma0_target));
  return kOk;
}

int run_optimize_locc(const LoccSearchConfig& cfg) {
  const LoccSearchResult r = optimize_locc(cfg);
  emit(to_json(r, cfg));
  const double g = cfg.gamma0_target;
  std::fprintf(stderr, "gamma1 = %.12g, lower max(l1,l2) = %.12g, upper u = %.12g, certificate %s\n", r.gammas.gamma1,
               std::max(l1(g), l2(g)), u_bound(g), r.certificate.passed() ? "passed" : "FAILED");
  return r.certificate.passed() ? kOk : kInvalid;
}

int run_qopt(double eta0, const std::string& curve, double step) {
  static const std::map<std::string, double (*)(double)> curves = {
      {"glo", p_glo}, {"sep", p_sep}, {"u", u_bound}, {"l1", l1}, {"l2", l2}};
  const RateOptimum r = averaged_rate(curves.at(curve), Priors::FromEta0(eta0), step);
  emit({{"curve", curve}, {"eta0", eta0}, {"gamma", r.gamma}, {"q", r.q}});
  std::fprintf(stderr, "Q = %.12g at gamma* = %.12g\n", r.q, r.gamma);
  return kOk;
}

int run_povm(const std::string& kind, double gamma0) {
  emit(to_json(kind == "sep" ? optimal_sep_povm(gamma0) : optimal_glo_povm(gamma0)));
  return kOk;
}

int run_protocol(const std::string& kind, double gamma0) {
  if (kind == "both-z") {
    emit(to_json(protocols::both_z()));
  } else if (kind == "l1") {
    emit(to_json(protocols::alice_x_bob_ud(gamma0)));
  } else {
    emit(to_json(protocols::l2_mixture(gamma0)));
  }
  return kOk;
}

void apply_threads(int flag) {
  int n = flag;
  if (const char* env = std::getenv("DISCRIMLAB_THREADS"); env && *env) {
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("DISCRIMLAB_THREADS must be an integer");
    }
  }
  if (n < 0) throw UsageError("thread count must be non-negative");
  set_thread_count(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unambiguous discrimination bounds, POVMs and LOCC protocols for a two-qubit state pair"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores); DISCRIMLAB_THREADS overrides");

  std::string grid, out, file;
  std::optional<double> gamma0_hint;
  double gamma0 = 0.0;
  bool require_sep = false;

  auto* bounds = app.add_subcommand("bounds", "Write the bound curves as CSV");
  bounds->add_option("grid,--grid", grid, "start:stop:step")->required();
  bounds->add_option("--out", out, "CSV path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify-povm", "Check a POVM file");
  verify->add_option("file", file, "POVM JSON")->required();
  verify->add_flag("--require-separable", require_sep, "Also fail on non-separable elements");

  auto* sym = app.add_subcommand("symmetrize", "Symmetrized [a,b,c;mu] form of a matrix or POVM file");
  sym->add_option("file", file, "Matrix or POVM JSON")->required();

  auto* sim = app.add_subcommand("simulate", "Evaluate a protocol file");
  sim->add_option("file", file, "Protocol JSON")->required();
  sim->add_option("--gamma0", gamma0_hint, "Expected gamma0");

  auto* cert = app.add_subcommand("certify", "Gap certificate for a protocol file");
  cert->add_option("file", file, "Protocol JSON")->required();
  cert->add_option("--gamma0", gamma0_hint, "Expected gamma0");

  SepSearchConfig sep_cfg;
  std::uint64_t sep_seed = 0;
  std::int64_t oracle_samples = 0;
  auto* osep = app.add_subcommand("optimize-sep", "Numerical separable optimum");
  osep->add_option("--gamma0", sep_cfg.gamma0_target)->required();
  osep->add_option("--grid-n", sep_cfg.grid_n, "Grid points per axis")->capture_default_str();
  osep->add_option("--refine-tol", sep_cfg.refine_tol)->capture_default_str();
  osep->add_option("--seed", sep_seed, "Seed for the sampling oracle")->capture_default_str();
  osep->add_option("--oracle-samples", oracle_samples, "Also run the sampling oracle (0 = off)")->capture_default_str();

  LoccSearchConfig locc_cfg;
  auto* olocc = app.add_subcommand("optimize-locc", "Search over finite-round LOCC trees");
  olocc->add_option("--gamma0", locc_cfg.gamma0_target)->required();
  olocc->add_option("--rounds", locc_cfg.rounds)->capture_default_str();
  olocc->add_option("--outcomes", locc_cfg.outcomes_per_round)->capture_default_str();
  olocc->add_option("--restarts", locc_cfg.restarts)->capture_default_str();
  olocc->add_option("--seed", locc_cfg.seed)->capture_default_str();
  olocc->add_option("--penalty", locc_cfg.penalty_weight)->capture_default_str();
  olocc->add_option("--max-evals", locc_cfg.max_evals, "Objective evaluations per restart")->capture_default_str();

  double eta0 = 0.5, step = 1e-3;
  std::string curve = "glo";
  auto* qopt = app.add_subcommand("qopt", "Best prior-averaged success rate along a curve");
  qopt->add_option("--eta0", eta0)->required();
  qopt->add_option("--curve", curve)->check(CLI::IsMember({"glo", "sep", "u", "l1", "l2"}))->capture_default_str();
  qopt->add_option("--step", step, "Scan step before refinement")->capture_default_str();

  std::string kind;
  auto* povm = app.add_subcommand("povm", "Print an optimal POVM");
  povm->add_option("--kind", kind)->check(CLI::IsMember({"sep", "glo"}))->required();
  povm->add_option("--gamma0", gamma0)->required();

  auto* proto = app.add_subcommand("protocol", "Print a reference protocol");
  proto->add_option("--kind", kind)->check(CLI::IsMember({"both-z", "l1", "l2"}))->required();
  proto->add_option("--gamma0", gamma0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    apply_threads(threads);
    if (*bounds) {
      return run_bounds(grid, out);
    }
    if (*verify) return run_verify_povm(file, require_sep);
    if (*sym) return run_symmetrize(file);
    if (*sim) return run_simulate(file, gamma0_hint);
    if (*cert) return run_certify(file, gamma0_hint);
    if (*osep) return run_optimize_sep(sep_cfg, sep_seed, oracle_samples);
    if (*olocc) return run_optimize_locc(locc_cfg);
    if (*qopt) return run_qopt(eta0, curve, step);
    if (*povm) return run_povm(kind, gamma0);
    if (*proto) return run_protocol(kind, gamma0);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const InvalidTree& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const UdViolation& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const NotPositive& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const SearchFailed& e) {
    std::cerr << "search failed: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
