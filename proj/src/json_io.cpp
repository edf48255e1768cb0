#include "discrimlab/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace discrimlab {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), "");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

// ---------------------------------------------------------------------------
// Matrices

namespace {

template <int N>
Json op_to_json(const HermitianOp<N>& op) {
  Json rows = Json::array();
  for (int r = 0; r < N; ++r) {
    Json row = Json::array();
    for (int c = 0; c < N; ++c) row.push_back({op(r, c).real(), op(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("expected a number", where);
  return j.get<double>();
}

template <int N>
HermitianOp<N> op_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) {
    throw ParseError("expected a " + std::to_string(N) + "x" + std::to_string(N) + " matrix", where);
  }
  typename HermitianOp<N>::Matrix m;
  for (int r = 0; r < N; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    const Json& row = j[r];
    if (!row.is_array() || row.size() != N) throw ParseError("expected a row of " + std::to_string(N), rw);
    for (int c = 0; c < N; ++c) {
      const std::string cw = rw + "/" + std::to_string(c);
      const Json& z = row[c];
      if (!z.is_array() || z.size() != 2) throw ParseError("expected [re, im]", cw);
      m(r, c) = Complex(number_at(z[0], cw + "/0"), number_at(z[1], cw + "/1"));
    }
  }
  try {
    return HermitianOp<N>(m);
  } catch (const NotHermitian& e) {
    throw ValidationError(e.what(), where);
  }
}

Label label_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError("label must be 0, 1 or 2", where);
  const int v = j.get<int>();
  if (v < 0 || v > 2) throw ParseError("label must be 0, 1 or 2", where);
  return label_from_int(v);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"", where);
  return j.at(key);
}

}  // namespace

Json to_json(const Op2& op) { return op_to_json(op); }
Json to_json(const Op4& op) { return op_to_json(op); }
Op2 op2_from_json(const Json& j, const std::string& where) { return op_from_json<2>(j, where); }
Op4 op4_from_json(const Json& j, const std::string& where) { return op_from_json<4>(j, where); }

Json to_json(const SymForm& s) { return {{"a", s.a}, {"b", s.b}, {"c", s.c}, {"mu", s.mu}}; }

SymForm symform_from_json(const Json& j, const std::string& where) {
  return {number_at(field(j, "a", where), where + "/a"), number_at(field(j, "b", where), where + "/b"),
          number_at(field(j, "c", where), where + "/c"), number_at(field(j, "mu", where), where + "/mu")};
}

// ---------------------------------------------------------------------------
// POVMs

Json to_json(const Povm& p) {
  Json els = Json::array();
  for (const auto& e : p.elements) els.push_back({{"label", to_int(e.label)}, {"matrix", to_json(e.op)}});
  return {{"elements", els}};
}

Povm povm_from_json(const Json& j) {
  const Json& els = field(j, "elements", "");
  if (!els.is_array() || els.empty()) throw ParseError("\"elements\" must be a non-empty array", "/elements");
  Povm p;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const std::string w = "/elements/" + std::to_string(i);
    p.elements.push_back(
        {label_at(field(els[i], "label", w), w + "/label"), op4_from_json(field(els[i], "matrix", w), w + "/matrix")});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Protocols

namespace {

Json node_to_json(const LoccTree& t, LoccTree::NodeId id) {
  const auto& v = t.vertex(id);
  if (v.children.empty()) return {{"label", v.label ? to_int(*v.label) : 2}};
  const Party p = *v.measurer;
  Json outs = Json::array();
  for (auto c : v.children) {
    const auto& cv = t.vertex(c);
    Json o;
    o["op"] = to_json(p == Party::Alice ? cv.acc.alice : cv.acc.bob);
    if (cv.children.empty()) {
      o["label"] = cv.label ? to_int(*cv.label) : 2;
    } else {
      o["then"] = node_to_json(t, c);
    }
    outs.push_back(std::move(o));
  }
  return {{"party", p == Party::Alice ? "A" : "B"}, {"outcomes", outs}};
}

void build_node(LoccTree& t, LoccTree::NodeId id, const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected a protocol node", where);
  const Json& party_j = field(j, "party", where);
  if (!party_j.is_string() || (party_j != "A" && party_j != "B")) {
    throw ParseError("\"party\" must be \"A\" or \"B\"", where + "/party");
  }
  const Party party = party_j == "A" ? Party::Alice : Party::Bob;
  const Json& outs = field(j, "outcomes", where);
  if (!outs.is_array() || outs.empty()) throw ParseError("\"outcomes\" must be a non-empty array", where + "/outcomes");
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string w = where + "/outcomes/" + std::to_string(i);
    const Json& o = outs[i];
    const Op2 op = op2_from_json(field(o, "op", w), w + "/op");
    const bool has_then = o.contains("then"), has_label = o.contains("label");
    if (has_then == has_label) throw ParseError("outcome needs exactly one of \"then\" or \"label\"", w);
    LoccTree::NodeId child;
    try {
      child = t.add_outcome(id, party, op);
    } catch (const InvalidTree& e) {
      throw ValidationError(e.what(), w);
    }
    if (has_label) {
      t.set_label(child, label_at(o.at("label"), w + "/label"));
    } else {
      build_node(t, child, o.at("then"), w + "/then");
    }
  }
}

}  // namespace

Json to_json(const LoccTree& t) { return node_to_json(t, LoccTree::root()); }

LoccTree protocol_from_json(const Json& j) {
  if (j.is_object() && j.contains("label") && !j.contains("party")) {
    return LoccTree::Leaf(label_at(j.at("label"), "/label"));
  }
  LoccTree t;
  build_node(t, LoccTree::root(), j, "");
  return t;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

Json inequality(const InequalityCheck& c) { return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}}; }

Json maybe(double v, bool defined) { return defined ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const SuccessPair& s) { return {{"gamma0", s.gamma0}, {"gamma1", s.gamma1}}; }

Json to_json(const GapCertificate& c) {
  Json kw = Json::object();
  const Group groups[3] = {Group::Gamma0, Group::GammaPlus, Group::GammaMinus};
  for (Group g : groups) {
    const auto& row = c.k_weights[static_cast<int>(g)];
    kw[to_string(g)] = {row[0], row[1], row[2]};
  }
  Json j;
  j["passed"] = c.passed();
  j["gammas"] = to_json(c.gammas);
  j["xi"] = c.xi;
  j["u"] = c.u;
  j["gamma0_target"] = c.gamma0_target ? Json(*c.gamma0_target) : Json(nullptr);
  j["target_matches"] = c.target_matches;
  j["bound_holds"] = c.bound_holds;
  j["convexity_slack"] = c.convexity_slack;
  j["convexity_holds"] = c.convexity_holds;
  j["landing_checked"] = c.landing_checked;
  j["landing_holds"] = c.landing_holds;
  j["penalty_lemma"] = inequality(c.penalty_lemma);
  j["k_weights"] = kw;
  j["m0_worst_offset"] = c.m0_worst_offset;
  j["m0_on_corners"] = c.m0_on_corners;
  j["m0_in_gamma0"] = c.m0_in_gamma0;
  j["m1_worst_weight"] = c.m1_worst_weight;
  j["m1_weightless"] = c.m1_weightless;
  j["m2_off_optimum"] = c.m2_off_optimum;
  j["k2_functional"] = {{"plus", inequality(c.k2_functional[0])}, {"minus", inequality(c.k2_functional[1])}};
  j["k0_weight_sum"] = inequality(c.k0_weight_sum);
  j["k2_penalty"] = {{"plus", inequality(c.k2_penalty[0])}, {"minus", inequality(c.k2_penalty[1])}};
  return j;
}

Json to_json(const ProtocolReport& r) {
  Json leaves = Json::array();
  for (const auto& l : r.classification.leaves) {
    const auto& end = l.trajectory.back();
    leaves.push_back({{"path", l.path},
                      {"label", to_int(l.label)},
                      {"x", maybe(end.x, end.defined)},
                      {"y", maybe(end.y, end.defined)},
                      {"w", end.w},
                      {"f_plus", l.f_plus},
                      {"f_minus", l.f_minus},
                      {"group", to_string(l.group)}});
  }
  Json j;
  j["gammas"] = to_json(r.gammas);
  j["leaves"] = leaves;
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  if (!r.certificate) j["certificate_error"] = r.certificate_error;
  return j;
}

Json to_json(const SepSearchResult& r) {
  return {{"gammas", to_json(r.gammas)},
          {"b", r.b},
          {"c", r.c},
          {"forms", {{"f0", to_json(r.forms.f0)}, {"f1", to_json(r.forms.f1)}, {"f2", to_json(r.forms.f2)}}}};
}

Json to_json(const ParamTree& p) {
  Json labels = Json::array();
  for (Label l : p.labels) labels.push_back(to_int(l));
  return {{"first_mover", p.first_mover == Party::Alice ? "A" : "B"},
          {"rounds", p.rounds},
          {"outcomes", p.outcomes},
          {"values", p.params},
          {"labels", labels},
          {"zero_keep", p.zero_keep}};
}

Json to_json(const LoccSearchConfig& cfg) {
  return {{"gamma0_target", cfg.gamma0_target},
          {"rounds", cfg.rounds},
          {"outcomes_per_round", cfg.outcomes_per_round},
          {"restarts", cfg.restarts},
          {"seed", cfg.seed},
          {"penalty_weight", cfg.penalty_weight},
          {"max_evals", cfg.max_evals}};
}

Json to_json(const LoccSearchResult& r, const LoccSearchConfig& cfg) {
  return {{"config", to_json(cfg)},
          {"seed", cfg.seed},
          {"best_restart", r.best_restart},
          {"params", to_json(r.params)},
          {"protocol", to_json(r.tree)},
          {"gammas", to_json(r.gammas)},
          {"certificate", to_json(r.certificate)}};
}

// ---------------------------------------------------------------------------
// CSV

std::string format_g12(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& pts) {
  os << "gamma0,p_glo,p_sep,u,l1,l2\n";
  for (const auto& p : pts) {
    os << format_g12(p.gamma0) << ',' << format_g12(p.p_glo) << ',' << format_g12(p.p_sep) << ','
       << format_g12(p.u) << ',' << format_g12(p.l1) << ',' << format_g12(p.l2) << '\n';
  }
}

}  // namespace discrimlab
