#include <doctest.h>

#include <sstream>

#include "discrimlab/json_io.hpp"
#include "oracle.hpp"
#include "tree_gen.hpp"

using namespace discrimlab;

namespace {

template <class E>
std::string where_of(auto&& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e.where();
  }
  return "<no throw>";
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("operators round trip") {
  oracle::Gen gen(61);
  for (int i = 0; i < 50; ++i) {
    const Op4 op = oracle::op4(gen.hermitian4());
    const Json j = parse_json(to_json(op).dump());
    CHECK(op4_from_json(j).max_abs_diff(op) <= 1e-12);
  }
  const Op2 p = qubit::p_plus();
  CHECK(op2_from_json(to_json(p)).max_abs_diff(p) == 0.0);
}

TEST_CASE("matrix encoding") {
  const Json j = to_json(qubit::p1());
  CHECK(j.dump() == "[[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");
}

TEST_CASE("POVMs round trip") {
  for (double g : {0.0, 0.3, 0.5}) {
    const Povm p = optimal_sep_povm(g);
    const Povm q = povm_from_json(parse_json(to_json(p).dump()));
    REQUIRE(q.elements.size() == p.elements.size());
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
      CHECK(q.elements[i].label == p.elements[i].label);
      CHECK(q.elements[i].op.max_abs_diff(p.elements[i].op) <= 1e-12);
    }
  }
}

TEST_CASE("protocols round trip") {
  oracle::Gen gen(62);
  std::vector<LoccTree> trees = {protocols::both_z(), protocols::alice_x_bob_ud(0.25), protocols::l2_mixture(0.2),
                                 LoccTree::Leaf(Label::One)};
  for (int i = 0; i < 30; ++i) trees.push_back(treegen::random_tree(gen));
  for (const auto& t : trees) {
    const LoccTree u = protocol_from_json(parse_json(to_json(t).dump()));
    REQUIRE(u.size() == t.size());
    for (LoccTree::NodeId id = 0; id < t.size(); ++id) {
      const auto &a = t.vertex(id), &b = u.vertex(u.at(t.path_of(id)));
      CHECK(a.acc.alice.max_abs_diff(b.acc.alice) <= 1e-12);
      CHECK(a.acc.bob.max_abs_diff(b.acc.bob) <= 1e-12);
      CHECK(a.label == b.label);
      CHECK(a.measurer == b.measurer);
    }
  }
}

TEST_CASE("SymForm round trip") {
  const SymForm s{0.7, 0.128, 0.3, -0.3};
  CHECK(symform_from_json(parse_json(to_json(s).dump())).max_abs_diff(s) == 0.0);
  CHECK(where_of<ParseError>([] { symform_from_json(parse_json(R"({"a":1,"b":2,"c":"x","mu":0})")); }) == "/c");
}

TEST_CASE("parse errors carry a path") {
  CHECK_THROWS_AS(parse_json("{\"elements\": ["), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);

  CHECK(where_of<ParseError>([] { povm_from_json(parse_json(R"({"elements": []})")); }) == "/elements");
  CHECK(where_of<ParseError>([] {
          povm_from_json(parse_json(R"({"elements": [{"label": 3, "matrix": []}]})"));
        }) == "/elements/0/label");
  CHECK(where_of<ParseError>([] {
          povm_from_json(parse_json(R"({"elements": [{"label": 2, "matrix": [[1,0],[0,1]]}]})"));
        }) == "/elements/0/matrix");

  const std::string two = R"([[[1,0],[0,0]],[[0,0],[0,0]]])";
  CHECK(where_of<ParseError>([&] {
          protocol_from_json(parse_json(R"({"party": "C", "outcomes": []})"));
        }) == "/party");
  CHECK(where_of<ParseError>([&] {
          protocol_from_json(parse_json(R"({"party": "A", "outcomes": [{"op": )" + two + R"(}]})"));
        }) == "/outcomes/0");
  CHECK(where_of<ParseError>([&] {
          protocol_from_json(parse_json(R"({"party": "A", "outcomes": [{"op": )" + two +
                                        R"(, "then": {"party": "B", "outcomes": [{"op": [1], "label": 0}]}}]})"));
        }) == "/outcomes/0/then/outcomes/0/op");
}

TEST_CASE("validation errors carry a path") {
  CHECK(where_of<ValidationError>([] {
          povm_from_json(parse_json(
              R"({"elements": [{"label": 2, "matrix": [[[1,0],[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]}]})"));
        }) == "/elements/0/matrix");
}

TEST_CASE("bare label is a protocol") {
  const LoccTree t = protocol_from_json(parse_json(R"({"label": 2})"));
  CHECK(t.size() == 1);
  CHECK(*t.vertex(0).label == Label::Fail);
}

TEST_CASE("CSV formatting") {
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(0.75) == "0.75");
  CHECK(format_g12(2.0 / 3.0) == "0.666666666667");
  CHECK(format_g12(1e-20) == "1e-20");
  std::ostringstream os;
  write_curve_csv(os, {curve_point(0.0), curve_point(0.25)});
  CHECK(os.str() ==
        "gamma0,p_glo,p_sep,u,l1,l2\n"
        "0,0.75,0.75,0.75,0.5,0.75\n"
        "0.25,0.666666666667,0.416666666667,0.41452991453,0.333333333333,0.385723304703\n");
}

TEST_CASE("reports serialize") {
  const ProtocolReport r = simulate_protocol(protocols::alice_x_bob_ud(0.25), 0.25);
  const Json j = to_json(r);
  CHECK(j.at("gammas").at("gamma1").get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j.dump().find("\"passed\":true") != std::string::npos);

  LoccSearchConfig cfg;
  cfg.gamma0_target = 0.1;
  cfg.rounds = 2;
  cfg.restarts = 2;
  cfg.max_evals = 50;
  const LoccSearchResult res = optimize_locc(cfg);
  const Json rj = to_json(res, cfg);
  const LoccTree back = protocol_from_json(rj.at("protocol"));
  CHECK(success_probs(leaf_povm(back), Instance::Default()).gamma1 == doctest::Approx(res.gammas.gamma1).epsilon(1e-12));
}

}  // TEST_SUITE
