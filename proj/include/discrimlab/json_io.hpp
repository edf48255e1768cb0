#pragma once

// File formats. Matrices are row-major arrays of [re, im] pairs in the basis
// |00>, |01>, |10>, |11>. A protocol node is
//
//   {"party": "A" | "B",
//    "outcomes": [{"op": <2x2>, "then": <node>} | {"op": <2x2>, "label": 0|1|2}, ...]}
//
// where "op" is the measuring party's accumulated local operator after that
// outcome (the root holds identity on both sides). A bare {"label": k} is a
// protocol that never measures.

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discrimlab/bounds.hpp"
#include "discrimlab/locc.hpp"
#include "discrimlab/search.hpp"

namespace discrimlab {

using Json = nlohmann::ordered_json;

/// Malformed input; `where` is a JSON pointer to the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string where)
      : std::runtime_error(where.empty() ? what : what + " at " + where), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Well-formed input that violates a mathematical requirement.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string where)
      : std::runtime_error(where.empty() ? what : what + " at " + where), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Throws ParseError on malformed text.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const Op2& op);
Json to_json(const Op4& op);
/// Throws ParseError for a wrong shape, ValidationError if not Hermitian.
Op2 op2_from_json(const Json& j, const std::string& where = "");
Op4 op4_from_json(const Json& j, const std::string& where = "");

Json to_json(const SymForm& s);
SymForm symform_from_json(const Json& j, const std::string& where = "");

Json to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json to_json(const LoccTree& t);
/// Builds the tree; structural problems are ParseErrors, operator problems
/// ValidationErrors. The result still needs validate_tree.
LoccTree protocol_from_json(const Json& j);

Json to_json(const SuccessPair& s);
Json to_json(const GapCertificate& c);
Json to_json(const ProtocolReport& r);
Json to_json(const SepSearchResult& r);
Json to_json(const ParamTree& p);
Json to_json(const LoccSearchConfig& cfg);
Json to_json(const LoccSearchResult& r, const LoccSearchConfig& cfg);

/// `gamma0,p_glo,p_sep,u,l1,l2` and 12 significant digits per value,
/// independent of the global locale.
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& pts);
std::string format_g12(double v);

}  // namespace discrimlab
