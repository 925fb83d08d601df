#pragma once

// JSON cone documents {"generators": [[...], ...]} with generators as inner
// lists, and JSON views of the engine's results. Integers beyond 2^53 - 1 are
// written as decimal strings; both forms are accepted on input.

#include "icr/cone.hpp"
#include "icr/cosets.hpp"
#include "icr/decomposition.hpp"

#include "json.hpp"

#include <string>

namespace icr {

using Json = nlohmann::ordered_json;

struct ConeDocument {
  SimplicialCone cone{IntMatrix::identity(1)};
  std::string name;
  std::string source;
};

// Throws ParseError with the offending line for malformed JSON, and for
// non-integers, ragged generators or dependent generators.
ConeDocument parse_cone_document(const std::string& text);
ConeDocument load_cone_file(const std::string& path);
std::string dump_cone_document(const ConeDocument& doc);

// "3,-2,5" or "[3,-2,5]".
IntVector parse_int_list(const std::string& text);

Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);  // exact rationals as "p/q" strings
IntVector int_vector_from_json(const Json& j);

Json to_json(const TraceStep& s);
TraceStep trace_step_from_json(const Json& j);
Json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);
Json to_json(const UnimodularCover& c);
Json to_json(const CosetProfile& p);

}  // namespace icr
