#pragma once

#include <string>

#include <json.hpp>

#include "tracepair/classify.hpp"
#include "tracepair/coordinates.hpp"
#include "tracepair/reconstruct.hpp"

namespace tracepair {

using Json = nlohmann::json;

// Matrix: {"rows": [[[re, im] x4] x4]}; GroupElement adds "flavor".
Json matrix_to_json(const Matrix4c& m);
Matrix4c matrix_from_json(const Json& j);

Json element_to_json(const GroupElement& g);

struct LoadedElement {
  GroupElement element;
  MembershipReport residuals;  // reported on load alongside validation
};
LoadedElement element_from_json(const Json& j, double tolerance = tol::membership);

// Pair file: {"a": <element>, "b": <element>}.
Json pair_to_json(const GroupElement& a, const GroupElement& b);

struct LoadedPair {
  GroupElement a;
  GroupElement b;
  MembershipReport a_residuals;
  MembershipReport b_residuals;
};
LoadedPair pair_from_json(const Json& j, double tolerance = tol::membership);

Json trace_vector_to_json(const TraceVector& v);
TraceVector trace_vector_from_json(const Json& j);

Json real_coords_to_json(const RealCoordinateVector& v);
// Header row of slot names, one data row. Real coordinate vectors only;
// complex vectors stay JSON.
std::string real_coords_to_csv(const RealCoordinateVector& v);

Json certificate_to_json(const ConjugacyCertificate& cert);
Json fit_result_to_json(const FitResult& fit);
Json classification_to_json(const ClassificationReport& report);
Json reduced_invariants_to_json(const ReducedInvariants& inv);

Json read_json_file(const std::string& path);   // IoError / ParseError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tracepair
