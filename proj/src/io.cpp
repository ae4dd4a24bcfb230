#include "tracepair/io.hpp"

#include <fstream>
#include <sstream>

namespace tracepair {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json matrix_to_json(const Matrix4c& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

Matrix4c matrix_from_json(const Json& j) {
  if (!j.contains("rows")) throw ParseError("matrix object lacks \"rows\"");
  const Json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != 4) {
    throw ParseError("\"rows\" must hold exactly 4 rows");
  }
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != 4) {
      throw ParseError("each matrix row must hold exactly 4 entries");
    }
    for (int k = 0; k < 4; ++k) m(i, k) = complex_from_json(row[k]);
  }
  return m;
}

Json element_to_json(const GroupElement& g) {
  Json j = matrix_to_json(g.matrix());
  j["flavor"] = std::string(flavor_name(g.flavor()));
  return j;
}

LoadedElement element_from_json(const Json& j, double tolerance) {
  const Matrix4c m = matrix_from_json(j);
  std::string flavor = j.value("flavor", std::string("SL4"));
  const MembershipReport residuals = su31_residuals(m);
  if (flavor == "SU31") {
    return {GroupElement::su31(m, tolerance), residuals};
  }
  if (flavor == "SL4") {
    return {GroupElement::sl4(m, tolerance), residuals};
  }
  throw ParseError("unknown flavor '" + flavor + "' (expected SL4 or SU31)");
}

Json pair_to_json(const GroupElement& a, const GroupElement& b) {
  return Json{{"a", element_to_json(a)}, {"b", element_to_json(b)}};
}

LoadedPair pair_from_json(const Json& j, double tolerance) {
  if (!j.contains("a") || !j.contains("b")) {
    throw ParseError("pair file must hold \"a\" and \"b\" elements");
  }
  LoadedElement a = element_from_json(j.at("a"), tolerance);
  LoadedElement b = element_from_json(j.at("b"), tolerance);
  return {std::move(a.element), std::move(b.element), a.residuals, b.residuals};
}

Json trace_vector_to_json(const TraceVector& v) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < v.values.size(); ++i) {
    values.push_back(complex_to_json(v.values(i)));
  }
  return Json{{"catalog", std::string(catalog_id(v.catalog))},
              {"values", values}};
}

TraceVector trace_vector_from_json(const Json& j) {
  if (!j.contains("catalog") || !j.contains("values")) {
    throw ParseError("trace vector must hold \"catalog\" and \"values\"");
  }
  TraceVector v{catalog_from_id(j.at("catalog").get<std::string>()), {}};
  const Json& values = j.at("values");
  const std::size_t expected = catalog(v.catalog).size();
  if (!values.is_array() || values.size() != expected) {
    throw ParseError("trace vector for " +
                     std::string(catalog_id(v.catalog)) + " needs " +
                     std::to_string(expected) + " values");
  }
  v.values.resize(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    v.values(static_cast<Eigen::Index>(i)) = complex_from_json(values[i]);
  }
  return v;
}

Json real_coords_to_json(const RealCoordinateVector& v) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < v.values.size(); ++i) values.push_back(v.values(i));
  return Json{{"slots", v.slots}, {"values", values}};
}

std::string real_coords_to_csv(const RealCoordinateVector& v) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < v.slots.size(); ++i) {
    out << (i ? "," : "") << v.slots[i];
  }
  out << "\n";
  for (Eigen::Index i = 0; i < v.values.size(); ++i) {
    out << (i ? "," : "") << v.values(i);
  }
  out << "\n";
  return out.str();
}

Json certificate_to_json(const ConjugacyCertificate& cert) {
  Json j{{"conjugate", cert.conjugate},
         {"coordinate_distance", cert.coordinate_distance},
         {"kernel_dimension", cert.kernel_dimension},
         {"polystability_verified", cert.polystability_verified},
         {"tolerance", cert.tolerance}};
  if (cert.conjugator) j["conjugator"] = element_to_json(*cert.conjugator);
  if (std::isfinite(cert.conjugation_residual)) {
    j["conjugation_residual"] = cert.conjugation_residual;
  }
  return j;
}

Json fit_result_to_json(const FitResult& fit) {
  return Json{{"pair", pair_to_json(fit.a, fit.b)},
              {"residual", fit.residual},
              {"iterations", fit.iterations},
              {"restarts_used", fit.restarts_used},
              {"converged", fit.converged},
              {"seed", fit.seed}};
}

Json classification_to_json(const ClassificationReport& report) {
  Json j;
  Json types;
  types["a"] = report.a_type ? std::string(isometry_name(*report.a_type))
                             : std::string("n/a");
  types["b"] = report.b_type ? std::string(isometry_name(*report.b_type))
                             : std::string("n/a");
  j["isometry_types"] = types;
  j["verdict"] = std::string(verdict_name(report.reducibility.verdict));
  j["span_dimension"] = report.reducibility.span_dimension;
  if (report.reducibility.subspace_basis) {
    const auto& basis = *report.reducibility.subspace_basis;
    Json cols = Json::array();
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      Json col = Json::array();
      for (int r = 0; r < 4; ++r) col.push_back(complex_to_json(basis(r, c)));
      cols.push_back(col);
    }
    j["subspace_basis"] = cols;
  }
  if (report.reducibility.subspace_signature) {
    j["subspace_signature"] =
        Json::array({report.reducibility.subspace_signature->first,
                     report.reducibility.subspace_signature->second});
  }
  j["tolerances"] = Json{
      {"isometry", report.isometry_tolerance},
      {"invariance", report.reducibility.invariance_tolerance},
      {"signature_zero", tol::signature_zero}};
  return j;
}

Json reduced_invariants_to_json(const ReducedInvariants& inv) {
  static const char* line_names[] = {"tr(A)",    "tr(B)",    "tr(AB)",
                                     "sigma(A)", "sigma(B)", "sigma(AB)"};
  static const char* plane_names[] = {"tr(A)",     "tr(B)",    "tr(AB)",
                                      "tr(A^-1B)", "tr([A,B])", "sigma(A)",
                                      "sigma(B)"};
  Json values;
  for (std::size_t i = 0; i < inv.values.size(); ++i) {
    const char* name = inv.which == ReducedCase::Line ? line_names[i]
                                                      : plane_names[i];
    values[name] = complex_to_json(inv.values[i]);
  }
  return Json{{"case", std::string(case_name(inv.which))}, {"values", values}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace tracepair
