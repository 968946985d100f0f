#pragma once

/// JSON encodings: operators, certificates, verdict traces, search results.
/// Exact values are "p/q" strings, floating values 17-significant-digit strings.

#include "blockpos/bp_exact.hpp"
#include "blockpos/family.hpp"
#include "blockpos/operator.hpp"
#include "blockpos/poly.hpp"
#include "blockpos/quartic.hpp"
#include "blockpos/rational.hpp"
#include "blockpos/search.hpp"

#include <json.hpp>

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace blockpos {

using nlohmann::json;

/// Malformed input document.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const ComplexRational& z) { return json{{"re", z.re.str()}, {"im", z.im.str()}}; }

inline Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::logic_error& e) {
    throw InputError(e.what());
  }
  throw InputError("expected a rational string \"p/q\", got " + j.dump());
}

inline ComplexRational complex_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("re")) throw InputError("complex entry without \"re\": " + j.dump());
    return {rational_from_json(j.at("re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  }
  return rational_from_json(j);
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json to_json(const std::complex<double>& z) {
  return json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

template <class T>
json array_json(const std::vector<T>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

inline json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const BipartiteOperator& a) {
  const bool real = a.field() == Field::Real;
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j)
      row.push_back(real ? to_json(a.entries()(i, j).re) : to_json(a.entries()(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"dim1", a.dim1()}, {"dim2", a.dim2()}, {"field", real ? "real" : "complex"}, {"entries", rows}};
}

inline BipartiteOperator operator_from_json(const json& j) {
  if (!j.is_object()) throw InputError("operator document must be an object");
  for (const char* key : {"dim1", "dim2", "field", "entries"})
    if (!j.contains(key)) throw InputError(std::string("operator document lacks \"") + key + "\"");
  if (!j["dim1"].is_number_unsigned() || !j["dim2"].is_number_unsigned())
    throw InputError("dim1 and dim2 must be positive integers");
  const auto d1 = j["dim1"].get<std::size_t>(), d2 = j["dim2"].get<std::size_t>();
  const std::string f = j["field"].is_string() ? j["field"].get<std::string>() : "";
  if (f != "real" && f != "complex") throw InputError("field must be \"real\" or \"complex\"");
  const json& rows = j["entries"];
  const std::size_t n = d1 * d2;
  if (n == 0) throw InputError("dimensions must be positive");
  if (!rows.is_array() || rows.size() != n) throw InputError("entries must have dim1*dim2 rows");
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) throw InputError("entries must have dim1*dim2 columns");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  try {
    return {d1, d2, f == "real" ? Field::Real : Field::Complex, std::move(m)};
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline json to_json(const UniPoly& p) { return array_json(p.coefficients()); }

inline json to_json(const ProductVector& p) { return json{{"u", array_json(p.u)}, {"v", array_json(p.v)}}; }

inline json to_json(const QuarticCoeffs& c) {
  return json{{"c4", to_json(c.c4)}, {"c3", to_json(c.c3)}, {"c2", to_json(c.c2)}, {"c1", to_json(c.c1)},
              {"c0", to_json(c.c0)}};
}

inline json to_json(const QuarticDecision& d) {
  const auto& inv = d.invariants;
  return json{{"nonnegative", d.nonnegative},
              {"branch", std::string(branch_name(d.branch))},
              {"sigma1", to_json(inv.sigma1)},
              {"sigma2", to_json(inv.sigma2)},
              {"sigma3", to_json(inv.sigma3)},
              {"kappa0", to_json(inv.kappa0)},
              {"kappa1", to_json(inv.kappa1)},
              {"kappa2", to_json(inv.kappa2)},
              {"kappa3", to_json(inv.kappa3)},
              {"local_kappa1", to_json(d.local_kappa1)},
              {"local_kappa2", to_json(d.local_kappa2)}};
}

inline json to_json(const BpTrace& t) {
  return json{{"trace_form", {{"t11", to_json(t.trace.t11)}, {"t12", to_json(t.trace.t12)}, {"t22", to_json(t.trace.t22)}}},
              {"trace_condition", t.trace_condition},
              {"determinant", to_json(t.determinant)},
              {"quartic", to_json(t.quartic)},
              {"axis_blocks_psd", t.axis_blocks_psd},
              {"failed_on", t.failed_on}};
}

inline json to_json(const SosCertificate& c) {
  json terms = json::array();
  for (const auto& t : c.terms) terms.push_back(json{{"weight", to_json(t.weight)}, {"coeffs", to_json(t.coeffs)}});
  return json{{"t", to_json(c.t_parameter)}, {"B", to_json(c.b)}, {"terms", terms}};
}

inline json to_json(const SearchResult& r) {
  return json{{"min_value", format_double(r.min_value)},
              {"margin", format_double(r.margin)},
              {"verdict", verdict_name(r.verdict)},
              {"argmin", {{"u", array_json(r.u)}, {"v", array_json(r.v)}}}};
}

inline json to_json(const RegionSummary& s) {
  return json{{"psd", s.psd}, {"bp_only", s.bp_only}, {"neither", s.neither}, {"psd_not_bp", s.violations}};
}

}  // namespace blockpos
