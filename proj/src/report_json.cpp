#include "milnorflow/report_json.hpp"

#include "milnorflow/errors.hpp"

namespace milnorflow {

namespace {

Json rational_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_pq_string(r));
  return out;
}

std::vector<Rational> rationals_from(const Json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(parse_rational(s.get<std::string>()));
  return out;
}

Json exponents_json(const Monomial& m) {
  Json out = Json::array();
  for (Exponent e : m.exponents()) out.push_back(e);
  return out;
}

Monomial monomial_from(const Json& j) { return Monomial(j.get<std::vector<Exponent>>()); }

Integer integer_from(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(static_cast<long>(j.get<std::int64_t>()));
}

}  // namespace

Json to_json(const verify::VerificationRecord& rec) {
  Json j;
  j["kind"] = rec.kind;
  j["label"] = rec.label;
  j["formula_value"] = rec.formula_value;
  j["numeric_value"] = rec.numeric_value;
  j["abs_error"] = rec.abs_error;
  j["requested_grid"] = rec.requested_grid;
  j["grid"] = rec.grid;
  j["grid_refined"] = rec.grid_refined;
  j["split_k"] = rec.split_k;
  j["method"] = rec.method;
  j["pass"] = rec.pass;
  return j;
}

verify::VerificationRecord verification_from_json(const Json& j) {
  verify::VerificationRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.formula_value = j.at("formula_value").get<double>();
  r.numeric_value = j.at("numeric_value").get<double>();
  r.abs_error = j.at("abs_error").get<double>();
  r.requested_grid = j.at("requested_grid").get<std::size_t>();
  r.grid = j.at("grid").get<std::size_t>();
  r.grid_refined = j.at("grid_refined").get<bool>();
  r.split_k = j.at("split_k").get<std::size_t>();
  r.method = j.at("method").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

Json to_json(const ReportEnvelope& env) {
  const SingularityReport& r = env.report;
  Json j;
  j["version"] = env.tool_version;
  j["input"] = env.input_polynomial;
  j["polynomial"] = env.canonical_polynomial;
  j["order"] = env.order;

  Json w;
  Json bi = Json::array();
  Json normalized = Json::array();
  for (std::size_t i = 0; i < r.weights.nvars(); ++i) {
    bi.push_back(to_int64(r.weights.beta_i()[i]));
    normalized.push_back(to_pq_string(r.weights.weight(i)));
  }
  w["beta_i"] = bi;
  w["beta"] = to_int64(r.weights.beta());
  w["w"] = normalized;
  j["weights"] = w;

  j["mu"] = r.mu;
  j["regular_point"] = r.regular_point;
  j["groebner_basis"] = env.groebner_basis;

  Json basis = Json::array();
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    Json e;
    e["monomial"] = to_string(r.basis.monomials[i]);
    e["exponents"] = exponents_json(r.basis.monomials[i]);
    e["l"] = to_pq_string(r.basis.l_values[i]);
    e["sf"] = r.flows.entries[i].sf;
    e["SF"] = r.flows.entries[i].SF;
    basis.push_back(e);
  }
  j["basis"] = basis;
  j["spectrum"] = rational_list(r.spectrum.entries);

  Json var = Json::array();
  for (const auto& v : r.variation) var.push_back({{"rotation", to_pq_string(v.rotation)}, {"sign", v.sign}});
  j["variation_structure"] = var;

  j["seidel_number"] = to_int64(r.seidel_number);
  j["sf_zero_equals_seidel"] = r.sf_zero_matches_seidel;
  j["qhs_link"] = r.qhs_link;
  j["folg1_condition"] = r.folg1_condition;
  j["eta_fractional_full"] = to_pq_string(r.eta_fractional_sum_full);
  j["monodromy_rotations"] = rational_list(r.monodromy_rotations);

  Json cp;
  Json coeffs = Json::array();
  // Strings: coefficients outgrow 64 bits for large mu.
  for (const auto& c : r.characteristic_polynomial.coefficients) coeffs.push_back(c.get_str());
  cp["coefficients"] = coeffs;
  cp["max_integrality_deviation"] = r.characteristic_polynomial.max_integrality_deviation;
  cp["precision_bits"] = r.characteristic_polynomial.precision_bits;
  j["characteristic_polynomial"] = cp;

  Json ver = Json::array();
  if (env.verification)
    for (const auto& rec : *env.verification) ver.push_back(to_json(rec));
  j["verification"] = ver;

  if (!env.timing_ms.empty()) {
    Json t;
    for (const auto& [k, v] : env.timing_ms) t[k] = v;
    j["timing_ms"] = t;
  }
  return j;
}

ReportEnvelope envelope_from_json(const Json& j) {
  try {
    ReportEnvelope env;
    env.tool_version = j.at("version").get<std::string>();
    env.input_polynomial = j.at("input").get<std::string>();
    env.canonical_polynomial = j.at("polynomial").get<std::string>();
    env.order = j.at("order").get<std::string>();
    env.groebner_basis = j.at("groebner_basis").get<std::vector<std::string>>();

    SingularityReport& r = env.report;
    std::vector<Integer> bi;
    for (const auto& b : j.at("weights").at("beta_i")) bi.push_back(integer_from(b));
    r.weights = WeightSystem(bi, integer_from(j.at("weights").at("beta")));
    r.mu = j.at("mu").get<std::size_t>();
    r.regular_point = j.at("regular_point").get<bool>();

    r.basis.weights = r.weights;
    r.flows.beta = r.weights.beta();
    for (const auto& e : j.at("basis")) {
      const Monomial m = monomial_from(e.at("exponents"));
      r.basis.monomials.push_back(m);
      r.basis.l_values.push_back(parse_rational(e.at("l").get<std::string>()));
      r.flows.entries.push_back({m, e.at("SF").get<std::int64_t>(), e.at("sf").get<std::int64_t>()});
    }
    r.spectrum.entries = rationals_from(j.at("spectrum"));
    for (const auto& v : j.at("variation_structure"))
      r.variation.push_back({parse_rational(v.at("rotation").get<std::string>()), v.at("sign").get<int>()});
    r.seidel_number = integer_from(j.at("seidel_number"));
    r.sf_zero_matches_seidel = j.at("sf_zero_equals_seidel").get<bool>();
    r.qhs_link = j.at("qhs_link").get<bool>();
    r.folg1_condition = j.at("folg1_condition").get<bool>();
    r.eta_fractional_sum_full = parse_rational(j.at("eta_fractional_full").get<std::string>());
    r.monodromy_rotations = rationals_from(j.at("monodromy_rotations"));

    const Json& cp = j.at("characteristic_polynomial");
    for (const auto& c : cp.at("coefficients")) r.characteristic_polynomial.coefficients.push_back(integer_from(c));
    r.characteristic_polynomial.max_integrality_deviation = cp.at("max_integrality_deviation").get<double>();
    r.characteristic_polynomial.precision_bits = cp.at("precision_bits").get<unsigned>();

    std::vector<verify::VerificationRecord> recs;
    for (const auto& rec : j.at("verification")) recs.push_back(verification_from_json(rec));
    if (!recs.empty()) env.verification = std::move(recs);

    if (j.contains("timing_ms"))
      for (const auto& [k, v] : j.at("timing_ms").items()) env.timing_ms[k] = v.get<std::int64_t>();
    return env;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

}  // namespace milnorflow
