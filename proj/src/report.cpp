#include "qmoment/report.hpp"

#include <stdexcept>

#include "qmoment/errors.hpp"

namespace qmoment {

namespace {

std::string text(const Real& x, const PrecisionContext& ctx) { return x.to_string(ctx.digits()); }

}  // namespace

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["criterion"] = v.criterion;
  j["proof_strength"] = to_string(v.proof_strength);
  if (v.window) {
    j["window"] = Json{{"index", v.window->index}, {"lo", v.window->lo}, {"hi", v.window->hi}};
  } else {
    j["window"] = nullptr;
  }
  Json evidence = Json::array();
  for (const auto& e : v.evidence) evidence.push_back(Json{{"name", e.name}, {"value", e.value}});
  j["evidence"] = std::move(evidence);
  return j;
}

Json to_json(const QMomentReport& r, const PrecisionContext& ctx) {
  Json j;
  j["n"] = r.n;
  j["value"] = text(r.value, ctx);
  j["tail_bound"] = text(r.tail_bound, ctx);
  j["terms_used"] = r.terms_used;
  j["j_peak"] = r.j_peak;
  return j;
}

Json to_json(const KreinResult& k, const PrecisionContext& ctx) {
  Json j;
  j["value"] = text(k.value, ctx);
  j["c_fit"] = text(k.c_fit, ctx);
  Json decades = Json::array();
  for (const auto& d : k.decades) {
    decades.push_back(Json{{"decade", d.decade}, {"c_fit", text(d.c_fit, ctx)}, {"integral", text(d.integral, ctx)}});
  }
  j["decades"] = std::move(decades);
  Json partials = Json::array();
  for (const auto& [t, v] : k.partials) partials.push_back(Json{{"T", text(t, ctx)}, {"integral", text(v, ctx)}});
  j["partials"] = std::move(partials);
  return j;
}

Json to_json(const WitnessPair& p, const PrecisionContext& ctx) {
  Json j;
  j["m"] = p.m;
  j["alpha"] = text(p.alpha, ctx);
  j["alpha_max"] = text(p.alpha_max, ctx);
  j["window"] = p.window;
  j["nonnegativity_checked"] = Json{{"lo", p.checked_lo}, {"hi", p.checked_hi}};
  j["verified_to"] = p.verified_to;
  j["max_residual"] = text(p.max_residual, ctx);
  j["accepted"] = p.accepted;
  Json rows = Json::array();
  for (const auto& r : p.residuals) {
    rows.push_back(Json{{"n", r.n},
                        {"base_moment", text(r.base_moment, ctx)},
                        {"witness_moment", text(r.witness_moment, ctx)},
                        {"series_max_term", text(r.series_max_term, ctx)},
                        {"series_residual", text(r.series_residual, ctx)},
                        {"direct_residual", text(r.direct_residual, ctx)}});
  }
  j["residuals"] = std::move(rows);
  return j;
}

Json density_table_json(const QDensity& table) {
  const auto* t = table.as_table();
  if (!t) throw DomainError("only table densities can be written as a density table");
  Json j;
  j["q"] = table.q().text();
  j["j_min"] = t->j_min;
  j["j_max"] = t->j_max;
  Json values = Json::array();
  for (const auto& v : t->values) values.push_back(v.text());
  j["values"] = std::move(values);
  j["normalized"] = table.normalized();
  return j;
}

std::string write_density_table(const QDensity& table) { return density_table_json(table).dump(2) + "\n"; }

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("density table: missing field '") + key + "'");
  return *it;
}

long integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("density table: '") + key + "' must be an integer");
  return v.get<long>();
}

}  // namespace

QDensity read_density_table(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("density table: not valid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw std::invalid_argument("density table: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "q" && k != "j_min" && k != "j_max" && k != "values" && k != "normalized") {
      throw std::invalid_argument("density table: unexpected field '" + k + "'");
    }
  }
  const Json& q = field(j, "q");
  if (!q.is_string()) throw std::invalid_argument("density table: 'q' must be a decimal string");
  const long j_min = integer_field(j, "j_min");
  const long j_max = integer_field(j, "j_max");
  if (j_max < j_min) throw std::invalid_argument("density table: j_max < j_min");
  const Json& values = field(j, "values");
  if (!values.is_array()) throw std::invalid_argument("density table: 'values' must be an array");
  if (static_cast<long>(values.size()) != j_max - j_min + 1) {
    throw std::invalid_argument("density table: expected " + std::to_string(j_max - j_min + 1) + " values, found " +
                                std::to_string(values.size()));
  }
  const Json& normalized = field(j, "normalized");
  if (!normalized.is_boolean()) throw std::invalid_argument("density table: 'normalized' must be a boolean");

  std::vector<Scalar> parsed;
  parsed.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_string()) {
      throw std::invalid_argument("density table: values[" + std::to_string(i) + "] must be a decimal string");
    }
    Scalar s = Scalar::parse(values[i].get<std::string>());
    if (s.exact() < 0) {
      throw std::invalid_argument("density table: values[" + std::to_string(i) + "] is negative");
    }
    parsed.push_back(std::move(s));
  }
  return QDensity::table(QParam(q.get<std::string>()), j_min, std::move(parsed), normalized.get<bool>());
}

}  // namespace qmoment
