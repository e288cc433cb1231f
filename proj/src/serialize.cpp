#include "voachar/serialize.hpp"

#include "voachar/error.hpp"

namespace voachar {

using nlohmann::json;

json to_json(const QSeries& f) {
  json coeffs = json::array();
  const std::int64_t n = f.denom();
  for (const auto& c : f.dense_coeffs()) coeffs.push_back(to_string(c));
  return {{"denom", n}, {"lead", to_string(f.lead())}, {"prec", to_string(f.prec())}, {"coeffs", coeffs}};
}

QSeries qseries_from_json(const json& j) {
  try {
    const std::int64_t denom = j.at("denom").get<std::int64_t>();
    const Rational lead = parse_rational(j.at("lead").get<std::string>());
    const Rational prec = parse_rational(j.at("prec").get<std::string>());
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
    if (denom < 1) throw InvalidArgument("series JSON: denom must be positive");
    Rational span(static_cast<long>(coeffs.size()), static_cast<long>(denom));
    span.canonicalize();
    if (lead + span != prec)
      throw InvalidArgument("series JSON: coeffs do not cover [lead, prec)");
    return QSeries::from_dense(lead, denom, std::move(coeffs));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("series JSON: ") + e.what());
  }
}

json to_json(const Theory& t, bool include_modules) {
  json mods = json::array();
  if (include_modules) {
    for (const auto& m : t.modules) mods.push_back({{"weight", to_string(m.weight)}, {"dims", to_json(m.dims)}});
  }
  json out{{"name", t.name},
           {"c", to_string(t.c)},
           {"l", t.lie_rank},
           {"lambda_min", t.lambda_min ? json(to_string(*t.lambda_min)) : json()},
           {"c_tilde", t.lambda_min ? json(to_string(effective_central_charge(t))) : json()},
           {"module_count", t.module_count ? json(to_string(*t.module_count)) : json()},
           {"modules", include_modules ? mods : json()},
           {"flags",
            {{"rational", t.flags.rational},
             {"strong_cft", t.flags.strong_cft},
             {"nontrivial", t.flags.nontrivial},
             {"invariants_only", t.invariants_only()}}}};
  return out;
}

json to_json(const GrowthReport& g) {
  return {{"model", to_string(g.model)},
          {"exponent_or_constant", g.exponent_or_constant},
          {"r_squared", g.r_squared},
          {"r_squared_polynomial", g.r_squared_polynomial},
          {"r_squared_exponential", g.r_squared_exponential},
          {"points_used", g.points_used}};
}

json to_json(const SMatrixEstimate& s) {
  json rows = json::array();
  for (const auto& r : s.entries) {
    json row = json::array();
    for (const auto& x : r) row.push_back({x.real(), x.imag()});
    rows.push_back(row);
  }
  return {{"entries", rows},
          {"residual", s.residual},
          {"condition_number", s.condition_number},
          {"weight", to_string(s.weight)}};
}

}  // namespace voachar
