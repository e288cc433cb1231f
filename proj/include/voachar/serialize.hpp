#pragma once

#include <json.hpp>

#include "voachar/analysis.hpp"
#include "voachar/catalog.hpp"
#include "voachar/qseries.hpp"

namespace voachar {

/// {"denom": N, "lead": "p/q", "prec": "p/q", "coeffs": ["p/q", ...]}, dense
/// on the 1/N grid from lead up to prec.
nlohmann::json to_json(const QSeries& f);
/// Throws InvalidArgument on malformed input.
QSeries qseries_from_json(const nlohmann::json& j);

/// {name, c, l, lambda_min, c_tilde, module_count, modules: [{weight, dims}], flags}.
nlohmann::json to_json(const Theory& t, bool include_modules = true);

nlohmann::json to_json(const GrowthReport& g);
nlohmann::json to_json(const SMatrixEstimate& s);

}  // namespace voachar
