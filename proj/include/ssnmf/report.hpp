#pragma once

#include <json.hpp>

#include "ssnmf/solver.hpp"

namespace ssnmf {

using Json = nlohmann::ordered_json;

Json config_to_json(const SsnmfConfig& config);
/// Reads the keys written by config_to_json; missing keys keep `base` values.
SsnmfConfig config_from_json(const Json& j, SsnmfConfig base = {});

/// variant, config echo, objective_trace, relative_error, iterations_run.
Json fit_result_to_json(ModelVariant variant, const SsnmfConfig& config,
                        const FitResult& result);

} // namespace ssnmf
