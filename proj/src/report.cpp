#include "ssnmf/report.hpp"

#include <cmath>

#include "ssnmf/errors.hpp"

namespace ssnmf {

Json config_to_json(const SsnmfConfig& config) {
  Json j;
  j["rank"] = config.rank;
  j["lambda"] = config.lambda;
  j["max_iters"] = config.max_iters;
  j["tol"] = config.tol;
  j["eps"] = config.eps;
  j["seed"] = config.seed;
  return j;
}

SsnmfConfig config_from_json(const Json& j, SsnmfConfig base) {
  try {
    base.rank = j.value("rank", base.rank);
    base.lambda = j.value("lambda", base.lambda);
    base.max_iters = j.value("max_iters", base.max_iters);
    base.tol = j.value("tol", base.tol);
    base.eps = j.value("eps", base.eps);
    base.seed = j.value("seed", base.seed);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad solver config: ") + e.what());
  }
  return base;
}

Json fit_result_to_json(ModelVariant variant, const SsnmfConfig& config,
                        const FitResult& result) {
  Json j;
  j["variant"] = variant.code();
  j["variant_name"] = variant.name();
  j["config"] = config_to_json(config);
  Json trace = Json::array();
  for (double v : result.objective_trace) {
    // JSON has no infinity; keep the entry as null.
    if (std::isfinite(v)) trace.push_back(v);
    else trace.push_back(nullptr);
  }
  j["objective_trace"] = std::move(trace);
  j["relative_error"] = result.relative_error;
  j["iterations_run"] = result.iterations_run;
  return j;
}

} // namespace ssnmf
