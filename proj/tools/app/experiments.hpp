// experiments.hpp - one runner per module. prepare_* parses and validates the
// parameters (throwing before anything runs); the returned job does the work.
#pragma once

#include <functional>
#include <string>

#include "app/common.hpp"

namespace hardylab::app {

struct Outcome {
  CheckList checks;
  json results = json::object();
};

using Job = std::function<void(Context&, Outcome&)>;

Job prepare_evolve(const json& params);
Job prepare_convexity(const json& params);
Job prepare_appell(const json& params);
Job prepare_carleman(const json& params);
Job prepare_counterexample(const json& params);
Job prepare_hardy(const json& params);

// Dispatches on kind; throws ConfigError for an unknown kind.
Job prepare_module(const std::string& kind, const json& params);

}  // namespace hardylab::app
