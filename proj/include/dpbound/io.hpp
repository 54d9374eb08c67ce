#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dpbound/bandit.hpp"
#include "dpbound/measures.hpp"
#include "dpbound/sums.hpp"

namespace dpbound::io {

/// Malformed or invalid user input (bad JSON, schema violation, failed
/// validation of a measure or instance).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json_file(const std::string& path);

/// {"atoms":[{"value":0.0,"weight":0.5},...]}; weights are renormalized.
WeightedValues measure_from_json(const nlohmann::json& j);
/// Canonical form; doubles are written with round-trip precision.
nlohmann::json measure_to_json(const WeightedValues& m);

/// {"alpha":4.0,"atoms":[...]}
DPSpec dpspec_from_json(const nlohmann::json& j);

/// {"components":[{"alpha":4.0,"atoms":[...]},...]}
SumSpec sumspec_from_json(const nlohmann::json& j);

/// {"n":4,"m":2,"block_means":[0.9,0.6]}
bandit::Instance instance_from_json(const nlohmann::json& j);

}  // namespace dpbound::io
