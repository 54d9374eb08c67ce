#include "dpbound/io.hpp"

#include <fstream>
#include <sstream>

namespace dpbound::io {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

// Rethrows validation failures of the domain constructors as input errors.
template <class F>
auto validated(F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

WeightedValues measure_from_json(const json& j) {
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw InputError("'atoms' must be an array");
  std::vector<Atom> raw;
  raw.reserve(atoms.size());
  for (const auto& a : atoms)
    raw.push_back({number(field(a, "value"), "atom value"), number(field(a, "weight"), "atom weight")});
  return validated([&] { return WeightedValues::canonicalize(std::move(raw)); });
}

json measure_to_json(const WeightedValues& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"value", a.value}, {"weight", a.weight}});
  return {{"atoms", atoms}};
}

DPSpec dpspec_from_json(const json& j) {
  double alpha = number(field(j, "alpha"), "alpha");
  auto base = measure_from_json(j);
  return validated([&] { return DPSpec(alpha, std::move(base)); });
}

SumSpec sumspec_from_json(const json& j) {
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw InputError("'components' must be an array");
  std::vector<DPSpec> parts;
  for (const auto& c : comps) parts.push_back(dpspec_from_json(c));
  return validated([&] { return SumSpec(std::move(parts)); });
}

bandit::Instance instance_from_json(const json& j) {
  int n = integer(field(j, "n"), "n");
  int m = integer(field(j, "m"), "m");
  const json& means = field(j, "block_means");
  if (!means.is_array()) throw InputError("'block_means' must be an array");
  std::vector<double> p;
  for (const auto& x : means) p.push_back(number(x, "block mean"));
  return validated([&] { return bandit::Instance(n, m, std::move(p)); });
}

}  // namespace dpbound::io
