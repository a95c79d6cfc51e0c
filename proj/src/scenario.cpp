#include "beliefd/scenario.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "beliefd/errors.hpp"
#include "beliefd/moments.hpp"

namespace beliefd {

using nlohmann::json;

BiasFunction BiasFunction::affine(double intercept, double slope, const std::vector<double>& states) {
  BiasFunction b;
  b.from_affine = true;
  b.affine_intercept = intercept;
  b.affine_slope = slope;
  b.values.reserve(states.size());
  for (double th : states) b.values.push_back(intercept + slope * th);
  return b;
}

Scenario::Scenario(std::vector<double> states, JointDistribution joint, BiasFunction bias)
    : states_(std::move(states)), joint_(std::move(joint)), bias_(std::move(bias)) {
  const std::size_t n = states_.size();
  if (n < 2) throw non_monotone_states("need at least 2 states");
  if (joint_.states() != n) throw shape_mismatch("joint rows != number of states");
  if (joint_.signals() < 2) throw unordered_signals("need at least 2 signals");
  if (bias_.values.size() != n) throw non_monotone_bias("bias table length != number of states");

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(states_[i] < states_[i + 1]))
      throw non_monotone_states("states must be strictly increasing (index " + std::to_string(i) +
                                ")");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(bias_.values[i] < bias_.values[i + 1]))
      throw non_monotone_bias("bias must be strictly increasing (index " + std::to_string(i) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < joint_.signals(); ++j)
      if (joint_(i, j) <= 1e-12)
        throw zero_entry("f(" + std::to_string(i) + "," + std::to_string(j) +
                         ") is zero or below 1e-12; full support required");

  std::vector<double> pm(joint_.signals());
  for (std::size_t j = 0; j < joint_.signals(); ++j)
    pm[j] = conditional_mean(joint_, states_, j);
  for (std::size_t j = 0; j + 1 < pm.size(); ++j)
    if (!(pm[j] < pm[j + 1] - 1e-12))
      throw unordered_signals("posterior means not strictly increasing between signals " +
                              std::to_string(j) + " and " + std::to_string(j + 1));
}

namespace {

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw parse_error("input is not valid JSON");
  if (!doc.is_object()) throw parse_error("top-level document must be an object");
  return doc;
}

std::vector<double> require_number_array(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw parse_error("missing key '" + key + "'");
  const json& a = doc.at(key);
  if (!a.is_array() || a.empty()) throw parse_error("key '" + key + "' must be a nonempty array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw parse_error("key '" + key + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

BiasFunction parse_bias(const json& doc, const std::vector<double>& states) {
  if (!doc.contains("bias")) throw parse_error("missing key 'bias'");
  const json& b = doc.at("bias");
  if (b.is_object() && b.contains("table")) {
    return BiasFunction::table(require_number_array(b, "table"));
  }
  if (b.is_object() && b.contains("affine")) {
    const json& a = b.at("affine");
    if (!a.is_object() || !a.contains("intercept") || !a.contains("slope") ||
        !a.at("intercept").is_number() || !a.at("slope").is_number())
      throw parse_error("key 'bias.affine' must be {\"intercept\": a, \"slope\": b}");
    double slope = a.at("slope").get<double>();
    if (!(slope > 0)) throw non_monotone_bias("affine bias slope must be positive");
    return BiasFunction::affine(a.at("intercept").get<double>(), slope, states);
  }
  throw parse_error("key 'bias' must be {\"table\": [...]} or {\"affine\": {...}}");
}

ValidatedScenario validate_scenario(const std::string& json_text, bool relabel_signals) {
  json doc = parse_document(json_text);

  std::vector<double> states = require_number_array(doc, "states");
  if (states.size() < 2) throw non_monotone_states("key 'states' needs at least 2 entries");

  if (!doc.contains("joint")) throw parse_error("missing key 'joint'");
  const json& jm = doc.at("joint");
  if (!jm.is_array() || jm.size() != states.size())
    throw parse_error("key 'joint' must be an array with one row per state");
  std::vector<std::vector<double>> rows;
  std::size_t m = 0;
  for (const auto& r : jm) {
    if (!r.is_array() || (m != 0 && r.size() != m) || (m == 0 && r.size() < 2))
      throw parse_error("key 'joint' rows must be equal-length arrays of at least 2 numbers");
    m = r.size();
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw parse_error("key 'joint' must contain only numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }

  // State order must be checked before posterior means are computed, or a
  // bad state grid would surface as a misleading signal-ordering error.
  for (std::size_t i = 0; i + 1 < states.size(); ++i)
    if (!(states[i] < states[i + 1]))
      throw non_monotone_states("states must be strictly increasing (index " +
                                std::to_string(i) + ")");

  BiasFunction bias = parse_bias(doc, states);

  Matrix probs = Matrix::from_rows(rows);
  JointDistribution joint(probs);

  // Posterior-mean ordering of columns; relabel if allowed.
  std::optional<std::vector<std::size_t>> perm;
  std::vector<double> pm(m);
  for (std::size_t j = 0; j < m; ++j) pm[j] = conditional_mean(joint, states, j);
  bool ordered = true;
  for (std::size_t j = 0; j + 1 < m; ++j)
    if (!(pm[j] < pm[j + 1] - 1e-12)) ordered = false;
  if (!ordered) {
    if (!relabel_signals)
      throw unordered_signals(
          "signal columns are not ordered by posterior mean (enable relabeling to permute)");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pm[a] < pm[b]; });
    Matrix permuted(probs.rows(), m);
    for (std::size_t i = 0; i < probs.rows(); ++i)
      for (std::size_t j = 0; j < m; ++j) permuted(i, j) = probs(i, order[j]);
    joint = JointDistribution(permuted);
    perm = order;
  }

  return ValidatedScenario{Scenario(std::move(states), std::move(joint), std::move(bias)),
                           std::move(perm)};
}

std::string scenario_to_json(const Scenario& sc, bool pretty) {
  json doc;
  doc["states"] = sc.states();
  json rows = json::array();
  for (std::size_t i = 0; i < sc.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < sc.m(); ++j) row.push_back(sc.joint()(i, j));
    rows.push_back(std::move(row));
  }
  doc["joint"] = std::move(rows);
  if (sc.bias().from_affine) {
    doc["bias"] = {{"affine", {{"intercept", sc.bias().affine_intercept},
                               {"slope", sc.bias().affine_slope}}}};
  } else {
    doc["bias"] = {{"table", sc.bias().values}};
  }
  return pretty ? doc.dump(2) : doc.dump();
}

std::string scenario_hash(const Scenario& sc) {
  const std::string canonical = scenario_to_json(sc, false);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace beliefd
