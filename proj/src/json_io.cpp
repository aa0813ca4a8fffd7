#include "weylchar/json_io.hpp"

#include <algorithm>
#include <utility>

namespace weylchar::json_io {

json rational(const Rational& q) { return to_fraction_string(q); }

json big(const BigInt& n) { return n.get_str(); }

json complex(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json partition(const Partition& p) { return p.parts(); }

json signature(const Signature& s) { return {{"d", s.d()}, {"entries", s.entries()}}; }

Partition parse_partition(const json& j) {
  try {
    return Partition(j.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("partition: ") + e.what());
  }
}

Signature parse_signature(const json& j) {
  try {
    Signature s(j.at("entries").get<std::vector<int>>());
    if (j.contains("d") && j.at("d").get<int>() != s.d()) throw PreconditionError("signature: d does not match entries");
    return s;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("signature: ") + e.what());
  }
}

json power_sums(const PowerSumExpansion& e) {
  json out = json::object();
  for (const auto& [rho, c] : e.coefficients) {
    std::string key;
    for (int part : rho.parts()) key += (key.empty() ? "" : ",") + std::to_string(part);
    out[key] = rational(c);
  }
  return out;
}

json tensor(const std::vector<TensorComponent>& components) {
  json out = json::array();
  for (const auto& c : components) out.push_back({{"signature", signature(c.sig)}, {"multiplicity", big(c.multiplicity)}});
  return out;
}

json restriction(const BlockDecomposition& decomposition) {
  json out = json::array();
  for (const auto& c : decomposition.components) {
    out.push_back({{"signature", {signature(c.left), signature(c.right)}}, {"multiplicity", big(c.multiplicity)}});
  }
  return out;
}

json distribution(const WeightDistribution& dist) {
  json out = json::object();
  for (const auto& [k, p] : dist.probs) out[std::to_string(k)] = rational(p);
  return out;
}

json monte_carlo(const MonteCarloResult& result) {
  return {{"estimate", complex(result.estimate)},
          {"stderr", {{"re", result.stderr_re}, {"im", result.stderr_im}}},
          {"samples", result.samples},
          {"seed", result.seed}};
}

json poisson_report(const PoissonReport& report) {
  return {{"value", report.value}, {"bound", report.bound}, {"truncation", report.truncation}, {"passed", report.passed}};
}

json diagram(const BratteliDiagram& d) {
  return {{"name", d.name}, {"levels", d.levels}, {"multiplicities", d.multiplicities}};
}

BratteliDiagram parse_diagram(const json& j) {
  BratteliDiagram d;
  try {
    d.name = j.value("name", std::string("custom"));
    d.levels = j.at("levels").get<std::vector<IntVector>>();
    d.multiplicities = j.at("multiplicities").get<std::vector<IntMatrix>>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("diagram: ") + e.what());
  }
  if (d.levels.empty()) throw PreconditionError("diagram: no levels");
  d.kind = DiagramKind::Custom;
  return d;
}

}  // namespace weylchar::json_io
