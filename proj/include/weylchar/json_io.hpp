// JSON encodings shared by the CLI and tests. Exact rationals are emitted as
// "num/den" strings and big integers as decimal strings.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "weylchar/afalgebra.hpp"
#include "weylchar/combinatorics.hpp"
#include "weylchar/moments.hpp"
#include "weylchar/poisson.hpp"
#include "weylchar/symfunc.hpp"
#include "weylchar/ucharacters.hpp"

namespace weylchar::json_io {

using nlohmann::json;

json rational(const Rational& q);
json big(const BigInt& n);
/// {"re": x, "im": y}
json complex(const Complex& z);

json partition(const Partition& p);
json signature(const Signature& s);
Partition parse_partition(const json& j);
Signature parse_signature(const json& j);

/// {"2,1,1": "num/den", ...}
json power_sums(const PowerSumExpansion& e);

json tensor(const std::vector<TensorComponent>& components);
json restriction(const BlockDecomposition& decomposition);

/// {"k": "num/den", ...}
json distribution(const WeightDistribution& dist);

/// {estimate, stderr, samples, seed}
json monte_carlo(const MonteCarloResult& result);

/// {value, bound, truncation, passed}
json poisson_report(const PoissonReport& report);

json diagram(const BratteliDiagram& d);
/// Schema {"levels", "multiplicities", "name"}; throws PreconditionError on malformed input.
BratteliDiagram parse_diagram(const json& j);

}  // namespace weylchar::json_io
