#include <doctest.h>

#include <random>

#include "weylchar/afalgebra.hpp"
#include "weylchar/symfunc.hpp"

using namespace weylchar;

namespace {

BlockUnitary random_block_unitary(std::mt19937_64& rng, const BratteliDiagram& d, int level) {
  std::uniform_int_distribution<int> num(0, 23);
  BlockUnitary u;
  u.level = level;
  for (auto size : d.levels[level]) {
    std::vector<Rational> turns;
    for (std::int64_t k = 0; k < size; ++k) turns.emplace_back(num(rng), 24);
    for (auto& t : turns) t.canonicalize();
    u.blocks.emplace_back(turns);
  }
  return u;
}

Rational exact_trace(const BlockUnitary& u, const TraceWeights& w, double theta) {
  // Only used for presets with rational weights (theta unused).
  (void)theta;
  Rational total = 0;
  for (std::size_t i = 0; i < u.blocks.size(); ++i) total += w.levels[u.level][i].c0 * u.blocks[i].d();
  return total;
}

}  // namespace

TEST_CASE("presets validate") {
  const auto car = make_preset("car", 6);
  const auto r = validate_diagram(car);
  CHECK(r.valid);
  for (int n = 0; n <= 6; ++n) CHECK(r.min_block[n] == (std::int64_t{1} << n));
  CHECK(r.min_block_nondecreasing);
  for (const char* name : {"effros-shen", "effros-shen:1,2", "uhf:2,3", "gicar-excluded"}) {
    CAPTURE(name);
    CHECK(validate_diagram(make_preset(name, 5)).valid);
  }
  CHECK_FALSE(make_preset("gicar-excluded", 3).simple);
  CHECK(make_preset("effros-shen", 3).simple);
  CHECK_THROWS_AS(make_preset("nope", 3), PreconditionError);
  CHECK_THROWS_AS(make_preset("uhf:1", 3), PreconditionError);
}

TEST_CASE("Effros-Shen levels follow the continued fraction") {
  const auto d = make_preset("effros-shen", 6);
  // Golden mean: block sizes are consecutive Fibonacci numbers.
  CHECK(d.levels[6] == IntVector{13, 8});
  const auto report = validate_diagram(d);
  for (int n = 0; n + 2 <= d.depth(); ++n) CHECK(report.primitivity_lag[n] >= 1);
}

TEST_CASE("validation catches malformed diagrams") {
  BratteliDiagram bad;
  bad.name = "bad";
  bad.levels = {{1}, {3}};
  bad.multiplicities = {{{2}}};
  const auto r = validate_diagram(bad);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.errors.empty());
  BratteliDiagram zero_row;
  zero_row.levels = {{1}, {1, 0}};
  zero_row.multiplicities = {{{1}, {0}}};
  CHECK_FALSE(validate_diagram(zero_row).valid);
}

TEST_CASE("preset traces") {
  const auto car = make_preset("car", 6);
  const auto t = trace_weights(car);
  for (int n = 0; n <= 6; ++n) CHECK(t.levels[n][0] == ThetaLinear{Rational(1, 1 << n), 0});
  CHECK(t.compatibility_residual == 0);

  const auto es = make_preset("effros-shen", 8);
  const auto te = trace_weights(es);
  CHECK(te.theta == doctest::Approx((std::sqrt(5.0) - 1) / 2));
  for (int n = 0; n <= 8; ++n) {
    CHECK(te.normalization(es, n) == ThetaLinear{1, 0});
    for (int i = 0; i < es.blocks(n); ++i) CHECK(te.value(n, i) > 0);
  }
  CHECK(te.compatibility_residual < 1e-15);

  const auto uhf = make_preset("uhf:3", 4);
  const auto tu = trace_weights(uhf);
  for (int n = 0; n <= 4; ++n) CHECK(tu.value(n, 0) == doctest::Approx(std::pow(3.0, -n)));

  const auto pascal = make_preset("gicar-excluded", 5);
  TraceOptions o;
  o.pascal_parameter = Rational(1, 3);
  const auto tp = trace_weights(pascal, o);
  for (int n = 0; n <= 5; ++n) CHECK(tp.normalization(pascal, n) == ThetaLinear{1, 0});
  CHECK(tp.compatibility_residual == 0);
}

TEST_CASE("Effros-Shen theta") {
  CHECK(effros_shen_theta({1}) == doctest::Approx((std::sqrt(5.0) - 1) / 2));
  CHECK(effros_shen_theta({2}) == doctest::Approx(std::sqrt(2.0) - 1));
}

TEST_CASE("backward substitution on a custom diagram") {
  BratteliDiagram d;
  d.name = "custom-uhf";
  d.levels = {{1}};
  for (int n = 0; n < 12; ++n) {
    d.multiplicities.push_back({{2}});
    d.levels.push_back({d.levels.back()[0] * 2});
  }
  const auto t = trace_weights(d);
  CHECK(t.method == "backward");
  for (int n = 0; n <= 12; ++n) CHECK(t.value(n, 0) == doctest::Approx(std::pow(0.5, n)));

  // M = [[1,1],[0,1]]: pulled-back weights at level 0 are (1, N+1)/(N+2), which settle only like 1/N^2.
  BratteliDiagram drift;
  drift.name = "drift";
  drift.levels = {{1, 1}};
  for (int n = 0; n < 8; ++n) {
    drift.multiplicities.push_back({{1, 1}, {0, 1}});
    drift.levels.push_back({drift.levels.back()[0] + drift.levels.back()[1], 1});
  }
  CHECK_THROWS_AS(trace_weights(drift), NonConvergence);
  TraceOptions loose;
  loose.tolerance = 0.1;
  const auto td = trace_weights(drift, loose);
  CHECK(td.convergence_residual > 0);
  CHECK(td.value(0, 0) == doctest::Approx(1.0 / 10));
}

TEST_CASE("K0 homomorphisms") {
  const auto car = make_preset("car", 6);
  CHECK_THROWS_AS(lift_k0hom(car, 1, {BigInt(1)}), PreconditionError);
  CHECK_THROWS_AS(lift_k0hom(car, 0, {BigInt(-3)}), PreconditionError);
  const auto zero = lift_k0hom(car, 0, {BigInt(0)});
  CHECK(zero.is_compatible(car));

  const auto es = make_preset("effros-shen", 6);
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const auto phi = lift_k0hom(es, 1, {BigInt(a), BigInt(b)});
      CHECK(phi.is_compatible(es));
      CHECK(phi.levels[1] == std::vector<BigInt>{a, b});
    }
  }
}

TEST_CASE("integer systems") {
  const std::vector<std::vector<BigInt>> a{{2, 4}, {6, 8}};
  auto x = solve_integer_system(a, {BigInt(2), BigInt(2)});
  REQUIRE(x.has_value());
  CHECK(2 * (*x)[0] + 4 * (*x)[1] == 2);
  CHECK(6 * (*x)[0] + 8 * (*x)[1] == 2);
  CHECK_FALSE(solve_integer_system({{BigInt(2)}}, {BigInt(1)}).has_value());
}

TEST_CASE("det_phi") {
  const auto es = make_preset("effros-shen", 6);
  const auto phi = lift_k0hom(es, 1, {BigInt(1), BigInt(0)});
  // z e + (1 - e) with e a minimal projection of block 0 at level 1.
  BlockUnitary u = identity_unitary(es, 1);
  u.blocks[0] = DiagonalUnitary(std::vector<Rational>{Rational(1, 5)});
  CHECK(det_phi_turns(u, phi) == Rational(1, 5));
  for (int m = 1; m <= 6; ++m) CHECK(det_phi_turns(embed(u, es, m), phi) == Rational(1, 5));

  std::mt19937_64 rng(3);
  const auto phi2 = lift_k0hom(es, 2, {BigInt(2), BigInt(-3)});
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_block_unitary(rng, es, 2);
    const auto w = random_block_unitary(rng, es, 2);
    Rational sum = det_phi_turns(v, phi2) + det_phi_turns(w, phi2);
    sum -= Rational(BigInt(sum.get_num() / sum.get_den()));
    if (sum < 0) sum += 1;
    CHECK(det_phi_turns(multiply(v, w), phi2) == sum);
    CHECK(det_phi_turns(embed(v, es, 5), phi2) == det_phi_turns(v, phi2));
  }
  CHECK(det_phi(identity_unitary(es, 3), K0Hom::zero(es)) == Complex(1, 0));
}

TEST_CASE("embedding") {
  const auto car = make_preset("car", 4);
  BlockUnitary u;
  u.level = 1;
  u.blocks.emplace_back(std::vector<Rational>{Rational(1, 4), 0});
  const auto v = embed(u, car, 2);
  REQUIRE(v.blocks.size() == 1);
  auto turns = v.blocks[0].turns();
  std::sort(turns.begin(), turns.end());
  CHECK(turns == std::vector<Rational>{0, 0, Rational(1, 4), Rational(1, 4)});
  const auto t = trace_weights(car);
  CHECK(std::abs(trace_of(u, t) - Complex(0.5, 0.5)) < 1e-14);
  CHECK(std::abs(trace_of(v, t) - Complex(0.5, 0.5)) < 1e-14);

  const auto id = embed(identity_unitary(car, 1), car, 4);
  for (const auto& x : id.blocks[0].turns()) CHECK(x == 0);

  BratteliDiagram merge;
  merge.levels = {{1, 2}, {3}};
  merge.multiplicities = {{{1, 1}}};
  BlockUnitary w;
  w.level = 0;
  w.blocks.emplace_back(std::vector<Rational>{Rational(1, 3)});
  w.blocks.emplace_back(std::vector<Rational>{Rational(1, 2), Rational(1, 5)});
  CHECK(embed(w, merge, 1).blocks[0].turns() == std::vector<Rational>{Rational(1, 3), Rational(1, 2), Rational(1, 5)});
}

TEST_CASE("embedding preserves traces on every preset") {
  std::mt19937_64 rng(9);
  for (const char* name : {"car", "uhf:2,3", "effros-shen", "effros-shen:2,1", "gicar-excluded"}) {
    CAPTURE(name);
    const auto d = make_preset(name, 5);
    const auto t = trace_weights(d);
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_block_unitary(rng, d, 2);
      const Complex base = trace_of(u, t);
      for (int m = 2; m <= 5; ++m) CHECK(std::abs(trace_of(embed(u, d, m), t) - base) < 1e-12);
    }
  }
}

TEST_CASE("normalized block traces transform through the multiplicities") {
  std::mt19937_64 rng(10);
  const auto d = make_preset("effros-shen:2,1", 5);
  const auto u = random_block_unitary(rng, d, 2);
  const auto v = embed(u, d, 3);
  const auto& m = d.multiplicities[2];
  for (std::size_t j = 0; j < v.blocks.size(); ++j) {
    Complex expected{};
    for (std::size_t i = 0; i < u.blocks.size(); ++i) {
      const double weight = static_cast<double>(m[j][i] * d.levels[2][i]) / static_cast<double>(d.levels[3][j]);
      expected += weight * u.blocks[i].trace() / static_cast<double>(u.blocks[i].d());
    }
    CHECK(std::abs(v.blocks[j].trace() / static_cast<double>(v.blocks[j].d()) - expected) < 1e-12);
  }
  (void)exact_trace;
}

TEST_CASE("limit characters") {
  const auto car = make_preset("car", 4);
  const auto t = trace_weights(car);
  BlockUnitary u;
  u.level = 1;
  u.blocks.emplace_back(std::vector<Rational>{Rational(1, 4), 0});
  LimitCharacterSpec p1;
  p1.pos_traces.emplace_back(t, 1);
  CHECK(std::abs(eval_limit_character(p1, u) - Complex(0.5, 0.5)) < 1e-14);
  CHECK(std::abs(eval_limit_character(LimitCharacterSpec{}, u) - 1.0) < 1e-14);
  LimitCharacterSpec pq = p1;
  pq.neg_traces.emplace_back(t, 1);
  CHECK(std::abs(eval_limit_character(pq, u) - 0.5) < 1e-14);
  pq.phi = K0Hom::zero(car);
  CHECK(std::abs(eval_limit_character(pq, u) - 0.5) < 1e-14);
}

TEST_CASE("ergodic sequences on CAR") {
  const auto car = make_preset("car", 6);
  BlockUnitary u;
  u.level = 1;
  u.blocks.emplace_back(std::vector<Rational>{Rational(1, 4), 0});

  const auto defining = ergodic_sequence(Partition{1}, Partition{}, car, u, 6);
  for (const auto& p : defining.points) CHECK(std::abs(p.value - Complex(0.5, 0.5)) < 1e-12);
  CHECK(std::abs(defining.limit - Complex(0.5, 0.5)) < 1e-14);

  const auto trivial = ergodic_sequence(Partition{}, Partition{}, car, u, 6);
  for (const auto& p : trivial.points) CHECK(std::abs(p.value - 1.0) < 1e-12);

  const auto adj = ergodic_sequence(Partition{1}, Partition{1}, car, u, 6);
  REQUIRE(adj.points.size() == 6);
  for (const auto& p : adj.points) {
    const double d = static_cast<double>(p.d);
    CHECK(std::abs(p.value - ((d * d / 2 - 1) / (d * d - 1))) < 1e-12);
  }
  CHECK(std::abs(adj.limit - 0.5) < 1e-14);
  REQUIRE(adj.rate_exponent.has_value());
  CHECK(*adj.rate_exponent > 1.8);
  CHECK(*adj.rate_exponent < 2.2);
}

TEST_CASE("ergodic errors decay at least like 1/d for |lambda|, |mu| <= 2 on CAR") {
  const auto car = make_preset("car", 6);
  BlockUnitary u;
  u.level = 2;
  u.blocks.emplace_back(std::vector<Rational>{Rational(1, 4), Rational(1, 3), 0, Rational(7, 8)});
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (const auto& lambda : partitions_of(a)) {
        for (const auto& mu : partitions_of(b)) {
          const auto r = ergodic_sequence(lambda, mu, car, u, 6);
          double c_first = -1;
          for (const auto& p : r.points) {
            const double c = p.error * static_cast<double>(p.d);
            if (c_first < 0) c_first = c;
            CHECK(c <= 2 * c_first + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("Schur-Weyl defect") {
  for (int n = 1; n <= 6; ++n) {
    Rational expected(1, BigInt(1) << (2 * n));
    CHECK(schur_weyl_defect(n, 1, 1) == expected);
  }
  for (int n = 0; n <= 4; ++n) CHECK(schur_weyl_defect(n, 1, 0) == 0);
  CHECK(schur_weyl_defect(2, 2, 0) == 0);
  CHECK_THROWS_AS(schur_weyl_defect(3, 0, 0), PreconditionError);
  CHECK_THROWS_AS(schur_weyl_defect(1, 2, 1), PreconditionError);
}

TEST_CASE("Schur-Weyl defect matches the tensor decomposition of V x V x V*") {
  // Components with |lambda| < 2 come from contractions and lie outside the isotypic projection.
  const int d = 4;
  const auto vv = tensor_decompose(Signature{1, 0, 0, 0}, Signature{1, 0, 0, 0});
  BigInt outside = 0;
  for (const auto& c : vv) {
    for (const auto& e : tensor_decompose(c.sig, Signature{0, 0, 0, -1})) {
      if (signature_to_pair(e.sig).lambda.size() < 2) outside += c.multiplicity * e.multiplicity * weyl_dim(e.sig);
    }
  }
  Rational expected(outside, BigInt(d * d * d));
  expected.canonicalize();
  CHECK(schur_weyl_defect(2, 2, 1) == expected);
}
