#include "weylchar/afalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weylchar/symfunc.hpp"

namespace weylchar {

namespace {

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t sum = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum)) {
    throw BudgetExceeded("block dimension overflows 64 bits; reduce the diagram depth");
  }
  return sum;
}

IntVector multiply_vector(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t i = 0; i < v.size(); ++i) out[j] = checked_mul_add(out[j], m[j][i], v[i]);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw PreconditionError("malformed integer '" + item + "' in preset parameters");
    }
    if (used != item.size()) throw PreconditionError("malformed integer '" + item + "' in preset parameters");
    out.push_back(value);
  }
  return out;
}

/// Builds levels from level 0 = (1) and the given matrices.
void fill_levels(BratteliDiagram& d, IntVector top) {
  d.levels.clear();
  d.levels.push_back(std::move(top));
  for (const auto& m : d.multiplicities) d.levels.push_back(multiply_vector(m, d.levels.back()));
}

int cycled(const std::vector<int>& terms, int index) { return terms[static_cast<std::size_t>(index) % terms.size()]; }

}  // namespace

// ---------------------------------------------------------------- presets and validation

BratteliDiagram make_preset(const std::string& name, int depth) {
  if (depth < 0) throw PreconditionError("diagram depth must be nonnegative");
  BratteliDiagram d;
  d.name = name;
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : name.substr(colon + 1);

  if (head == "car" && tail.empty()) {
    d.kind = DiagramKind::Car;
    d.parameters = {2};
  } else if (head == "uhf") {
    d.kind = DiagramKind::Uhf;
    d.parameters = parse_int_list(tail);
    if (d.parameters.empty()) throw PreconditionError("uhf preset needs factors, e.g. uhf:2,3");
    for (int k : d.parameters) {
      if (k < 2) throw PreconditionError("uhf factors must be >= 2");
    }
  } else if (head == "effros-shen") {
    d.kind = DiagramKind::EffrosShen;
    d.parameters = tail.empty() ? std::vector<int>{1} : parse_int_list(tail);
    if (d.parameters.empty()) throw PreconditionError("effros-shen preset needs continued fraction terms");
    for (int a : d.parameters) {
      if (a < 1) throw PreconditionError("continued fraction terms must be >= 1");
    }
  } else if (head == "gicar-excluded" && tail.empty()) {
    d.kind = DiagramKind::Gicar;
    d.simple = false;
  } else {
    throw PreconditionError("unknown diagram preset '" + name + "'");
  }

  for (int n = 0; n < depth; ++n) {
    switch (d.kind) {
      case DiagramKind::Car:
      case DiagramKind::Uhf:
        d.multiplicities.push_back({{cycled(d.parameters, n)}});
        break;
      case DiagramKind::EffrosShen:
        if (n == 0) {
          d.multiplicities.push_back({{d.parameters[0]}, {1}});
        } else {
          d.multiplicities.push_back({{cycled(d.parameters, n), 1}, {1, 0}});
        }
        break;
      case DiagramKind::Gicar: {
        IntMatrix m(static_cast<std::size_t>(n) + 2, IntVector(static_cast<std::size_t>(n) + 1, 0));
        for (int k = 0; k <= n; ++k) {
          m[k][k] = 1;
          m[k + 1][k] = 1;
        }
        d.multiplicities.push_back(std::move(m));
        break;
      }
      case DiagramKind::Custom: break;
    }
  }
  fill_levels(d, {1});
  return d;
}

DiagramReport validate_diagram(const BratteliDiagram& diagram) {
  DiagramReport report;
  auto fail = [&](const std::string& msg) {
    report.valid = false;
    report.errors.push_back(msg);
  };
  if (diagram.levels.empty()) {
    fail("diagram has no levels");
    return report;
  }
  if (diagram.multiplicities.size() + 1 != diagram.levels.size()) {
    fail("expected " + std::to_string(diagram.levels.size() - 1) + " multiplicity matrices, got " +
         std::to_string(diagram.multiplicities.size()));
    return report;
  }
  for (std::size_t n = 0; n < diagram.levels.size(); ++n) {
    const auto& level = diagram.levels[n];
    if (level.empty()) fail("level " + std::to_string(n) + " has no blocks");
    for (auto x : level) {
      if (x < 1) fail("level " + std::to_string(n) + " has a block of dimension " + std::to_string(x));
    }
    report.min_block.push_back(level.empty() ? 0 : *std::min_element(level.begin(), level.end()));
  }
  for (std::size_t n = 0; n + 1 < diagram.levels.size(); ++n) {
    const auto& m = diagram.multiplicities[n];
    const std::string where = "M_" + std::to_string(n);
    if (m.size() != diagram.levels[n + 1].size()) {
      fail(where + " has " + std::to_string(m.size()) + " rows but level " + std::to_string(n + 1) + " has " +
           std::to_string(diagram.levels[n + 1].size()) + " blocks");
      continue;
    }
    bool shape_ok = true;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j].size() != diagram.levels[n].size()) {
        fail(where + " row " + std::to_string(j) + " has the wrong number of columns");
        shape_ok = false;
        continue;
      }
      bool zero_row = true;
      for (auto x : m[j]) {
        if (x < 0) fail(where + " has a negative entry");
        if (x != 0) zero_row = false;
      }
      if (zero_row) fail(where + " row " + std::to_string(j) + " is zero");
    }
    if (!shape_ok) continue;
    try {
      if (multiply_vector(m, diagram.levels[n]) != diagram.levels[n + 1]) {
        fail("d_" + std::to_string(n + 1) + " != M_" + std::to_string(n) + " d_" + std::to_string(n));
      }
    } catch (const BudgetExceeded& e) {
      fail(e.what());
    }
  }
  for (std::size_t n = 1; n < report.min_block.size(); ++n) {
    if (report.min_block[n] < report.min_block[n - 1]) report.min_block_nondecreasing = false;
  }
  if (!report.valid) return report;

  for (int n = 0; n <= diagram.depth(); ++n) {
    // Track the support pattern of M_{n+k-1} ... M_n.
    std::vector<std::vector<bool>> support;
    int lag = -1;
    for (int k = 1; n + k <= diagram.depth(); ++k) {
      const auto& m = diagram.multiplicities[n + k - 1];
      std::vector<std::vector<bool>> next(m.size(), std::vector<bool>(diagram.levels[n].size(), false));
      for (std::size_t j = 0; j < m.size(); ++j) {
        for (std::size_t c = 0; c < diagram.levels[n].size(); ++c) {
          if (k == 1) {
            next[j][c] = m[j][c] != 0;
            continue;
          }
          for (std::size_t i = 0; i < m[j].size(); ++i) {
            if (m[j][i] != 0 && support[i][c]) {
              next[j][c] = true;
              break;
            }
          }
        }
      }
      support = std::move(next);
      bool positive = true;
      for (const auto& row : support) {
        for (bool b : row) positive = positive && b;
      }
      if (positive) {
        lag = k;
        break;
      }
    }
    report.primitivity_lag.push_back(lag);
  }
  return report;
}

// ---------------------------------------------------------------- traces

ThetaLinear& ThetaLinear::operator+=(const ThetaLinear& o) {
  c0 += o.c0;
  c1 += o.c1;
  return *this;
}

ThetaLinear TraceWeights::normalization(const BratteliDiagram& diagram, int n) const {
  ThetaLinear s;
  for (std::size_t i = 0; i < levels.at(n).size(); ++i) {
    s += Rational(static_cast<long>(diagram.levels.at(n)[i])) * levels[n][i];
  }
  return s;
}

double effros_shen_theta(const std::vector<int>& terms) {
  if (terms.empty()) return 0.0;
  // [0; a1, a2, ...] evaluated from a deep truncation.
  double x = 0.0;
  for (int k = 200; k >= 1; --k) x = 1.0 / (cycled(terms, k - 1) + x);
  return x;
}

namespace {

std::vector<ThetaLinear> pull_back(const IntMatrix& m, const std::vector<ThetaLinear>& t) {
  std::vector<ThetaLinear> out(m.empty() ? 0 : m[0].size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t i = 0; i < m[j].size(); ++i) {
      if (m[j][i] != 0) out[i] += Rational(static_cast<long>(m[j][i])) * t[j];
    }
  }
  return out;
}

std::vector<std::vector<ThetaLinear>> backward_from(const BratteliDiagram& diagram, int depth) {
  std::vector<std::vector<ThetaLinear>> levels(static_cast<std::size_t>(depth) + 1);
  std::int64_t total = 0;
  for (auto x : diagram.levels[depth]) total += x;
  levels[depth].assign(diagram.levels[depth].size(), ThetaLinear{Rational(1, total), 0});
  for (auto& t : levels[depth]) t.c0.canonicalize();
  for (int n = depth - 1; n >= 0; --n) levels[n] = pull_back(diagram.multiplicities[n], levels[n + 1]);
  return levels;
}

std::vector<std::vector<ThetaLinear>> preset_weights(const BratteliDiagram& diagram, const TraceOptions& options) {
  std::vector<std::vector<ThetaLinear>> levels;
  switch (diagram.kind) {
    case DiagramKind::Car:
    case DiagramKind::Uhf:
      for (const auto& level : diagram.levels) levels.push_back({ThetaLinear{Rational(1, level[0]), 0}});
      for (auto& l : levels) l[0].c0.canonicalize();
      break;
    case DiagramKind::EffrosShen:
      levels.push_back({ThetaLinear{1, 0}});
      if (diagram.depth() >= 1) levels.push_back({ThetaLinear{0, 1}, ThetaLinear{1, -diagram.parameters[0]}});
      for (int n = 1; n < diagram.depth(); ++n) {
        const auto& t = levels.back();
        const int a = cycled(diagram.parameters, n);
        levels.push_back({t[1], t[0] - Rational(a) * t[1]});
      }
      break;
    case DiagramKind::Gicar: {
      const Rational& s = options.pascal_parameter;
      if (s <= 0 || s >= 1) throw PreconditionError("Pascal trace parameter must lie in (0, 1)");
      for (int n = 0; n <= diagram.depth(); ++n) {
        std::vector<ThetaLinear> level;
        for (int k = 0; k <= n; ++k) {
          level.push_back(ThetaLinear{pow(s, static_cast<unsigned>(k)) * pow(1 - s, static_cast<unsigned>(n - k)), 0});
        }
        levels.push_back(std::move(level));
      }
      break;
    }
    case DiagramKind::Custom: throw PreconditionError("diagram '" + diagram.name + "' has no preset trace");
  }
  return levels;
}

double l1_distance(const std::vector<ThetaLinear>& a, const std::vector<ThetaLinear>& b, double theta) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs((a[i] - b[i]).value(theta));
  return s;
}

}  // namespace

TraceWeights trace_weights(const BratteliDiagram& diagram, const TraceOptions& options) {
  const auto report = validate_diagram(diagram);
  if (!report.valid) throw PreconditionError("invalid diagram: " + report.errors.front());
  TraceWeights out;
  out.theta = diagram.kind == DiagramKind::EffrosShen ? effros_shen_theta(diagram.parameters) : 0.0;
  TraceMethod method = options.method;
  if (method == TraceMethod::Auto) {
    method = diagram.kind == DiagramKind::Custom ? TraceMethod::Backward : TraceMethod::Preset;
  }
  if (method == TraceMethod::Preset) {
    out.levels = preset_weights(diagram, options);
    out.method = "preset";
  } else {
    const int depth = diagram.depth();
    out.levels = backward_from(diagram, depth);
    out.method = "backward";
    if (depth >= 1) {
      const auto coarser = backward_from(diagram, depth - 1);
      for (int n = 0; n <= depth / 2; ++n) {
        out.convergence_residual = std::max(out.convergence_residual, l1_distance(out.levels[n], coarser[n], 0.0));
      }
      if (out.convergence_residual > options.tolerance) {
        throw NonConvergence("backward substitution did not settle: residual " +
                             std::to_string(out.convergence_residual) + " at depth " + std::to_string(depth));
      }
    }
  }
  for (int n = 0; n < diagram.depth(); ++n) {
    const auto pulled = pull_back(diagram.multiplicities[n], out.levels[n + 1]);
    out.compatibility_residual = std::max(out.compatibility_residual, l1_distance(out.levels[n], pulled, out.theta));
  }
  return out;
}

// ---------------------------------------------------------------- K0 homomorphisms

bool K0Hom::is_compatible(const BratteliDiagram& diagram) const {
  if (levels.size() != diagram.levels.size()) return false;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (levels[n].size() != diagram.levels[n].size()) return false;
  }
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    const auto& m = diagram.multiplicities[n];
    for (std::size_t i = 0; i < levels[n].size(); ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < m.size(); ++j) s += BigInt(static_cast<long>(m[j][i])) * levels[n + 1][j];
      if (s != levels[n][i]) return false;
    }
  }
  return true;
}

K0Hom K0Hom::zero(const BratteliDiagram& diagram) {
  K0Hom phi;
  for (const auto& level : diagram.levels) phi.levels.emplace_back(level.size(), BigInt(0));
  return phi;
}

std::optional<std::vector<BigInt>> solve_integer_system(const std::vector<std::vector<BigInt>>& a,
                                                        const std::vector<BigInt>& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  if (b.size() != m) throw PreconditionError("right-hand side has the wrong length");
  auto d = a;
  std::vector<std::vector<BigInt>> u(m, std::vector<BigInt>(m, 0));
  std::vector<std::vector<BigInt>> v(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  auto add_row = [&](std::size_t target, std::size_t source, const BigInt& k) {  // row_t -= k row_s
    for (std::size_t c = 0; c < n; ++c) d[target][c] -= k * d[source][c];
    for (std::size_t c = 0; c < m; ++c) u[target][c] -= k * u[source][c];
  };
  auto add_col = [&](std::size_t target, std::size_t source, const BigInt& k) {
    for (std::size_t r = 0; r < m; ++r) d[r][target] -= k * d[r][source];
    for (std::size_t r = 0; r < n; ++r) v[r][target] -= k * v[r][source];
  };

  std::size_t rank = 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m;
    std::size_t pj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d[i][j] != 0 && (pi == m || abs(d[i][j]) < abs(d[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        add_row(i, t, q);
        if (d[i][t] != 0) {
          swap_rows(i, t);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        add_col(j, t, q);
        if (d[t][j] != 0) {
          swap_cols(j, t);
          clean = false;
        }
      }
    }
    rank = t + 1;
  }

  std::vector<BigInt> c(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) c[i] += u[i][k] * b[k];
  }
  std::vector<BigInt> y(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < rank) {
      if (c[i] % d[i][i] != 0) return std::nullopt;
      y[i] = c[i] / d[i][i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) x[i] += v[i][k] * y[k];
  }
  return x;
}

K0Hom lift_k0hom(const BratteliDiagram& diagram, int level, const std::vector<BigInt>& target) {
  const int depth = diagram.depth();
  if (level < 0 || level > depth) throw PreconditionError("level out of range");
  if (target.size() != diagram.levels[level].size()) throw PreconditionError("phi has the wrong number of blocks");

  // composite = M_{N-1} ... M_level, rows indexed by level-N blocks
  std::vector<std::vector<BigInt>> composite(diagram.levels[level].size(),
                                             std::vector<BigInt>(diagram.levels[level].size(), 0));
  for (std::size_t i = 0; i < composite.size(); ++i) composite[i][i] = 1;
  for (int n = level; n < depth; ++n) {
    const auto& m = diagram.multiplicities[n];
    std::vector<std::vector<BigInt>> next(m.size(), std::vector<BigInt>(diagram.levels[level].size(), 0));
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t i = 0; i < m[j].size(); ++i) {
        if (m[j][i] == 0) continue;
        for (std::size_t c = 0; c < next[j].size(); ++c) next[j][c] += BigInt(static_cast<long>(m[j][i])) * composite[i][c];
      }
    }
    composite = std::move(next);
  }
  // Solve composite^T phi_N = target.
  std::vector<std::vector<BigInt>> transposed(target.size(), std::vector<BigInt>(composite.size(), 0));
  for (std::size_t j = 0; j < composite.size(); ++j) {
    for (std::size_t i = 0; i < target.size(); ++i) transposed[i][j] = composite[j][i];
  }
  auto top = solve_integer_system(transposed, target);
  if (!top) {
    throw PreconditionError("phi does not lift to level " + std::to_string(depth) +
                            ": no integer solution, so it is not a K0 homomorphism of the limit");
  }
  K0Hom phi;
  phi.levels.resize(diagram.levels.size());
  phi.levels[depth] = std::move(*top);
  for (int n = depth - 1; n >= 0; --n) {
    const auto& m = diagram.multiplicities[n];
    phi.levels[n].assign(diagram.levels[n].size(), 0);
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t i = 0; i < m[j].size(); ++i) phi.levels[n][i] += BigInt(static_cast<long>(m[j][i])) * phi.levels[n + 1][j];
    }
  }
  return phi;
}

// ---------------------------------------------------------------- unitaries

BlockUnitary identity_unitary(const BratteliDiagram& diagram, int level) {
  BlockUnitary u;
  u.level = level;
  for (auto d : diagram.levels.at(level)) u.blocks.push_back(DiagonalUnitary::identity(static_cast<int>(d)));
  return u;
}

BlockUnitary embed(const BlockUnitary& u, const BratteliDiagram& diagram, int m) {
  if (m < u.level || m > diagram.depth()) throw PreconditionError("target level out of range");
  if (u.blocks.size() != diagram.levels.at(u.level).size()) throw PreconditionError("unitary does not match the level");
  for (std::size_t i = 0; i < u.blocks.size(); ++i) {
    if (u.blocks[i].d() != diagram.levels[u.level][i]) throw PreconditionError("block size does not match the diagram");
  }
  BlockUnitary current = u;
  for (int n = u.level; n < m; ++n) {
    const auto& mult = diagram.multiplicities[n];
    BlockUnitary next;
    next.level = n + 1;
    for (const auto& row : mult) {
      std::vector<Rational> turns;
      for (std::size_t i = 0; i < row.size(); ++i) {
        for (std::int64_t copy = 0; copy < row[i]; ++copy) {
          turns.insert(turns.end(), current.blocks[i].turns().begin(), current.blocks[i].turns().end());
        }
      }
      next.blocks.emplace_back(std::move(turns));
    }
    current = std::move(next);
  }
  return current;
}

BlockUnitary multiply(const BlockUnitary& u, const BlockUnitary& v) {
  if (u.level != v.level || u.blocks.size() != v.blocks.size()) throw PreconditionError("unitaries on different levels");
  BlockUnitary out;
  out.level = u.level;
  for (std::size_t i = 0; i < u.blocks.size(); ++i) {
    if (u.blocks[i].d() != v.blocks[i].d()) throw PreconditionError("block sizes differ");
    std::vector<Rational> turns(u.blocks[i].turns());
    for (std::size_t k = 0; k < turns.size(); ++k) turns[k] += v.blocks[i].turns()[k];
    out.blocks.emplace_back(std::move(turns));
  }
  return out;
}

Rational det_phi_turns(const BlockUnitary& u, const K0Hom& phi) {
  if (u.level >= static_cast<int>(phi.levels.size()) || phi.levels[u.level].size() != u.blocks.size()) {
    throw PreconditionError("phi is not defined on the unitary's level");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < u.blocks.size(); ++i) {
    Rational s = 0;
    for (const auto& t : u.blocks[i].turns()) s += t;
    total += Rational(phi.levels[u.level][i]) * s;
  }
  BigInt floor_total;
  mpz_fdiv_q(floor_total.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
  return total - Rational(floor_total);
}

Complex det_phi(const BlockUnitary& u, const K0Hom& phi) { return unit_complex(det_phi_turns(u, phi)); }

Complex trace_of(const BlockUnitary& u, const TraceWeights& weights) {
  if (u.level >= static_cast<int>(weights.levels.size()) || weights.levels[u.level].size() != u.blocks.size()) {
    throw PreconditionError("trace weights are not defined on the unitary's level");
  }
  Complex s{};
  for (std::size_t i = 0; i < u.blocks.size(); ++i) s += weights.value(u.level, static_cast<int>(i)) * u.blocks[i].trace();
  return s;
}

Complex eval_limit_character(const LimitCharacterSpec& character, const BlockUnitary& u) {
  Complex value = character.phi ? det_phi(u, *character.phi) : Complex(1.0, 0.0);
  for (const auto& [weights, p] : character.pos_traces) {
    if (p < 0) throw PreconditionError("trace powers must be nonnegative");
    value *= std::pow(trace_of(u, weights), p);
  }
  for (const auto& [weights, q] : character.neg_traces) {
    if (q < 0) throw PreconditionError("trace powers must be nonnegative");
    value *= std::pow(std::conj(trace_of(u, weights)), q);
  }
  return value;
}

ErgodicResult ergodic_sequence(const Partition& lambda, const Partition& mu, const BratteliDiagram& diagram,
                               const BlockUnitary& u, int n_max, const ErgodicOptions& options) {
  if (n_max > diagram.depth()) throw PreconditionError("n_max exceeds the diagram depth");
  const TraceWeights weights = trace_weights(diagram);
  LimitCharacterSpec character;
  character.pos_traces.emplace_back(weights, lambda.size());
  character.neg_traces.emplace_back(weights, mu.size());
  ErgodicResult result;
  result.limit = eval_limit_character(character, u);

  for (int n = u.level; n <= n_max; ++n) {
    const BlockUnitary v = embed(u, diagram, n);
    if (options.block < 0 || options.block >= static_cast<int>(v.blocks.size())) {
      throw PreconditionError("designated block " + std::to_string(options.block) + " missing at level " +
                              std::to_string(n));
    }
    const DiagonalUnitary& block = v.blocks[options.block];
    if (lambda.length() + mu.length() > block.d()) continue;
    ErgodicPoint point;
    point.level = n;
    point.d = block.d();
    point.value = normalized_char(signature_from_pair(lambda, mu, block.d()), block, options.char_options);
    point.error = std::abs(point.value - result.limit);
    result.points.push_back(point);
  }

  std::vector<std::pair<double, double>> xy;
  for (const auto& p : result.points) {
    if (p.error > 1e-13) xy.emplace_back(std::log(static_cast<double>(p.d)), std::log(p.error));
  }
  if (xy.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : xy) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : xy) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx > 0) result.rate_exponent = -sxy / sxx;
  }
  return result;
}

// ---------------------------------------------------------------- Schur-Weyl defect

Rational schur_weyl_defect(int n, int p, int q) {
  if (p < 0 || q < 0 || (p == 0 && q == 0)) throw PreconditionError("need p, q >= 0 with (p, q) != (0, 0)");
  if (n < 0 || n > 30) throw PreconditionError("level exponent must lie in [0, 30]");
  const int d = 1 << n;
  BigInt total = 0;
  for (const Partition& lambda : partitions_of(p)) {
    for (const Partition& mu : partitions_of(q)) {
      if (lambda.length() + mu.length() > d) {
        throw PreconditionError("l(lambda) + l(mu) exceeds 2^n for lambda = " + lambda.to_string() +
                                ", mu = " + mu.to_string());
      }
      const BigInt gap = schur_dim(lambda, d) * schur_dim(mu, d) - weyl_dim(signature_from_pair(lambda, mu, d));
      total += gap * sym_group_dim(lambda) * sym_group_dim(mu);
    }
  }
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(p + q));
  Rational out(total, scale);
  out.canonicalize();
  return out;
}

}  // namespace weylchar
