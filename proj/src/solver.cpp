#include "patrol/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "parallel.hpp"
#include "patrol/error.hpp"
#include "patrol/hitting.hpp"
#include "patrol/strategies.hpp"

namespace patrol {

void SolveConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kConfigRange, what);
  };
  if (restarts < 1) fail("restarts must be >= 1");
  if (max_iters < 1) fail("max_iters must be >= 1");
  if (!(initial_step > 0.0 && initial_step <= 1.0)) fail("initial_step must be in (0,1]");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) fail("step_shrink must be in (0,1)");
  if (!(min_step > 0.0)) fail("min_step must be > 0");
  if (!(tol >= 0.0) || !std::isfinite(tol)) fail("tol must be finite and >= 0");
  if (threads < 0) fail("threads must be >= 0");
}

namespace {

Matrix pin_leaves(const DiGraph& g, Matrix p) {
  if (g.size() < 3) return p;
  for (int i = 0; i < g.size(); ++i) {
    if (const auto j = leaf_neighbor(g, i)) {
      p.row(i).setZero();
      p(i, *j) = 1.0;
    }
  }
  return p;
}

// Search score: the game value first, then a soft minimum over all pairs that
// lets the search walk along plateaus where several pairs tie for the minimum.
struct Score {
  double value;
  double soft;
};

double softmin(const Matrix& capture, double low, double sharpness) {
  const double mass = (-sharpness * (capture.array() - low)).exp().sum();
  return low - std::log(mass) / sharpness;
}

// Sharpness schedule for the smoothed warm-up phases, then the tie-breaker
// used alongside the exact value.
constexpr std::array<double, 3> kWarmupSharpness{8.0, 32.0, 128.0};
constexpr double kTieBreakSharpness = 128.0;

// Keeps the incumbent and counts evaluations. The primary score never
// decreases.
template <class Point, class Objective>
struct Incumbent {
  Point point;
  Score score;
  double tol;
  Objective objective;
  std::uint64_t evaluations = 0;

  double value() const { return score.value; }

  bool offer(const Point& candidate) {
    const Score s = objective(candidate);
    ++evaluations;
    if (s.value > score.value + tol || (s.value >= score.value && s.soft > score.soft + tol)) {
      point = candidate;
      score = s;
      return true;
    }
    return false;
  }
};

struct RestartResult {
  Matrix best;
  double value = 0.0;
  std::vector<TracePoint> trace;
  std::uint64_t evaluations = 0;
  std::vector<double> params;
};

bool lexicographically_less(const Matrix& a, const Matrix& b) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    }
  }
  return false;
}

// Highest value wins; exact ties go to the lexicographically smaller matrix so
// the answer does not depend on restart scheduling.
std::size_t pick_winner(const std::vector<RestartResult>& results) {
  std::size_t winner = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    const auto& a = results[r];
    const auto& b = results[winner];
    if (a.value > b.value ||
        (a.value == b.value && lexicographically_less(a.best, b.best))) {
      winner = r;
    }
  }
  return winner;
}

void clip_rows(Matrix& p, const std::vector<int>& rows) {
  for (int r : rows) {
    p.row(r) = p.row(r).cwiseMax(0.0);
    p.row(r) /= p.row(r).sum();
  }
}

template <class Inc>
bool poll_chain(Inc& inc, const DiGraph& g, const std::vector<int>& free_rows, int directions,
                double step, std::mt19937_64& rng) {
  bool improved = false;
  for (int r : free_rows) {
    const auto support = g.out_neighbors(r);
    const double share = 1.0 / static_cast<double>(support.size() - 1);
    for (int a : support) {
      for (int b : support) {
        if (a == b) continue;
        const double amount = std::min(step, inc.point(r, a));
        if (amount <= 0.0) continue;
        Matrix q = inc.point;
        q(r, a) -= amount;
        q(r, b) += amount;
        improved |= inc.offer(q);
      }
    }
    for (int a : support) {
      const double amount = std::min(step, inc.point(r, a));
      if (amount <= 0.0) continue;
      Matrix q = inc.point;
      q(r, a) -= amount;
      for (int c : support) {
        if (c != a) q(r, c) += amount * share;
      }
      improved |= inc.offer(q);
    }
    for (int b : support) {
      Matrix q = inc.point;
      double gathered = 0.0;
      for (int c : support) {
        if (c == b) continue;
        const double take = std::min(step * share, q(r, c));
        q(r, c) -= take;
        gathered += take;
      }
      if (gathered <= 0.0) continue;
      q(r, b) += gathered;
      improved |= inc.offer(q);
    }
  }

  std::normal_distribution<double> gaussian(0.0, 1.0);
  const int n = g.size();
  for (int k = 0; k < directions; ++k) {
    Matrix direction = Matrix::Zero(n, n);
    for (int r : free_rows) {
      const auto support = g.out_neighbors(r);
      double mean = 0.0;
      for (int c : support) {
        direction(r, c) = gaussian(rng);
        mean += direction(r, c);
      }
      mean /= static_cast<double>(support.size());
      for (int c : support) direction(r, c) -= mean;
    }
    const double scale = direction.cwiseAbs().maxCoeff();
    if (scale <= 0.0) continue;
    direction *= step / scale;
    for (double sign : {1.0, -1.0}) {
      Matrix q = inc.point + sign * direction;
      clip_rows(q, free_rows);
      improved |= inc.offer(q);
    }
  }
  return improved;
}

RestartResult search_chain(const DiGraph& g, int tau, const SolveConfig& config,
                           Matrix start, std::mt19937_64& rng) {
  const int n = g.size();
  std::vector<int> free_rows;
  int free_dims = 0;
  for (int i = 0; i < n; ++i) {
    const bool pinned = n >= 3 && leaf_neighbor(g, i).has_value();
    const auto support = g.out_neighbors(i);
    if (!pinned && support.size() >= 2) {
      free_rows.push_back(i);
      free_dims += static_cast<int>(support.size()) - 1;
    }
  }
  const int directions = std::max(2, free_dims);
  RestartResult result;
  Matrix point = start;

  // Warm-up on smoothed objectives: a soft minimum has useful directions at
  // points where many pairs tie and the exact minimum has none.
  for (double sharpness : kWarmupSharpness) {
    if (free_rows.empty()) break;
    auto smooth = [tau, sharpness](const Matrix& p) {
      const Matrix capture = capture_matrix(p, tau);
      const double s = softmin(capture, capture.minCoeff(), sharpness);
      return Score{s, s};
    };
    Incumbent<Matrix, decltype(smooth)> warm{point, smooth(point), config.tol, smooth};
    double step = config.initial_step;
    for (int iter = 1; iter <= config.max_iters; ++iter) {
      if (!poll_chain(warm, g, free_rows, directions, step, rng)) {
        step *= config.step_shrink;
        if (step < config.min_step) break;
      }
    }
    point = std::move(warm.point);
    result.evaluations += warm.evaluations + 1;
  }

  auto exact = [tau](const Matrix& p) {
    const Matrix capture = capture_matrix(p, tau);
    const double low = capture.minCoeff();
    return Score{low, softmin(capture, low, kTieBreakSharpness)};
  };
  // The exact phase begins from whichever of the start and the warm-up point
  // scores higher, so a good heuristic start is never lost.
  Incumbent<Matrix, decltype(exact)> inc{start, exact(start), config.tol, exact};
  inc.offer(point);
  result.evaluations += 1;
  result.trace.push_back({0, inc.value()});
  double step = config.initial_step;
  for (int iter = 1; iter <= config.max_iters && !free_rows.empty(); ++iter) {
    const bool improved = poll_chain(inc, g, free_rows, directions, step, rng);
    result.trace.push_back({iter, inc.value()});
    if (!improved) {
      step *= config.step_shrink;
      if (step < config.min_step) break;
    }
  }
  result.best = std::move(inc.point);
  result.value = inc.value();
  result.evaluations += inc.evaluations;
  return result;
}

RestartResult search_line(int n, int tau, const SolveConfig& config,
                          std::mt19937_64& rng) {
  const int d = n - 2;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  std::vector<double> start(d);
  for (double& v : start) v = uniform(rng);

  auto objective = [tau](const std::vector<double>& x) {
    const double v = line_objective(x, tau);
    return Score{v, v};
  };
  Incumbent<std::vector<double>, decltype(objective)> inc{start, objective(start),
                                                          config.tol, objective};
  inc.evaluations = 1;

  // Fixed poll set: +-e_i and +-e_i +- e_j.
  std::vector<std::vector<double>> fixed;
  for (int i = 0; i < d; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(d, 0.0);
      e[i] = s;
      fixed.push_back(std::move(e));
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          std::vector<double> e(d, 0.0);
          e[i] = si;
          e[j] = sj;
          fixed.push_back(std::move(e));
        }
      }
    }
  }

  const auto try_direction = [&](const std::vector<double>& dir, double step) {
    std::vector<double> x = inc.point;
    for (int i = 0; i < d; ++i) x[i] = std::clamp(x[i] + step * dir[i], 0.0, 1.0);
    return inc.offer(x);
  };

  RestartResult result;
  result.trace.push_back({0, inc.value()});
  double step = config.initial_step;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    bool improved = false;
    for (const auto& dir : fixed) improved |= try_direction(dir, step);
    for (int k = 0; k < 2 * d; ++k) {
      std::vector<double> dir(d);
      double norm = 0.0;
      for (double& v : dir) {
        v = gaussian(rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm <= 0.0) continue;
      for (double& v : dir) v /= norm;
      improved |= try_direction(dir, step);
      for (double& v : dir) v = -v;
      improved |= try_direction(dir, step);
    }
    result.trace.push_back({iter, inc.value()});
    if (!improved) {
      step *= config.step_shrink;
      if (step < config.min_step) break;
    }
  }
  result.params = inc.point;
  result.best = line_param_matrix(inc.point);
  result.value = inc.value();
  result.evaluations = inc.evaluations;
  return result;
}

SolveReport assemble(const DiGraph& g, int tau, std::vector<RestartResult> results,
                     TauKind kind) {
  const std::size_t winner = pick_winner(results);
  std::uint64_t evaluations = 0;
  for (const auto& r : results) evaluations += r.evaluations;
  RestartResult& best = results[winner];
  const double bound = static_cast<double>(tau) / g.size();
  return SolveReport{MarkovChain::from_matrix(g, std::move(best.best)),
                     best.value,
                     bound,
                     bound - best.value,
                     std::move(best.trace),
                     evaluations,
                     kind,
                     false,
                     static_cast<int>(winner),
                     std::move(best.params)};
}

SolveReport degenerate_report(const DiGraph& g, int tau, Matrix p, TauKind kind) {
  MarkovChain chain = MarkovChain::from_matrix(g, std::move(p));
  const double value = game_value(chain, tau);
  const double bound = static_cast<double>(tau) / g.size();
  return SolveReport{std::move(chain), value, bound, bound - value, {{0, value}},
                     1, kind, true, -1, {}};
}

}  // namespace

SolveReport solve_maximin(const GameInstance& instance, const SolveConfig& config) {
  config.validate();
  const DiGraph& g = instance.graph;
  const int tau = instance.tau;
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kConnectivity, "graph is not strongly connected");
  }
  if (g.size() < 2) {
    throw Error(ErrorKind::kInvalidDimension, "solver needs n >= 2");
  }
  const TauClass tau_class = classify_tau(g, tau);
  if (tau_class.kind == TauKind::kTrivialZero) {
    return degenerate_report(g, tau, pin_leaves(g, uniform_chain(g).matrix()),
                             tau_class.kind);
  }
  if (tau_class.kind == TauKind::kTrivialOne && tau_class.walk.length() == g.size()) {
    // The closed walk is a Hamiltonian cycle, hence a Markov chain.
    Matrix cycle = Matrix::Zero(g.size(), g.size());
    const auto& nodes = tau_class.walk.nodes;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      cycle(nodes[k], nodes[(k + 1) % nodes.size()]) = 1.0;
    }
    return degenerate_report(g, tau, std::move(cycle), tau_class.kind);
  }

  std::vector<RestartResult> results(config.restarts);
  detail::parallel_for(results.size(), config.threads, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(config.seed, r);
    const Matrix start = r == 0 ? uniform_chain(g).matrix() : random_chain(g, seed).matrix();
    std::mt19937_64 rng(seed);
    results[r] = search_chain(g, tau, config, pin_leaves(g, start), rng);
  });
  return assemble(g, tau, std::move(results), tau_class.kind);
}

double line_objective(std::span<const double> x, int tau) {
  const Matrix capture = capture_matrix(line_param_matrix(x), tau);
  const auto last = capture.rows() - 1;
  return std::min(capture(0, last), capture(last, 0));
}

SolveReport solve_line(int n, int tau, const SolveConfig& config) {
  config.validate();
  if (n < 3) throw Error(ErrorKind::kInvalidDimension, "line needs n >= 3");
  if (tau < n - 1 || tau > 2 * n - 3) {
    throw Error(ErrorKind::kDomain, "line search needs n-1 <= tau <= 2n-3 (n=" +
                                        std::to_string(n) + ", tau=" +
                                        std::to_string(tau) + ")");
  }
  std::vector<RestartResult> results(config.restarts);
  detail::parallel_for(results.size(), config.threads, [&](std::size_t r) {
    std::mt19937_64 rng(derive_seed(config.seed, r));
    results[r] = search_line(n, tau, config, rng);
  });
  return assemble(build_line(n), tau, std::move(results), TauKind::kNontrivial);
}

double necessary_residual_line(const MarkovChain& chain, int tau) {
  if (chain.size() < 3 || !is_labeled_line(chain.graph())) {
    throw Error(ErrorKind::kTopology, "chain is not on a labeled line graph");
  }
  const Matrix capture = capture_matrix(chain.matrix(), tau);
  const auto last = capture.rows() - 1;
  return std::abs(capture(0, last) - capture(last, 0));
}

MarkovChain apply_leaf_dominance(const DiGraph& g, const MarkovChain& chain) {
  return MarkovChain::from_matrix(g, pin_leaves(g, chain.matrix()));
}

}  // namespace patrol
