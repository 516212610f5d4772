#include "patrol/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "parallel.hpp"
#include "patrol/error.hpp"
#include "patrol/game.hpp"
#include "patrol/hitting.hpp"
#include "patrol/solver.hpp"

namespace patrol {

std::uint64_t required_samples(double confidence, double level) {
  if (!(confidence > 0.0 && confidence < 1.0) || !(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::kDomain, "confidence and level must lie in (0,1)");
  }
  return static_cast<std::uint64_t>(
      std::ceil(std::log(1.0 - confidence) / std::log(level)));
}

double symmetric_certificate(std::uint64_t samples) {
  if (samples == 0) return 0.0;
  // ln(1-c)/ln(c) increases from 0 to infinity on (0,1).
  const double target = static_cast<double>(samples);
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (std::log1p(-mid) / std::log(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

SweepReport conjecture_sweep(int n, int tau, std::uint64_t samples,
                             std::uint64_t seed, double tol, int threads) {
  if (n < 3) throw Error(ErrorKind::kInvalidDimension, "sweep needs n >= 3");
  if (tau < n - 1) {
    throw Error(ErrorKind::kDomain, "sweep needs tau >= n-1 (n=" + std::to_string(n) +
                                        ", tau=" + std::to_string(tau) + ")");
  }
  if (samples < 1) throw Error(ErrorKind::kDomain, "sweep needs at least one sample");
  if (!(tol >= 0.0)) throw Error(ErrorKind::kDomain, "tolerance must be >= 0");

  SweepReport report;
  report.n = n;
  report.tau = tau;
  report.samples = samples;
  report.seed = seed;
  report.tol = tol;
  report.reference_value = line_objective(std::vector<double>(n - 2, 0.5), tau);

  std::vector<double> values(samples);
  detail::parallel_for(samples, threads, [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> x(n - 2);
    for (double& v : x) {
      do {
        v = uniform(rng);
      } while (v <= 0.0);
    }
    values[k] = line_objective(x, tau);
  });

  report.best_sampled_value = *std::max_element(values.begin(), values.end());
  report.improvements = static_cast<std::uint64_t>(
      std::count_if(values.begin(), values.end(), [&](double v) {
        return v > report.reference_value + tol;
      }));
  if (report.improvements == 0) {
    const double c = symmetric_certificate(samples);
    report.confidence = c;
    report.level = c;
  }
  return report;
}

SymmetryResult symmetry_check(const LineParams& x, int tau, double tol) {
  SymmetryResult result;
  result.value = line_objective(x.values(), tau);
  result.reflected_value = line_objective(x.reflected().values(), tau);
  result.pass = std::abs(result.difference()) <= tol;
  return result;
}

CharPolyPair char_poly_pair(std::span<const double> x, double lambda) {
  const int order = static_cast<int>(x.size()) + 1;  // n - 1
  // padded[k] = x_k for k = 0..n-1.
  std::vector<double> padded(order + 1, 1.0);
  std::copy(x.begin(), x.end(), padded.begin() + 1);

  CharPolyPair out;
  out.g.assign(order + 1, 0.0);
  out.h.assign(order + 1, 0.0);
  out.g[0] = out.h[0] = 1.0;
  out.g[1] = out.h[1] = lambda;
  for (int k = 2; k <= order; ++k) {
    out.g[k] = lambda * out.g[k - 1] - padded[k - 2] * (1.0 - padded[k - 1]) * out.g[k - 2];
    out.h[k] = lambda * out.h[k - 1] - padded[k] * (1.0 - padded[k - 1]) * out.h[k - 2];
  }
  return out;
}

double char_poly_gap(const CharPolyPair& p) { return std::abs(p.top() - p.bottom()); }

double char_poly_shift_gap(const CharPolyPair& p, std::span<const double> x,
                           double lambda) {
  const std::size_t order = p.g.size() - 1;
  const double last_x = x.back();  // x_{n-2}
  return std::abs(lambda * p.g[order] - last_x * p.g[order - 1] -
                  (lambda * lambda - 1.0) * p.h[order - 1]);
}

DominanceAudit audit_dominance(const DiGraph& g, int tau, std::uint64_t chains,
                               std::uint64_t seed, double slack, int threads) {
  const auto pairs = dominated_pairs(g, tau);
  const int n = g.size();

  struct Leaf {
    int node;
    int neighbor;
  };
  std::vector<Leaf> leaves;
  for (int i = 0; i < n; ++i) {
    if (const auto j = leaf_neighbor(g, i)) leaves.push_back({i, *j});
  }

  std::vector<std::vector<DominanceViolation>> found(chains);
  std::vector<std::uint64_t> checks(chains, 0);
  detail::parallel_for(chains, threads, [&](std::size_t c) {
    const MarkovChain chain = random_chain(g, derive_seed(seed, c));
    if (!is_irreducible(chain)) {
      throw Error(ErrorKind::kIrreducible, "sampled chain is reducible");
    }
    const Matrix capture = capture_matrix(chain.matrix(), tau);
    auto& out = found[c];
    const auto report = [&](const char* rule, int from, int to, int witness,
                            double larger, double smaller) {
      ++checks[c];
      if (smaller > larger + slack) {
        out.push_back({rule, c, from, to, witness, larger, smaller});
      }
    };
    for (const DominatedPair& p : pairs) {
      switch (p.reason) {
        case DominanceReason::kEntryCut:
          report("entry-cut", p.from, p.to, p.witness, capture(p.from, p.to),
                 capture(p.witness, p.to));
          break;
        case DominanceReason::kExitCut:
          report("exit-cut", p.from, p.to, p.witness, capture(p.from, p.to),
                 capture(p.from, p.witness));
          break;
        case DominanceReason::kLeaf:
          for (int k = 0; k < n; ++k) {
            if (k == p.from || k == p.witness) continue;
            report("leaf-attack", p.from, p.from, k, capture(p.from, p.from),
                   capture(k, p.from));
          }
          break;
      }
    }
    if (!leaves.empty()) {
      const double before = capture.minCoeff();
      const double after = game_value(apply_leaf_dominance(g, chain), tau);
      report("leaf-row", -1, -1, -1, after, before);
    }
  });

  DominanceAudit audit;
  audit.chains = chains;
  audit.leaf_attack_checked = tau >= 2;
  for (std::uint64_t c = 0; c < chains; ++c) {
    audit.checks += checks[c];
    for (auto& v : found[c]) audit.violations.push_back(std::move(v));
  }
  return audit;
}

}  // namespace patrol
