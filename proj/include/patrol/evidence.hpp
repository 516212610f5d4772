#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patrol/graph.hpp"
#include "patrol/strategies.hpp"

namespace patrol {

// Smallest N with (level)^N <= 1 - confidence, i.e. N >= ln(1-confidence) /
// ln(level). With zero hits in N uniform draws, the probability mass of
// improving draws exceeds 1 - level with probability at most 1 - confidence.
std::uint64_t required_samples(double confidence, double level);

// Largest c for which N zero-hit samples certify (confidence = c, level = c).
double symmetric_certificate(std::uint64_t samples);

struct SweepReport {
  int n = 0;
  int tau = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::uint64_t improvements = 0;  // draws with value > reference + tol
  double reference_value = 0.0;    // line_optimal(n) at tau
  double best_sampled_value = 0.0;
  // Present only when improvements == 0; confidence == level.
  std::optional<double> confidence;
  std::optional<double> level;
};

// Draws x uniformly from (0,1)^(n-2), scores line_objective(x, tau), and counts
// draws that beat the 1/2-1/2 line chain by more than tol. Requires n >= 3 and
// tau >= n - 1. Sample k uses seed derive_seed(seed, k).
SweepReport conjecture_sweep(int n, int tau, std::uint64_t samples,
                             std::uint64_t seed, double tol = 1e-9,
                             int threads = 0);

struct SymmetryResult {
  double value = 0.0;
  double reflected_value = 0.0;
  bool pass = false;

  double difference() const { return value - reflected_value; }
};

// Compares line_objective at x and at 1 - x.
SymmetryResult symmetry_check(const LineParams& x, int tau, double tol = 1e-12);

// Three-term recurrences for the characteristic polynomials of the
// (n-1)x(n-1) tridiagonal blocks of a line chain, read from the top-left (g)
// and from the bottom-right (h). g[k] and h[k] hold the order-k values at
// lambda for k = 0..n-1, with x_0 = x_{n-1} = 1 padding the parameters.
struct CharPolyPair {
  std::vector<double> g;
  std::vector<double> h;

  double top() const { return g.back(); }
  double bottom() const { return h.back(); }
};

CharPolyPair char_poly_pair(std::span<const double> x, double lambda);

// |g_{n-1} - h_{n-1}|.
double char_poly_gap(const CharPolyPair& p);
// |lambda g_{n-1} - x_{n-2} g_{n-2} - (lambda^2 - 1) h_{n-2}|.
double char_poly_shift_gap(const CharPolyPair& p, std::span<const double> x,
                           double lambda);

struct DominanceViolation {
  std::string rule;  // "entry-cut", "exit-cut", "leaf-attack", "leaf-row"
  std::uint64_t chain_index;
  int from;
  int to;
  int witness;
  double expected_larger;
  double expected_smaller;
};

struct DominanceAudit {
  std::uint64_t chains = 0;
  std::uint64_t checks = 0;
  bool leaf_attack_checked = false;  // false when tau < 2
  std::vector<DominanceViolation> violations;
};

// Samples irreducible random chains on g and checks every dominance
// inequality: C(k,j) <= C(i,j) for entry cuts, C(i,k) <= C(i,j) for exit cuts,
// C(k,i) <= C(i,i) for leaves i and non-neighbors k (tau >= 2), and that
// pinning leaf rows never lowers the game value. Reports anything off by more
// than `slack`. Requires n >= 3.
DominanceAudit audit_dominance(const DiGraph& g, int tau, std::uint64_t chains,
                               std::uint64_t seed, double slack = 1e-10,
                               int threads = 0);

}  // namespace patrol
