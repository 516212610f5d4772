#pragma once

#include <cstdint>
#include <vector>

#include "patrol/chain.hpp"

namespace patrol {

// First-hitting-time distribution up to the attack duration.
// first_hit[k-1](i,j) = P(T_ij = k) and capture(i,j) = P(T_ij <= tau), where
// T_ij is the first step k >= 1 at which the walk from i sits on j.
struct HittingProfile {
  int tau = 0;
  std::vector<Matrix> first_hit;
  Matrix capture;
};

// F_1 = P, F_{k+1} = P (F_k - diag(F_k)). O(tau n^3).
HittingProfile hitting_profile(const MarkovChain& chain, int tau);

// Same quantity through the n^2-dimensional iteration
// vec(F_{k+1}) = (I (x) P)(I - E) vec(F_k), E = diag(vec(I)). O(tau n^4);
// exists as an independent cross-check. Throws kSize above kVectorizedLimit.
inline constexpr int kVectorizedLimit = 32;
HittingProfile hitting_profile_vectorized(const MarkovChain& chain, int tau);

// Capture matrix only, on a raw transition matrix. Used in search loops where
// the matrix is already known to be stochastic and conforming.
Matrix capture_matrix(const Matrix& p, int tau);

// Exact P(T_ij <= tau) by summing over every trajectory of length <= tau from
// i. Node indices are 0-based. Throws kSize when n^tau exceeds the limit.
inline constexpr double kEnumerationLimit = 1e8;
double enumerate_hitting(const MarkovChain& chain, int from, int to, int tau);

struct HitEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

// Monte Carlo estimate of P(T_ij <= tau). Samples are split into fixed-size
// blocks with per-block seeds, so the result does not depend on `threads`.
inline constexpr std::uint64_t kSimulationBlock = 1 << 16;
HitEstimate simulate_hitting(const MarkovChain& chain, int from, int to,
                             int tau, std::uint64_t samples, std::uint64_t seed,
                             int threads = 1);

}  // namespace patrol
