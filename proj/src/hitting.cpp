#include "patrol/hitting.hpp"

#include <string>

#include "patrol/error.hpp"

namespace patrol {

namespace {

void require_tau(int tau) {
  if (tau < 1) {
    throw Error(ErrorKind::kDomain,
                "attack duration must be >= 1, got " + std::to_string(tau));
  }
}

}  // namespace

HittingProfile hitting_profile(const MarkovChain& chain, int tau) {
  require_tau(tau);
  const Matrix& p = chain.matrix();
  HittingProfile profile;
  profile.tau = tau;
  profile.first_hit.reserve(tau);
  profile.first_hit.push_back(p);
  profile.capture = p;
  for (int k = 1; k < tau; ++k) {
    Matrix stripped = profile.first_hit.back();
    stripped.diagonal().setZero();
    profile.first_hit.push_back(p * stripped);
    profile.capture += profile.first_hit.back();
  }
  return profile;
}

HittingProfile hitting_profile_vectorized(const MarkovChain& chain, int tau) {
  require_tau(tau);
  const int n = chain.size();
  if (n > kVectorizedLimit) {
    throw Error(ErrorKind::kSize, "vectorized recursion limited to n <= " +
                                      std::to_string(kVectorizedLimit));
  }
  const Matrix& p = chain.matrix();
  const int dim = n * n;

  // (I_n (x) P): block-diagonal with n copies of P.
  Matrix kron = Matrix::Zero(dim, dim);
  for (int b = 0; b < n; ++b) kron.block(b * n, b * n, n, n) = p;
  // E = diag(vec(I_n)); vec stacks columns, so I(j,j) sits at j*n + j.
  Matrix mask = Matrix::Identity(dim, dim);
  for (int j = 0; j < n; ++j) mask(j * n + j, j * n + j) = 0.0;
  const Matrix step = kron * mask;

  HittingProfile profile;
  profile.tau = tau;
  Vector state = Eigen::Map<const Vector>(p.data(), dim);
  // p is column-major, so the Map above is exactly vec(P).
  static_assert(!Matrix::IsRowMajor);
  profile.capture = Matrix::Zero(n, n);
  for (int k = 0; k < tau; ++k) {
    if (k > 0) state = step * state;
    Matrix f = Eigen::Map<const Matrix>(state.data(), n, n);
    profile.capture += f;
    profile.first_hit.push_back(std::move(f));
  }
  return profile;
}

Matrix capture_matrix(const Matrix& p, int tau) {
  require_tau(tau);
  Matrix first = p;
  Matrix capture = p;
  Matrix stripped(p.rows(), p.cols());
  for (int k = 1; k < tau; ++k) {
    stripped = first;
    stripped.diagonal().setZero();
    first.noalias() = p * stripped;
    capture += first;
  }
  return capture;
}

}  // namespace patrol
