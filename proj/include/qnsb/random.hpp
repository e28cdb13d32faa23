// Seeded random matrix generators (deterministic per seed) used by the
// witness generators and the test suites.
#pragma once

#include <cstdint>
#include <random>

#include "qnsb/numerics.hpp"

namespace qnsb {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gauss() { return normal_(gen_); }
  double uniform() { return unif_(gen_); }
  // Uniform integer in [0, n).
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }

  // Standard complex Gaussian (Ginibre) matrix.
  CMat ginibre(int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(), gauss());
    return m;
  }

  // Haar-distributed n x n unitary (QR of a Ginibre matrix with the
  // standard phase correction).
  CMat haar_unitary(int n) {
    CMat g = ginibre(n, n);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      Complex d = r(j, j);
      q.col(j) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
    }
    return q;
  }

  // Random Hermitian matrix with entries O(1).
  CMat hermitian(int n) {
    CMat g = ginibre(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  // Random PSD matrix G = M^dagger M, normalized to unit operator scale.
  CMat psd(int n) {
    CMat g = ginibre(n, n);
    CMat p = g.adjoint() * g;
    return p / p.norm();
  }

  // Random probability vector of length k.
  std::vector<double> simplex(int k) {
    std::vector<double> w(k);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      w[i] = -std::log(std::max(uniform(), 1e-300));
      s += w[i];
    }
    for (double& x : w) x /= s;
    return w;
  }

  // Uniformly random permutation of [0, n).
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
    return p;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace qnsb
