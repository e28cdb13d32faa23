#include <doctest.h>

#include "qnsb/bistochastic.hpp"
#include "qnsb/random.hpp"

using namespace qnsb;

namespace {

// Scalar (d = 1) Fourier-type bi-unitary on n letters: u_{a,x} =
// omega^{ax} / sqrt(n).
BiUnitary fourier_biunitary(int n) {
  BiUnitary u;
  u.n = n;
  u.d = 1;
  u.blocks.assign(n, std::vector<CMat>(n));
  const Complex omega = std::exp(Complex(0, 2.0 * std::numbers::pi / n));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      u.blocks[a][x] = CMat(1, 1);
      u.blocks[a][x](0, 0) = std::pow(omega, a * x) / std::sqrt(double(n));
    }
  return u;
}

}  // namespace

TEST_CASE("fourier bi-unitary: residual zero and its matrix is bistochastic") {
  for (int n : {2, 3, 4}) {
    const BiUnitary u = fourier_biunitary(n);
    CHECK(biunitary_residual(u) < 1e-12);
    const BistochasticMatrix e = from_biisometry(u);
    CHECK(check_bistochastic(e).overall_pass());
    // Frozen entry for n = 2: E_{x,x',a,a'} = (1/2)(-1)^{ax + a'x'}.
    if (n == 2) {
      for (int x = 0; x < 2; ++x)
        for (int xp = 0; xp < 2; ++xp)
          for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap) {
              const double want =
                  0.5 * ((a * x + ap * xp) % 2 == 0 ? 1.0 : -1.0);
              CHECK(std::abs(e.block(x, xp, a, ap)(0, 0) - want) < 1e-14);
            }
    }
  }
}

TEST_CASE("identity matrix is not bistochastic for n >= 2") {
  BistochasticMatrix e;
  e.n = 2;
  e.d = 1;
  e.m = CMat::Identity(4, 4);
  const CheckReport rep = check_bistochastic(e);
  CHECK_FALSE(rep.overall_pass());
  CHECK_FALSE(rep.find("trA")->pass);
}

TEST_CASE("random_biunitary is bi-unitary and seed-deterministic") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 3}}) {
    const BiUnitary u = random_biunitary(n, d, 99);
    CHECK(biunitary_residual(u) < 1e-10);
    const BiUnitary v = random_biunitary(n, d, 99);
    CHECK((u.full() - v.full()).norm() == 0.0);
    const BiUnitary w = random_biunitary(n, d, 100);
    CHECK((u.full() - w.full()).norm() > 1e-3);
  }
}

TEST_CASE("factorize: Gram square root reproduces the matrix and is a "
          "bi-isometry") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {3, 3}}) {
    const BiUnitary u = random_biunitary(n, d, 7 * n + d);
    const BistochasticMatrix e = from_biisometry(u);
    const BiIsometry v = factorize(e);
    CHECK(v.d_k == n * n * d);
    CHECK(biisometry_residual(v) < 1e-8);
    const BistochasticMatrix e2 = from_biisometry(v, 1e-7);
    CHECK((e.m - e2.m).norm() < 1e-8);
  }
}

TEST_CASE("factorize also handles non-extreme-point mixtures") {
  const int n = 3, d = 2;
  Rng rng(31);
  const BistochasticMatrix e1 =
      from_biisometry(random_biunitary(n, d, 1));
  const BistochasticMatrix e2 =
      from_biisometry(random_biunitary(n, d, 2));
  BistochasticMatrix mix;
  mix.n = n;
  mix.d = d;
  mix.m = 0.5 * e1.m + 0.5 * e2.m;
  CHECK(check_bistochastic(mix).overall_pass());
  const BiIsometry v = factorize(mix);
  CHECK(biisometry_residual(v) < 1e-8);
  CHECK((from_biisometry(v, 1e-7).m - mix.m).norm() < 1e-8);
}

TEST_CASE("lx cone: membership, flip invariance, and rejection") {
  const int n = 3;
  // The reindexed Gram of a bistochastic scalar matrix lies in the cone.
  const BiUnitary u = fourier_biunitary(n);
  const BistochasticMatrix e = from_biisometry(u);
  CHECK(lx_check(e.m, n).overall_pass());
  CHECK(lx_check(lx_flip(e.m, n), n).overall_pass());
  CHECK((lx_flip(lx_flip(e.m, n), n) - e.m).norm() == 0.0);
  // The identity is in the cone (c = n); a lone off-diagonal-block unit
  // with equal output indices is not.
  CHECK(lx_check(CMat::Identity(n * n, n * n), n).overall_pass());
  CMat bad = CMat::Zero(n * n, n * n);
  bad(0, n) = 1.0;  // lambda_{0,1,0,0} = 1 breaks the row condition
  CHECK_FALSE(lx_check(bad, n).overall_pass());
}
