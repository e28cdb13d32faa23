#include "qnsb/bistochastic.hpp"

#include <cmath>
#include <numbers>

#include "qnsb/random.hpp"

namespace qnsb {

CMat BiUnitary::full() const {
  CMat u = CMat::Zero(n * d, n * d);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) u.block(a * d, x * d, d, d) = blocks[a][x];
  return u;
}

BiUnitary BiUnitary::block_transpose() const {
  BiUnitary t;
  t.n = n;
  t.d = d;
  t.blocks.assign(n, std::vector<CMat>(n));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) t.blocks[x][a] = blocks[a][x];
  return t;
}

double biunitary_residual(const BiUnitary& u) {
  const CMat full = u.full();
  const CMat fullt = u.block_transpose().full();
  const CMat id = CMat::Identity(u.n * u.d, u.n * u.d);
  double r = 0.0;
  r = std::max(r, (full.adjoint() * full - id).norm());
  r = std::max(r, (full * full.adjoint() - id).norm());
  r = std::max(r, (fullt.adjoint() * fullt - id).norm());
  r = std::max(r, (fullt * fullt.adjoint() - id).norm());
  return r;
}

double biisometry_residual(const BiIsometry& v) {
  const int n = v.n;
  const CMat id = CMat::Identity(v.d_h, v.d_h);
  double r = 0.0;
  // V^dagger V = I per block column x of the (a,x) layout.
  for (int x = 0; x < n; ++x)
    for (int xp = 0; xp < n; ++xp) {
      CMat s = CMat::Zero(v.d_h, v.d_h);
      for (int a = 0; a < n; ++a)
        s += v.block(a, x).adjoint() * v.block(a, xp);
      r = std::max(r, (s - (x == xp ? id : CMat(CMat::Zero(v.d_h, v.d_h))))
                          .norm());
    }
  // Block transpose isometry: Sum_x V_{a,x}^dagger V_{a',x}.
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap) {
      CMat s = CMat::Zero(v.d_h, v.d_h);
      for (int x = 0; x < n; ++x)
        s += v.block(a, x).adjoint() * v.block(ap, x);
      r = std::max(r, (s - (a == ap ? id : CMat(CMat::Zero(v.d_h, v.d_h))))
                          .norm());
    }
  return r;
}

CheckReport check_bistochastic(const BistochasticMatrix& e, double tol) {
  CheckReport rep;
  const int n = e.n;
  const int d = e.d;
  const double s = scale_of(e.m);

  const double herm = (e.m - e.m.adjoint()).norm();
  double neg = 0.0;
  if (herm <= tol * s)
    neg = std::max(0.0, -min_herm_eigenvalue(e.m));
  rep.add("psd", std::max(herm, neg), tol * s);

  const CMat id = CMat::Identity(d, d);
  double tr_a = 0.0;
  for (int x = 0; x < n; ++x)
    for (int xp = 0; xp < n; ++xp) {
      CMat sum = CMat::Zero(d, d);
      for (int a = 0; a < n; ++a) sum += e.block(x, xp, a, a);
      tr_a = std::max(tr_a, (sum - (x == xp ? id : CMat(CMat::Zero(d, d))))
                                .norm());
    }
  rep.add("trA", tr_a, tol * std::max(1.0, s));

  double tr_x = 0.0;
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap) {
      CMat sum = CMat::Zero(d, d);
      for (int x = 0; x < n; ++x) sum += e.block(x, x, a, ap);
      tr_x = std::max(tr_x, (sum - (a == ap ? id : CMat(CMat::Zero(d, d))))
                                .norm());
    }
  rep.add("trX", tr_x, tol * std::max(1.0, s));
  return rep;
}

BistochasticMatrix from_biisometry(const BiIsometry& v, double tol) {
  const double r = biisometry_residual(v);
  if (r > tol * 10.0)
    throw InputError("from_biisometry: blocks are not a bi-isometry (residual " +
                     std::to_string(r) + ")");
  BistochasticMatrix e;
  e.n = v.n;
  e.d = v.d_h;
  e.m = CMat::Zero(v.n * v.n * v.d_h, v.n * v.n * v.d_h);
  for (int x = 0; x < v.n; ++x)
    for (int xp = 0; xp < v.n; ++xp)
      for (int a = 0; a < v.n; ++a)
        for (int ap = 0; ap < v.n; ++ap)
          e.m.block((x * v.n + a) * v.d_h, (xp * v.n + ap) * v.d_h, v.d_h,
                    v.d_h) = v.block(a, x).adjoint() * v.block(ap, xp);
  return e;
}

BistochasticMatrix from_biisometry(const BiUnitary& u, double tol) {
  BiIsometry v;
  v.n = u.n;
  v.d_h = u.d;
  v.d_k = u.d;
  v.blocks = u.blocks;
  return from_biisometry(v, tol);
}

BiIsometry factorize(const BistochasticMatrix& e, double tol) {
  const int n = e.n;
  const int d = e.d;
  // Gram reindexing: G_{(a,x),(a',x')} = E_{x,x',a,a'}, rows (a,x) with a
  // outer. A permutation similarity of e.m, hence PSD iff e.m is.
  CMat g(n * n * d, n * n * d);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      for (int ap = 0; ap < n; ++ap)
        for (int xp = 0; xp < n; ++xp)
          g.block((a * n + x) * d, (ap * n + xp) * d, d, d) =
              e.block(x, xp, a, ap);
  const CMat w = psd_sqrt(g);  // throws NotPsdError if g is not PSD
  (void)tol;
  BiIsometry v;
  v.n = n;
  v.d_h = d;
  v.d_k = n * n * d;
  v.blocks.assign(n, std::vector<CMat>(n));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      v.blocks[a][x] = w.middleCols((a * n + x) * d, d);
  return v;
}

BiUnitary random_biunitary(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw InputError("random_biunitary: n, d must be >= 1");
  Rng rng(seed);
  BiUnitary u;
  u.n = n;
  u.d = d;
  u.blocks.assign(n, std::vector<CMat>(n));
  const Complex omega =
      std::exp(Complex(0.0, 2.0 * std::numbers::pi / static_cast<double>(n)));
  std::vector<CMat> va(n);
  for (int a = 0; a < n; ++a) va[a] = rng.haar_unitary(d);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      u.blocks[a][x] = inv * std::pow(omega, a * x) * va[a];
  // Twist by local unitaries; each operation preserves bi-unitarity.
  const CMat lu = rng.haar_unitary(n);
  const CMat rv = rng.haar_unitary(n);
  const CMat rw = rng.haar_unitary(d);
  const CMat id = CMat::Identity(d, d);
  CMat full = tensor_product(lu, id) * u.full() * tensor_product(rv, rw);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      u.blocks[a][x] = full.block(a * d, x * d, d, d);
  return u;
}

CheckReport lx_check(const CMat& c, int n, double tol) {
  CheckReport rep;
  if (c.rows() != n * n || c.cols() != n * n)
    throw InputError("lx_check: matrix must be n^2 x n^2");
  const double s = std::max(1.0, scale_of(c));
  const Complex cc = c.trace() / static_cast<double>(n);
  auto at = [&](int x, int xp, int a, int ap) {
    return c(x * n + a, xp * n + ap);
  };
  double r_row = 0.0;
  for (int x = 0; x < n; ++x)
    for (int xp = 0; xp < n; ++xp) {
      Complex sum = 0.0;
      for (int b = 0; b < n; ++b) sum += at(x, xp, b, b);
      r_row = std::max(r_row, std::abs(sum - (x == xp ? cc : Complex(0.0))));
    }
  rep.add("rows", r_row, tol * s);
  double r_col = 0.0;
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap) {
      Complex sum = 0.0;
      for (int y = 0; y < n; ++y) sum += at(y, y, a, ap);
      r_col = std::max(r_col, (std::abs(sum - (a == ap ? cc : Complex(0.0)))));
    }
  rep.add("cols", r_col, tol * s);
  return rep;
}

CMat lx_flip(const CMat& c, int n) {
  if (c.rows() != n * n || c.cols() != n * n)
    throw InputError("lx_flip: matrix must be n^2 x n^2");
  CMat out(n * n, n * n);
  for (int x = 0; x < n; ++x)
    for (int xp = 0; xp < n; ++xp)
      for (int a = 0; a < n; ++a)
        for (int ap = 0; ap < n; ++ap)
          out(x * n + a, xp * n + ap) = c(xp * n + ap, x * n + a);
  return out;
}

}  // namespace qnsb
