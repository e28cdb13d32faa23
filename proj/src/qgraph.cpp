#include "qnsb/qgraph.hpp"

#include <algorithm>
#include <cmath>

#include "qnsb/random.hpp"

namespace qnsb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

void validate(const Graph& g) {
  require(g.adjacency.rows() == g.n && g.adjacency.cols() == g.n,
          "graph: adjacency size mismatch");
  for (int i = 0; i < g.n; ++i) {
    require(g.adjacency(i, i) == 0, "graph: self-loop");
    for (int j = 0; j < g.n; ++j) {
      require(g.adjacency(i, j) == 0 || g.adjacency(i, j) == 1,
              "graph: adjacency entries must be 0/1");
      require(g.adjacency(i, j) == g.adjacency(j, i),
              "graph: adjacency must be symmetric");
    }
  }
}

// Flip unitary F(e_x (x) e_y) = e_y (x) e_x.
CMat flip_unitary(int n) {
  CMat f = CMat::Zero(n * n, n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) f(y * n + x, x * n + y) = 1.0;
  return f;
}

CMat devectorize(const CVec& v, int rows, int cols) {
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = v(c * rows + r);
  return m;
}

CVec vectorize(const CMat& m) {
  CVec v(m.rows() * m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r) v(c * m.rows() + r) = m(r, c);
  return v;
}

// 0 = equal, 1 = adjacent, 2 = distinct non-adjacent.
int relation(const Graph& g, int i, int j) {
  if (i == j) return 0;
  return g.adjacency(i, j) ? 1 : 2;
}

}  // namespace

Graph Graph::from_edges(int n,
                        const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.n = n;
  g.adjacency = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [i, j] : edges) {
    require(i >= 0 && i < n && j >= 0 && j < n, "graph: vertex out of range");
    require(i != j, "graph: self-loop");
    g.adjacency(i, j) = 1;
    g.adjacency(j, i) = 1;
  }
  return g;
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edges(n, e);
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return from_edges(n, e);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return from_edges(n, e);
}

Graph Graph::star(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return from_edges(n, e);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i] += adjacency(i, j);
  return d;
}

QuantumGraphSpace from_classical_graph(const Graph& g) {
  validate(g);
  const int n = g.n;
  std::vector<int> cols;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.adjacency(x, y)) cols.push_back(x * n + y);
  CMat basis = CMat::Zero(n * n, std::max<size_t>(cols.size(), 0));
  for (size_t k = 0; k < cols.size(); ++k) basis(cols[k], k) = 1.0;
  QuantumGraphSpace u;
  u.n = n;
  u.space = subspace_from_spanning(basis, n * n);
  return u;
}

CheckReport check_quantum_graph(const QuantumGraphSpace& u, double tol) {
  CheckReport rep;
  const int n = u.n;
  CVec me = CVec::Zero(n * n);
  for (int x = 0; x < n; ++x) me(x * n + x) = 1.0 / std::sqrt(double(n));
  rep.add("skew", (u.space.projection * me).norm(), tol);
  const CMat f = flip_unitary(n);
  rep.add("symmetric",
          (f * u.space.projection * f - u.space.projection).norm(), tol);
  return rep;
}

OperatorSubspace s_tilde(const QuantumGraphSpace& u) {
  const int n = u.n;
  const int dim = u.space.dim();
  CMat images = CMat::Zero(n * n, std::max(dim, 0));
  for (int k = 0; k < dim; ++k) {
    const CVec xi = u.space.basis.col(k);
    CMat op = CMat::Zero(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) op(y, x) += xi(x * n + y);
    images.col(k) = vectorize(op);
  }
  OperatorSubspace s;
  s.n = n;
  s.space = subspace_from_spanning(images, n * n);
  return s;
}

CheckReport check_perfect_homomorphism_strategy(const BipartiteChannel& c,
                                                const QuantumGraphSpace& u,
                                                const QuantumGraphSpace& v,
                                                double tol) {
  const int n = u.n;
  require(c.dx == n && c.dy == n && c.da == n && c.db == n && v.n == n,
          "check_perfect_homomorphism_strategy: dimension mismatch");
  CheckReport rep;
  const CMat qperp =
      CMat::Identity(n * n, n * n) - v.space.projection;
  const CMat gp = apply_channel(c, u.space.projection);
  rep.add("strategy", std::abs((gp * qperp).trace()), tol);

  // Seeded randomized cross-check over omega = P rho P.
  Rng rng(0x9e3779b97f4a7c15ull);
  double rand_res = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const CMat rho = rng.psd(n * n);
    const CMat omega =
        u.space.projection * rho * u.space.projection;
    rand_res = std::max(
        rand_res, std::abs((apply_channel(c, omega) * qperp).trace()));
  }
  rep.add("random_omega", rand_res, tol);
  return rep;
}

CheckReport check_perfect_iso_strategy(const BipartiteChannel& c,
                                       const QuantumGraphSpace& u,
                                       const QuantumGraphSpace& v,
                                       double tol) {
  CheckReport rep;
  rep.merge(check_bicorrelation(c, tol));
  rep.merge(check_concurrent(c, tol));
  rep.merge(check_perfect_homomorphism_strategy(c, u, v, tol), "fwd_");
  rep.merge(check_perfect_homomorphism_strategy(dual(c), v, u, tol), "bwd_");
  return rep;
}

CheckReport check_biunitary_iso(const BiUnitary& uu,
                                const QuantumGraphSpace& u,
                                const QuantumGraphSpace& v, double tol) {
  const int n = uu.n;
  const int d = uu.d;
  require(u.n == n && v.n == n, "check_biunitary_iso: size mismatch");
  require(d <= 8, "check_biunitary_iso: block dimension capped at 8");
  require(biunitary_residual(uu) <= 100.0 * tol * n * d,
          "check_biunitary_iso: input is not bi-unitary");
  CheckReport rep;

  // Leg operator T = Sum eps_{x,a} (x) eps_{y,b} (x) U_{a,x} U_{b,y}^*
  // on C^n (x) C^n (x) C^d; rows composite (x, y, i).
  const int dim = n * n * d;
  CMat t = CMat::Zero(dim, dim);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (int y = 0; y < n; ++y)
        for (int b = 0; b < n; ++b) {
          const CMat blk = uu.block(a, x) * uu.block(b, y).adjoint();
          t.block((x * n + y) * d, (a * n + b) * d, d, d) += blk;
        }

  const CMat id_d = CMat::Identity(d, d);
  const CMat p = u.space.projection;
  const CMat q = v.space.projection;
  const CMat in2 = CMat::Identity(n * n, n * n);
  rep.add("compression",
          (tensor_product(p, id_d) * t * tensor_product(CMat(in2 - q), id_d))
              .norm(),
          tol);
  rep.add("compression_bar",
          (tensor_product(CMat((in2 - p).conjugate()), id_d) * t *
           tensor_product(CMat(q.conjugate()), id_d))
              .norm(),
          tol);

  // Containment conditions on the operator spaces.
  const OperatorSubspace su = s_tilde(u);
  const OperatorSubspace sv = s_tilde(v);
  const CMat full = uu.full();
  const CMat full_t = uu.block_transpose().full();
  auto contains = [&](const Subspace& small_ops, const Subspace& big_ops,
                      const CMat& w) {
    // Ambient M_{nd}; big space = big_ops (x) M_d.
    const int bd = big_ops.dim();
    CMat big_basis = CMat::Zero(n * d * n * d, std::max(bd * d * d, 0));
    int col = 0;
    for (int k = 0; k < bd; ++k) {
      const CMat s = devectorize(big_ops.basis.col(k), n, n);
      for (int r = 0; r < d; ++r)
        for (int cdx = 0; cdx < d; ++cdx)
          big_basis.col(col++) =
              vectorize(tensor_product(s, matrix_unit(d, r, cdx)));
    }
    const Subspace big = subspace_from_spanning(big_basis, n * d * n * d);
    const int sd = small_ops.dim();
    if (sd == 0) return 0.0;
    CMat img = CMat::Zero(n * d * n * d, sd);
    for (int k = 0; k < sd; ++k) {
      const CMat s = devectorize(small_ops.basis.col(k), n, n);
      img.col(k) =
          vectorize(CMat(w * tensor_product(s, id_d) * w.adjoint()));
    }
    const Subspace image = subspace_from_spanning(img, n * d * n * d);
    return subspace_relate(image, big).u_in_v_residual;
  };
  rep.add("containment_fwd", contains(su.space, sv.space, full), tol);
  rep.add("containment_bwd", contains(sv.space, su.space, full_t), tol);
  return rep;
}

CheckReport check_local_iso(const CMat& u0, const QuantumGraphSpace& u,
                            const QuantumGraphSpace& v, double tol) {
  const int n = u.n;
  require(u0.rows() == n && u0.cols() == n && v.n == n,
          "check_local_iso: size mismatch");
  require((u0.adjoint() * u0 - CMat::Identity(n, n)).norm() <= 100.0 * tol * n,
          "check_local_iso: input is not unitary");
  CheckReport rep;
  const CMat w = tensor_product(u0, u0.conjugate());
  const CMat moved = w * u.space.projection * w.adjoint();
  rep.add("subspace_equal", (moved - v.space.projection).norm(), tol);

  // Induced channel Phi (x) Phi^sharp with Phi(omega) = U omega U*.
  const BipartiteChannel c = from_local_unitaries({{1.0, u0.adjoint()}});
  rep.merge(check_perfect_iso_strategy(c, u, v, tol), "game_");
  return rep;
}

std::optional<std::vector<int>> search_classical_local_iso(const Graph& g,
                                                           const Graph& h) {
  validate(g);
  validate(h);
  if (g.n != h.n) return std::nullopt;
  require(g.n <= 10, "search_classical_local_iso: n capped at 10");
  const int n = g.n;
  std::vector<int> dg = g.degrees(), dh = h.degrees();
  {
    std::vector<int> a = dg, b = dh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  auto backtrack = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int img = 0; img < n; ++img) {
      if (used[img] || dg[x] != dh[img]) continue;
      bool ok = true;
      for (int y = 0; y < x && ok; ++y)
        if (g.adjacency(x, y) != h.adjacency(img, sigma[y])) ok = false;
      if (!ok) continue;
      sigma[x] = img;
      used[img] = true;
      if (self(self, x + 1)) return true;
      used[img] = false;
      sigma[x] = -1;
    }
    return false;
  };
  if (backtrack(backtrack, 0)) return sigma;
  return std::nullopt;
}

CheckReport check_qperm_intertwiner(const MagicSquare& p, const Graph& g,
                                    const Graph& h, double tol) {
  validate(g);
  validate(h);
  const int n = p.n;
  require(g.n == n && h.n == n, "check_qperm_intertwiner: size mismatch");
  const CheckReport magic = check_magic(p, 10.0 * tol);
  require(magic.overall_pass() && magic.info.front().residual <= 100.0 * tol,
          "check_qperm_intertwiner: input is not a quantum permutation");
  const int d = p.d;
  CheckReport rep;

  CMat full = CMat::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      full.block(i * d, k * d, d, d) = p.entries[i][k];
  const CMat ag = g.adjacency.cast<Complex>();
  const CMat ah = h.adjacency.cast<Complex>();
  const CMat id_d = CMat::Identity(d, d);
  rep.add("conjugation",
          (full * tensor_product(ag, id_d) * full.adjoint() -
           tensor_product(ah, id_d))
              .norm(),
          tol);

  double schur = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (relation(h, i, j) != relation(g, k, l))
            schur = std::max(
                schur, (p.entries[i][k] * p.entries[j][l]).norm());
  rep.add("schur_vanishing", schur, tol);
  return rep;
}

MagicSquare permutation_square(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  MagicSquare p;
  p.n = n;
  p.d = 1;
  p.entries.assign(n, std::vector<CMat>(n, CMat::Zero(1, 1)));
  for (int k = 0; k < n; ++k) p.entries[sigma[k]][k](0, 0) = 1.0;
  return p;
}

CMat permutation_unitary(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  CMat u = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) u(sigma[k], k) = 1.0;
  return u;
}

}  // namespace qnsb
