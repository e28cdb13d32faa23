#include "qnsb/aqg.hpp"
#include "qnsb/qgraph.hpp"

#include <cmath>
#include <string>

namespace qnsb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

// n x n matrix unit.
CMat unit(int n, int p, int q) {
  CMat e = CMat::Zero(n, n);
  e(p, q) = 1.0;
  return e;
}

// Row-major vectorization; the GNS coordinates of T in L^2(B(H)) with
// respect to the rank-one basis Theta_{f_k, f_l} put T(k, l) at the
// flat index k*N + l (the identification with H^d (x) H sends
// Theta_{f_k, f_l} to conj(Lambda(f_k)) (x) Lambda(f_l)).
CVec vec_rm(const CMat& t) {
  const CMat tt = t.transpose();
  return Eigen::Map<const CVec>(tt.data(), tt.size());
}

// Tensor flip F (a (x) b) F = b (x) a on C^m (x) C^m.
CMat tensor_flip(int m) {
  CMat f = CMat::Zero(m * m, m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f(i * m + j, j * m + i) = 1.0;
  return f;
}

// Partial transpose on the first tensor factor of M_m (x) M_m.
CMat partial_transpose_first(const CMat& e, int m) {
  CMat r(m * m, m * m);
  for (int i = 0; i < m; ++i)
    for (int p = 0; p < m; ++p)
      for (int j = 0; j < m; ++j)
        for (int q = 0; q < m; ++q)
          r(i * m + p, j * m + q) = e(j * m + p, i * m + q);
  return r;
}

// rho(f_i) = Sum_j f_j (x) u_{j,i} as a concrete (n d) x (n d) matrix.
CMat rho_of_basis(const BiUnitary& u, int n, int i) {
  const int d = u.d;
  const double rn = std::sqrt(static_cast<double>(n));
  CMat r = CMat::Zero(n * d, n * d);
  for (int j = 0; j < n * n; ++j)
    r += rn * tensor_product(unit(n, j / n, j % n), u.blocks[j][i]);
  return r;
}

double max_biunitary_residual(
    const std::vector<std::pair<double, BiUnitary>>& terms) {
  double r = 0.0;
  for (const auto& [w, u] : terms) r = std::max(r, biunitary_residual(u));
  return r;
}

}  // namespace

int gns_star(int n, int k) { return (k % n) * n + k / n; }

CMat gns_star_permutation(int n) {
  const int nn = n * n;
  CMat d = CMat::Zero(nn, nn);
  for (int k = 0; k < nn; ++k) d(gns_star(n, k), k) = 1.0;
  return d;
}

CVec gns_unit(int n) {
  const int nn = n * n;
  CVec c = CVec::Zero(nn);
  const double v = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) c(i * n + i) = v;
  return c;
}

CMat m_matrix(int n) {
  const int nn = n * n;
  const double rn = std::sqrt(static_cast<double>(n));
  CMat m = CMat::Zero(nn, nn * nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        m(i * n + l, (i * n + j) * nn + (j * n + l)) = rn;
  return m;
}

CMat mstar_matrix(int n) { return m_matrix(n).adjoint(); }

CMat gns_left_mult(int n, int p, int q) {
  return tensor_product(unit(n, p, q), CMat::Identity(n, n));
}

CMat gns_right_mult(int n, int p, int q) {
  return tensor_product(CMat::Identity(n, n), unit(n, q, p));
}

QuantumAdjacency schur_multiplier(const CMat& kernel) {
  const int n = static_cast<int>(kernel.rows());
  require(kernel.cols() == n, "schur_multiplier: kernel must be square");
  QuantumAdjacency a;
  a.n = n;
  a.a = CMat::Zero(n * n, n * n);
  for (int k = 0; k < n * n; ++k) a.a(k, k) = kernel(k / n, k % n);
  return a;
}

CMat canonical_loopless_kernel(int n) {
  const double nd = static_cast<double>(n);
  return (CMat::Identity(n, n) - CMat::Constant(n, n, 1.0 / nd)) / nd;
}

BiUnitary gns_conjugation_witness(const CMat& w, double tol) {
  const int n = static_cast<int>(w.rows());
  require(w.cols() == n, "gns_conjugation_witness: W must be square");
  require((w.adjoint() * w - CMat::Identity(n, n)).norm() <= 10 * tol * n,
          "gns_conjugation_witness: W is not unitary");
  const int nn = n * n;
  BiUnitary u;
  u.n = nn;
  u.d = 1;
  u.blocks.assign(nn, std::vector<CMat>(nn, CMat::Zero(1, 1)));
  for (int k = 0; k < nn; ++k)
    for (int i = 0; i < nn; ++i) {
      // tr(f_k^* W^* f_i W) = Tr(eps_{k2,k1} W^* eps_{i1,i2} W)
      const CMat t = unit(n, k % n, k / n) * w.adjoint() *
                     unit(n, i / n, i % n) * w;
      u.blocks[k][i](0, 0) = t.trace();
    }
  return u;
}

CheckReport check_adjacency_axioms(const QuantumAdjacency& a, double tol) {
  const int n = a.n;
  const int nn = n * n;
  require(a.a.rows() == nn && a.a.cols() == nn,
          "check_adjacency_axioms: operator must be n^2 x n^2");
  const CMat m = m_matrix(n);
  const CMat ms = mstar_matrix(n);
  const CMat id = CMat::Identity(nn, nn);
  const double s = std::max(1.0, std::max(a.a.norm(), a.a.norm() * a.a.norm()));

  CheckReport rep;
  rep.add("self_adjoint", (a.a - a.a.adjoint()).norm(), tol * s);
  rep.add("axiom1",
          (m * tensor_product(a.a, a.a) * ms - a.a).norm(), tol * s);
  const CVec eta = gns_unit(n);
  const CMat top = tensor_product(id, CMat(eta.adjoint() * m));  // N x N^3
  const CMat bottom = tensor_product(CMat(ms * eta), id);        // N^3 x N
  const CMat middle = tensor_product(id, tensor_product(a.a, id));
  rep.add("axiom2", (top * middle * bottom - a.a).norm(), tol * s);
  rep.add("axiom3", (m * tensor_product(a.a, id) * ms).norm(), tol * s);
  return rep;
}

CMat e_of_a(const QuantumAdjacency& a) {
  const int n = a.n;
  const int nn = n * n;
  CMat e = CMat::Zero(nn, nn);
  // e[(i,p),(j,q)] = n * A[(p,q),(j,i)]
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < n; ++j)
        for (int q = 0; q < n; ++q)
          e(i * n + p, j * n + q) =
              static_cast<double>(n) * a.a(p * n + q, j * n + i);
  return e;
}

QuantumAdjacency a_of_e(const CMat& e, double tol) {
  const int nn = static_cast<int>(e.rows());
  const int n = static_cast<int>(std::lround(std::sqrt(nn)));
  require(n * n == nn && e.cols() == nn,
          "a_of_e: expected an n^2 x n^2 matrix");
  const double s = scale_of(e);
  require((e - e.adjoint()).norm() <= 10 * tol * s,
          "a_of_e: e is not Hermitian");
  const CMat f = tensor_flip(n);
  require((f * e * f - e).norm() <= 10 * tol * s,
          "a_of_e: e is not flip-invariant");
  QuantumAdjacency a;
  a.n = n;
  a.a = CMat::Zero(nn, nn);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < n; ++j)
        for (int q = 0; q < n; ++q)
          a.a(p * n + q, j * n + i) =
              e(i * n + p, j * n + q) / static_cast<double>(n);
  return a;
}

CMat op_product(const CMat& e1, const CMat& e2) {
  const int nn = static_cast<int>(e1.rows());
  const int n = static_cast<int>(std::lround(std::sqrt(nn)));
  require(n * n == nn && e1.cols() == nn && e2.rows() == nn &&
              e2.cols() == nn,
          "op_product: size mismatch");
  // a |-> a^t is an isomorphism M_n^op -> M_n, so multiply the partial
  // transposes and transpose back.
  return partial_transpose_first(
      CMat(partial_transpose_first(e1, n) * partial_transpose_first(e2, n)),
      n);
}

CMat psi(const CMat& t) {
  const int nn = static_cast<int>(t.rows());
  const int n = static_cast<int>(std::lround(std::sqrt(nn)));
  require(n * n == nn && t.cols() == nn, "psi: expected an n^2 x n^2 matrix");
  CMat out = CMat::Zero(nn, nn);
  // Theta_{f_{(i,j)}, f_{(p,q)}} |-> n eps_{j,i} (x) eps_{p,q}.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          out(j * n + p, i * n + q) +=
              static_cast<double>(n) * t(p * n + q, i * n + j);
  return out;
}

BridgeResult bridge(const QuantumAdjacency& a, double tol) {
  const int n = a.n;
  const int nn = n * n;
  require(a.a.rows() == nn && a.a.cols() == nn,
          "bridge: operator must be n^2 x n^2");
  // S' = span{a A b : a, b in M_X} with both factors acting by left
  // multiplication on L^2(M_X).
  CMat spanning(nn * nn, nn * nn);
  int col = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          spanning.col(col++) =
              vec_rm(CMat(gns_left_mult(n, p, q) * a.a *
                          gns_left_mult(n, r, s)));
  BridgeResult out;
  out.s_prime = subspace_from_spanning(spanning, nn * nn);
  out.s_prime_dim = out.s_prime.dim();
  // U-tilde coordinatizes Psi(S') after the star flip on the first leg;
  // in GNS coordinates that is exactly the row-major vectorization of
  // S', so the two subspaces coincide.
  out.u_tilde.n = n;
  out.u_tilde.space = out.s_prime;
  const CMat pull = tensor_product(gns_star_permutation(n),
                                   CMat::Identity(nn, nn));
  out.u_g = subspace_from_spanning(CMat(pull * out.s_prime.basis), nn * nn);
  out.report = check_pseudograph(out.u_tilde, tol);
  return out;
}

CheckReport check_pseudograph(const PseudoGraph& w, double tol) {
  const int n = w.n;
  const int nn = n * n;
  require(w.space.basis.rows() == nn * nn,
          "check_pseudograph: ambient dimension must be n^4");
  CheckReport rep;

  CVec s0 = CVec::Zero(nn * nn);
  for (int k = 0; k < nn; ++k) s0(k * nn + k) = 1.0;
  s0 /= s0.norm();
  rep.add("skew", (w.space.projection * s0).norm(), tol);

  const int dim = w.space.dim();
  // d o f: conjugate coordinates, then flip the two legs.
  CMat df(nn * nn, std::max(dim, 1));
  df.setZero();
  for (int c = 0; c < dim; ++c)
    for (int k = 0; k < nn; ++k)
      for (int l = 0; l < nn; ++l)
        df(k * nn + l, c) = std::conj(w.space.basis(l * nn + k, c));
  const Subspace df_span = subspace_from_spanning(
      dim > 0 ? CMat(df.leftCols(dim)) : CMat(nn * nn, 0), nn * nn);
  const double r_df = subspace_relate(w.space, df_span).equal_residual;
  rep.add("df_invariant", r_df, tol);

  // Equivalent form: J0(Lambda(x) (x) Lambda(y)) = Lambda(y^*) (x)
  // Lambda(x^*) leaves the star-pulled-back space invariant.
  const CMat pull = tensor_product(gns_star_permutation(n),
                                   CMat::Identity(nn, nn));
  const CMat ub = pull * w.space.basis;
  CMat j0(nn * nn, std::max(dim, 1));
  j0.setZero();
  for (int c = 0; c < dim; ++c)
    for (int k = 0; k < nn; ++k)
      for (int l = 0; l < nn; ++l)
        j0(k * nn + l, c) = std::conj(
            ub(gns_star(n, l) * nn + gns_star(n, k), c));
  const Subspace u_span = subspace_from_spanning(ub, nn * nn);
  const Subspace j0_span = subspace_from_spanning(
      dim > 0 ? CMat(j0.leftCols(dim)) : CMat(nn * nn, 0), nn * nn);
  const double r_j0 = subspace_relate(u_span, j0_span).equal_residual;
  rep.add("j0_invariant", r_j0, tol);
  rep.add("invariance_agreement", std::abs(r_df - r_j0), tol);
  return rep;
}

CheckReport intertwiner_check(const BiUnitary& u, const QuantumAdjacency& a1,
                              const QuantumAdjacency& a2, double tol) {
  const int n = a1.n;
  const int nn = n * n;
  require(a2.n == n, "intertwiner_check: adjacency sizes differ");
  require(u.n == nn, "intertwiner_check: bi-unitary must be indexed by the "
                     "n^2 GNS basis");
  const int d = u.d;
  const CMat ufull = u.full();
  const CMat idd = CMat::Identity(d, d);
  const double s =
      std::max({1.0, a1.a.norm(), a2.a.norm(), ufull.norm()});

  CheckReport rep;
  rep.add("intertwine",
          (tensor_product(a2.a, idd) * ufull -
           ufull * tensor_product(a1.a, idd))
              .norm(),
          tol * s);

  std::vector<CMat> rho(nn);
  for (int i = 0; i < nn; ++i) rho[i] = rho_of_basis(u, n, i);
  const double rn = std::sqrt(static_cast<double>(n));

  double mult = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      // f_{(a,b)} f_{(c,e)} = sqrt(n) delta_{b,c} f_{(a,e)}
      CMat target = CMat::Zero(n * d, n * d);
      if (i % n == j / n) target = rn * rho[(i / n) * n + j % n];
      mult = std::max(mult, (rho[i] * rho[j] - target).norm());
    }
  rep.add("multiplicative", mult, tol * s);

  double star = 0.0;
  for (int i = 0; i < nn; ++i)
    star = std::max(star,
                    (rho[gns_star(n, i)] - CMat(rho[i].adjoint())).norm());
  rep.add("star", star, tol * s);

  CMat unit_img = CMat::Zero(n * d, n * d);
  for (int p = 0; p < n; ++p) unit_img += rho[p * n + p] / rn;
  rep.add("unital",
          (unit_img - CMat::Identity(n * d, n * d)).norm(), tol * s);

  double tp = 0.0;
  for (int i = 0; i < nn; ++i) {
    CMat partial = CMat::Zero(d, d);
    for (int p = 0; p < n; ++p) partial += u.blocks[p * n + p][i];
    if (i / n == i % n) partial -= idd;
    tp = std::max(tp, partial.norm());
  }
  rep.add("trace_preserving", tp, tol * s);
  return rep;
}

BipartiteChannel tilde_gamma(
    const std::vector<std::pair<double, BiUnitary>>& terms, double tol) {
  require(!terms.empty(), "tilde_gamma: no terms");
  const int n = terms.front().second.n;
  require(max_biunitary_residual(terms) <= 10 * tol * n,
          "tilde_gamma: term is not bi-unitary");

  const BipartiteChannel g = from_biunitary_trace(terms, tol);
  // Companion-channel index relation: the entry at row (k,l,i,j) equals
  // the primal Choi entry at ((j,j',l,l'), (i,i',k,k')).
  BipartiteChannel tg;
  tg.dx = tg.dy = tg.da = tg.db = n;
  const int nd = n * n * n * n;
  tg.choi = CMat::Zero(nd, nd);
  auto idx = [n](int p, int q, int r, int s) {
    return ((p * n + q) * n + r) * n + s;
  };
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int kp = 0; kp < n; ++kp)
            for (int lp = 0; lp < n; ++lp)
              for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp)
                  tg.choi(idx(k, l, i, j), idx(kp, lp, ip, jp)) =
                      g.choi(idx(j, jp, l, lp), idx(i, ip, k, kp));

  // Independent construction check: recompute every entry from the
  // defining traces tau(u_{l,j}^* u_{k,i} u_{k',i'}^* u_{l',j'}).
  double resid = 0.0;
  const double s = scale_of(tg.choi);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int kp = 0; kp < n; ++kp)
            for (int lp = 0; lp < n; ++lp)
              for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) {
                  Complex direct = 0.0;
                  for (const auto& [w, uu] : terms)
                    direct += w *
                              (uu.blocks[l][j].adjoint() *
                               uu.blocks[k][i] *
                               uu.blocks[kp][ip].adjoint() *
                               uu.blocks[lp][jp])
                                  .trace() /
                              static_cast<double>(uu.d);
                  resid = std::max(
                      resid, std::abs(tg.choi(idx(k, l, i, j),
                                              idx(kp, lp, ip, jp)) -
                                      direct));
                }
  require(resid <= 1e-10 * s,
          "tilde_gamma: companion-channel identity violated");
  return tg;
}

CheckReport pseudo_iso_check(
    const std::vector<std::pair<double, BiUnitary>>& terms,
    const QuantumAdjacency& a1, const QuantumAdjacency& a2, double tol) {
  require(!terms.empty(), "pseudo_iso_check: no terms");
  const int n = a1.n;
  const int nn = n * n;
  require(a2.n == n, "pseudo_iso_check: adjacency sizes differ");
  require(terms.front().second.n == nn,
          "pseudo_iso_check: bi-unitary must be indexed by the GNS basis");

  const BridgeResult b1 = bridge(a1, tol);
  const BridgeResult b2 = bridge(a2, tol);
  QuantumGraphSpace w1{nn, b1.u_tilde.space};
  QuantumGraphSpace w2{nn, b2.u_tilde.space};

  const BipartiteChannel g = from_biunitary_trace(terms, tol);
  const BipartiteChannel tg = tilde_gamma(terms, tol);

  CheckReport rep;
  rep.merge(check_perfect_homomorphism_strategy(g, w1, w2, tol), "fwd_");
  rep.merge(check_perfect_homomorphism_strategy(tg, w2, w1, tol), "bwd_");

  // Per-term zero-compression forms on C^{N} (x) C^{N} (x) C^d.
  const CMat p1 = w1.space.projection;
  const CMat p2 = w2.space.projection;
  const CMat id_nn = CMat::Identity(nn, nn);
  const CMat id_amb = CMat::Identity(nn * nn, nn * nn);
  double fwd = 0.0;
  double bwd = 0.0;
  for (const auto& [w, uu] : terms) {
    const int d = uu.d;
    const CMat idd = CMat::Identity(d, d);
    CMat u23 = CMat::Zero(nn * nn * d, nn * nn * d);
    CMat ubar13 = CMat::Zero(nn * nn * d, nn * nn * d);
    for (int k = 0; k < nn; ++k)
      for (int i = 0; i < nn; ++i) {
        const CMat eki = unit(nn, k, i);
        u23 += tensor_product(id_nn, tensor_product(eki, uu.blocks[k][i]));
        ubar13 += tensor_product(
            eki, tensor_product(id_nn, CMat(uu.blocks[k][i].conjugate())));
      }
    const CMat t = u23 * ubar13;
    fwd = std::max(fwd, (tensor_product(CMat(id_amb - p2), idd) * t *
                         tensor_product(p1, idd))
                            .norm());
    bwd = std::max(bwd,
                   (tensor_product(CMat(id_amb - p1), idd) *
                    CMat(u23.adjoint() * ubar13.adjoint()) *
                    tensor_product(p2, idd))
                       .norm());
  }
  rep.add("fwd_compression", fwd, tol);
  rep.add("bwd_compression", bwd, tol);
  return rep;
}

CheckReport verify_identities(const BiUnitary& u, const QuantumAdjacency& a1,
                              const QuantumAdjacency& a2, double tol) {
  const int n = a1.n;
  const int nn = n * n;
  require(a2.n == n, "verify_identities: adjacency sizes differ");
  require(u.n == nn, "verify_identities: bi-unitary must be indexed by the "
                     "GNS basis");
  const int d = u.d;
  const CMat ufull = u.full();
  const CMat idd = CMat::Identity(d, d);
  const CMat id_nn = CMat::Identity(nn, nn);
  const CMat dperm = gns_star_permutation(n);
  const double s =
      std::max({1.0, a1.a.norm(), a2.a.norm(), ufull.norm()});
  CheckReport rep;

  const QuantumAdjacency* as[2] = {&a1, &a2};
  std::vector<CMat> projections(2);
  for (int r = 0; r < 2; ++r) {
    const QuantumAdjacency& ar = *as[r];
    const CMat e = e_of_a(ar);
    const std::string suffix = "_" + std::to_string(r + 1);

    // (i): coordinates of A_r match those of e_r.
    CVec rhs = CVec::Zero(nn * nn);
    for (int k = 0; k < nn; ++k)
      for (int l = 0; l < nn; ++l)
        rhs(k * nn + l) =
            e((l % n) * n + k / n, (l / n) * n + k % n) /
            static_cast<double>(n);
    rep.add("vec_e" + suffix, (vec_rm(ar.a) - rhs).norm(), tol * s);

    // (ii): p_r = (Jbar (x) J) e_r (Jbar (x) J) with e_r acting on
    // H^d (x) H via pi^op (x) pi, pi(x) = x (x) I, pi^op(a) = pi(a)^t.
    CMat e_op = CMat::Zero(nn * nn, nn * nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // A_r(eps_{j,i}) as an n x n matrix from the GNS coordinates.
        const CVec c = ar.a.col(j * n + i);
        CMat aji = CMat::Zero(n, n);
        for (int k = 0; k < nn; ++k) aji(k / n, k % n) = c(k);
        e_op += static_cast<double>(n) *
                tensor_product(
                    CMat(tensor_product(unit(n, i, j), CMat::Identity(n, n))
                             .transpose()),
                    tensor_product(aji, CMat::Identity(n, n)));
      }
    projections[r] = bridge(ar, tol).s_prime.projection;
    const CMat dd = tensor_product(dperm, dperm);
    rep.add("projection_conj" + suffix,
            (projections[r] - dd * e_op.conjugate() * dd).norm(), tol * s);

    // (iii): p_r applied to the unit vector recovers A_r.
    const CVec c0 = gns_unit(n);
    const CVec u0 = tensor_product(CMat(c0), CMat(c0));
    rep.add("unit_image" + suffix,
            (projections[r] * u0 - vec_rm(ar.a)).norm(), tol * s);
  }

  // Leg factorization: U tilde = U_{2,3} V_{1,3} on H^d (x) H (x) K.
  CMat v_full = u.block_transpose().full().adjoint();
  CMat ut = CMat::Zero(nn * nn * d, nn * nn * d);
  for (int kb = 0; kb < nn; ++kb)
    for (int lb = 0; lb < nn; ++lb) {
      const CMat m =
          ufull * tensor_product(unit(nn, kb, lb), idd) * ufull.adjoint();
      for (int k0 = 0; k0 < nn; ++k0)
        for (int l0 = 0; l0 < nn; ++l0)
          ut.block((k0 * nn + l0) * d, (kb * nn + lb) * d, d, d) =
              m.block(k0 * d, l0 * d, d, d);
    }
  const CMat u23 = tensor_product(id_nn, ufull);
  CMat v13 = CMat::Zero(nn * nn * d, nn * nn * d);
  for (int k = 0; k < nn; ++k)
    for (int i = 0; i < nn; ++i)
      v13 += tensor_product(unit(nn, k, i),
                            tensor_product(id_nn, v_full.block(k * d, i * d,
                                                               d, d)));
  rep.add("leg_factorization", (ut - u23 * v13).norm(), tol * s * s);

  // V = (F^{-1} (x) 1) U (F (x) 1), F the star permutation.
  const CMat dfull = tensor_product(dperm, idd);
  rep.add("v_f_relation", (v_full - dfull * ufull * dfull).norm(), tol * s);

  // The unit is fixed by U and V.
  const CMat cu = tensor_product(CMat(gns_unit(n)), idd);
  rep.add("fix_u", (ufull * cu - cu).norm(), tol * s);
  rep.add("fix_v", (v_full * cu - cu).norm(), tol * s);

  rep.add("conclusion",
          (ufull * tensor_product(a1.a, idd) -
           tensor_product(a2.a, idd) * ufull)
              .norm(),
          tol * s);
  return rep;
}

}  // namespace qnsb
