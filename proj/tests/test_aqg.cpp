#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qnsb/aqg.hpp"
#include "qnsb/qgraph.hpp"
#include "qnsb/random.hpp"

using namespace qnsb;

namespace {

CVec unit_vec(int dim, int k) {
  CVec e = CVec::Zero(dim);
  e(k) = 1.0;
  return e;
}

// GNS coordinates of an n x n matrix: x_{i,j} / sqrt(n) at flat i*n+j.
CVec gns_coords(const CMat& x) {
  const int n = static_cast<int>(x.rows());
  CVec c(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i * n + j) = x(i, j);
  return c / std::sqrt(static_cast<double>(n));
}

BiUnitary identity_biunitary(int n, int d) {
  BiUnitary u;
  u.n = n;
  u.d = d;
  u.blocks.assign(n, std::vector<CMat>(n, CMat::Zero(d, d)));
  for (int k = 0; k < n; ++k) u.blocks[k][k] = CMat::Identity(d, d);
  return u;
}

// Rank-one symmetric kernel v v^t / n for unit v with zero entry sum;
// n K is then an orthogonal projection with zero row sums.
CMat rank_one_kernel(int n, const Eigen::VectorXd& v) {
  return (v * v.transpose()).cast<Complex>() / static_cast<double>(n);
}

QuantumAdjacency identity_over_nsq(int n) {
  QuantumAdjacency a;
  a.n = n;
  a.a = CMat::Identity(n * n, n * n) /
        static_cast<double>(n * n);
  return a;
}

}  // namespace

TEST_CASE("multiplication coproduct: frozen 2x2 values and composition") {
  const CMat ms = mstar_matrix(2);

  // m*(eps_11) = 2(eps_11 (x) eps_11 + eps_12 (x) eps_21): in GNS
  // coordinates m* e_{(0,0)} = sqrt(2) (e_0 + e_6).
  const CVec w = ms * unit_vec(4, 0);
  CVec expected = CVec::Zero(16);
  expected(0) = std::sqrt(2.0);
  expected(6) = std::sqrt(2.0);
  CHECK((w - expected).norm() <= 1e-12);

  // m*(1) = 2 Sum eps_{i,j} (x) eps_{j,i}.
  const CVec w1 = ms * CVec(gns_unit(2));
  CVec exp1 = CVec::Zero(16);
  exp1(0) = exp1(6) = exp1(9) = exp1(15) = 1.0;
  CHECK((w1 - exp1).norm() <= 1e-12);

  for (int n = 1; n <= 4; ++n) {
    const CMat m = m_matrix(n);
    const CMat mst = mstar_matrix(n);
    // m m* = n^2 id.
    CHECK((m * mst -
           static_cast<double>(n * n) * CMat::Identity(n * n, n * n))
              .norm() <= 1e-12);
    // Adjointness on the full basis.
    CHECK((mst - m.adjoint()).norm() <= 1e-12);
  }
}

TEST_CASE("m implements multiplication; left mult and star in coordinates") {
  Rng rng(11);
  for (int n = 2; n <= 4; ++n) {
    const CMat x = rng.ginibre(n, n);
    const CMat y = rng.ginibre(n, n);
    const CVec prod =
        m_matrix(n) * tensor_product(CMat(gns_coords(x)), CMat(gns_coords(y)));
    CHECK((prod - gns_coords(CMat(x * y))).norm() <= 1e-12);

    const CMat d = gns_star_permutation(n);
    CHECK((d * gns_coords(x) - gns_coords(x.transpose())).norm() <= 1e-12);
    CHECK((d * d - CMat::Identity(n * n, n * n)).norm() <= 1e-14);

    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        CMat e = CMat::Zero(n, n);
        e(p, q) = 1.0;
        CHECK((gns_left_mult(n, p, q) * gns_coords(x) -
               gns_coords(CMat(e * x)))
                  .norm() <= 1e-12);
        CHECK((gns_right_mult(n, p, q) * gns_coords(x) -
               gns_coords(CMat(x * e)))
                  .norm() <= 1e-12);
      }
  }
}

TEST_CASE("adjacency axioms: zero, canonical loopless kernel, identity") {
  for (int n = 2; n <= 3; ++n) {
    QuantumAdjacency zero{n, CMat::Zero(n * n, n * n)};
    CHECK(check_adjacency_axioms(zero).overall_pass());

    const QuantumAdjacency canon =
        schur_multiplier(canonical_loopless_kernel(n));
    CHECK(check_adjacency_axioms(canon).overall_pass());

    const CheckReport rid = check_adjacency_axioms(identity_over_nsq(n));
    CHECK(rid.find("axiom1")->pass);
    CHECK(rid.find("axiom2")->pass);
    CHECK_FALSE(rid.find("axiom3")->pass);
    // All-loops residual is at the scale of n * ||id/n^2||.
    CHECK(rid.find("axiom3")->residual > 0.5);
  }

  // Rank-one symmetric projection kernel with zero row sums (n = 3).
  Eigen::VectorXd v(3);
  v << 1.0, -1.0, 0.0;
  v.normalize();
  CHECK(check_adjacency_axioms(schur_multiplier(rank_one_kernel(3, v)))
            .overall_pass());
}

TEST_CASE("Schur multiplication by a 0/1 adjacency matrix is not axiomatic") {
  // Entrywise multiplication against the literal adjacency matrix of a
  // classical graph: the degree-normalization is missing, so the
  // idempotency and looplessness conditions fail while self-adjointness
  // and the bimodule condition hold.
  const Graph c4 = Graph::cycle(4);
  CMat k = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (c4.adjacency(i, j) != 0) k(i, j) = 1.0;
  const CheckReport rep = check_adjacency_axioms(schur_multiplier(k));
  CHECK(rep.find("self_adjoint")->pass);
  CHECK(rep.find("axiom2")->pass);
  CHECK_FALSE(rep.find("axiom1")->pass);
  CHECK_FALSE(rep.find("axiom3")->pass);
}

TEST_CASE("e_of_a, psi, a_of_e and the op-product") {
  Rng rng(23);
  for (int n = 2; n <= 3; ++n) {
    const int nn = n * n;
    // psi agrees with the e construction as a linear map.
    const CMat t = rng.ginibre(nn, nn);
    CHECK((psi(t) - e_of_a(QuantumAdjacency{n, t})).norm() <= 1e-12);
    CHECK(psi(CMat::Zero(nn, nn)).norm() == 0.0);

    // Round trip through a Hermitian, flip-compatible e.
    const CMat h = rng.hermitian(nn);
    const CMat e = e_of_a(QuantumAdjacency{n, h});
    CMat esym = (e + e.adjoint()) / 2.0;
    // Symmetrize under the leg flip.
    CMat f = CMat::Zero(nn, nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i * n + j, j * n + i) = 1.0;
    esym = (esym + f * esym * f) / 2.0;
    const QuantumAdjacency back = a_of_e(esym);
    CHECK((e_of_a(back) - esym).norm() <= 1e-12);

    // op-product basics: unit, and the elementary-tensor rule
    // (a (x) b)(c (x) d) = (ca) (x) (bd) on 2x2 matrix units.
    const CMat one = CMat::Identity(nn, nn);
    CHECK((op_product(one, e) - e).norm() <= 1e-12);
    CHECK((op_product(e, one) - e).norm() <= 1e-12);
  }

  // Hand expansion for n = 2 units: (eps_01 (x) 1) . (eps_10 (x) 1)
  // = (eps_10 eps_01) (x) 1 = eps_11 (x) 1.
  CMat e01 = CMat::Zero(2, 2), e10 = CMat::Zero(2, 2), e11 = CMat::Zero(2, 2);
  e01(0, 1) = 1.0;
  e10(1, 0) = 1.0;
  e11(1, 1) = 1.0;
  const CMat id2 = CMat::Identity(2, 2);
  CHECK((op_product(tensor_product(e01, id2), tensor_product(e10, id2)) -
         tensor_product(e11, id2))
            .norm() <= 1e-12);

  // For axiom-valid A, e is a self-adjoint, flip-invariant op-idempotent.
  for (int n = 2; n <= 3; ++n) {
    const int nn = n * n;
    const CMat e =
        e_of_a(schur_multiplier(canonical_loopless_kernel(n)));
    CHECK((e - e.adjoint()).norm() <= 1e-9);
    CMat f = CMat::Zero(nn, nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i * n + j, j * n + i) = 1.0;
    CHECK((f * e * f - e).norm() <= 1e-9);
    CHECK((op_product(e, e) - e).norm() <= 1e-9);
  }
  Eigen::VectorXd v(3);
  v << 1.0, -1.0, 0.0;
  v.normalize();
  const CMat e3 = e_of_a(schur_multiplier(rank_one_kernel(3, v)));
  CHECK((op_product(e3, e3) - e3).norm() <= 1e-9);
}

TEST_CASE("bridge: spans, dimensions and pseudo-graph verdicts") {
  // Zero operator: all spaces vanish.
  const BridgeResult b0 = bridge(QuantumAdjacency{2, CMat::Zero(4, 4)});
  CHECK(b0.s_prime_dim == 0);
  CHECK(b0.u_g.dim() == 0);
  CHECK(b0.report.overall_pass());

  for (int n = 2; n <= 3; ++n) {
    const BridgeResult b =
        bridge(schur_multiplier(canonical_loopless_kernel(n)));
    // For a diagonal (Schur) operator the two-sided span factors into
    // n^2 matrix units times the row space of the kernel.
    CHECK(b.s_prime_dim == n * n * (n - 1));
    CHECK(b.report.overall_pass());
  }

  // Axiom (3) violated: loops survive and skewness fails.
  const BridgeResult bid = bridge(identity_over_nsq(2));
  CHECK_FALSE(bid.report.find("skew")->pass);
}

TEST_CASE("check_pseudograph: classical spans, loop span, random agreement") {
  // Classical span {eps_{x,x} (x) eps_{y,y} : x ~ y} for the 4-cycle.
  const Graph c4 = Graph::cycle(4);
  const int n = 4, nn = n * n;
  std::vector<CVec> cols;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (c4.adjacency(x, y) != 0)
        cols.push_back(unit_vec(nn * nn, (x * n + x) * nn + (y * n + y)));
  CMat span(nn * nn, static_cast<int>(cols.size()));
  for (int c = 0; c < span.cols(); ++c) span.col(c) = cols[c];
  const PseudoGraph wg{n, subspace_from_spanning(span, nn * nn)};
  CHECK(check_pseudograph(wg).overall_pass());

  // span{Lambda(f_1) (x) Lambda(f_1)} contains a loop: skew fails.
  const PseudoGraph loop{2, subspace_from_spanning(
                                CMat(unit_vec(16, 0)), 16)};
  const CheckReport lrep = check_pseudograph(loop);
  CHECK_FALSE(lrep.find("skew")->pass);

  // The two invariance formulations agree on random candidates, both
  // invariant (span closed under the conjugate-flip) and generic.
  Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + (trial % 2);
    const int amb = m * m * m * m;
    const int dim = 1 + rng.below(4);
    CMat g = rng.ginibre(amb, dim);
    if (trial % 2 == 0) {
      // Close the span under the conjugate-coordinates-then-flip map.
      CMat closed(amb, 2 * dim);
      closed.leftCols(dim) = g;
      for (int c = 0; c < dim; ++c)
        for (int k = 0; k < m * m; ++k)
          for (int l = 0; l < m * m; ++l)
            closed(k * m * m + l, dim + c) =
                std::conj(g(l * m * m + k, c));
      g = closed;
    }
    const PseudoGraph cand{m, subspace_from_spanning(g, amb)};
    const CheckReport rep = check_pseudograph(cand);
    CHECK(rep.find("invariance_agreement")->pass);
    CHECK(rep.find("df_invariant")->pass ==
          rep.find("j0_invariant")->pass);
    if (trial % 2 == 0) CHECK(rep.find("df_invariant")->pass);
  }
}

TEST_CASE("intertwiner_check: identity and mismatched adjacencies") {
  const QuantumAdjacency canon2 =
      schur_multiplier(canonical_loopless_kernel(2));
  const BiUnitary id4 = identity_biunitary(4, 1);
  CHECK(intertwiner_check(id4, canon2, canon2).overall_pass());

  Eigen::VectorXd v(3);
  v << 1.0, -1.0, 0.0;
  v.normalize();
  const QuantumAdjacency canon3 =
      schur_multiplier(canonical_loopless_kernel(3));
  const QuantumAdjacency rk1 = schur_multiplier(rank_one_kernel(3, v));
  const BiUnitary id9 = identity_biunitary(9, 1);
  const CheckReport rep = intertwiner_check(id9, canon3, rk1);
  CHECK(rep.find("multiplicative")->pass);
  CHECK(rep.find("star")->pass);
  CHECK(rep.find("unital")->pass);
  CHECK(rep.find("trace_preserving")->pass);
  CHECK_FALSE(rep.find("intertwine")->pass);
  CHECK(rep.find("intertwine")->residual ==
        doctest::Approx((canon3.a - rk1.a).norm()).epsilon(1e-10));
}

TEST_CASE("intertwiner_check: conjugation witness on permuted kernels") {
  // W a permutation unitary; the induced x |-> W* x W witness maps the
  // Schur operator with kernel K1 to the one with the permuted kernel.
  const std::vector<int> sigma{1, 2, 0};
  const CMat w = permutation_unitary(sigma);
  const BiUnitary u = gns_conjugation_witness(w);
  CHECK(biunitary_residual(u) <= 1e-12);

  Eigen::VectorXd v(3);
  v << 1.0, -1.0, 0.0;
  v.normalize();
  const CMat k1 = rank_one_kernel(3, v);
  CMat k2 = CMat::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k2(i, j) = k1(sigma[i], sigma[j]);
  const QuantumAdjacency a1 = schur_multiplier(k1);
  const QuantumAdjacency a2 = schur_multiplier(k2);
  CHECK(check_adjacency_axioms(a2).overall_pass());

  const CheckReport fwd = intertwiner_check(u, a1, a2);
  const CheckReport bwd = intertwiner_check(u, a2, a1);
  CHECK(fwd.find("multiplicative")->pass);
  CHECK(fwd.find("star")->pass);
  CHECK(fwd.find("unital")->pass);
  CHECK(fwd.find("trace_preserving")->pass);
  CHECK((fwd.find("intertwine")->pass != bwd.find("intertwine")->pass ||
         fwd.find("intertwine")->pass));
}

TEST_CASE("tilde_gamma: identity, scalar and random bi-unitary inputs") {
  // U = I gives the identity companion channel.
  const std::vector<std::pair<double, BiUnitary>> id_terms{
      {1.0, identity_biunitary(4, 1)}};
  const BipartiteChannel tg = tilde_gamma(id_terms);
  Rng rng(7);
  const CMat rho = rng.psd(16);
  CHECK((apply_channel(tg, rho) - rho).norm() <= 1e-10);

  // d = 1 scalar diagonal unitary.
  BiUnitary diag = identity_biunitary(4, 1);
  for (int k = 0; k < 4; ++k)
    diag.blocks[k][k](0, 0) = std::exp(Complex(0.0, 0.37 * (k + 1)));
  CHECK_NOTHROW(tilde_gamma({{1.0, diag}}));

  // Random block bi-unitary: the construction-time consistency check
  // between the index-arithmetic route and the defining traces passes.
  const BiUnitary rb = random_biunitary(4, 2, 2024);
  CHECK_NOTHROW(tilde_gamma({{1.0, rb}}));

  // Non-bi-unitary input is rejected.
  BiUnitary bad = identity_biunitary(4, 1);
  bad.blocks[0][0](0, 0) = 2.0;
  CHECK_THROWS_AS(tilde_gamma({{1.0, bad}}), InputError);
}

TEST_CASE("pseudo_iso_check: positive and negative witnesses (n = 2)") {
  const QuantumAdjacency canon =
      schur_multiplier(canonical_loopless_kernel(2));
  const std::vector<std::pair<double, BiUnitary>> id_terms{
      {1.0, identity_biunitary(4, 1)}};
  CHECK(pseudo_iso_check(id_terms, canon, canon).overall_pass());

  // Permutation-conjugation witness; the canonical kernel is invariant
  // under permutations, so the same adjacency is matched to itself.
  const std::vector<int> swap01{1, 0};
  const BiUnitary pw = gns_conjugation_witness(permutation_unitary(swap01));
  CHECK(pseudo_iso_check({{1.0, pw}}, canon, canon).overall_pass());

  // Zero adjacency on the other side: spaces cannot match.
  const QuantumAdjacency zero{2, CMat::Zero(4, 4)};
  const CheckReport neg = pseudo_iso_check(id_terms, canon, zero);
  CHECK_FALSE(neg.overall_pass());
  CHECK_FALSE(neg.find("fwd_compression")->pass);
}

TEST_CASE("verify_identities: identity witness") {
  for (int n = 2; n <= 3; ++n) {
    const QuantumAdjacency canon =
        schur_multiplier(canonical_loopless_kernel(n));
    const BiUnitary id = identity_biunitary(n * n, 1);
    const CheckReport rep = verify_identities(id, canon, canon);
    for (const auto& item : rep.items) {
      INFO(item.name);
      CHECK(item.pass);
      CHECK(item.residual <= 1e-10);
    }
  }
}

TEST_CASE("verify_identities: conclusion tracks the intertwining relation") {
  Eigen::VectorXd v(3);
  v << 1.0, -1.0, 0.0;
  v.normalize();
  const QuantumAdjacency canon3 =
      schur_multiplier(canonical_loopless_kernel(3));
  const QuantumAdjacency rk1 = schur_multiplier(rank_one_kernel(3, v));

  // Mismatched pair under the identity witness: every structural
  // identity holds, only the conclusion fails.
  const CheckReport neg =
      verify_identities(identity_biunitary(9, 1), canon3, rk1);
  CHECK(neg.find("leg_factorization")->pass);
  CHECK(neg.find("v_f_relation")->pass);
  CHECK(neg.find("fix_u")->pass);
  CHECK_FALSE(neg.find("conclusion")->pass);

  // Scalar conjugation witness between permuted rank-one kernels.
  const std::vector<int> sigma{1, 2, 0};
  const BiUnitary u = gns_conjugation_witness(permutation_unitary(sigma));
  CMat k2 = CMat::Zero(3, 3);
  const CMat k1 = rank_one_kernel(3, v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k2(i, j) = k1(sigma[i], sigma[j]);
  const QuantumAdjacency a2 = schur_multiplier(k2);

  CheckReport pos = verify_identities(u, schur_multiplier(k1), a2);
  CheckReport swapped = verify_identities(u, a2, schur_multiplier(k1));
  const bool pos_ok = pos.overall_pass();
  const bool swapped_ok = swapped.overall_pass();
  // One orientation of the permutation matches; structural identities
  // hold in both.
  CHECK((pos_ok || swapped_ok));
  CHECK(pos.find("leg_factorization")->pass);
  CHECK(pos.find("v_f_relation")->pass);
  CHECK(pos.find("projection_conj_1")->pass);
  CHECK(pos.find("unit_image_1")->pass);
}
