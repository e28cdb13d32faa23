#include <doctest.h>

#include "qnsb/qgraph.hpp"
#include "qnsb/random.hpp"

using namespace qnsb;

namespace {

// Haar-random real orthogonal matrix (QR of a real Gaussian with sign fix).
// Conjugating a flip-symmetric space by U (x) conj(U) yields a flip-symmetric
// space again only when U can be chosen real; orthogonal witnesses therefore
// keep the moved space a valid quantum graph, which the isomorphism
// verifiers require of both inputs.
CMat random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gauss();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r =
      qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q.cast<std::complex<double>>();
}

}  // namespace

TEST_CASE("graph constructors and degrees") {
  const Graph c4 = Graph::cycle(4);
  CHECK(c4.degrees() == std::vector<int>{2, 2, 2, 2});
  const Graph p4 = Graph::path(4);
  CHECK(p4.degrees() == std::vector<int>{1, 2, 2, 1});
  const Graph star = Graph::star(4);  // K_{1,3}
  CHECK(star.degrees() == std::vector<int>{3, 1, 1, 1});
  CHECK(Graph::complete(5).degrees() == std::vector<int>(5, 4));
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), InputError);
}

TEST_CASE("from_classical_graph: dimensions and quantum-graph axioms") {
  const QuantumGraphSpace empty =
      from_classical_graph(Graph::from_edges(3, {}));
  CHECK(empty.space.dim() == 0);
  CHECK(check_quantum_graph(empty).overall_pass());

  const QuantumGraphSpace k2 = from_classical_graph(Graph::complete(2));
  CHECK(k2.space.dim() == 2);
  CHECK(check_quantum_graph(k2).overall_pass());

  const QuantumGraphSpace c4 = from_classical_graph(Graph::cycle(4));
  CHECK(c4.space.dim() == 8);
  CHECK(check_quantum_graph(c4).overall_pass());
  // Projection is diagonal in the product basis.
  CMat offdiag = c4.space.projection;
  for (int i = 0; i < 16; ++i) offdiag(i, i) = 0.0;
  CHECK(offdiag.norm() < 1e-12);
}

TEST_CASE("check_quantum_graph rejects non-skew and non-symmetric spaces") {
  const int n = 2;
  CMat loop = CMat::Zero(n * n, 1);
  loop(0, 0) = 1.0;  // e_0 (x) e_0
  QuantumGraphSpace bad1{n, subspace_from_spanning(loop, n * n)};
  const CheckReport r1 = check_quantum_graph(bad1);
  CHECK_FALSE(r1.find("skew")->pass);
  CHECK(r1.find("skew")->residual == doctest::Approx(1.0 / std::sqrt(2.0)));

  CMat one_dir = CMat::Zero(n * n, 1);
  one_dir(0 * n + 1, 0) = 1.0;  // e_0 (x) e_1 alone
  QuantumGraphSpace bad2{n, subspace_from_spanning(one_dir, n * n)};
  const CheckReport r2 = check_quantum_graph(bad2);
  CHECK(r2.find("skew")->pass);
  CHECK_FALSE(r2.find("symmetric")->pass);
}

TEST_CASE("conjugation by U (x) conj(U): skew always survives, flip "
          "symmetry survives for real U") {
  const QuantumGraphSpace ug = from_classical_graph(Graph::path(3));
  Rng rng(77);

  const CMat u = rng.haar_unitary(3);
  QuantumGraphSpace moved;
  moved.n = 3;
  moved.space = subspace_from_spanning(
      CMat(tensor_product(u, u.conjugate()) * ug.space.basis), 9);
  const CheckReport rep = check_quantum_graph(moved);
  CHECK(rep.find("skew")->pass);
  CHECK_FALSE(rep.find("symmetric")->pass);

  const CMat o = random_orthogonal(rng, 3);
  QuantumGraphSpace moved_o;
  moved_o.n = 3;
  moved_o.space = subspace_from_spanning(
      CMat(tensor_product(o, o.conjugate()) * ug.space.basis), 9);
  CHECK(check_quantum_graph(moved_o).overall_pass());
}

TEST_CASE("s_tilde: classical graphs map to matrix-unit spans") {
  const int n = 2;
  const QuantumGraphSpace k2 = from_classical_graph(Graph::complete(2));
  const OperatorSubspace s = s_tilde(k2);
  CHECK(s.space.dim() == 2);
  // span{eps_{0,1}, eps_{1,0}} under column-major vectorization.
  CMat want = CMat::Zero(4, 2);
  want(1, 0) = 1.0;  // eps_{1,0}: row 1, col 0 -> index 0*2+1
  want(2, 1) = 1.0;  // eps_{0,1}: row 0, col 1 -> index 1*2+0
  const Subspace w = subspace_from_spanning(want, 4);
  CHECK(subspace_relate(s.space, w).equal_residual < 1e-12);

  // Symmetric vector maps to the symmetric operator.
  CMat sym = CMat::Zero(n * n, 1);
  sym(0 * n + 1, 0) = 1.0;
  sym(1 * n + 0, 0) = 1.0;
  QuantumGraphSpace g{n, subspace_from_spanning(sym, n * n)};
  const OperatorSubspace st = s_tilde(g);
  CMat op = CMat::Zero(4, 1);
  op(1, 0) = 1.0;
  op(2, 0) = 1.0;  // eps_{1,0} + eps_{0,1}
  CHECK(subspace_relate(st.space, subspace_from_spanning(op, 4))
            .equal_residual < 1e-12);
}

TEST_CASE("perfect homomorphism strategy: identity channel cases") {
  const QuantumGraphSpace c4 = from_classical_graph(Graph::cycle(4));
  const QuantumGraphSpace k4 = from_classical_graph(Graph::complete(4));
  const BipartiteChannel id =
      from_local_unitaries({{1.0, CMat(CMat::Identity(4, 4))}});
  CHECK(check_perfect_homomorphism_strategy(id, c4, c4).overall_pass());
  // C4 edges are a subset of K4 edges, so C4 -> K4 holds but not the
  // reverse.
  CHECK(check_perfect_homomorphism_strategy(id, c4, k4).overall_pass());
  const CheckReport rev = check_perfect_homomorphism_strategy(id, k4, c4);
  CHECK_FALSE(rev.overall_pass());
  CHECK_FALSE(rev.find("strategy")->pass);
  CHECK_FALSE(rev.find("random_omega")->pass);
}

TEST_CASE("perfect isomorphism strategy: permutation channel") {
  const Graph c4 = Graph::cycle(4);
  const std::vector<int> sigma = {2, 0, 3, 1};
  // Relabel C4 by sigma.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (c4.adjacency(i, j)) edges.emplace_back(sigma[i], sigma[j]);
  const Graph h = Graph::from_edges(4, edges);
  const QuantumGraphSpace ug = from_classical_graph(c4);
  const QuantumGraphSpace uh = from_classical_graph(h);

  const CMat u = permutation_unitary(sigma);
  const BipartiteChannel c = from_local_unitaries({{1.0, u.adjoint()}});
  CHECK(check_perfect_iso_strategy(c, ug, uh).overall_pass());

  // The same channel cannot relate non-isomorphic graphs.
  const QuantumGraphSpace p4 = from_classical_graph(Graph::path(4));
  const QuantumGraphSpace star = from_classical_graph(Graph::star(4));
  CHECK_FALSE(check_perfect_iso_strategy(c, p4, star).overall_pass());
}

TEST_CASE("check_local_iso: permutations pass, mismatched graphs fail") {
  const Graph c4 = Graph::cycle(4);
  const QuantumGraphSpace ug = from_classical_graph(c4);
  CHECK(check_local_iso(CMat::Identity(4, 4), ug, ug).overall_pass());

  const std::vector<int> sigma = {1, 3, 0, 2};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (c4.adjacency(i, j)) edges.emplace_back(sigma[i], sigma[j]);
  const QuantumGraphSpace uh =
      from_classical_graph(Graph::from_edges(4, edges));
  CHECK(check_local_iso(permutation_unitary(sigma), ug, uh).overall_pass());

  const QuantumGraphSpace p4 = from_classical_graph(Graph::path(4));
  const QuantumGraphSpace star = from_classical_graph(Graph::star(4));
  const CheckReport rep = check_local_iso(CMat::Identity(4, 4), p4, star);
  CHECK_FALSE(rep.overall_pass());
  CHECK_FALSE(rep.find("subspace_equal")->pass);
}

TEST_CASE("check_local_iso verdict couples to the game verdict") {
  // 30 random instances: the subspace-equality item and the
  // perfect-strategy items always agree.
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));  // n in {2,3,4}
    // Random loopless graph.
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        adj(i, j) = adj(j, i) = (rng.uniform() < 0.5) ? 1 : 0;
    Graph g;
    g.n = n;
    g.adjacency = adj;
    const QuantumGraphSpace ug = from_classical_graph(g);
    const CMat u = (trial % 2 == 0)
                       ? permutation_unitary(rng.permutation(n))
                       : random_orthogonal(rng, n);
    const CMat w = tensor_product(u, u.conjugate());
    QuantumGraphSpace moved;
    moved.n = n;
    moved.space = subspace_from_spanning(CMat(w * ug.space.basis), n * n);
    // Target either the exact image (must pass) or the original space
    // (passes only if the image happens to coincide).
    const QuantumGraphSpace& target = (trial % 3 == 0) ? ug : moved;
    const CheckReport rep = check_local_iso(u, ug, target, 1e-8);
    const bool eq = rep.find("subspace_equal")->pass;
    const bool game = rep.find("game_fwd_strategy")->pass &&
                      rep.find("game_bwd_strategy")->pass;
    CHECK(eq == game);
    if (target.space.dim() == moved.space.dim() && &target == &moved)
      CHECK(rep.overall_pass());
  }
}

TEST_CASE("check_biunitary_iso: scalar permutation witness and failures") {
  const Graph c5 = Graph::cycle(5);
  const std::vector<int> sigma = {3, 1, 4, 0, 2};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (c5.adjacency(i, j)) edges.emplace_back(sigma[i], sigma[j]);
  const Graph h = Graph::from_edges(5, edges);
  const QuantumGraphSpace ug = from_classical_graph(c5);
  const QuantumGraphSpace uh = from_classical_graph(h);

  BiUnitary uu;
  uu.n = 5;
  uu.d = 1;
  uu.blocks.assign(5, std::vector<CMat>(5, CMat::Zero(1, 1)));
  for (int k = 0; k < 5; ++k) uu.blocks[sigma[k]][k](0, 0) = 1.0;
  const CheckReport good = check_biunitary_iso(uu, ug, uh);
  CHECK(good.overall_pass());

  // Identity bi-unitary with mismatched spaces: both families fail.
  BiUnitary id;
  id.n = 4;
  id.d = 1;
  id.blocks.assign(4, std::vector<CMat>(4, CMat::Zero(1, 1)));
  for (int k = 0; k < 4; ++k) id.blocks[k][k](0, 0) = 1.0;
  const QuantumGraphSpace p4 = from_classical_graph(Graph::path(4));
  const QuantumGraphSpace star = from_classical_graph(Graph::star(4));
  const CheckReport bad = check_biunitary_iso(id, p4, star);
  CHECK_FALSE(bad.find("compression")->pass);
  CHECK_FALSE(bad.find("containment_fwd")->pass);

  // Random bi-unitary on the zero subspace: vacuous pass.
  const QuantumGraphSpace zero =
      from_classical_graph(Graph::from_edges(3, {}));
  const BiUnitary r = random_biunitary(3, 2, 4242);
  CHECK(check_biunitary_iso(r, zero, zero).overall_pass());
}

TEST_CASE("check_biunitary_iso: the compression and containment families "
          "agree on random conjugated witnesses") {
  Rng rng(321);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3;
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        adj(i, j) = adj(j, i) = (rng.uniform() < 0.6) ? 1 : 0;
    Graph g;
    g.n = n;
    g.adjacency = adj;
    const QuantumGraphSpace ug = from_classical_graph(g);
    // d = 1 bi-unitary = arbitrary unitary; image space as target.
    const CMat u = random_orthogonal(rng, n);
    BiUnitary uu;
    uu.n = n;
    uu.d = 1;
    uu.blocks.assign(n, std::vector<CMat>(n, CMat::Zero(1, 1)));
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x) uu.blocks[a][x](0, 0) = u(a, x);
    const CMat w = tensor_product(u, u.conjugate());
    QuantumGraphSpace moved;
    moved.n = n;
    moved.space = subspace_from_spanning(CMat(w * ug.space.basis), n * n);
    const CheckReport pass_rep = check_biunitary_iso(uu, ug, moved, 1e-8);
    const CheckReport fail_rep = check_biunitary_iso(uu, ug, ug, 1e-8);
    for (const CheckReport* rep : {&pass_rep, &fail_rep}) {
      const bool comp = rep->find("compression")->pass &&
                        rep->find("compression_bar")->pass;
      const bool cont = rep->find("containment_fwd")->pass &&
                        rep->find("containment_bwd")->pass;
      CHECK(comp == cont);
    }
    CHECK(pass_rep.overall_pass());
  }
}

TEST_CASE("search_classical_local_iso: known pairs and brute-force "
          "agreement") {
  const Graph c4 = Graph::cycle(4);
  auto found = search_classical_local_iso(c4, c4);
  REQUIRE(found.has_value());

  // Relabeled cycle.
  const std::vector<int> sigma = {2, 0, 3, 1};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (c4.adjacency(i, j)) edges.emplace_back(sigma[i], sigma[j]);
  const Graph h = Graph::from_edges(4, edges);
  auto rel = search_classical_local_iso(c4, h);
  REQUIRE(rel.has_value());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(c4.adjacency(i, j) == h.adjacency((*rel)[i], (*rel)[j]));

  CHECK_FALSE(
      search_classical_local_iso(Graph::path(4), Graph::star(4)).has_value());

  // Brute-force agreement for n <= 6 on random graph pairs.
  Rng rng(88);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));
    auto random_graph = [&]() {
      Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          adj(i, j) = adj(j, i) = (rng.uniform() < 0.5) ? 1 : 0;
      Graph g;
      g.n = n;
      g.adjacency = adj;
      return g;
    };
    const Graph g = random_graph();
    Graph h2 = random_graph();
    if (trial % 2 == 0) {
      // Make h2 a relabeling of g half the time.
      const std::vector<int> tau = rng.permutation(n);
      h2.adjacency.setZero();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          h2.adjacency(tau[i], tau[j]) = g.adjacency(i, j);
    }
    // Brute force over all permutations.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    bool brute = false;
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if (g.adjacency(i, j) != h2.adjacency(idx[i], idx[j])) ok = false;
      if (ok) brute = true;
    } while (!brute && std::next_permutation(idx.begin(), idx.end()));
    CHECK(search_classical_local_iso(g, h2).has_value() == brute);
  }
}

TEST_CASE("check_qperm_intertwiner: scalar, block-diagonal, and failing "
          "witnesses") {
  const Graph c4 = Graph::cycle(4);
  const std::vector<int> sigma = {1, 2, 3, 0};  // automorphism of C4
  const MagicSquare ms = permutation_square(sigma);
  const CheckReport ok = check_qperm_intertwiner(ms, c4, c4);
  CHECK(ok.overall_pass());

  // Identity on two different graphs with the same degree profile:
  // C6 vs 2 disjoint triangles (both 2-regular on 6 vertices).
  const Graph c6 = Graph::cycle(6);
  const Graph tri2 =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  std::vector<int> ident(6);
  std::iota(ident.begin(), ident.end(), 0);
  const CheckReport bad =
      check_qperm_intertwiner(permutation_square(ident), c6, tri2);
  CHECK_FALSE(bad.find("conjugation")->pass);
  CHECK_FALSE(bad.find("schur_vanishing")->pass);

  // Block-diagonal quantum permutation from two scalar automorphisms of
  // C4 (d = 2, genuinely operator-valued entries).
  const std::vector<int> tau = {3, 0, 1, 2};
  MagicSquare blk;
  blk.n = 4;
  blk.d = 2;
  blk.entries.assign(4, std::vector<CMat>(4, CMat::Zero(2, 2)));
  for (int k = 0; k < 4; ++k) {
    blk.entries[sigma[k]][k](0, 0) = 1.0;
    blk.entries[tau[k]][k](1, 1) = 1.0;
  }
  const CheckReport blk_rep = check_qperm_intertwiner(blk, c4, c4);
  CHECK(blk_rep.overall_pass());
  // And both families fail together on the mismatched pair.
  MagicSquare blk6;
  blk6.n = 6;
  blk6.d = 2;
  blk6.entries.assign(6, std::vector<CMat>(6, CMat::Zero(2, 2)));
  for (int k = 0; k < 6; ++k) {
    blk6.entries[k][k](0, 0) = 1.0;
    blk6.entries[(k + 2) % 6][k](1, 1) = 1.0;
  }
  const CheckReport blk_bad = check_qperm_intertwiner(blk6, c6, tri2);
  CHECK_FALSE(blk_bad.find("conjugation")->pass);
  CHECK_FALSE(blk_bad.find("schur_vanishing")->pass);
}
