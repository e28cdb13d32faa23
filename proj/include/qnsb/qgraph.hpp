// Quantum graphs as skew symmetric subspaces of C^n (x) C^n, the
// isomorphism-game verifiers, bi-unitary intertwiner conditions, and
// classical-graph specializations.
#pragma once

#include <optional>
#include <vector>

#include "qnsb/bistochastic.hpp"
#include "qnsb/channels.hpp"
#include "qnsb/magic.hpp"
#include "qnsb/numerics.hpp"

namespace qnsb {

struct Graph {
  int n = 0;
  Eigen::MatrixXi adjacency;  // symmetric 0/1, zero diagonal

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  static Graph path(int n);      // P_n
  static Graph cycle(int n);     // C_n
  static Graph complete(int n);  // K_n
  static Graph star(int n);      // K_{1,n-1}, center 0
  std::vector<int> degrees() const;
};

// Subspace of C^{n^2}; basis vectors are coordinates over e_x (x) e_y,
// index x*n + y.
struct QuantumGraphSpace {
  int n = 0;
  Subspace space;
};

// Subspace of M_n under column-major vectorization.
struct OperatorSubspace {
  int n = 0;
  Subspace space;
};

// U_G = span{e_x (x) e_y : x ~ y}.
QuantumGraphSpace from_classical_graph(const Graph& g);

// Items: "skew" (norm of the projection of the normalized maximally
// entangled vector into the space) and "symmetric" (||F P F - P||_F for
// the flip unitary F).
CheckReport check_quantum_graph(const QuantumGraphSpace& u,
                                double tol = kDefaultTol);

// Coordinate map xi = Sum alpha_{x,y} e_x (x) e_y  |->
// Sum alpha_{x,y} eps_{y,x}; for classical G this is
// span{eps_{x,y} : x ~ y}.
OperatorSubspace s_tilde(const QuantumGraphSpace& u);

// Perfect-homomorphism condition for the strategy Gamma: items
// "strategy" (|Tr(Gamma(P_U) P_V^perp)|) and "random_omega" (max of
// |Tr(Gamma(P rho P) P_V^perp)| over seeded random PSD rho); the two
// agree on pass/fail.
CheckReport check_perfect_homomorphism_strategy(const BipartiteChannel& c,
                                                const QuantumGraphSpace& u,
                                                const QuantumGraphSpace& v,
                                                double tol = kDefaultTol);

// Perfect isomorphism-game strategy: bicorrelation + concurrency +
// homomorphism condition for Gamma on (u, v) and for Gamma* on (v, u).
CheckReport check_perfect_iso_strategy(const BipartiteChannel& c,
                                       const QuantumGraphSpace& u,
                                       const QuantumGraphSpace& v,
                                       double tol = kDefaultTol);

// Bi-unitary intertwiner conditions.  Builds the leg operator
// T = Sum eps_{x,a} (x) eps_{y,b} (x) U_{a,x} U_{b,y}^* and reports the
// two zero-compression residuals "compression" / "compression_bar" and
// the two operator-space containment residuals "containment_fwd" /
// "containment_bwd" of U(S~_U (x) 1)U* in S~_V (x) M_d and the
// transposed converse; the two families pass or fail together.
CheckReport check_biunitary_iso(const BiUnitary& uu,
                                const QuantumGraphSpace& u,
                                const QuantumGraphSpace& v,
                                double tol = kDefaultTol);

// Local (rank-one) isomorphism: (U (x) conj(U))(u) = v; items
// "subspace_equal" plus merged verdicts of the induced channel
// Phi (x) Phi^sharp (Phi(omega) = U omega U*) as a perfect strategy.
CheckReport check_local_iso(const CMat& u0, const QuantumGraphSpace& u,
                            const QuantumGraphSpace& v,
                            double tol = kDefaultTol);

// Exhaustive backtracking search for a graph isomorphism g -> h with
// degree pruning; n <= 10.  Empty result is a disproof at these sizes.
std::optional<std::vector<int>> search_classical_local_iso(const Graph& g,
                                                           const Graph& h);

// Quantum-permutation intertwiner test: items "conjugation"
// (||U(A_G (x) I)U* - A_H (x) I|| for U = Sum eps_{i,k} (x) u_{i,k})
// and "schur_vanishing" (max ||u_{i,k} u_{j,l}|| over index pairs whose
// adjacency relations in H and G disagree); the verdicts agree.
CheckReport check_qperm_intertwiner(const MagicSquare& p, const Graph& g,
                                    const Graph& h, double tol = kDefaultTol);

// Scalar permutation magic square / unitary of sigma: u_{i,k} =
// delta_{i, sigma(k)}.
MagicSquare permutation_square(const std::vector<int>& sigma);
CMat permutation_unitary(const std::vector<int>& sigma);

}  // namespace qnsb
