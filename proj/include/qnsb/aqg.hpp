// Algebraic quantum graphs over (M_n, tr): quantum adjacency axioms in
// the GNS basis, the projection/subspace bridge, quantum pseudo-graphs,
// intertwiner verification, and the identity suite connecting bi-unitary
// pseudo-isomorphism witnesses with adjacency intertwining.
//
// Conventions.  L^2(M_n) carries the normalized trace tr = Tr/n and the
// fixed orthonormal basis f_{(i,j)} = sqrt(n) eps_{i,j}, flat index
// i*n + j (N = n^2 in total).  Operators on L^2(M_n) are N x N matrices
// in this basis.  The involution sends f_{(i,j)} to f_{(j,i)} (index map
// `gns_star`).  Elements of M_n (x) M_n are N x N matrices with the
// composite row index (i, p) = i*n + p.
#pragma once

#include <utility>
#include <vector>

#include "qnsb/bistochastic.hpp"
#include "qnsb/channels.hpp"
#include "qnsb/numerics.hpp"

namespace qnsb {

// --- GNS basis helpers --------------------------------------------------

// Flat index of the adjoint basis element: (i,j) -> (j,i).
int gns_star(int n, int k);

// N x N permutation matrix D with D e_k = e_{star(k)}; its own inverse.
// This is the operator sending f_k^* coordinates to f_k coordinates.
CMat gns_star_permutation(int n);

// Coordinates of the unit 1 = (1/sqrt(n)) Sum_i f_{(i,i)}.
CVec gns_unit(int n);

// Matrix of the multiplication map, f_{(i,j)} (x) f_{(k,l)} |->
// sqrt(n) delta_{j,k} f_{(i,l)}; size N x N^2.
CMat m_matrix(int n);

// Matrix of its adjoint, f_{(i,j)} |-> sqrt(n) Sum_k f_{(i,k)} (x)
// f_{(k,j)}; size N^2 x N.  Satisfies m m* = N id.
CMat mstar_matrix(int n);

// Left/right multiplication by eps_{p,q} as N x N matrices on L^2(M_n).
CMat gns_left_mult(int n, int p, int q);
CMat gns_right_mult(int n, int p, int q);

// --- Domain types --------------------------------------------------------

// A candidate quantum adjacency operator A on L^2(M_n), N x N in the
// GNS basis.
struct QuantumAdjacency {
  int n = 0;
  CMat a;
};

// Subspace of L^2(M_n) (x) L^2(M_n) = C^{N^2}; coordinates over
// f_k (x) f_l, flat index k*N + l.
struct PseudoGraph {
  int n = 0;
  Subspace space;
};

// --- Constructors ---------------------------------------------------------

// Schur multiplication A(x) = kernel .* x (entrywise); diagonal in the
// GNS basis with entries kernel(i, j).
QuantumAdjacency schur_multiplier(const CMat& kernel);

// The kernel (I - J/n)/n (J all-ones): nK is a projection with zero row
// sums, so the Schur multiplier passes all adjacency axioms.
CMat canonical_loopless_kernel(int n);

// Degree-one bi-unitary over the GNS index: u_{k,i} = tr(f_k^* W^* f_i W)
// for a scalar unitary W; the matrix of the automorphism x -> W^* x W.
BiUnitary gns_conjugation_witness(const CMat& w, double tol = kDefaultTol);

// --- Axioms and the bridge -------------------------------------------------

// Items: "self_adjoint" (||A - A^dagger||), "axiom1"
// (||m(A (x) A)m* - A||), "axiom2"
// (||(id (x) eta* m)(1 (x) A (x) 1)(m* eta (x) id) - A||), "axiom3"
// (||m(A (x) 1)m*||).
CheckReport check_adjacency_axioms(const QuantumAdjacency& a,
                                   double tol = kDefaultTol);

// e = n Sum_{i,j} eps_{i,j} (x) A(eps_{j,i}) in M_n (x) M_n.
CMat e_of_a(const QuantumAdjacency& a);

// Inverse of e_of_a.  Requires e Hermitian and flip-invariant within tol.
QuantumAdjacency a_of_e(const CMat& e, double tol = kDefaultTol);

// Product in M_n^op (x) M_n: bilinear extension of
// (a (x) b)(c (x) d) = (ca) (x) (bd).
CMat op_product(const CMat& e1, const CMat& e2);

// Rank-one expansion over the GNS basis followed by
// Theta_{Lambda(f_k), Lambda(f_l)} |-> f_k^* (x) f_l; linear, bijective.
// For an axiom-valid A, psi(A) = e_of_a(A).
CMat psi(const CMat& t);

// S' = span{eps_{p,q} A eps_{r,s}} as operators on L^2(M_n); u_tilde is
// its image under T |-> Sum T_{l,k} f_k (x) f_l (column-major
// vectorization), u_g the pullback under the star permutation on the
// first leg.  The report carries the pseudo-graph residuals of u_tilde.
struct BridgeResult {
  int s_prime_dim = 0;
  Subspace s_prime;  // operators on L^2, column-major vectorized
  Subspace u_g;
  PseudoGraph u_tilde;
  CheckReport report;
};
BridgeResult bridge(const QuantumAdjacency& a, double tol = kDefaultTol);

// Items: "skew" (norm of the projection of the normalized vector
// Sum_k f_k (x) f_k into the space), "df_invariant" (span distance of
// conjugate-coordinates-then-flip image), "j0_invariant" (the equivalent
// invariance of the star-pulled-back space under
// Lambda(x) (x) Lambda(y) -> Lambda(y^*) (x) Lambda(x^*)), and
// "invariance_agreement" (the two invariance residuals coincide).
CheckReport check_pseudograph(const PseudoGraph& w, double tol = kDefaultTol);

// --- Intertwiners and pseudo-isomorphism -----------------------------------

// u is an N x N block bi-unitary with d x d blocks, read as the matrix
// of rho(f_i) = Sum_j f_j (x) u_{j,i}.  Items: "intertwine"
// (||(A2 (x) I)U - U(A1 (x) I)||), "multiplicative", "star", "unital",
// "trace_preserving" for the homomorphism conditions of rho.
CheckReport intertwiner_check(const BiUnitary& u, const QuantumAdjacency& a1,
                              const QuantumAdjacency& a2,
                              double tol = kDefaultTol);

// Companion channel of from_biunitary_trace on the same data:
// Choi entries tau(u_{l,j}^* u_{k,i} u_{k',i'}^* u_{l',j'}) at row
// (k,l,i,j).  The identity "tilde Gamma = sigma o Gamma* o sigma", with
// sigma(eps_{k,k'} (x) eps_{l,l'}) = eps_{k',l} (x) eps_{l',k}, is
// verified at construction within 1e-10 of scale.
BipartiteChannel tilde_gamma(
    const std::vector<std::pair<double, BiUnitary>>& terms,
    double tol = kDefaultTol);

// Perfect-strategy residuals of Gamma for u_tilde(a1) -> u_tilde(a2) and
// of tilde Gamma for the reverse direction ("fwd_"/"bwd_" prefixed
// homomorphism items), plus the equivalent per-term zero-compression
// residuals "fwd_compression" = ||(P2^perp (x) 1) U_{2,3} Ubar_{1,3}
// (P1 (x) 1)|| and "bwd_compression" (adjoints, spaces swapped).
CheckReport pseudo_iso_check(
    const std::vector<std::pair<double, BiUnitary>>& terms,
    const QuantumAdjacency& a1, const QuantumAdjacency& a2,
    double tol = kDefaultTol);

// Identity suite for a bi-unitary implementation of a trace-preserving
// *-homomorphism.  Items (r = 1, 2): "vec_e_r"
// (coordinates of A_r equal those of e_r), "projection_conj_r"
// (p_r = (Jbar (x) J) e_r (Jbar (x) J)), "unit_image_r"
// (p_r applied to the unit vector recovers A_r), "leg_factorization"
// (U tilde = U_{2,3} V_{1,3}), "v_f_relation"
// (V = (F^{-1} (x) 1) U (F (x) 1)), "fix_u"/"fix_v" (the unit is fixed),
// and "conclusion" (U(A1 (x) I) = (A2 (x) I)U).
CheckReport verify_identities(const BiUnitary& u, const QuantumAdjacency& a1,
                              const QuantumAdjacency& a2,
                              double tol = kDefaultTol);

}  // namespace qnsb
