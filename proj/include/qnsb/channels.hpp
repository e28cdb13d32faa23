// Bipartite quantum channels represented by their Choi matrices, the
// no-signalling / bicorrelation / concurrency verifiers, correlation
// constructors, and classical correlations.
//
// Choi conventions:
//   SingleChannel    C = Sum_{x,x'} eps_{x,x'} (x) Phi(eps_{x,x'}),
//                    entry at row (x, a), column (x', a').
//   BipartiteChannel C = Sum eps_{x,x'} (x) eps_{y,y'} (x)
//                    Gamma(eps_{x,x'} (x) eps_{y,y'}), entry
//                    C_{x,x',y,y'}^{a,a',b,b'} at row (x, y, a, b),
//                    column (x', y', a', b').
// The pairing used for duality is the bilinear <rho, omega> = Tr(rho
// omega^t).
#pragma once

#include <utility>
#include <vector>

#include "qnsb/bistochastic.hpp"
#include "qnsb/numerics.hpp"

namespace qnsb {

struct SingleChannel {
  int dim_in = 0;
  int dim_out = 0;
  CMat choi;  // (dim_in * dim_out)^2

  int row(int x, int a) const { return x * dim_out + a; }
};

struct BipartiteChannel {
  int dx = 0, dy = 0, da = 0, db = 0;
  CMat choi;  // (dx*dy*da*db)^2

  int row(int x, int y, int a, int b) const {
    return ((x * dy + y) * da + a) * db + b;
  }
  Complex entry(int x, int xp, int y, int yp, int a, int ap, int b,
                int bp) const {
    return choi(row(x, y, a, b), row(xp, yp, ap, bp));
  }
};

struct ClassicalCorrelation {
  int dx = 0, dy = 0, da = 0, db = 0;
  std::vector<double> p;  // p(a,b|x,y) at ((x*dy+y)*da+a)*db+b

  double& at(int x, int y, int a, int b) {
    return p[((x * dy + y) * da + a) * db + b];
  }
  double at(int x, int y, int a, int b) const {
    return p[((x * dy + y) * da + a) * db + b];
  }
};

// Finite-dimensional trace: a convex combination of normalized block
// traces tau = Sum_i w_i (1/d_i) Tr_{M_{d_i}}.
struct FiniteTraceBlock {
  double weight = 0.0;
  int dim = 0;
};

// --- Single-channel helpers -------------------------------------------

// Phi(omega) = U^dagger omega U for a unitary U.
SingleChannel channel_from_unitary(const CMat& u, double tol = kDefaultTol);

// Evaluate Phi(rho) from the Choi matrix.
CMat apply_channel(const SingleChannel& c, const CMat& rho);

// Phi^sharp(omega) = Phi(omega^t)^t; an involution.
SingleChannel sharp(const SingleChannel& c);

// Product channel Phi (x) Psi as a bipartite channel.
BipartiteChannel product_channel(const SingleChannel& phi,
                                 const SingleChannel& psi);

// --- Bipartite operations ---------------------------------------------

// Evaluate Gamma(rho), rho on C^{dx} (x) C^{dy}.
CMat apply_channel(const BipartiteChannel& c, const CMat& rho);

// Items: "cp" (negative-eigenvalue excess of the Choi matrix), "tp"
// (||Tr_out C - I_in||_F), "unital" (||Gamma(I) - I||_F).
CheckReport check_channel(const BipartiteChannel& c, double tol = kDefaultTol);

// No-signalling in both directions.  Items: "ns_direct" (max over the
// traceless basis of ||Tr_A Gamma(rho_X (x) eps_{y,y'})||_F and the
// symmetric B-side quantity) and "ns_slice" (the equivalent slice
// conditions Sum_a C = delta_{x,x'} c and Sum_b C = delta_{y,y'} d read
// off the Choi matrix directly).  The two agree on pass/fail.
CheckReport check_ns(const BipartiteChannel& c, double tol = kDefaultTol);

// Adjoint channel for the bilinear pairing: <Gamma*(omega), rho> =
// <omega, Gamma(rho)>.  A pure index permutation of the Choi matrix;
// dual(dual(c)) == c exactly.
BipartiteChannel dual(const BipartiteChannel& c);

// Quantum no-signalling bicorrelation: CP + TP + unital, NS for Gamma
// and for Gamma*.  Requires da == dx and db == dy.
CheckReport check_bicorrelation(const BipartiteChannel& c,
                                double tol = kDefaultTol);

// J_n = (1/n) Sum_{x,y} eps_{x,y} (x) eps_{x,y}.
CMat maximally_entangled(int n);

// Items: "concurrent" (||Gamma(J) - J||_F), "concurrent_dual"
// (||Gamma*(J) - J||_F).  Requires all four dims equal.
CheckReport check_concurrent(const BipartiteChannel& c,
                             double tol = kDefaultTol);

// --- Constructors ------------------------------------------------------

// Gamma = Sum_i w_i Phi_i (x) Phi_i^sharp with Phi_i(omega) =
// U_i^dagger omega U_i.
BipartiteChannel from_local_unitaries(
    const std::vector<std::pair<double, CMat>>& terms,
    double tol = kDefaultTol);

// Choi entries C_{x,x',y,y'}^{a,a',b,b'} = Sum_i w_i (1/d_i)
// Tr(u_{a,x}^* u_{a',x'} u_{b',y'}^* u_{b,y}) over bi-unitary blocks.
BipartiteChannel from_biunitary_trace(
    const std::vector<std::pair<double, BiUnitary>>& terms,
    double tol = kDefaultTol);

// Quantum-commuting pair: Choi entries <E_{x,x',a,a'} F_{y,y',b,b'} xi,
// xi> for commuting bistochastic matrices e, f and a unit vector xi.
BipartiteChannel from_qc_pair(const BistochasticMatrix& e,
                              const BistochasticMatrix& f, const CVec& xi,
                              double tol = kDefaultTol);

// Gamma_p = E_p composed with the diagonal expectation Delta.
BipartiteChannel from_classical(const ClassicalCorrelation& p,
                                double tol = kDefaultTol);

// p(a,b|x,y) = <Gamma(eps_{x,x} (x) eps_{y,y}), eps_{a,a} (x) eps_{b,b}>.
ClassicalCorrelation extract_classical(const BipartiteChannel& c);

// Transposed family p*(a,b|x,y) = p(x,y|a,b) (no renormalization).
ClassicalCorrelation transpose_family(const ClassicalCorrelation& p);

// Items: "ns" (both marginal conditions), "bicorrelation" (the
// transposed family is a family of probability distributions and is
// NS), "bisynchronous" (p(a,b|x,x) = 0 for a != b and p(a,a|x,y) = 0
// for x != y; requires dx == dy and da == db).
CheckReport classical_checks(const ClassicalCorrelation& p,
                             double tol = kDefaultTol);

}  // namespace qnsb
