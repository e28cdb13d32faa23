// Bistochastic operator matrices E = (E_{x,x',a,a'}), bi-isometries and
// bi-unitaries V = (V_{a,x}), the Gram-square-root factorization
// E_{x,x',a,a'} = V_{a,x}^* V_{a',x'}, and the concrete cone L_X.
//
// Block index order for a bistochastic matrix is (x, a) with x outer:
// the block entry E_{x,x',a,a'} (a d x d matrix) sits at block row
// (x, a), block column (x', a').
#pragma once

#include <vector>

#include "qnsb/numerics.hpp"

namespace qnsb {

struct BistochasticMatrix {
  int n = 0;  // |X| = |A|
  int d = 0;  // block dimension
  CMat m;     // (n*n*d) x (n*n*d)

  CMat block(int x, int xp, int a, int ap) const {
    return m.block((x * n + a) * d, (xp * n + ap) * d, d, d);
  }
};

// Rectangular block matrix (V_{a,x}) with V_{a,x} : C^{d_h} -> C^{d_k};
// block row index a, block column index x.
struct BiIsometry {
  int n = 0;
  int d_h = 0;
  int d_k = 0;
  std::vector<std::vector<CMat>> blocks;  // blocks[a][x], d_k x d_h

  const CMat& block(int a, int x) const { return blocks[a][x]; }
};

// Square case d_h = d_k = d; both U and its block transpose U^t are
// required to be unitary.
struct BiUnitary {
  int n = 0;
  int d = 0;
  std::vector<std::vector<CMat>> blocks;  // blocks[a][x], d x d

  const CMat& block(int a, int x) const { return blocks[a][x]; }
  // Full (n*d) x (n*d) matrix Sum_{a,x} eps_{a,x} (x) u_{a,x}.
  CMat full() const;
  // Block transpose: blocks[x][a] = u_{a,x}.
  BiUnitary block_transpose() const;
};

// Residuals for the four unitarity conditions of U and U^t; max residual.
double biunitary_residual(const BiUnitary& u);

// Residuals for the two isometry conditions (V^dagger V = I and
// (V^t)^dagger V^t = I); max residual.
double biisometry_residual(const BiIsometry& v);

// PSD + both partial-trace conditions of a bistochastic operator matrix.
// Items: "psd" (Hermiticity defect and negative-eigenvalue excess),
// "trA" (Sum_a E_{x,x',a,a} = delta_{x,x'} I), "trX" (Sum_x E_{x,x,a,a'}
// = delta_{a,a'} I).
CheckReport check_bistochastic(const BistochasticMatrix& e,
                               double tol = kDefaultTol);

// E_{x,x',a,a'} = V_{a,x}^dagger V_{a',x'}; the result passes
// check_bistochastic whenever v satisfies its invariants.
BistochasticMatrix from_biisometry(const BiIsometry& v,
                                   double tol = kDefaultTol);
BistochasticMatrix from_biisometry(const BiUnitary& u,
                                   double tol = kDefaultTol);

// Gram factorization of Theorem-3.2 type: reindex e to the Gram matrix
// G_{(a,x),(a',x')} = E_{x,x',a,a'} (a permutation similarity, hence
// PSD), take W = psd_sqrt(G) and cut it into block columns
// V_{a,x} = W(:, block (a,x)), with d_k = n*n*d.
BiIsometry factorize(const BistochasticMatrix& e, double tol = kDefaultTol);

// Deterministic seeded bi-unitary generator: u_{a,x} = (1/sqrt n)
// omega^{ax} V_a with omega = e^{2 pi i / n} and Haar-random V_a in M_d,
// conjugated by (u (x) I) . U . (v (x) w) for Haar-random u, v in M_n
// and w in M_d.
BiUnitary random_biunitary(int n, int d, std::uint64_t seed);

// Membership in the cone L_X for an n^2 x n^2 matrix lambda_{x,x',a,a'}
// (rows (x,a) lexicographic): Sum_b lambda_{x,x',b,b} = delta_{x,x'} c
// and Sum_y lambda_{y,y,a,a'} = delta_{a,a'} c, with c = Tr(C)/n.
CheckReport lx_check(const CMat& c, int n, double tol = kDefaultTol);

// Flip lambda'_{x,x',a,a'} = lambda_{x',x,a',a}; maps L_X onto itself.
CMat lx_flip(const CMat& c, int n);

}  // namespace qnsb
