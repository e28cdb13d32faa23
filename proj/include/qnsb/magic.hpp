// Quantum magic squares: verification, diagonal embedding into
// bistochastic operator matrices, Birkhoff decomposition of doubly
// stochastic matrices, the operator-valued decomposition search
// (Dykstra alternating projections), and the explicit dilation to a
// commuting quantum permutation.
#pragma once

#include <optional>
#include <vector>

#include "qnsb/bistochastic.hpp"
#include "qnsb/numerics.hpp"

namespace qnsb {

struct MagicSquare {
  int n = 0;
  int d = 0;
  std::vector<std::vector<CMat>> entries;  // entries[x][a], d x d
};

struct PermTerm {
  std::vector<int> theta;  // permutation of [n]: x -> theta[x]
  CMat gamma;              // d x d Hermitian PSD
};

struct PermDecomposition {
  int n = 0;
  int d = 0;
  std::vector<PermTerm> terms;
};

// Items: "psd_entries", "row_sums" (||Sum_a E_{x,a} - I||), "col_sums"
// (||Sum_x E_{x,a} - I||); informational "quantum_permutation" (max of
// ||E^2 - E|| and ||E - E*|| over entries).
CheckReport check_magic(const MagicSquare& e, double tol = kDefaultTol);

// E~_{x,x',a,a'} = delta_{x,x'} delta_{a,a'} E_{x,a}.
BistochasticMatrix embed_diagonal(const MagicSquare& e,
                                  double tol = kDefaultTol);

// Birkhoff peeling of a doubly stochastic matrix into at most
// (n-1)^2 + 1 permutation terms (d = 1 decomposition).
PermDecomposition birkhoff_scalar(const RMat& b, double tol = 1e-9);

struct DecomposeResult {
  std::optional<PermDecomposition> decomposition;  // empty: undetermined
  int iterations = 0;
  double cone_residual = 0.0;    // PSD feasibility defect at exit
  double affine_residual = 0.0;  // reconstruction defect at exit
};

// Search for gammas with E_{x,a} = Sum_{theta(x)=a} gamma_theta,
// gamma_theta PSD, by Dykstra alternating projections over all theta in
// S_n (n <= 5).  An empty result is inconclusive, never a disproof.
DecomposeResult decompose_operator(const MagicSquare& e, int max_iter = 5000,
                                   double tol = 1e-8);

// Residuals: per-(x,a) reconstruction defect, PSD defects of each
// gamma, ||Sum gamma - I||.
CheckReport verify_decomposition(const MagicSquare& e,
                                 const PermDecomposition& dec,
                                 double tol = kDefaultTol);

struct DilationResult {
  CMat v;                                      // (|terms|*d) x d isometry
  std::vector<std::vector<CMat>> projections;  // P[x][a] on K
  CheckReport report;
};

// Theorem-4.6-style construction on K = C^{|terms|} (x) C^d:
// P_{x,a} = diag_theta(delta_{theta(x),a} I_d), V stacks
// psd_sqrt(gamma_theta); then V* P_{x,a} V reconstructs E.
DilationResult dilate(const PermDecomposition& dec, double tol = kDefaultTol);

// Residual check of a user-supplied dilation (V, P) against e:
// isometry, projection/commutation/sum structure of P, and
// E_{x,a} = V* P_{x,a} V.
CheckReport verify_dilation(const MagicSquare& e, const CMat& v,
                            const std::vector<std::vector<CMat>>& p,
                            double tol = kDefaultTol);

// Membership of a diagonal n^2 x n^2 matrix (read as mu_{x,a} on the
// diagonal) in the cone where every row sum and every column sum of mu
// agree.
CheckReport mx_cone_check(const CMat& t, int n, double tol = kDefaultTol);

}  // namespace qnsb
