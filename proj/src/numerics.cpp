#include "qnsb/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qnsb {

double scale_of(const CMat& m) { return std::max(1.0, m.norm()); }

CMat matrix_unit(int n, int i, int j) {
  CMat u = CMat::Zero(n, n);
  u(i, j) = 1.0;
  return u;
}

CMat tensor_product(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   int traced_slot) {
  long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != m.cols() || m.rows() != total)
    throw InputError("partial_trace: dims do not match matrix size");
  if (traced_slot < 0 || traced_slot >= static_cast<int>(dims.size()))
    throw InputError("partial_trace: slot out of range");

  // Split the composite index as (left, t, right) with the traced slot
  // in the middle; strides follow the lexicographic convention.
  long left = 1, right = 1;
  for (int k = 0; k < traced_slot; ++k) left *= dims[k];
  for (size_t k = traced_slot + 1; k < dims.size(); ++k) right *= dims[k];
  const long dt = dims[traced_slot];

  CMat out = CMat::Zero(left * right, left * right);
  for (long lr = 0; lr < left; ++lr)
    for (long rr = 0; rr < right; ++rr)
      for (long lc = 0; lc < left; ++lc)
        for (long rc = 0; rc < right; ++rc) {
          Complex s = 0.0;
          for (long t = 0; t < dt; ++t)
            s += m((lr * dt + t) * right + rr, (lc * dt + t) * right + rc);
          out(lr * right + rr, lc * right + rc) = s;
        }
  return out;
}

HermEigen herm_eigen(const CMat& a) {
  if (a.rows() != a.cols()) throw InputError("herm_eigen: non-square input");
  const double herm_resid = (a - a.adjoint()).norm();
  if (herm_resid > 1e-8 * scale_of(a))
    throw InputError("herm_eigen: input is not Hermitian (residual " +
                     std::to_string(herm_resid) + ")");
  Eigen::SelfAdjointEigenSolver<CMat> es((a + a.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw InputError("herm_eigen: eigensolver failed to converge");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = a.rows();
  HermEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

double min_herm_eigenvalue(const CMat& a) {
  if (a.rows() != a.cols())
    throw InputError("min_herm_eigenvalue: non-square input");
  const double herm_resid = (a - a.adjoint()).norm();
  if (herm_resid > 1e-8 * scale_of(a))
    throw InputError("min_herm_eigenvalue: input is not Hermitian (residual " +
                     std::to_string(herm_resid) + ")");
  Eigen::SelfAdjointEigenSolver<CMat> es((a + a.adjoint()) / 2.0,
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw InputError("min_herm_eigenvalue: eigensolver failed to converge");
  return es.eigenvalues().minCoeff();
}

CMat psd_sqrt(const CMat& a) {
  HermEigen eig = herm_eigen(a);
  const double band = 1e-9 * scale_of(a);
  RVec vals = eig.values;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -band)
      throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(vals[i]) +
                        " below clipping band");
    if (vals[i] < 0.0) vals[i] = 0.0;  // clip near-zero negatives
  }
  return eig.vectors * vals.cwiseSqrt().asDiagonal() * eig.vectors.adjoint();
}

Subspace subspace_from_spanning(const CMat& vectors, int ambient_dim,
                                double drop_tol) {
  if (vectors.size() != 0 && vectors.rows() != ambient_dim)
    throw InputError("subspace_from_spanning: vector length != ambient_dim");

  std::vector<CVec> basis;
  std::vector<bool> used(vectors.cols(), false);
  // Greedy pivoted Gram-Schmidt: repeatedly pick the remaining column
  // with the largest residual against the current basis.
  for (;;) {
    double best = 0.0;
    int best_j = -1;
    CVec best_r;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      if (used[j]) continue;
      CVec r = vectors.col(j);
      for (const CVec& b : basis) r -= b.dot(r) * b;
      // Second orthogonalization pass for numerical stability.
      for (const CVec& b : basis) r -= b.dot(r) * b;
      const double rel =
          r.norm() / std::max(1.0, vectors.col(j).norm());
      if (rel > best) {
        best = rel;
        best_j = static_cast<int>(j);
        best_r = r;
      }
    }
    if (best_j < 0 || best <= drop_tol) break;
    used[best_j] = true;
    basis.push_back(best_r.normalized());
  }

  Subspace out;
  out.ambient_dim = ambient_dim;
  out.basis = CMat(ambient_dim, basis.size());
  for (size_t k = 0; k < basis.size(); ++k) out.basis.col(k) = basis[k];
  out.projection = out.basis * out.basis.adjoint();
  if (basis.empty()) out.projection = CMat::Zero(ambient_dim, ambient_dim);
  return out;
}

SubspaceRelation subspace_relate(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim != v.ambient_dim)
    throw InputError("subspace_relate: ambient dimension mismatch");
  const CMat i = CMat::Identity(u.ambient_dim, u.ambient_dim);
  SubspaceRelation rel;
  rel.equal_residual = (u.projection - v.projection).norm();
  rel.u_in_v_residual = ((i - v.projection) * u.projection).norm();
  rel.v_in_u_residual = ((i - u.projection) * v.projection).norm();
  return rel;
}

}  // namespace qnsb
