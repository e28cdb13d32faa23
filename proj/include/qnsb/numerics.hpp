// Dense complex linear-algebra kernel shared by all modules: tensor
// products, partial traces, Hermitian eigendecomposition, PSD square
// roots, and subspace arithmetic.
//
// Index convention (global, bit-exact): a composite index (i1,...,ik)
// over dimensions (d1,...,dk) linearizes lexicographically with i1
// outermost, i.e. idx = ((i1*d2 + i2)*d3 + ...)*dk + ik.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnsb {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Thrown on malformed inputs (dimension mismatches, schema violations,
// non-Hermitian input where Hermitian is required, ...).  The CLI maps
// this to exit code 3.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by psd_sqrt when an eigenvalue lies below the clipping band.
class NotPsdError : public InputError {
 public:
  explicit NotPsdError(const std::string& what) : InputError(what) {}
};

// Default relative tolerance used by all verifiers.
inline constexpr double kDefaultTol = 1e-9;

// Relative scale: residuals are compared against tol * max(1, ||m||_F).
double scale_of(const CMat& m);

// One named residual check.  `pass` is always residual <= threshold.
struct CheckItem {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// A list of named residual checks plus informational residuals that do
// not participate in the overall verdict.
struct CheckReport {
  std::vector<CheckItem> items;
  std::vector<CheckItem> info;  // informational only

  void add(const std::string& name, double residual, double threshold) {
    items.push_back({name, residual, threshold, residual <= threshold});
  }
  void add_info(const std::string& name, double residual) {
    info.push_back({name, residual, 0.0, true});
  }
  void merge(const CheckReport& other, const std::string& prefix = "") {
    for (const auto& it : other.items)
      items.push_back({prefix + it.name, it.residual, it.threshold, it.pass});
    for (const auto& it : other.info)
      info.push_back({prefix + it.name, it.residual, it.threshold, it.pass});
  }
  bool overall_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  const CheckItem* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }
};

// Linearize a composite index (lexicographic, first slot outermost).
inline int composite_index(const std::vector<int>& idx,
                           const std::vector<int>& dims) {
  int out = 0;
  for (size_t k = 0; k < dims.size(); ++k) out = out * dims[k] + idx[k];
  return out;
}

// n x n matrix unit epsilon_{i,j}.
CMat matrix_unit(int n, int i, int j);

// Kronecker product; row index (i_a, i_b) lexicographic with i_a outer.
CMat tensor_product(const CMat& a, const CMat& b);

// Partial trace over one tensor slot of a square matrix whose rows are
// composite indices over `dims`.
CMat partial_trace(const CMat& m, const std::vector<int>& dims,
                   int traced_slot);

// Hermitian eigendecomposition, eigenvalues descending, eigenvectors as
// orthonormal columns.  Throws InputError on non-Hermitian input
// (relative deviation > 1e-8).
struct HermEigen {
  RVec values;   // descending
  CMat vectors;  // orthonormal columns, same order
};
HermEigen herm_eigen(const CMat& a);

// Smallest eigenvalue of a Hermitian matrix; eigenvalues only, cheaper
// than herm_eigen when the vectors are not needed.
double min_herm_eigenvalue(const CMat& a);

// PSD square root.  Eigenvalues in [-1e-9 * scale, 0) are clipped to 0;
// anything below that raises NotPsdError.
CMat psd_sqrt(const CMat& a);

// An orthonormal-basis representation of a subspace of C^ambient_dim.
struct Subspace {
  int ambient_dim = 0;
  CMat basis;       // ambient_dim x k, orthonormal columns
  CMat projection;  // ambient_dim x ambient_dim, = basis * basis^dagger
  int dim() const { return static_cast<int>(basis.cols()); }
};

// Gram-Schmidt with pivoting; spanning vectors are the columns of
// `vectors`; columns with residual norm <= drop_tol * max(1, ||v||) are
// discarded.  Empty input yields the zero subspace.
Subspace subspace_from_spanning(const CMat& vectors, int ambient_dim,
                                double drop_tol = 1e-10);

struct SubspaceRelation {
  double equal_residual = 0.0;   // ||P_u - P_v||_F
  double u_in_v_residual = 0.0;  // ||(I - P_v) P_u||_F
  double v_in_u_residual = 0.0;  // ||(I - P_u) P_v||_F
};
SubspaceRelation subspace_relate(const Subspace& u, const Subspace& v);

}  // namespace qnsb
