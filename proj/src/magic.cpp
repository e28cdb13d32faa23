#include "qnsb/magic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

namespace qnsb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

double entries_scale(const MagicSquare& e) {
  double s = 1.0;
  for (const auto& row : e.entries)
    for (const auto& m : row) s = std::max(s, m.norm());
  return s;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// Perfect matching on the support graph rows -> columns via augmenting
// paths.  Returns match[x] = a, or empty on failure.
std::vector<int> perfect_matching(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> col_match(n, -1);
  std::vector<bool> seen;
  auto augment = [&](auto&& self, int x) -> bool {
    for (int a = 0; a < n; ++a) {
      if (!adj[x][a] || seen[a]) continue;
      seen[a] = true;
      if (col_match[a] < 0 || self(self, col_match[a])) {
        col_match[a] = x;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < n; ++x) {
    seen.assign(n, false);
    if (!augment(augment, x)) return {};
  }
  std::vector<int> match(n, -1);
  for (int a = 0; a < n; ++a) match[col_match[a]] = a;
  return match;
}

// Projection onto the Hermitian PSD cone (eigenvalue clipping).
CMat psd_project(const CMat& m) {
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  RVec vals = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CheckReport check_magic(const MagicSquare& e, double tol) {
  CheckReport rep;
  const int n = e.n;
  const int d = e.d;
  require(static_cast<int>(e.entries.size()) == n,
          "check_magic: entry grid size mismatch");
  const double s = entries_scale(e);

  double psd = 0.0, qperm = 0.0;
  for (int x = 0; x < n; ++x) {
    require(static_cast<int>(e.entries[x].size()) == n,
            "check_magic: entry grid size mismatch");
    for (int a = 0; a < n; ++a) {
      const CMat& m = e.entries[x][a];
      require(m.rows() == d && m.cols() == d,
              "check_magic: entry dimension mismatch");
      const double herm = (m - m.adjoint()).norm();
      double neg = herm;
      if (herm <= tol * s) {
        Eigen::SelfAdjointEigenSolver<CMat> es(
            CMat(0.5 * (m + m.adjoint())));
        neg = std::max(0.0, -es.eigenvalues().minCoeff());
      }
      psd = std::max(psd, neg);
      qperm = std::max(qperm, std::max(herm, (m * m - m).norm()));
    }
  }
  rep.add("psd_entries", psd, tol * s);

  const CMat id = CMat::Identity(d, d);
  double rows = 0.0, cols = 0.0;
  for (int x = 0; x < n; ++x) {
    CMat sum = CMat::Zero(d, d);
    for (int a = 0; a < n; ++a) sum += e.entries[x][a];
    rows = std::max(rows, (sum - id).norm());
  }
  for (int a = 0; a < n; ++a) {
    CMat sum = CMat::Zero(d, d);
    for (int x = 0; x < n; ++x) sum += e.entries[x][a];
    cols = std::max(cols, (sum - id).norm());
  }
  rep.add("row_sums", rows, tol * s);
  rep.add("col_sums", cols, tol * s);
  rep.add_info("quantum_permutation", qperm);
  return rep;
}

BistochasticMatrix embed_diagonal(const MagicSquare& e, double tol) {
  require(check_magic(e, tol).overall_pass(),
          "embed_diagonal: input is not a quantum magic square");
  BistochasticMatrix b;
  b.n = e.n;
  b.d = e.d;
  b.m = CMat::Zero(e.n * e.n * e.d, e.n * e.n * e.d);
  for (int x = 0; x < e.n; ++x)
    for (int a = 0; a < e.n; ++a)
      b.m.block((x * e.n + a) * e.d, (x * e.n + a) * e.d, e.d, e.d) =
          e.entries[x][a];
  return b;
}

PermDecomposition birkhoff_scalar(const RMat& b, double tol) {
  const int n = static_cast<int>(b.rows());
  require(b.cols() == n, "birkhoff_scalar: matrix must be square");
  require(b.minCoeff() >= -1e-12, "birkhoff_scalar: negative entry");
  for (int i = 0; i < n; ++i) {
    require(std::abs(b.row(i).sum() - 1.0) <= tol,
            "birkhoff_scalar: row sum differs from 1");
    require(std::abs(b.col(i).sum() - 1.0) <= tol,
            "birkhoff_scalar: column sum differs from 1");
  }
  PermDecomposition dec;
  dec.n = n;
  dec.d = 1;
  RMat rest = b;
  const double support_tol = 1e-12 * std::max(1.0, b.maxCoeff());
  const int max_terms = (n - 1) * (n - 1) + 1;
  for (int t = 0; t <= max_terms; ++t) {
    if (rest.maxCoeff() <= support_tol) break;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x)
      for (int a = 0; a < n; ++a) adj[x][a] = rest(x, a) > support_tol;
    const std::vector<int> match = perfect_matching(adj);
    require(!match.empty(),
            "birkhoff_scalar: no perfect matching on the positive support");
    double w = rest(0, match[0]);
    for (int x = 1; x < n; ++x) w = std::min(w, rest(x, match[x]));
    for (int x = 0; x < n; ++x) rest(x, match[x]) -= w;
    CMat g(1, 1);
    g(0, 0) = w;
    dec.terms.push_back({match, g});
  }
  return dec;
}

CheckReport verify_decomposition(const MagicSquare& e,
                                 const PermDecomposition& dec, double tol) {
  require(e.n == dec.n && e.d == dec.d,
          "verify_decomposition: dimension mismatch");
  CheckReport rep;
  const double s = entries_scale(e);
  double recon = 0.0;
  for (int x = 0; x < e.n; ++x)
    for (int a = 0; a < e.n; ++a) {
      CMat sum = CMat::Zero(e.d, e.d);
      for (const auto& t : dec.terms)
        if (t.theta[x] == a) sum += t.gamma;
      recon = std::max(recon, (sum - e.entries[x][a]).norm());
    }
  rep.add("reconstruction", recon, tol * s);

  double psd = 0.0;
  CMat gsum = CMat::Zero(e.d, e.d);
  for (const auto& t : dec.terms) {
    psd = std::max(psd, (t.gamma - psd_project(t.gamma)).norm());
    gsum += t.gamma;
  }
  rep.add("psd_gammas", psd, tol * s);
  rep.add("gamma_sum", (gsum - CMat::Identity(e.d, e.d)).norm(), tol * s);
  return rep;
}

DecomposeResult decompose_operator(const MagicSquare& e, int max_iter,
                                   double tol) {
  require(e.n <= 5, "decompose_operator: unsupported size (n must be <= 5)");
  require(check_magic(e, 1e-6).overall_pass(),
          "decompose_operator: input is not a quantum magic square");
  const int n = e.n;
  const int d = e.d;
  const std::vector<std::vector<int>> perms = all_permutations(n);
  const int nt = static_cast<int>(perms.size());

  // Counting Gram of the reconstruction map L: (L L* M)_{x,a} =
  // Sum_{x',a'} N_{(x,a),(x',a')} M_{x',a'} with N_{(x,a),(x',a')} =
  // #{theta : theta(x) = a, theta(x') = a'}.
  RMat gram = RMat::Zero(n * n, n * n);
  for (const auto& th : perms)
    for (int x = 0; x < n; ++x)
      for (int xp = 0; xp < n; ++xp)
        gram(x * n + th[x], xp * n + th[xp]) += 1.0;
  const RMat pinv =
      gram.completeOrthogonalDecomposition().pseudoInverse();

  auto affine_defect = [&](const std::vector<CMat>& g,
                           std::vector<CMat>& resid) {
    double r = 0.0;
    for (int x = 0; x < n; ++x)
      for (int a = 0; a < n; ++a) {
        CMat sum = CMat::Zero(d, d);
        for (int t = 0; t < nt; ++t)
          if (perms[t][x] == a) sum += g[t];
        resid[x * n + a] = sum - e.entries[x][a];
        r = std::max(r, resid[x * n + a].norm());
      }
    return r;
  };
  auto project_affine = [&](std::vector<CMat>& g) {
    std::vector<CMat> resid(n * n);
    affine_defect(g, resid);
    std::vector<CMat> corr(n * n, CMat::Zero(d, d));
    for (int i = 0; i < n * n; ++i)
      for (int j = 0; j < n * n; ++j)
        if (pinv(i, j) != 0.0) corr[i] += pinv(i, j) * resid[j];
    for (int t = 0; t < nt; ++t)
      for (int x = 0; x < n; ++x) g[t] -= corr[x * n + perms[t][x]];
  };

  // Start from the uniform feasible point of the affine set.
  std::vector<CMat> g(nt, CMat::Zero(d, d));
  project_affine(g);
  std::vector<CMat> dykstra(nt, CMat::Zero(d, d));  // cone correction

  DecomposeResult out;
  const double s = entries_scale(e);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    double cone = 0.0;
    for (int t = 0; t < nt; ++t) {
      const CMat z = g[t] + dykstra[t];
      const CMat p = psd_project(z);
      cone = std::max(cone, (p - g[t]).norm());
      dykstra[t] = z - p;
      g[t] = p;
    }
    std::vector<CMat> resid(n * n);
    const double before = affine_defect(g, resid);
    project_affine(g);
    out.cone_residual = cone;
    out.affine_residual = before;
    if (cone <= tol * s && before <= tol * s) break;
  }
  // Exit with the cone-feasible iterate and measure its affine defect.
  std::vector<CMat> final_g(nt);
  for (int t = 0; t < nt; ++t) final_g[t] = psd_project(g[t]);
  std::vector<CMat> resid(n * n);
  out.affine_residual = affine_defect(final_g, resid);
  double cone_defect = 0.0;
  for (int t = 0; t < nt; ++t)
    cone_defect = std::max(cone_defect, (final_g[t] - g[t]).norm());
  out.cone_residual = cone_defect;
  if (out.affine_residual <= tol * s && out.cone_residual <= tol * s) {
    PermDecomposition dec;
    dec.n = n;
    dec.d = d;
    for (int t = 0; t < nt; ++t)
      if (final_g[t].norm() > 1e-14 * s)
        dec.terms.push_back({perms[t], final_g[t]});
    out.decomposition = std::move(dec);
  }
  return out;
}

DilationResult dilate(const PermDecomposition& dec, double tol) {
  const int n = dec.n;
  const int d = dec.d;
  const int nt = static_cast<int>(dec.terms.size());
  require(nt > 0, "dilate: empty decomposition");
  DilationResult out;
  out.v = CMat::Zero(nt * d, d);
  for (int t = 0; t < nt; ++t)
    out.v.block(t * d, 0, d, d) = psd_sqrt(dec.terms[t].gamma);
  out.projections.assign(n, std::vector<CMat>(n, CMat::Zero(nt * d, nt * d)));
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (int t = 0; t < nt; ++t)
        if (dec.terms[t].theta[x] == a)
          out.projections[x][a].block(t * d, t * d, d, d) =
              CMat::Identity(d, d);

  // Reconstruct the square the decomposition describes and verify the
  // dilation against it.
  MagicSquare e;
  e.n = n;
  e.d = d;
  e.entries.assign(n, std::vector<CMat>(n, CMat::Zero(d, d)));
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (const auto& t : dec.terms)
        if (t.theta[x] == a) e.entries[x][a] += t.gamma;
  out.report = verify_dilation(e, out.v, out.projections, tol);
  return out;
}

CheckReport verify_dilation(const MagicSquare& e, const CMat& v,
                            const std::vector<std::vector<CMat>>& p,
                            double tol) {
  CheckReport rep;
  const int n = e.n;
  const int d = e.d;
  const double s = entries_scale(e);
  rep.add("isometry", (v.adjoint() * v - CMat::Identity(d, d)).norm(),
          tol * std::max(1.0, s));

  const int k = static_cast<int>(v.rows());
  double proj = 0.0, comm = 0.0, sums = 0.0, recon = 0.0;
  const CMat idk = CMat::Identity(k, k);
  for (int x = 0; x < n; ++x) {
    CMat row_sum = CMat::Zero(k, k);
    CMat col_sum = CMat::Zero(k, k);
    for (int a = 0; a < n; ++a) {
      const CMat& q = p[x][a];
      proj = std::max(proj, std::max((q * q - q).norm(),
                                     (q - q.adjoint()).norm()));
      row_sum += q;
      col_sum += p[a][x];
      recon = std::max(recon,
                       (v.adjoint() * q * v - e.entries[x][a]).norm());
      for (int xp = 0; xp < n; ++xp)
        for (int ap = 0; ap < n; ++ap) {
          const CMat& r = p[xp][ap];
          comm = std::max(comm, (q * r - r * q).norm());
        }
    }
    sums = std::max(sums, (row_sum - idk).norm());
    sums = std::max(sums, (col_sum - idk).norm());
  }
  rep.add("projections", proj, tol * std::max(1.0, s));
  rep.add("commutation", comm, tol * std::max(1.0, s));
  rep.add("partition_sums", sums, tol * std::max(1.0, s));
  rep.add("reconstruction", recon, tol * std::max(1.0, s));
  return rep;
}

CheckReport mx_cone_check(const CMat& t, int n, double tol) {
  require(t.rows() == n * n && t.cols() == n * n,
          "mx_cone_check: matrix must be n^2 x n^2");
  const double s = std::max(1.0, scale_of(t));
  double offdiag = 0.0;
  for (int i = 0; i < n * n; ++i)
    for (int j = 0; j < n * n; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(t(i, j)));
  require(offdiag <= tol * s, "mx_cone_check: input is not diagonal");

  CheckReport rep;
  // mu_{x,a} = t[(x,a),(x,a)]; all row sums and all column sums must
  // coincide.
  std::vector<Complex> row(n, 0.0), col(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a) {
      row[x] += t(x * n + a, x * n + a);
      col[a] += t(x * n + a, x * n + a);
    }
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    r = std::max(r, std::abs(row[i] - row[0]));
    r = std::max(r, std::abs(col[i] - row[0]));
  }
  rep.add("equal_sums", r, tol * s);
  return rep;
}

}  // namespace qnsb
