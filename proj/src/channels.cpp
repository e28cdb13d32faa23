#include "qnsb/channels.hpp"

#include <cmath>

namespace qnsb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

}  // namespace

SingleChannel channel_from_unitary(const CMat& u, double tol) {
  const int n = static_cast<int>(u.rows());
  require(u.cols() == n, "channel_from_unitary: U must be square");
  require((u.adjoint() * u - CMat::Identity(n, n)).norm() <= 10.0 * tol * n,
          "channel_from_unitary: U is not unitary");
  SingleChannel c;
  c.dim_in = n;
  c.dim_out = n;
  c.choi = CMat::Zero(n * n, n * n);
  // (U^dagger eps_{x,x'} U)_{a,a'} = conj(U_{x,a}) U_{x',a'}.
  for (int x = 0; x < n; ++x)
    for (int xp = 0; xp < n; ++xp)
      for (int a = 0; a < n; ++a)
        for (int ap = 0; ap < n; ++ap)
          c.choi(c.row(x, a), c.row(xp, ap)) = std::conj(u(x, a)) * u(xp, ap);
  return c;
}

CMat apply_channel(const SingleChannel& c, const CMat& rho) {
  require(rho.rows() == c.dim_in && rho.cols() == c.dim_in,
          "apply: state dimension mismatch");
  CMat out = CMat::Zero(c.dim_out, c.dim_out);
  for (int x = 0; x < c.dim_in; ++x)
    for (int xp = 0; xp < c.dim_in; ++xp)
      out += rho(x, xp) *
             c.choi.block(x * c.dim_out, xp * c.dim_out, c.dim_out, c.dim_out);
  return out;
}

SingleChannel sharp(const SingleChannel& c) {
  // C_sharp[(x,a),(x',a')] = Phi(eps_{x',x})[a',a] = C[(x',a'),(x,a)].
  SingleChannel s = c;
  s.choi = c.choi.transpose();
  return s;
}

BipartiteChannel product_channel(const SingleChannel& phi,
                                 const SingleChannel& psi) {
  BipartiteChannel c;
  c.dx = phi.dim_in;
  c.da = phi.dim_out;
  c.dy = psi.dim_in;
  c.db = psi.dim_out;
  const int dim = c.dx * c.dy * c.da * c.db;
  c.choi = CMat::Zero(dim, dim);
  for (int x = 0; x < c.dx; ++x)
    for (int xp = 0; xp < c.dx; ++xp)
      for (int y = 0; y < c.dy; ++y)
        for (int yp = 0; yp < c.dy; ++yp)
          for (int a = 0; a < c.da; ++a)
            for (int ap = 0; ap < c.da; ++ap)
              for (int b = 0; b < c.db; ++b)
                for (int bp = 0; bp < c.db; ++bp)
                  c.choi(c.row(x, y, a, b), c.row(xp, yp, ap, bp)) =
                      phi.choi(phi.row(x, a), phi.row(xp, ap)) *
                      psi.choi(psi.row(y, b), psi.row(yp, bp));
  return c;
}

CMat apply_channel(const BipartiteChannel& c, const CMat& rho) {
  const int din = c.dx * c.dy;
  const int dout = c.da * c.db;
  require(rho.rows() == din && rho.cols() == din,
          "apply: state dimension mismatch");
  CMat out = CMat::Zero(dout, dout);
  // The Choi matrix is the block matrix (Gamma(eps_{r,c}))_{r,c} over
  // composite input indices r = (x,y), c = (x',y').
  for (int r = 0; r < din; ++r)
    for (int cc = 0; cc < din; ++cc)
      out += rho(r, cc) * c.choi.block(r * dout, cc * dout, dout, dout);
  return out;
}

CheckReport check_channel(const BipartiteChannel& c, double tol) {
  CheckReport rep;
  const double s = std::max(1.0, scale_of(c.choi));

  const double herm = (c.choi - c.choi.adjoint()).norm();
  double neg = herm;
  if (herm <= tol * s)
    neg = std::max(0.0, -min_herm_eigenvalue(c.choi));
  rep.add("cp", neg, tol * s);

  const int din = c.dx * c.dy;
  const int dout = c.da * c.db;
  CMat tr_out(din, din);
  for (int r = 0; r < din; ++r)
    for (int cc = 0; cc < din; ++cc)
      tr_out(r, cc) = c.choi.block(r * dout, cc * dout, dout, dout).trace();
  rep.add("tp", (tr_out - CMat::Identity(din, din)).norm(), tol * s);

  const CMat gi = apply_channel(c, CMat::Identity(din, din));
  rep.add("unital", (gi - CMat::Identity(dout, dout)).norm(), tol * s);
  return rep;
}

CheckReport check_ns(const BipartiteChannel& c, double tol) {
  CheckReport rep;
  const double s = std::max(1.0, scale_of(c.choi));
  const int dout = c.da * c.db;

  // Direct form: Tr_A Gamma(rho_X (x) eps_{y,y'}) = 0 for every traceless
  // rho_X, and symmetrically on the B side.
  double direct = 0.0;
  auto out_block = [&](int x, int xp, int y, int yp) {
    return c.choi.block((x * c.dy + y) * dout, (xp * c.dy + yp) * dout, dout,
                        dout);
  };
  for (int y = 0; y < c.dy; ++y)
    for (int yp = 0; yp < c.dy; ++yp) {
      // rho_X = eps_{x,x'}, x != x'.
      for (int x = 0; x < c.dx; ++x)
        for (int xp = 0; xp < c.dx; ++xp) {
          if (x == xp) continue;
          const CMat g = out_block(x, xp, y, yp);
          direct = std::max(
              direct, partial_trace(g, {c.da, c.db}, 0).norm());
        }
      // rho_X = eps_{x,x} - eps_{0,0}.
      for (int x = 1; x < c.dx; ++x) {
        const CMat g = out_block(x, x, y, yp) - out_block(0, 0, y, yp);
        direct =
            std::max(direct, partial_trace(g, {c.da, c.db}, 0).norm());
      }
    }
  for (int x = 0; x < c.dx; ++x)
    for (int xp = 0; xp < c.dx; ++xp) {
      for (int y = 0; y < c.dy; ++y)
        for (int yp = 0; yp < c.dy; ++yp) {
          if (y == yp) continue;
          const CMat g = out_block(x, xp, y, yp);
          direct = std::max(
              direct, partial_trace(g, {c.da, c.db}, 1).norm());
        }
      for (int y = 1; y < c.dy; ++y) {
        const CMat g = out_block(x, xp, y, y) - out_block(x, xp, 0, 0);
        direct =
            std::max(direct, partial_trace(g, {c.da, c.db}, 1).norm());
      }
    }
  rep.add("ns_direct", direct, tol * s);

  // Slice form on the Choi matrix: Sum_a C_{x,x',y,y'}^{a,a,b,b'} =
  // delta_{x,x'} c_{y,y'}^{b,b'} and Sum_b C_{x,x',y,y'}^{a,a',b,b} =
  // delta_{y,y'} d_{x,x'}^{a,a'}.
  double slice = 0.0;
  for (int y = 0; y < c.dy; ++y)
    for (int yp = 0; yp < c.dy; ++yp)
      for (int b = 0; b < c.db; ++b)
        for (int bp = 0; bp < c.db; ++bp) {
          Complex common = 0.0;
          for (int a = 0; a < c.da; ++a)
            common += c.entry(0, 0, y, yp, a, a, b, bp);
          for (int x = 0; x < c.dx; ++x)
            for (int xp = 0; xp < c.dx; ++xp) {
              Complex sum = 0.0;
              for (int a = 0; a < c.da; ++a)
                sum += c.entry(x, xp, y, yp, a, a, b, bp);
              slice = std::max(
                  slice, std::abs(sum - (x == xp ? common : Complex(0.0))));
            }
        }
  for (int x = 0; x < c.dx; ++x)
    for (int xp = 0; xp < c.dx; ++xp)
      for (int a = 0; a < c.da; ++a)
        for (int ap = 0; ap < c.da; ++ap) {
          Complex common = 0.0;
          for (int b = 0; b < c.db; ++b)
            common += c.entry(x, xp, 0, 0, a, ap, b, b);
          for (int y = 0; y < c.dy; ++y)
            for (int yp = 0; yp < c.dy; ++yp) {
              Complex sum = 0.0;
              for (int b = 0; b < c.db; ++b)
                sum += c.entry(x, xp, y, yp, a, ap, b, b);
              slice = std::max(
                  slice, std::abs(sum - (y == yp ? common : Complex(0.0))));
            }
        }
  rep.add("ns_slice", slice, tol * s);
  return rep;
}

BipartiteChannel dual(const BipartiteChannel& c) {
  BipartiteChannel d;
  d.dx = c.da;
  d.dy = c.db;
  d.da = c.dx;
  d.db = c.dy;
  const int dim = c.dx * c.dy * c.da * c.db;
  d.choi = CMat::Zero(dim, dim);
  for (int x = 0; x < c.dx; ++x)
    for (int xp = 0; xp < c.dx; ++xp)
      for (int y = 0; y < c.dy; ++y)
        for (int yp = 0; yp < c.dy; ++yp)
          for (int a = 0; a < c.da; ++a)
            for (int ap = 0; ap < c.da; ++ap)
              for (int b = 0; b < c.db; ++b)
                for (int bp = 0; bp < c.db; ++bp)
                  d.choi(d.row(a, b, x, y), d.row(ap, bp, xp, yp)) =
                      c.entry(x, xp, y, yp, a, ap, b, bp);
  return d;
}

CheckReport check_bicorrelation(const BipartiteChannel& c, double tol) {
  require(c.da == c.dx && c.db == c.dy,
          "check_bicorrelation: requires square alphabets (a = x, b = y)");
  CheckReport rep;
  rep.merge(check_channel(c, tol));
  rep.merge(check_ns(c, tol), "primal_");
  rep.merge(check_ns(dual(c), tol), "dual_");
  return rep;
}

CMat maximally_entangled(int n) {
  CMat j = CMat::Zero(n * n, n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      j += tensor_product(matrix_unit(n, x, y), matrix_unit(n, x, y));
  return j / static_cast<double>(n);
}

CheckReport check_concurrent(const BipartiteChannel& c, double tol) {
  require(c.dx == c.dy && c.dx == c.da && c.dx == c.db,
          "check_concurrent: requires all four dims equal");
  CheckReport rep;
  const double s = std::max(1.0, scale_of(c.choi));
  const CMat j = maximally_entangled(c.dx);
  rep.add("concurrent", (apply_channel(c, j) - j).norm(), tol * s);
  rep.add("concurrent_dual", (apply_channel(dual(c), j) - j).norm(), tol * s);
  return rep;
}

BipartiteChannel from_local_unitaries(
    const std::vector<std::pair<double, CMat>>& terms, double tol) {
  require(!terms.empty(), "from_local_unitaries: empty term list");
  double wsum = 0.0;
  for (const auto& [w, u] : terms) {
    require(w > 0.0, "from_local_unitaries: weights must be positive");
    wsum += w;
  }
  require(std::abs(wsum - 1.0) <= 1e-12,
          "from_local_unitaries: weights must sum to 1");
  const int n = static_cast<int>(terms.front().second.rows());
  BipartiteChannel out;
  out.dx = out.dy = out.da = out.db = n;
  const int dim = n * n * n * n;
  out.choi = CMat::Zero(dim, dim);
  for (const auto& [w, u] : terms) {
    require(u.rows() == n && u.cols() == n,
            "from_local_unitaries: unitary size mismatch");
    const SingleChannel phi = channel_from_unitary(u, tol);
    const BipartiteChannel term = product_channel(phi, sharp(phi));
    out.choi += w * term.choi;
  }
  return out;
}

BipartiteChannel from_biunitary_trace(
    const std::vector<std::pair<double, BiUnitary>>& terms, double tol) {
  require(!terms.empty(), "from_biunitary_trace: empty term list");
  double wsum = 0.0;
  for (const auto& [w, u] : terms) {
    require(w > 0.0, "from_biunitary_trace: weights must be positive");
    wsum += w;
    const double r = biunitary_residual(u);
    if (r > 10.0 * tol * u.n * u.d)
      throw InputError("from_biunitary_trace: term is not bi-unitary "
                       "(residual " +
                       std::to_string(r) + ")");
  }
  require(std::abs(wsum - 1.0) <= 1e-12,
          "from_biunitary_trace: weights must sum to 1");
  const int n = terms.front().second.n;
  BipartiteChannel out;
  out.dx = out.dy = out.da = out.db = n;
  const int dim = n * n * n * n;
  out.choi = CMat::Zero(dim, dim);
  for (const auto& [w, u] : terms) {
    require(u.n == n, "from_biunitary_trace: alphabet size mismatch");
    const double inv_d = 1.0 / static_cast<double>(u.d);
    for (int x = 0; x < n; ++x)
      for (int xp = 0; xp < n; ++xp)
        for (int a = 0; a < n; ++a)
          for (int ap = 0; ap < n; ++ap) {
            const CMat left = u.block(a, x).adjoint() * u.block(ap, xp);
            for (int y = 0; y < n; ++y)
              for (int yp = 0; yp < n; ++yp)
                for (int b = 0; b < n; ++b)
                  for (int bp = 0; bp < n; ++bp) {
                    const Complex val =
                        w * inv_d *
                        (left * u.block(bp, yp).adjoint() * u.block(b, y))
                            .trace();
                    out.choi(out.row(x, y, a, b), out.row(xp, yp, ap, bp)) +=
                        val;
                  }
          }
  }
  return out;
}

BipartiteChannel from_qc_pair(const BistochasticMatrix& e,
                              const BistochasticMatrix& f, const CVec& xi,
                              double tol) {
  require(e.d == f.d, "from_qc_pair: block dimensions differ");
  require(xi.size() == e.d, "from_qc_pair: vector dimension mismatch");
  require(std::abs(xi.norm() - 1.0) <= 1e-12,
          "from_qc_pair: xi must be a unit vector");
  const double s =
      std::max(1.0, std::max(scale_of(e.m), scale_of(f.m)));
  double comm = 0.0;
  for (int x = 0; x < e.n; ++x)
    for (int xp = 0; xp < e.n; ++xp)
      for (int a = 0; a < e.n; ++a)
        for (int ap = 0; ap < e.n; ++ap) {
          const CMat eb = e.block(x, xp, a, ap);
          for (int y = 0; y < f.n; ++y)
            for (int yp = 0; yp < f.n; ++yp)
              for (int b = 0; b < f.n; ++b)
                for (int bp = 0; bp < f.n; ++bp) {
                  const CMat fb = f.block(y, yp, b, bp);
                  comm = std::max(comm, (eb * fb - fb * eb).norm());
                }
        }
  if (comm > tol * s)
    throw InputError("from_qc_pair: entries do not commute (max commutator "
                     "norm " +
                     std::to_string(comm) + ")");
  BipartiteChannel out;
  out.dx = out.da = e.n;
  out.dy = out.db = f.n;
  const int dim = e.n * e.n * f.n * f.n;
  out.choi = CMat::Zero(dim, dim);
  for (int x = 0; x < e.n; ++x)
    for (int xp = 0; xp < e.n; ++xp)
      for (int a = 0; a < e.n; ++a)
        for (int ap = 0; ap < e.n; ++ap) {
          const CMat eb = e.block(x, xp, a, ap);
          for (int y = 0; y < f.n; ++y)
            for (int yp = 0; yp < f.n; ++yp)
              for (int b = 0; b < f.n; ++b)
                for (int bp = 0; bp < f.n; ++bp)
                  out.choi(out.row(x, y, a, b), out.row(xp, yp, ap, bp)) =
                      xi.dot(eb * f.block(y, yp, b, bp) * xi);
        }
  return out;
}

BipartiteChannel from_classical(const ClassicalCorrelation& p, double tol) {
  for (double v : p.p)
    require(v >= -tol, "from_classical: negative probability entry");
  BipartiteChannel c;
  c.dx = p.dx;
  c.dy = p.dy;
  c.da = p.da;
  c.db = p.db;
  const int dim = p.dx * p.dy * p.da * p.db;
  c.choi = CMat::Zero(dim, dim);
  for (int x = 0; x < p.dx; ++x)
    for (int y = 0; y < p.dy; ++y)
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b)
          c.choi(c.row(x, y, a, b), c.row(x, y, a, b)) = p.at(x, y, a, b);
  return c;
}

ClassicalCorrelation extract_classical(const BipartiteChannel& c) {
  ClassicalCorrelation p;
  p.dx = c.dx;
  p.dy = c.dy;
  p.da = c.da;
  p.db = c.db;
  p.p.assign(static_cast<size_t>(p.dx) * p.dy * p.da * p.db, 0.0);
  for (int x = 0; x < p.dx; ++x)
    for (int y = 0; y < p.dy; ++y)
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b)
          p.at(x, y, a, b) = std::real(c.entry(x, x, y, y, a, a, b, b));
  return p;
}

ClassicalCorrelation transpose_family(const ClassicalCorrelation& p) {
  ClassicalCorrelation q;
  q.dx = p.da;
  q.dy = p.db;
  q.da = p.dx;
  q.db = p.dy;
  q.p.assign(p.p.size(), 0.0);
  for (int x = 0; x < p.dx; ++x)
    for (int y = 0; y < p.dy; ++y)
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b) q.at(a, b, x, y) = p.at(x, y, a, b);
  return q;
}

namespace {

// Residual of the plain NS marginal conditions for a (not necessarily
// normalized) nonnegative family.
double ns_residual(const ClassicalCorrelation& p) {
  double r = 0.0;
  // Sum_a p(a,b|x,y) independent of x.
  for (int y = 0; y < p.dy; ++y)
    for (int b = 0; b < p.db; ++b)
      for (int x = 1; x < p.dx; ++x) {
        double s0 = 0.0, s1 = 0.0;
        for (int a = 0; a < p.da; ++a) {
          s0 += p.at(0, y, a, b);
          s1 += p.at(x, y, a, b);
        }
        r = std::max(r, std::abs(s1 - s0));
      }
  // Sum_b p(a,b|x,y) independent of y.
  for (int x = 0; x < p.dx; ++x)
    for (int a = 0; a < p.da; ++a)
      for (int y = 1; y < p.dy; ++y) {
        double s0 = 0.0, s1 = 0.0;
        for (int b = 0; b < p.db; ++b) {
          s0 += p.at(x, 0, a, b);
          s1 += p.at(x, y, a, b);
        }
        r = std::max(r, std::abs(s1 - s0));
      }
  return r;
}

double distribution_residual(const ClassicalCorrelation& p) {
  double r = 0.0;
  for (double v : p.p) r = std::max(r, std::max(0.0, -v));
  for (int x = 0; x < p.dx; ++x)
    for (int y = 0; y < p.dy; ++y) {
      double s = 0.0;
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b) s += p.at(x, y, a, b);
      r = std::max(r, std::abs(s - 1.0));
    }
  return r;
}

}  // namespace

CheckReport classical_checks(const ClassicalCorrelation& p, double tol) {
  CheckReport rep;
  rep.add("ns", ns_residual(p), tol);
  const ClassicalCorrelation q = transpose_family(p);
  rep.add("bicorrelation",
          std::max(distribution_residual(q), ns_residual(q)), tol);
  if (p.dx == p.dy && p.da == p.db && p.dx == p.da) {
    double r = 0.0;
    for (int x = 0; x < p.dx; ++x)
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b)
          if (a != b) r = std::max(r, std::abs(p.at(x, x, a, b)));
    for (int x = 0; x < p.dx; ++x)
      for (int y = 0; y < p.dy; ++y)
        if (x != y)
          for (int a = 0; a < p.da; ++a)
            r = std::max(r, std::abs(p.at(x, y, a, a)));
    rep.add("bisynchronous", r, tol);
  } else {
    rep.add_info("bisynchronous_skipped_nonsquare", 0.0);
  }
  return rep;
}

}  // namespace qnsb
