#include "qnsb/cli_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

namespace qnsb {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object())
    throw SchemaError(std::string(where) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string(where) + ": missing field \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw SchemaError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number())
    throw SchemaError(std::string(what) + ": expected a number");
  return j.get<double>();
}

Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(std::string(what) +
                      ": complex scalar must be a [re, im] pair");
  const double re = as_double(j[0], what);
  const double im = as_double(j[1], what);
  if (!std::isfinite(re) || !std::isfinite(im))
    throw InvariantError(std::string(what) +
                         ": non-finite (NaN/Inf) complex entry");
  return {re, im};
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

CVec vector_from_json(const Json& j, int expected_dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected_dim)
    throw SchemaError(std::string(what) + ": expected an array of " +
                      std::to_string(expected_dim) + " complex pairs");
  CVec v(expected_dim);
  for (int i = 0; i < expected_dim; ++i) v(i) = complex_from_json(j[i], what);
  return v;
}

Json vector_to_json(const CVec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

// Blocks grid used by bi-isometries, bi-unitaries and magic squares.
std::vector<std::vector<CMat>> blocks_from_json(const Json& j, int n_rows,
                                                int n_cols, int rows, int cols,
                                                const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n_rows)
    throw SchemaError(std::string(what) + ": expected " +
                      std::to_string(n_rows) + " block rows");
  std::vector<std::vector<CMat>> out(n_rows);
  for (int a = 0; a < n_rows; ++a) {
    const Json& row = j[a];
    if (!row.is_array() || static_cast<int>(row.size()) != n_cols)
      throw SchemaError(std::string(what) + ": expected " +
                        std::to_string(n_cols) + " blocks per row");
    for (int x = 0; x < n_cols; ++x) {
      CMat b = matrix_from_json(row[x]);
      if (b.rows() != rows || b.cols() != cols)
        throw InvariantError(std::string(what) + ": block (" +
                             std::to_string(a) + "," + std::to_string(x) +
                             ") must be " + std::to_string(rows) + "x" +
                             std::to_string(cols));
      out[a].push_back(std::move(b));
    }
  }
  return out;
}

Json blocks_to_json(const std::vector<std::vector<CMat>>& blocks) {
  Json out = Json::array();
  for (const auto& row : blocks) {
    Json r = Json::array();
    for (const auto& b : row) r.push_back(matrix_to_json(b));
    out.push_back(std::move(r));
  }
  return out;
}

// Subspace serialization shared by QuantumGraphSpace and PseudoGraph.
Subspace subspace_from_json(const Json& j, int ambient, const char* what) {
  if (!j.is_array())
    throw SchemaError(std::string(what) + ": \"basis\" must be an array");
  const int k = static_cast<int>(j.size());
  CMat cols(ambient, std::max(k, 1));
  cols.setZero();
  for (int c = 0; c < k; ++c) cols.col(c) = vector_from_json(j[c], ambient, what);
  if (k == 0) return subspace_from_spanning(CMat(ambient, 0), ambient);
  // Keep an already-orthonormal basis verbatim so emit/parse round-trips
  // bit-exactly; orthonormalize general spanning sets.
  const CMat b = cols.leftCols(k);
  if ((b.adjoint() * b - CMat::Identity(k, k)).norm() <= 1e-9)
    return Subspace{ambient, b, CMat(b * b.adjoint())};
  return subspace_from_spanning(b, ambient);
}

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (int c = 0; c < s.dim(); ++c)
    basis.push_back(vector_to_json(s.basis.col(c)));
  return basis;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedJsonError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedJsonError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw InputError("I/O failure writing: " + path);
}

Json matrix_to_json(const CMat& m) {
  Json data = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMat matrix_from_json(const Json& j) {
  const int rows = as_int(field(j, "rows", "matrix"), "matrix rows");
  const int cols = as_int(field(j, "cols", "matrix"), "matrix cols");
  if (rows < 0 || cols < 0)
    throw InvariantError("matrix: negative dimensions");
  const Json& data = field(j, "data", "matrix");
  if (!data.is_array() || static_cast<int>(data.size()) != rows * cols)
    throw SchemaError("matrix: \"data\" must hold rows*cols entries");
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(data[i * cols + c], "matrix entry");
  return m;
}

Json channel_to_json(const BipartiteChannel& c) {
  return Json{{"dims",
               Json{{"x", c.dx}, {"y", c.dy}, {"a", c.da}, {"b", c.db}}},
              {"choi", matrix_to_json(c.choi)}};
}

BipartiteChannel channel_from_json(const Json& j) {
  const Json& dims = field(j, "dims", "channel");
  BipartiteChannel c;
  c.dx = as_int(field(dims, "x", "channel dims"), "dims.x");
  c.dy = as_int(field(dims, "y", "channel dims"), "dims.y");
  c.da = as_int(field(dims, "a", "channel dims"), "dims.a");
  c.db = as_int(field(dims, "b", "channel dims"), "dims.b");
  if (c.dx <= 0 || c.dy <= 0 || c.da <= 0 || c.db <= 0)
    throw InvariantError("channel: dimensions must be positive");
  c.choi = matrix_from_json(field(j, "choi", "channel"));
  const long expect = static_cast<long>(c.dx) * c.dy * c.da * c.db;
  if (c.choi.rows() != expect || c.choi.cols() != expect)
    throw InvariantError("channel: Choi matrix must be " +
                         std::to_string(expect) + "x" + std::to_string(expect));
  return c;
}

Json classical_to_json(const ClassicalCorrelation& p) {
  Json arr = Json::array();
  for (int x = 0; x < p.dx; ++x) {
    Json ax = Json::array();
    for (int y = 0; y < p.dy; ++y) {
      Json ay = Json::array();
      for (int a = 0; a < p.da; ++a) {
        Json aa = Json::array();
        for (int b = 0; b < p.db; ++b) aa.push_back(p.at(x, y, a, b));
        ay.push_back(std::move(aa));
      }
      ax.push_back(std::move(ay));
    }
    arr.push_back(std::move(ax));
  }
  return Json{{"dims",
               Json{{"x", p.dx}, {"y", p.dy}, {"a", p.da}, {"b", p.db}}},
              {"p", arr}};
}

ClassicalCorrelation classical_from_json(const Json& j) {
  const Json& dims = field(j, "dims", "classical correlation");
  ClassicalCorrelation p;
  p.dx = as_int(field(dims, "x", "dims"), "dims.x");
  p.dy = as_int(field(dims, "y", "dims"), "dims.y");
  p.da = as_int(field(dims, "a", "dims"), "dims.a");
  p.db = as_int(field(dims, "b", "dims"), "dims.b");
  if (p.dx <= 0 || p.dy <= 0 || p.da <= 0 || p.db <= 0)
    throw InvariantError("classical correlation: dimensions must be positive");
  p.p.assign(static_cast<size_t>(p.dx) * p.dy * p.da * p.db, 0.0);
  const Json& arr = field(j, "p", "classical correlation");
  if (!arr.is_array() || static_cast<int>(arr.size()) != p.dx)
    throw SchemaError("classical correlation: \"p\" must be nested [x][y][a][b]");
  for (int x = 0; x < p.dx; ++x)
    for (int y = 0; y < p.dy; ++y)
      for (int a = 0; a < p.da; ++a)
        for (int b = 0; b < p.db; ++b) {
          const Json* cur = &arr[x];
          for (int idx : {y, a, b}) {
            if (!cur->is_array() || idx >= static_cast<int>(cur->size()))
              throw SchemaError(
                  "classical correlation: \"p\" has wrong nesting");
            cur = &(*cur)[idx];
          }
          const double val = as_double(*cur, "p entry");
          if (!std::isfinite(val))
            throw InvariantError("classical correlation: non-finite entry");
          p.at(x, y, a, b) = val;
        }
  return p;
}

Json bistochastic_to_json(const BistochasticMatrix& e) {
  return Json{{"n", e.n}, {"d", e.d}, {"matrix", matrix_to_json(e.m)}};
}

BistochasticMatrix bistochastic_from_json(const Json& j) {
  BistochasticMatrix e;
  e.n = as_int(field(j, "n", "bistochastic"), "n");
  e.d = as_int(field(j, "d", "bistochastic"), "d");
  if (e.n <= 0 || e.d <= 0)
    throw InvariantError("bistochastic: n and d must be positive");
  e.m = matrix_from_json(field(j, "matrix", "bistochastic"));
  const long expect = static_cast<long>(e.n) * e.n * e.d;
  if (e.m.rows() != expect || e.m.cols() != expect)
    throw InvariantError("bistochastic: matrix must be " +
                         std::to_string(expect) + "x" + std::to_string(expect));
  return e;
}

Json biisometry_to_json(const BiIsometry& v) {
  return Json{{"n", v.n},
              {"d_h", v.d_h},
              {"d_k", v.d_k},
              {"blocks", blocks_to_json(v.blocks)}};
}

BiIsometry biisometry_from_json(const Json& j) {
  BiIsometry v;
  v.n = as_int(field(j, "n", "bi-isometry"), "n");
  v.d_h = as_int(field(j, "d_h", "bi-isometry"), "d_h");
  v.d_k = as_int(field(j, "d_k", "bi-isometry"), "d_k");
  if (v.n <= 0 || v.d_h <= 0 || v.d_k <= 0)
    throw InvariantError("bi-isometry: dimensions must be positive");
  v.blocks = blocks_from_json(field(j, "blocks", "bi-isometry"), v.n, v.n,
                              v.d_k, v.d_h, "bi-isometry");
  return v;
}

Json biunitary_to_json(const BiUnitary& u) {
  return Json{{"n", u.n},
              {"d_h", u.d},
              {"d_k", u.d},
              {"blocks", blocks_to_json(u.blocks)}};
}

BiUnitary biunitary_from_json(const Json& j) {
  BiUnitary u;
  u.n = as_int(field(j, "n", "bi-unitary"), "n");
  const int dh = as_int(field(j, "d_h", "bi-unitary"), "d_h");
  const int dk = as_int(field(j, "d_k", "bi-unitary"), "d_k");
  if (dh != dk)
    throw InvariantError("bi-unitary: d_h and d_k must coincide");
  u.d = dh;
  if (u.n <= 0 || u.d <= 0)
    throw InvariantError("bi-unitary: dimensions must be positive");
  u.blocks = blocks_from_json(field(j, "blocks", "bi-unitary"), u.n, u.n, u.d,
                              u.d, "bi-unitary");
  return u;
}

Json magic_to_json(const MagicSquare& e) {
  return Json{{"n", e.n}, {"d", e.d}, {"entries", blocks_to_json(e.entries)}};
}

MagicSquare magic_from_json(const Json& j) {
  MagicSquare e;
  e.n = as_int(field(j, "n", "magic square"), "n");
  e.d = as_int(field(j, "d", "magic square"), "d");
  if (e.n <= 0 || e.d <= 0)
    throw InvariantError("magic square: n and d must be positive");
  e.entries = blocks_from_json(field(j, "entries", "magic square"), e.n, e.n,
                               e.d, e.d, "magic square");
  return e;
}

Json decomposition_to_json(const PermDecomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms)
    terms.push_back(
        Json{{"perm", t.theta}, {"gamma", matrix_to_json(t.gamma)}});
  return Json{{"n", d.n}, {"d", d.d}, {"terms", terms}};
}

PermDecomposition decomposition_from_json(const Json& j) {
  PermDecomposition d;
  d.n = as_int(field(j, "n", "decomposition"), "n");
  d.d = as_int(field(j, "d", "decomposition"), "d");
  if (d.n <= 0 || d.d <= 0)
    throw InvariantError("decomposition: n and d must be positive");
  const Json& terms = field(j, "terms", "decomposition");
  if (!terms.is_array())
    throw SchemaError("decomposition: \"terms\" must be an array");
  for (const Json& t : terms) {
    PermTerm term;
    const Json& perm = field(t, "perm", "decomposition term");
    if (!perm.is_array() || static_cast<int>(perm.size()) != d.n)
      throw SchemaError("decomposition term: \"perm\" must list n images");
    std::vector<bool> seen(d.n, false);
    for (const Json& v : perm) {
      const int img = as_int(v, "perm image");
      if (img < 0 || img >= d.n || seen[img])
        throw InvariantError("decomposition term: \"perm\" is not a "
                             "permutation of 0..n-1");
      seen[img] = true;
      term.theta.push_back(img);
    }
    term.gamma = matrix_from_json(field(t, "gamma", "decomposition term"));
    if (term.gamma.rows() != d.d || term.gamma.cols() != d.d)
      throw InvariantError("decomposition term: gamma must be d x d");
    d.terms.push_back(std::move(term));
  }
  return d;
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.adjacency(i, j) != 0) edges.push_back(Json::array({i, j}));
  return Json{{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const int n = as_int(field(j, "n", "graph"), "n");
  if (n <= 0) throw InvariantError("graph: n must be positive");
  const Json& edges = field(j, "edges", "graph");
  if (!edges.is_array())
    throw SchemaError("graph: \"edges\" must be an array of pairs");
  std::vector<std::pair<int, int>> list;
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2)
      throw SchemaError("graph: each edge must be a pair [i, j]");
    const int a = as_int(e[0], "edge endpoint");
    const int b = as_int(e[1], "edge endpoint");
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InvariantError("graph: edge endpoint out of range");
    if (a == b)
      throw InvariantError(
          "graph: self-loop violates the zero-diagonal invariant");
    list.emplace_back(a, b);
  }
  return Graph::from_edges(n, list);
}

Json graph_space_to_json(const QuantumGraphSpace& u) {
  return Json{{"n", u.n}, {"basis", subspace_to_json(u.space)}};
}

QuantumGraphSpace graph_space_from_json(const Json& j) {
  QuantumGraphSpace u;
  u.n = as_int(field(j, "n", "graph space"), "n");
  if (u.n <= 0) throw InvariantError("graph space: n must be positive");
  u.space = subspace_from_json(field(j, "basis", "graph space"), u.n * u.n,
                               "graph space basis");
  return u;
}

Json adjacency_to_json(const QuantumAdjacency& a) {
  return Json{{"n", a.n}, {"a", matrix_to_json(a.a)}};
}

QuantumAdjacency adjacency_from_json(const Json& j) {
  QuantumAdjacency a;
  a.n = as_int(field(j, "n", "quantum adjacency"), "n");
  if (a.n <= 0) throw InvariantError("quantum adjacency: n must be positive");
  a.a = matrix_from_json(field(j, "a", "quantum adjacency"));
  const int nn = a.n * a.n;
  if (a.a.rows() != nn || a.a.cols() != nn)
    throw InvariantError("quantum adjacency: operator must be n^2 x n^2");
  if ((a.a - a.a.adjoint()).norm() > 1e-9 * scale_of(a.a))
    throw InvariantError("quantum adjacency: operator must be Hermitian");
  return a;
}

Json pseudograph_to_json(const PseudoGraph& w) {
  return Json{{"n", w.n}, {"basis", subspace_to_json(w.space)}};
}

PseudoGraph pseudograph_from_json(const Json& j) {
  PseudoGraph w;
  w.n = as_int(field(j, "n", "pseudo-graph"), "n");
  if (w.n <= 0) throw InvariantError("pseudo-graph: n must be positive");
  const int amb = w.n * w.n * w.n * w.n;
  w.space = subspace_from_json(field(j, "basis", "pseudo-graph"), amb,
                               "pseudo-graph basis");
  return w;
}

Json verdict_to_json(const Verdict& v) {
  Json items = Json::array();
  for (const auto& it : v.report.items)
    items.push_back(Json{{"name", it.name},
                         {"residual", it.residual},
                         {"threshold", it.threshold},
                         {"pass", it.pass}});
  for (const auto& it : v.report.info)
    items.push_back(Json{{"name", it.name},
                         {"residual", it.residual},
                         {"threshold", nullptr},
                         {"pass", nullptr}});
  Json arts = Json::array();
  for (const auto& a : v.artifacts) arts.push_back(a);
  return Json{{"command", v.command},
              {"overall", v.overall},
              {"items", items},
              {"artifacts", arts}};
}

void print_verdict(const Verdict& v, bool json_mode, std::ostream& out) {
  if (json_mode) {
    out << verdict_to_json(v).dump(2) << '\n';
    return;
  }
  out << "command: " << v.command << '\n';
  for (const auto& it : v.report.items)
    out << "  " << (it.pass ? "pass " : "FAIL ") << it.name
        << "  residual=" << it.residual << "  threshold=" << it.threshold
        << '\n';
  for (const auto& it : v.report.info)
    out << "  info " << it.name << "  value=" << it.residual << '\n';
  for (const auto& a : v.artifacts) out << "  wrote " << a << '\n';
  out << "overall: " << v.overall << '\n';
}

int verdict_exit_code(const Verdict& v) {
  if (v.overall == "pass") return 0;
  if (v.overall == "undetermined") return 2;
  return 1;
}

namespace {

struct GlobalOpts {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int max_iter = 5000;
  bool json = false;
};

Verdict make_verdict(std::string command, CheckReport rep,
                     std::vector<std::string> artifacts = {}) {
  Verdict v;
  v.command = std::move(command);
  v.overall = rep.overall_pass() ? "pass" : "fail";
  v.report = std::move(rep);
  v.artifacts = std::move(artifacts);
  return v;
}

Verdict cmd_check(const std::string& kind, const std::string& file,
                  const GlobalOpts& g) {
  const Json j = load_json_file(file);
  CheckReport rep;
  if (kind == "channel") {
    const BipartiteChannel c = channel_from_json(j);
    rep.merge(check_channel(c, g.tol), "channel_");
    rep.merge(check_ns(c, g.tol), "ns_");
    if (c.da == c.dx && c.db == c.dy)
      rep.merge(check_bicorrelation(c, g.tol), "bi_");
  } else if (kind == "bistochastic") {
    rep = check_bistochastic(bistochastic_from_json(j), g.tol);
  } else if (kind == "magic") {
    rep = check_magic(magic_from_json(j), g.tol);
  } else if (kind == "pseudograph") {
    rep = check_pseudograph(pseudograph_from_json(j), g.tol);
  } else if (kind == "aqg") {
    rep = check_adjacency_axioms(adjacency_from_json(j), g.tol);
  } else {
    throw InputError("unknown check kind: " + kind);
  }
  return make_verdict("check " + kind, std::move(rep));
}

Verdict cmd_factorize(const std::string& file, const std::string& out_path,
                      const GlobalOpts& g) {
  const BistochasticMatrix e = bistochastic_from_json(load_json_file(file));
  const BiIsometry v = factorize(e, g.tol);
  CheckReport rep;
  rep.add("isometry", biisometry_residual(v), g.tol * scale_of(e.m));
  rep.add("reconstruction", (from_biisometry(v, g.tol).m - e.m).norm(),
          g.tol * scale_of(e.m));
  rep.add_info("stinespring_dim", static_cast<double>(v.d_k));
  write_json_file(out_path, biisometry_to_json(v));
  return make_verdict("factorize", std::move(rep), {out_path});
}

Verdict cmd_birkhoff(const std::string& file, const std::string& out_path,
                     const GlobalOpts& g) {
  const CMat m = matrix_from_json(load_json_file(file));
  if (m.imag().norm() > g.tol * scale_of(m))
    throw InvariantError("birkhoff: input matrix must be real");
  const RMat b = m.real();
  const PermDecomposition dec = birkhoff_scalar(b, g.tol);
  RMat rebuilt = RMat::Zero(b.rows(), b.cols());
  for (const auto& t : dec.terms)
    for (int x = 0; x < dec.n; ++x)
      rebuilt(x, t.theta[x]) += t.gamma(0, 0).real();
  CheckReport rep;
  rep.add("reconstruction", (rebuilt - b).norm(), g.tol * scale_of(m));
  rep.add_info("terms", static_cast<double>(dec.terms.size()));
  std::vector<std::string> arts;
  if (!out_path.empty()) {
    write_json_file(out_path, decomposition_to_json(dec));
    arts.push_back(out_path);
  }
  return make_verdict("birkhoff", std::move(rep), std::move(arts));
}

Verdict cmd_decompose_magic(const std::string& file,
                            const std::string& out_path,
                            const GlobalOpts& g) {
  const MagicSquare e = magic_from_json(load_json_file(file));
  const DecomposeResult r = decompose_operator(e, g.max_iter, g.tol);
  if (!r.decomposition) {
    Verdict v;
    v.command = "decompose-magic";
    v.overall = "undetermined";
    v.report.add_info("iterations", static_cast<double>(r.iterations));
    v.report.add_info("cone_residual", r.cone_residual);
    v.report.add_info("affine_residual", r.affine_residual);
    return v;
  }
  CheckReport rep = verify_decomposition(e, *r.decomposition, g.tol);
  rep.add_info("iterations", static_cast<double>(r.iterations));
  write_json_file(out_path, decomposition_to_json(*r.decomposition));
  return make_verdict("decompose-magic", std::move(rep), {out_path});
}

Verdict cmd_dilate(const std::string& file, const std::string& out_path,
                   const GlobalOpts& g) {
  const PermDecomposition dec =
      decomposition_from_json(load_json_file(file));
  const DilationResult r = dilate(dec, g.tol);
  Json out{{"n", dec.n},
           {"d", dec.d},
           {"v", matrix_to_json(r.v)},
           {"projections", blocks_to_json(r.projections)}};
  write_json_file(out_path, out);
  return make_verdict("dilate", r.report, {out_path});
}

Verdict cmd_make_correlation(const std::string& kind, const std::string& file,
                             const std::string& out_path,
                             const GlobalOpts& g) {
  const Json j = load_json_file(file);
  BipartiteChannel c;
  if (kind == "local-unitaries" || kind == "biunitary-trace") {
    const Json& terms = field(j, "terms", "correlation input");
    if (!terms.is_array() || terms.empty())
      throw SchemaError("correlation input: \"terms\" must be a non-empty "
                        "array");
    if (kind == "local-unitaries") {
      std::vector<std::pair<double, CMat>> list;
      for (const Json& t : terms)
        list.emplace_back(as_double(field(t, "weight", "term"), "weight"),
                          matrix_from_json(field(t, "u", "term")));
      c = from_local_unitaries(list, g.tol);
    } else {
      std::vector<std::pair<double, BiUnitary>> list;
      for (const Json& t : terms)
        list.emplace_back(as_double(field(t, "weight", "term"), "weight"),
                          biunitary_from_json(field(t, "u", "term")));
      c = from_biunitary_trace(list, g.tol);
    }
  } else if (kind == "qc-pair") {
    const BistochasticMatrix e =
        bistochastic_from_json(field(j, "e", "qc pair"));
    const BistochasticMatrix f =
        bistochastic_from_json(field(j, "f", "qc pair"));
    const Json& xij = field(j, "xi", "qc pair");
    if (!xij.is_array())
      throw SchemaError("qc pair: \"xi\" must be an array of complex pairs");
    const CVec xi = vector_from_json(xij, static_cast<int>(xij.size()), "xi");
    c = from_qc_pair(e, f, xi, g.tol);
  } else if (kind == "classical") {
    c = from_classical(classical_from_json(j), g.tol);
  } else {
    throw InputError("unknown correlation kind: " + kind);
  }
  CheckReport rep;
  rep.merge(check_channel(c, g.tol), "channel_");
  rep.merge(check_ns(c, g.tol), "ns_");
  write_json_file(out_path, channel_to_json(c));
  return make_verdict("make correlation", std::move(rep), {out_path});
}

QuantumGraphSpace load_graph_space(const std::string& path, bool classical) {
  const Json j = load_json_file(path);
  if (classical) return from_classical_graph(graph_from_json(j));
  return graph_space_from_json(j);
}

Verdict cmd_game_check(const std::string& strategy, const std::string& u_path,
                       const std::string& v_path, bool classical,
                       const GlobalOpts& g) {
  const BipartiteChannel c = channel_from_json(load_json_file(strategy));
  const QuantumGraphSpace u = load_graph_space(u_path, classical);
  const QuantumGraphSpace v = load_graph_space(v_path, classical);
  return make_verdict("game check",
                      check_perfect_iso_strategy(c, u, v, g.tol));
}

Verdict cmd_game_search(const std::string& u_path, const std::string& v_path,
                        std::ostream& out, bool json_mode) {
  const Graph g1 = graph_from_json(load_json_file(u_path));
  const Graph g2 = graph_from_json(load_json_file(v_path));
  const auto sigma = search_classical_local_iso(g1, g2);
  CheckReport rep;
  rep.add("isomorphism_found", sigma ? 0.0 : 1.0, 0.5);
  Verdict v = make_verdict("game search-local", std::move(rep));
  if (sigma) {
    Json s = Json::array();
    std::ostringstream line;
    line << "sigma=[";
    for (size_t i = 0; i < sigma->size(); ++i) {
      s.push_back((*sigma)[i]);
      line << (i ? "," : "") << (*sigma)[i];
    }
    line << "]";
    v.artifacts.push_back(line.str());
    if (!json_mode) out << line.str() << '\n';
  }
  return v;
}

Verdict cmd_game_biunitary(const std::string& u_path,
                           const std::string& v_path,
                           const std::string& witness, bool classical,
                           const GlobalOpts& g) {
  const QuantumGraphSpace u = load_graph_space(u_path, classical);
  const QuantumGraphSpace v = load_graph_space(v_path, classical);
  const BiUnitary w = biunitary_from_json(load_json_file(witness));
  return make_verdict("game biunitary", check_biunitary_iso(w, u, v, g.tol));
}

Verdict cmd_aqg_bridge(const std::string& file, const std::string& out_dir,
                       const GlobalOpts& g) {
  const QuantumAdjacency a = adjacency_from_json(load_json_file(file));
  const BridgeResult b = bridge(a, g.tol);
  std::filesystem::create_directories(out_dir);
  const std::string tilde_path = out_dir + "/u_tilde.json";
  const std::string ug_path = out_dir + "/u_g.json";
  write_json_file(tilde_path, pseudograph_to_json(b.u_tilde));
  write_json_file(ug_path,
                  pseudograph_to_json(PseudoGraph{b.u_tilde.n, b.u_g}));
  CheckReport rep = b.report;
  rep.add_info("s_prime_dim", static_cast<double>(b.s_prime_dim));
  return make_verdict("aqg bridge", std::move(rep), {tilde_path, ug_path});
}

Verdict cmd_aqg_pair(const std::string& command, const std::string& a1_path,
                     const std::string& a2_path, const std::string& witness,
                     const GlobalOpts& g) {
  const QuantumAdjacency a1 = adjacency_from_json(load_json_file(a1_path));
  const QuantumAdjacency a2 = adjacency_from_json(load_json_file(a2_path));
  const BiUnitary u = biunitary_from_json(load_json_file(witness));
  if (command == "aqg intertwine")
    return make_verdict(command, intertwiner_check(u, a1, a2, g.tol));
  return make_verdict(command, verify_identities(u, a1, a2, g.tol));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Verifiers and constructors for quantum no-signalling "
               "bicorrelations, bistochastic operator matrices, quantum "
               "magic squares and quantum graph isomorphism games"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--tol", g.tol, "Relative tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed for seeded checks");
  app.add_option("--max-iter", g.max_iter, "Iteration cap for the "
                                           "alternating-projection solver")
      ->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable verdict output");
  app.fallthrough();

  std::string kind, file, out_path, u_path, v_path, witness, a1_path, a2_path;
  bool classical = false;

  auto* check = app.add_subcommand("check", "Run a verifier on a JSON file");
  check->add_option("kind", kind, "channel|bistochastic|magic|pseudograph|aqg")
      ->required();
  check->add_option("file", file, "Input JSON file")->required();

  auto* fact = app.add_subcommand("factorize",
                                  "Factorize a bistochastic operator matrix");
  fact->add_option("file", file)->required();
  fact->add_option("-o,--output", out_path)->required();

  auto* birk = app.add_subcommand(
      "birkhoff", "Decompose a doubly stochastic matrix into permutations");
  birk->add_option("file", file)->required();
  birk->add_option("-o,--output", out_path);

  auto* dm = app.add_subcommand(
      "decompose-magic",
      "Search a permutation-indexed PSD decomposition of a magic square");
  dm->add_option("file", file)->required();
  dm->add_option("-o,--output", out_path)->required();

  auto* dil = app.add_subcommand("dilate",
                                 "Dilate a decomposition to a commuting "
                                 "quantum permutation");
  dil->add_option("file", file)->required();
  dil->add_option("-o,--output", out_path)->required();

  auto* mk = app.add_subcommand("make", "Constructors");
  auto* mkc = mk->add_subcommand("correlation", "Build a channel");
  mkc->add_option("--kind", kind,
                  "local-unitaries|biunitary-trace|qc-pair|classical")
      ->required();
  mkc->add_option("file", file)->required();
  mkc->add_option("-o,--output", out_path)->required();

  auto* game = app.add_subcommand("game", "Isomorphism-game verifiers");
  auto* gc = game->add_subcommand("check", "Verify a strategy channel");
  gc->add_option("--strategy", file)->required();
  gc->add_option("--u", u_path)->required();
  gc->add_option("--v", v_path)->required();
  gc->add_flag("--classical", classical,
               "Inputs are classical graph files");
  auto* gs = game->add_subcommand("search-local",
                                  "Brute-force classical isomorphism search");
  gs->add_option("--u", u_path)->required();
  gs->add_option("--v", v_path)->required();
  auto* gb = game->add_subcommand("biunitary",
                                  "Check a bi-unitary intertwiner witness");
  gb->add_option("--u", u_path)->required();
  gb->add_option("--v", v_path)->required();
  gb->add_option("--witness", witness)->required();
  gb->add_flag("--classical", classical,
               "Inputs are classical graph files");

  auto* aqg = app.add_subcommand("aqg", "Algebraic quantum graph layer");
  auto* ab = aqg->add_subcommand("bridge",
                                 "Bridge an adjacency operator to its "
                                 "pseudo-graph spaces");
  ab->add_option("file", file)->required();
  ab->add_option("-o,--output", out_path)->required();
  auto* ai = aqg->add_subcommand("intertwine",
                                 "Homomorphism/intertwining conditions");
  ai->add_option("--a1", a1_path)->required();
  ai->add_option("--a2", a2_path)->required();
  ai->add_option("--witness", witness)->required();
  auto* aid = aqg->add_subcommand("identities",
                                  "Structural identity suite for a witness");
  aid->add_option("--a1", a1_path)->required();
  aid->add_option("--a2", a2_path)->required();
  aid->add_option("--witness", witness)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 3;
  }

  try {
    Verdict v;
    if (*check) {
      v = cmd_check(kind, file, g);
    } else if (*fact) {
      v = cmd_factorize(file, out_path, g);
    } else if (*birk) {
      v = cmd_birkhoff(file, out_path, g);
    } else if (*dm) {
      v = cmd_decompose_magic(file, out_path, g);
    } else if (*dil) {
      v = cmd_dilate(file, out_path, g);
    } else if (*mkc) {
      v = cmd_make_correlation(kind, file, out_path, g);
    } else if (*gc) {
      v = cmd_game_check(file, u_path, v_path, classical, g);
    } else if (*gs) {
      v = cmd_game_search(u_path, v_path, out, g.json);
    } else if (*gb) {
      v = cmd_game_biunitary(u_path, v_path, witness, classical, g);
    } else if (*ab) {
      v = cmd_aqg_bridge(file, out_path, g);
    } else if (*ai) {
      v = cmd_aqg_pair("aqg intertwine", a1_path, a2_path, witness, g);
    } else if (*aid) {
      v = cmd_aqg_pair("aqg identities", a1_path, a2_path, witness, g);
    } else {
      err << "error: no command selected\n";
      return 3;
    }
    print_verdict(v, g.json, out);
    return verdict_exit_code(v);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qnsb
