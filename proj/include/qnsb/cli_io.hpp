// JSON schemas for every domain type and the command-line surface.
//
// Complex scalars are serialized as [re, im] pairs of doubles; nlohmann
// emits shortest round-trip decimal forms, so parse(emit(v)) == v holds
// bit-exactly for finite inputs.  Matrices are row-major:
// {"rows": r, "cols": c, "data": [[re,im], ...]}.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnsb/aqg.hpp"
#include "qnsb/bistochastic.hpp"
#include "qnsb/channels.hpp"
#include "qnsb/magic.hpp"
#include "qnsb/numerics.hpp"
#include "qnsb/qgraph.hpp"

namespace qnsb {

using Json = nlohmann::ordered_json;

// Error classes, one per failure mode: unreadable/invalid JSON text,
// JSON not matching the declared schema, and schema-valid data that
// violates a type invariant (NaN entries, size mismatches, self-loops).
struct MalformedJsonError : InputError {
  using InputError::InputError;
};
struct SchemaError : InputError {
  using InputError::InputError;
};
struct InvariantError : InputError {
  using InputError::InputError;
};

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// --- Schema conversions (to_/from_ pairs) ------------------------------

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json channel_to_json(const BipartiteChannel& c);
BipartiteChannel channel_from_json(const Json& j);

Json classical_to_json(const ClassicalCorrelation& p);
ClassicalCorrelation classical_from_json(const Json& j);

Json bistochastic_to_json(const BistochasticMatrix& e);
BistochasticMatrix bistochastic_from_json(const Json& j);

Json biisometry_to_json(const BiIsometry& v);
BiIsometry biisometry_from_json(const Json& j);

Json biunitary_to_json(const BiUnitary& u);
BiUnitary biunitary_from_json(const Json& j);

Json magic_to_json(const MagicSquare& e);
MagicSquare magic_from_json(const Json& j);

Json decomposition_to_json(const PermDecomposition& d);
PermDecomposition decomposition_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json graph_space_to_json(const QuantumGraphSpace& u);
QuantumGraphSpace graph_space_from_json(const Json& j);

Json adjacency_to_json(const QuantumAdjacency& a);
QuantumAdjacency adjacency_from_json(const Json& j);

Json pseudograph_to_json(const PseudoGraph& w);
PseudoGraph pseudograph_from_json(const Json& j);

// --- Verdicts -----------------------------------------------------------

struct Verdict {
  std::string command;
  std::string overall;  // "pass" | "fail" | "undetermined"
  CheckReport report;
  std::vector<std::string> artifacts;
};

Json verdict_to_json(const Verdict& v);
void print_verdict(const Verdict& v, bool json_mode, std::ostream& out);

// 0 = pass/constructed, 1 = check failed, 2 = undetermined,
// 3 = input error.
int verdict_exit_code(const Verdict& v);

// Full command dispatch; returns the process exit code and writes all
// output to the given streams.  Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace qnsb
