#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgflow/hamiltonian.hpp"
#include "hgflow/params.hpp"
#include "hgflow/pfaffian.hpp"
#include "hgflow/types.hpp"

namespace hgflow::io {

using nlohmann::json;

// Complex numbers are [re, im] pairs; a bare number is read as real.
json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const std::vector<cplx>& v);
std::vector<cplx> complex_list_from_json(const json& j);

// Nested arrays of [re, im], row major.
json to_json(const CMatrix& m);

// {"L", "N", "e", "kappa", "theta"}; theta may have N or N+1 entries.
json to_json(const SystemParams& sp);
SystemParams system_params_from_json(const json& j);

// {"L", "N", "alpha", "beta", "gamma"}.
json to_json(const HGParams& hp);
HGParams hg_params_from_json(const json& j);

// {"q": [[...]], "p": [[...]]} with q[n-1][i-1] = q_n^(i).
json to_json(const PhasePoint& pt);
PhasePoint phase_point_from_json(const json& j, int L, int N);

// {"waypoints": [[[re, im], ... N entries], ...], "clearance": optional}.
PathSpec path_from_json(const json& j);

json to_json(const SolutionVector& y);

// Parses a file; InvalidArgument when it cannot be read or parsed.
json read_json_file(const std::string& path);

}  // namespace hgflow::io
