// JSON forms of the file-facing types. A state file is an object with
// fields n_qubits, re, im (re/im are 2^n x 2^n arrays of reals).

#pragma once

#include "diew/core/cmatrix.hpp"
#include "diew/core/network.hpp"

#include <json.hpp>

namespace diew::serialize {

nlohmann::json cmatrix_to_json(const qlin::CMatrix& m);
qlin::CMatrix cmatrix_from_json(const nlohmann::json& j);

// pattern, probability, correction labels, matched_sign, match_distance,
// plus the corrected state when embed_state is set.
nlohmann::json swap_result_to_json(const network::SwapResult& result, bool embed_state);

}  // namespace diew::serialize
