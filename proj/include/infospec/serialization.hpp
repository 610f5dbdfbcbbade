#pragma once

#include <string>

#include "json.hpp"

#include "infospec/states.hpp"

namespace infospec {

using Json = nlohmann::ordered_json;

// Matrix schema: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Ensemble schema: {"probs": [...], "states": [matrix...]} where each state is
// a rank-one matrix or a pure-state density matrix.
Json ensemble_to_json(const PureStateEnsemble& e);
PureStateEnsemble ensemble_from_json(const Json& j);

Matrix load_matrix(const std::string& path);
PureStateEnsemble load_ensemble(const std::string& path);

// Fixed-width formatting used for all CLI numerics (12 significant digits).
std::string format_number(double v);

}  // namespace infospec
