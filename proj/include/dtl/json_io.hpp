#pragma once

// JSON encodings of models, states, quasimodels, proofs and reports.
//
// Worlds are referred to by id strings.  Object keys are emitted in sorted
// order, so encodings are byte-stable.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "dtl/harness.hpp"
#include "dtl/proof.hpp"
#include "dtl/quasimodel.hpp"
#include "dtl/satisfy.hpp"

namespace dtl {

using json = nlohmann::json;

/// Missing field, wrong JSON type, or malformed structure.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path);

json worlds_to_json(const Preorder& p, WorldSet s);

json model_to_json(const DynModel& m);
DynModel model_from_json(const json& j);

json state_to_json(const State& s);
State state_from_json(const json& j);

json quasimodel_to_json(const Quasimodel& q);
Quasimodel quasimodel_from_json(const json& j);

json proof_to_json(const ProofObject& p);
ProofObject proof_from_json(const json& j);

json path_to_json(const Path& p, const Preorder& space);
json violation_to_json(const Violation& v);
json sweep_to_json(const SweepReport& r);
json sat_report_to_json(const SatReport& r);

}  // namespace dtl
