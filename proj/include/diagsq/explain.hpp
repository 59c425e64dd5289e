#pragma once

#include <json.hpp>

namespace diagsq {

// Optional audit-trail sink.  Engines that receive a non-null pointer fill
// it with the intermediate quantities of their construction, in insertion
// order, so tests and the CLI --explain flag can introspect a run.
using ExplainSink = nlohmann::ordered_json;

}  // namespace diagsq
