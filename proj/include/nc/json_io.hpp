#pragma once

#include "json.hpp"
#include "nc/torus.hpp"

namespace nc {

using Json = nlohmann::ordered_json;

/// {"theta": <double or [num, den]>, "terms": [[r, s, re, im], ...]} with the
/// term list sorted by (r, s).  Exact-rational parameters round-trip bit
/// exactly because the fraction is stored as integers.
Json element_to_json(const TorusElement& a);
TorusElement element_from_json(const Json& j);

Json params_to_json(const TorusParams& p);
TorusParams params_from_json(const Json& j);

/// {"m":, "n":, "k":, "base_theta":, "cover_theta":}
Json spec_to_json(const CoveringSpec& spec);
CoveringSpec spec_from_json(const Json& j);

}  // namespace nc
