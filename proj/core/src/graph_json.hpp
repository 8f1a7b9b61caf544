#pragma once

// JSON building blocks shared by the graph and pattern-report serializers.

#include "coss/alignment.hpp"
#include "coss/reuse_graph.hpp"
#include "coss/types.hpp"
#include "json_util.hpp"

namespace coss::detail {

ojson scorer_to_json(const ScorerConfig& cfg);
ojson snapshot_to_json(const ConfigSnapshot& snapshot);
ojson ref_to_json(const ParagraphRef& ref);

}  // namespace coss::detail
