#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace coindex {

using DocTermSets = std::map<std::string, std::set<std::string>>;

struct GoldStandard {
  DocTermSets per_doc;
};

// `doc_id<TAB>term` per line; blank lines ignored.
GoldStandard parse_gold(std::string_view text);
GoldStandard load_gold(const std::filesystem::path& path);

enum class Averaging { Micro, Macro };

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
};

/// Set-based precision and recall over the union of documents named on
/// either side (a missing side counts as an empty set).
///
/// Micro: pooled counts, |produced & gold| / |produced| and / |gold|.
/// Macro: mean of the per-document values.
/// A ratio with an empty denominator is 0. Throws NoOverlap when the two
/// sides share no document id.
PrecisionRecall precision_recall(const DocTermSets& produced, const GoldStandard& gold,
                                 Averaging averaging = Averaging::Micro);

}  // namespace coindex
