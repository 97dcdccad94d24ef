#pragma once

#include <map>
#include <string>
#include <vector>

namespace taskfuse {

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

/// Per-query ranked lists, the unit exchanged between pipeline stages.
struct Run {
  std::map<std::string, std::vector<ScoredDoc>> rankings;
  std::string tag = "taskfuse";
};

/// Graded relevance judgments keyed by query then doc id.
struct Qrels {
  std::map<std::string, std::map<std::string, int>> judgments;
};

/// trec convention: score descending, doc id descending on ties.
void canonical_sort(std::vector<ScoredDoc>& ranking);

}  // namespace taskfuse
