#pragma once

#include <string>
#include <vector>

#include "ramsey/session.hpp"

namespace ramsey {

struct ExplainResult {
  std::vector<std::string> lines;  // one JSON object per ply, then a summary object
  std::vector<std::string> path;   // case labels in the order P2 entered them
  std::string end_case;            // last end-case label reached, if any
  bool consistent = true;          // recorded P2 moves equal the replayed ones
};

// Replays the P1 moves of a trace through P2's automaton and annotates every ply with the case that produced it.
ExplainResult explain_trace(const std::vector<PlyRecord>& trace, int n = 0);

}  // namespace ramsey
