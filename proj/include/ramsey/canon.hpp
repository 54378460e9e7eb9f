#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/board.hpp"

namespace ramsey {

using CanonicalKey = std::string;

// A vertex-coloured, edge-coloured (hyper)graph on the touched vertices only.
struct CanonInput {
  std::string header;
  std::vector<uint32_t> colors;  // per vertex; must be relabelling invariant
  struct E {
    std::vector<int> v;
    uint8_t color;
  };
  std::vector<E> edges;
};

struct CanonResult {
  CanonicalKey key;
  std::vector<int> labeling;                    // vertex index -> canonical position
  std::vector<std::vector<int>> automorphisms;  // each maps vertex index -> vertex index
  long leaves = 0;
};

CanonResult canonical_form(const CanonInput& in, bool want_automorphisms);

std::vector<Vertex> touched_vertices(const GameState& s);

// Copy identity is always part of the colour. `role_colors` (optional, same size
// as `touched`) refines it further.
CanonInput canon_input(const GameState& s, const std::vector<Vertex>& touched,
                       const std::vector<uint32_t>& role_colors = {}, std::string_view tag = {});

CanonicalKey canonicalize(const GameState& s, const std::vector<Vertex>& touched);

}  // namespace ramsey
