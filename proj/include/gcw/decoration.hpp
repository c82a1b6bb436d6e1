#pragma once

#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "gcw/graph.hpp"

namespace gcw {

// Position t (0-based) holds the vertex that label t+1 is sent to. A valid
// decoration of g gives every k-valent vertex exactly k-2 labels.
struct Decoration {
    std::vector<int> map;
    auto operator<=>(const Decoration&) const = default;
};

bool is_decoration_of(const Graph& g, const Decoration& d);

// (2q-2p)! / prod_v (k_v - 2)!
mpz_class decoration_count(const Graph& g);

// Visits every decoration of an admissible graph in lexicographic order of
// the label map. Stops early when the visitor returns false.
void for_each_decoration(const Graph& g, const std::function<bool(const Decoration&)>& visit);
std::vector<Decoration> decorations_of(const Graph& g);

// Pushes a decoration through a vertex quotient (e.g. Contraction::vertex_map).
Decoration contract_decoration(const Decoration& d, std::span<const int> vertex_map);

} // namespace gcw
