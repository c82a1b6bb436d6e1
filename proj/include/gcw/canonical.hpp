#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcw/decoration.hpp"
#include "gcw/graph.hpp"

namespace gcw {

struct CanonicalForm {
    // Canonical relabeling of the input, edges sorted. The sorted edge order
    // is the reference orientation of the isomorphism class.
    Graph graph;
    std::optional<Decoration> decoration;
    // Input vertex -> canonical vertex.
    std::vector<int> vertex_map;
    // Sign of the permutation taking the input edge order to the canonical
    // (sorted) edge order.
    int edge_perm_parity = 1;
    // "p:q:u1-v1,u2-v2,...[|d1,...,dn]", 1-based, over the canonical labeling.
    std::string key;
    // Size of the automorphism group (of the decorated graph in decorated mode).
    std::uint64_t automorphism_count = 1;
    // Some automorphism induces an odd permutation of the edges.
    bool odd_automorphism = false;
};

// Individualization-refinement canonical labeling. The search is exhaustive
// over the refinement tree, so the automorphism group is found in full; the
// chosen labeling is the lexicographically least among those realizing the
// minimal certificate, which makes canonicalization idempotent with an
// identity vertex map.
CanonicalForm canonicalize(const Graph& g);
CanonicalForm canonicalize(const Graph& g, const Decoration& d);

enum class OrientationClass { Nonzero, Zero };

OrientationClass orientation_class(const Graph& g);
OrientationClass orientation_class(const Graph& g, const Decoration& d);

std::string format_key(const Graph& sorted_graph, const std::optional<Decoration>& d);
// Inverse of format_key. Throws std::invalid_argument on malformed input.
std::pair<Graph, std::optional<Decoration>> parse_key(const std::string& key);

// Input edge indices listed in the canonical (sorted) edge order of cf.
std::vector<int> canonical_edge_order(const Graph& g, const CanonicalForm& cf);

// All automorphisms of g (fixing d when given), as vertex permutations.
std::vector<std::vector<int>> automorphisms(const Graph& g, const Decoration* d = nullptr);

} // namespace gcw
