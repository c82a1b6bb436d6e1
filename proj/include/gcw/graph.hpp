#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gcw {

// Vertices are 0-based internally; every external format is 1-based.
struct Edge {
    int u = 0;
    int v = 0;
    auto operator<=>(const Edge&) const = default;
};

struct Bidegree {
    int n = 0; // 2q - 2p, twice the degree
    int m = 0; // 2q - 3p, the excess
    auto operator<=>(const Bidegree&) const = default;
};

inline constexpr int kMaxVertices = 64;

// Finite simple graph with an ordered edge list. The edge order is data: it
// carries the orientation of the graph when one is needed.
class Graph {
public:
    Graph() = default;

    // Each pair is normalized to u < v. Throws std::invalid_argument on a
    // self-loop, a repeated pair, or an out-of-range endpoint.
    Graph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

    bool adjacent(int a, int b) const { return (adjacency_[static_cast<std::size_t>(a)] >> b) & 1u; }
    std::uint64_t neighbours(int a) const { return adjacency_[static_cast<std::size_t>(a)]; }

    std::vector<int> valences() const;
    int min_valence() const;
    bool connected() const;

    // Same graph with the edge list sorted lexicographically.
    Graph sorted() const;
    // Image of the graph under vertex relabeling old -> relabel[old]; the edge
    // order follows the source order.
    Graph relabeled(std::span<const int> relabel) const;
    // Edge index of {a,b}, or -1.
    int find_edge(int a, int b) const;

    bool operator==(const Graph& other) const
    {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> adjacency_;
};

bool is_admissible(const Graph& g);
Bidegree bidegree(const Graph& g);

// Sign of a permutation given in one-line notation (perm[i] is the image of i).
int permutation_sign(std::span<const int> perm);

struct Contraction {
    Graph graph;
    bool admissible = false;
    // Source edge index -> target edge index, -1 for the contracted edge.
    // Parallel edges created by the collapse map to the same target index.
    std::vector<int> edge_correspondence;
    // Source vertex -> target vertex.
    std::vector<int> vertex_map;
};

// Collapses edge e_index. The merged vertex keeps the smaller label and higher
// labels shift down by one. Surviving edges keep their relative order, so the
// correspondence is monotone.
Contraction contract_edge(const Graph& g, int e_index);

// Orientation sign of a contraction term. `source_edge_order` lists source
// edge indices in orientation order; `target_edge_order` lists target edge
// indices in the reference order of the target generator.
int contraction_sign(std::span<const int> source_edge_order, int e_index,
                     std::span<const int> edge_correspondence,
                     std::span<const int> target_edge_order);

// Text format: "p q" then q lines "u v", 1-based, u < v, sorted.
void write_graph(std::ostream& out, const Graph& g);
std::optional<Graph> read_graph(std::istream& in);

} // namespace gcw
