#include "gcw/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gcw {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges))
{
    if (vertex_count_ < 0 || vertex_count_ > kMaxVertices)
        throw std::invalid_argument("vertex count out of range: " + std::to_string(vertex_count_));
    adjacency_.assign(static_cast<std::size_t>(vertex_count_), 0);
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= vertex_count_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u + 1));
        auto& row = adjacency_[static_cast<std::size_t>(e.u)];
        if ((row >> e.v) & 1u)
            throw std::invalid_argument("multiple edge " + std::to_string(e.u + 1) + "-" +
                                        std::to_string(e.v + 1));
        row |= std::uint64_t{1} << e.v;
        adjacency_[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
    }
}

std::vector<int> Graph::valences() const
{
    std::vector<int> vals(static_cast<std::size_t>(vertex_count_));
    for (int v = 0; v < vertex_count_; ++v) vals[static_cast<std::size_t>(v)] = std::popcount(neighbours(v));
    return vals;
}

int Graph::min_valence() const
{
    int best = vertex_count_ == 0 ? 0 : kMaxVertices;
    for (int v = 0; v < vertex_count_; ++v) best = std::min(best, std::popcount(neighbours(v)));
    return best;
}

bool Graph::connected() const
{
    if (vertex_count_ <= 1) return true;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= neighbours(std::countr_zero(f));
        frontier = next & ~seen;
        seen |= next;
    }
    return std::popcount(seen) == vertex_count_;
}

Graph Graph::sorted() const
{
    auto e = edges_;
    std::sort(e.begin(), e.end());
    return Graph(vertex_count_, std::move(e));
}

Graph Graph::relabeled(std::span<const int> relabel) const
{
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (const auto& [a, b] : edges_) {
        int x = relabel[static_cast<std::size_t>(a)], y = relabel[static_cast<std::size_t>(b)];
        e.push_back({std::min(x, y), std::max(x, y)});
    }
    return Graph(vertex_count_, std::move(e));
}

int Graph::find_edge(int a, int b) const
{
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u == a && edges_[i].v == b) return static_cast<int>(i);
    return -1;
}

bool is_admissible(const Graph& g)
{
    // Simplicity is enforced by construction.
    return g.vertex_count() > 0 && g.min_valence() >= 3;
}

Bidegree bidegree(const Graph& g)
{
    const int p = g.vertex_count(), q = g.edge_count();
    return {2 * q - 2 * p, 2 * q - 3 * p};
}

int permutation_sign(std::span<const int> perm)
{
    std::vector<char> seen(perm.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

Contraction contract_edge(const Graph& g, int e_index)
{
    if (e_index < 0 || e_index >= g.edge_count()) throw std::out_of_range("edge index out of range");
    const auto [keep, gone] = g.edge(e_index);
    const int p = g.vertex_count();

    Contraction out;
    out.vertex_map.resize(static_cast<std::size_t>(p));
    for (int w = 0; w < p; ++w)
        out.vertex_map[static_cast<std::size_t>(w)] = w == gone ? keep : (w > gone ? w - 1 : w);

    bool parallel = false;
    std::vector<Edge> edges;
    out.edge_correspondence.assign(static_cast<std::size_t>(g.edge_count()), -1);
    for (int i = 0; i < g.edge_count(); ++i) {
        if (i == e_index) continue;
        int a = out.vertex_map[static_cast<std::size_t>(g.edge(i).u)];
        int b = out.vertex_map[static_cast<std::size_t>(g.edge(i).v)];
        Edge img{std::min(a, b), std::max(a, b)};
        auto it = std::find(edges.begin(), edges.end(), img);
        if (it != edges.end()) {
            parallel = true;
            out.edge_correspondence[static_cast<std::size_t>(i)] = static_cast<int>(it - edges.begin());
        } else {
            out.edge_correspondence[static_cast<std::size_t>(i)] = static_cast<int>(edges.size());
            edges.push_back(img);
        }
    }
    out.graph = Graph(p - 1, std::move(edges));
    out.admissible = !parallel && is_admissible(out.graph);
    return out;
}

int contraction_sign(std::span<const int> source_edge_order, int e_index,
                     std::span<const int> edge_correspondence,
                     std::span<const int> target_edge_order)
{
    auto at = std::find(source_edge_order.begin(), source_edge_order.end(), e_index);
    if (at == source_edge_order.end()) throw std::invalid_argument("contracted edge missing from order");
    const int to_front = (at - source_edge_order.begin()) % 2 == 0 ? 1 : -1;

    // position of each target edge in the reference order
    std::vector<int> rank(target_edge_order.size(), -1);
    for (std::size_t k = 0; k < target_edge_order.size(); ++k)
        rank[static_cast<std::size_t>(target_edge_order[k])] = static_cast<int>(k);

    std::vector<int> perm;
    perm.reserve(target_edge_order.size());
    for (int s : source_edge_order) {
        if (s == e_index) continue;
        int t = edge_correspondence[static_cast<std::size_t>(s)];
        if (t < 0 || rank[static_cast<std::size_t>(t)] < 0)
            throw std::invalid_argument("inconsistent edge correspondence");
        perm.push_back(rank[static_cast<std::size_t>(t)]);
    }
    if (perm.size() != target_edge_order.size())
        throw std::invalid_argument("correspondence is not a bijection");
    return to_front * permutation_sign(perm);
}

void write_graph(std::ostream& out, const Graph& g)
{
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    const Graph sorted = g.sorted();
    for (const auto& [u, v] : sorted.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

std::optional<Graph> read_graph(std::istream& in)
{
    int p = 0, q = 0;
    if (!(in >> p >> q)) return std::nullopt;
    if (q < 0) throw std::invalid_argument("negative edge count");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw std::invalid_argument("truncated graph record");
        edges.push_back({u - 1, v - 1});
    }
    return Graph(p, std::move(edges));
}

} // namespace gcw
