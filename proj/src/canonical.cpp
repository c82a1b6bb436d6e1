#include "gcw/canonical.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace gcw {

namespace {

using Coloring = std::vector<int>;

// Equitable refinement: split colour classes by the multiset of neighbour
// colours until stable. Colours are re-ranked from label-invariant
// signatures, so the result commutes with vertex relabeling.
void refine(const Graph& g, Coloring& colors)
{
    const int p = g.vertex_count();
    int classes = static_cast<int>(std::set<int>(colors.begin(), colors.end()).size());
    std::vector<std::pair<std::vector<int>, int>> sig(static_cast<std::size_t>(p));
    while (true) {
        for (int v = 0; v < p; ++v) {
            auto& s = sig[static_cast<std::size_t>(v)];
            s.first.clear();
            s.first.push_back(colors[static_cast<std::size_t>(v)]);
            for (std::uint64_t nb = g.neighbours(v); nb; nb &= nb - 1)
                s.first.push_back(colors[static_cast<std::size_t>(std::countr_zero(nb))]);
            std::sort(s.first.begin() + 1, s.first.end());
            s.second = v;
        }
        std::sort(sig.begin(), sig.end());
        int rank = -1;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            if (i == 0 || sig[i].first != sig[i - 1].first) ++rank;
            colors[static_cast<std::size_t>(sig[i].second)] = rank;
        }
        if (rank + 1 == classes) return;
        classes = rank + 1;
    }
}

struct Certificate {
    std::vector<Edge> edges;
    std::vector<int> decoration;
    auto operator<=>(const Certificate&) const = default;
};

struct Search {
    const Graph& g;
    const Decoration* d;
    std::optional<Certificate> best;
    std::vector<std::vector<int>> best_leaves;

    Certificate certificate(const std::vector<int>& labels) const
    {
        Certificate c;
        c.edges.reserve(g.edges().size());
        for (const auto& [a, b] : g.edges()) {
            int x = labels[static_cast<std::size_t>(a)], y = labels[static_cast<std::size_t>(b)];
            c.edges.push_back({std::min(x, y), std::max(x, y)});
        }
        std::sort(c.edges.begin(), c.edges.end());
        if (d) {
            c.decoration.reserve(d->map.size());
            for (int v : d->map) c.decoration.push_back(labels[static_cast<std::size_t>(v)]);
        }
        return c;
    }

    void run(Coloring colors)
    {
        refine(g, colors);
        const int p = g.vertex_count();
        std::vector<int> size(static_cast<std::size_t>(p), 0);
        for (int c : colors) ++size[static_cast<std::size_t>(c)];
        int target = -1;
        for (int c = 0; c < p; ++c)
            if (size[static_cast<std::size_t>(c)] > 1) {
                target = c;
                break;
            }
        if (target < 0) {
            Certificate cert = certificate(colors);
            if (!best || cert < *best) {
                best = std::move(cert);
                best_leaves.clear();
                best_leaves.push_back(colors);
            } else if (cert == *best) {
                best_leaves.push_back(colors);
            }
            return;
        }
        for (int v = 0; v < p; ++v) {
            if (colors[static_cast<std::size_t>(v)] != target) continue;
            Coloring child(colors.size());
            for (int w = 0; w < p; ++w) child[static_cast<std::size_t>(w)] = 2 * colors[static_cast<std::size_t>(w)] + (w == v ? 0 : 1);
            run(std::move(child));
        }
    }
};

Coloring initial_coloring(const Graph& g, const Decoration* d)
{
    const auto p = static_cast<std::size_t>(g.vertex_count());
    if (!d) return Coloring(p, 0);
    // colour = rank of the sorted label set of the vertex
    std::vector<std::vector<int>> labels(p);
    for (std::size_t t = 0; t < d->map.size(); ++t) labels[static_cast<std::size_t>(d->map[t])].push_back(static_cast<int>(t));
    auto distinct = labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Coloring colors(p);
    for (std::size_t v = 0; v < p; ++v)
        colors[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), labels[v]) - distinct.begin());
    return colors;
}

std::vector<int> inverse(const std::vector<int>& perm)
{
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

int edge_permutation_sign(const Graph& g, const std::vector<int>& phi)
{
    std::vector<int> perm(static_cast<std::size_t>(g.edge_count()));
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& [a, b] = g.edge(i);
        perm[static_cast<std::size_t>(i)] = g.find_edge(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]);
    }
    return permutation_sign(perm);
}

CanonicalForm canonicalize_impl(const Graph& g, const Decoration* d)
{
    if (d && !is_decoration_of(g, *d)) throw std::invalid_argument("canonicalize: invalid decoration");

    Search search{g, d, std::nullopt, {}};
    search.run(initial_coloring(g, d));

    CanonicalForm out;
    out.automorphism_count = search.best_leaves.size();
    const auto inv0 = inverse(search.best_leaves.front());
    for (const auto& leaf : search.best_leaves) {
        std::vector<int> phi(leaf.size());
        for (std::size_t v = 0; v < leaf.size(); ++v) phi[v] = inv0[static_cast<std::size_t>(leaf[v])];
        if (edge_permutation_sign(g, phi) < 0) {
            out.odd_automorphism = true;
            break;
        }
    }
    out.vertex_map = *std::min_element(search.best_leaves.begin(), search.best_leaves.end());

    out.graph = Graph(g.vertex_count(), search.best->edges);
    if (d) out.decoration = Decoration{search.best->decoration};

    std::vector<int> perm(static_cast<std::size_t>(g.edge_count()));
    const auto& canon_edges = out.graph.edges();
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& [a, b] = g.edge(i);
        int x = out.vertex_map[static_cast<std::size_t>(a)], y = out.vertex_map[static_cast<std::size_t>(b)];
        Edge img{std::min(x, y), std::max(x, y)};
        perm[static_cast<std::size_t>(i)] =
            static_cast<int>(std::lower_bound(canon_edges.begin(), canon_edges.end(), img) - canon_edges.begin());
    }
    out.edge_perm_parity = permutation_sign(perm);
    out.key = format_key(out.graph, out.decoration);
    return out;
}

int parse_int(std::string_view s)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("malformed key field: " + std::string(s));
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    if (s.empty()) return parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

CanonicalForm canonicalize(const Graph& g) { return canonicalize_impl(g, nullptr); }
CanonicalForm canonicalize(const Graph& g, const Decoration& d) { return canonicalize_impl(g, &d); }

OrientationClass orientation_class(const Graph& g)
{
    return canonicalize(g).odd_automorphism ? OrientationClass::Zero : OrientationClass::Nonzero;
}

OrientationClass orientation_class(const Graph& g, const Decoration& d)
{
    return canonicalize(g, d).odd_automorphism ? OrientationClass::Zero : OrientationClass::Nonzero;
}

std::vector<int> canonical_edge_order(const Graph& g, const CanonicalForm& cf)
{
    std::vector<int> order(static_cast<std::size_t>(g.edge_count()), -1);
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& [a, b] = g.edge(i);
        int k = cf.graph.find_edge(cf.vertex_map[static_cast<std::size_t>(a)], cf.vertex_map[static_cast<std::size_t>(b)]);
        order[static_cast<std::size_t>(k)] = i;
    }
    return order;
}

std::vector<std::vector<int>> automorphisms(const Graph& g, const Decoration* d)
{
    Search search{g, d, std::nullopt, {}};
    search.run(initial_coloring(g, d));
    const auto inv0 = inverse(search.best_leaves.front());
    std::vector<std::vector<int>> out;
    for (const auto& leaf : search.best_leaves) {
        std::vector<int> phi(leaf.size());
        for (std::size_t v = 0; v < leaf.size(); ++v) phi[v] = inv0[static_cast<std::size_t>(leaf[v])];
        out.push_back(std::move(phi));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_key(const Graph& sorted_graph, const std::optional<Decoration>& d)
{
    std::ostringstream out;
    out << sorted_graph.vertex_count() << ':' << sorted_graph.edge_count() << ':';
    bool first = true;
    for (const auto& [u, v] : sorted_graph.edges()) {
        if (!first) out << ',';
        first = false;
        out << u + 1 << '-' << v + 1;
    }
    if (d) {
        out << '|';
        first = true;
        for (int v : d->map) {
            if (!first) out << ',';
            first = false;
            out << v + 1;
        }
    }
    return out.str();
}

std::pair<Graph, std::optional<Decoration>> parse_key(const std::string& key)
{
    std::string_view rest = key;
    std::optional<Decoration> dec;
    if (auto bar = rest.find('|'); bar != std::string_view::npos) {
        dec.emplace();
        for (auto part : split(rest.substr(bar + 1), ',')) dec->map.push_back(parse_int(part) - 1);
        rest = rest.substr(0, bar);
    }
    auto fields = split(rest, ':');
    if (fields.size() != 3) throw std::invalid_argument("malformed key: " + key);
    const int p = parse_int(fields[0]), q = parse_int(fields[1]);
    std::vector<Edge> edges;
    for (auto part : split(fields[2], ',')) {
        auto dash = part.find('-');
        if (dash == std::string_view::npos) throw std::invalid_argument("malformed key edge: " + key);
        edges.push_back({parse_int(part.substr(0, dash)) - 1, parse_int(part.substr(dash + 1)) - 1});
    }
    if (static_cast<int>(edges.size()) != q) throw std::invalid_argument("key edge count mismatch: " + key);
    Graph g(p, std::move(edges));
    if (dec && !is_decoration_of(g, *dec)) throw std::invalid_argument("key decoration invalid: " + key);
    return {std::move(g), std::move(dec)};
}

} // namespace gcw
