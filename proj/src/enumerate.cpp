#include "gcw/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "gcw/canonical.hpp"
#include "gcw/errors.hpp"
#include "gcw/parallel.hpp"

namespace gcw {

namespace {

bool feasible(const EnumerationRequest& req)
{
    const int p = req.p, q = req.q;
    return p > 0 && q > 0 && 2 * q >= 3 * p && q <= p * (p - 1) / 2 && p <= kMaxVertices;
}

// Sum over vertices of the valence still missing to reach 3.
int valence_deficit(const Graph& g)
{
    int deficit = 0;
    for (int k : g.valences()) deficit += std::max(0, 3 - k);
    return deficit;
}

void check_cap(std::size_t size, const EnumerationRequest& req)
{
    if (size > req.cap)
        throw ResourceLimitError("enumeration of p=" + std::to_string(req.p) + " q=" + std::to_string(req.q) +
                                 " exceeded the generator cap of " + std::to_string(req.cap));
}

Generator from_canonical(CanonicalForm&& cf)
{
    return Generator{std::move(cf.key), std::move(cf.graph), std::move(cf.decoration)};
}

} // namespace

Generator Generator::from_key(const std::string& key)
{
    auto [graph, dec] = parse_key(key);
    return Generator{key, std::move(graph), std::move(dec)};
}

std::vector<Generator> enumerate_admissible_classes(const EnumerationRequest& req)
{
    if (!feasible(req)) return {};
    const int p = req.p, q = req.q;

    // Level-by-level augmentation: level j holds one canonical representative
    // per isomorphism class of simple graphs with j edges that can still be
    // completed to minimum valence 3 within the remaining edge budget.
    std::map<std::string, Graph> level;
    level.emplace(canonicalize(Graph(p, {})).key, Graph(p, {}));
    for (int j = 0; j < q; ++j) {
        std::vector<const Graph*> parents;
        parents.reserve(level.size());
        for (const auto& [key, g] : level) parents.push_back(&g);

        const int budget = 2 * (q - j - 1);
        std::vector<std::vector<std::pair<std::string, Graph>>> children(parents.size());
        parallel_for(parents.size(), req.threads, [&](std::size_t idx) {
            const Graph& parent = *parents[idx];
            std::set<std::string> seen;
            for (int a = 0; a < p; ++a)
                for (int b = a + 1; b < p; ++b) {
                    if (parent.adjacent(a, b)) continue;
                    auto edges = parent.edges();
                    edges.push_back({a, b});
                    Graph child(p, std::move(edges));
                    if (valence_deficit(child) > budget) continue;
                    auto cf = canonicalize(child);
                    if (seen.insert(cf.key).second) children[idx].emplace_back(std::move(cf.key), std::move(cf.graph));
                }
        });

        std::map<std::string, Graph> next;
        for (auto& batch : children)
            for (auto& [key, g] : batch) next.emplace(std::move(key), std::move(g));
        check_cap(next.size(), req);
        level = std::move(next);
    }

    std::vector<Generator> out;
    for (auto& [key, g] : level) {
        if (!is_admissible(g)) continue;
        if (req.connected_only && !g.connected()) continue;
        out.push_back(Generator{key, std::move(g), std::nullopt});
    }
    return out;
}

std::vector<Generator> enumerate_basis(const EnumerationRequest& req)
{
    auto classes = enumerate_admissible_classes(req);
    if (!req.decorated) {
        std::vector<Generator> out;
        for (auto& gen : classes)
            if (orientation_class(gen.graph) == OrientationClass::Nonzero) out.push_back(std::move(gen));
        return out;
    }

    // Decorated classes: orbits of Aut(graph) on its decorations.
    std::vector<std::vector<Generator>> per_class(classes.size());
    parallel_for(classes.size(), req.threads, [&](std::size_t idx) {
        const Graph& g = classes[idx].graph;
        std::map<std::string, Generator> found;
        for_each_decoration(g, [&](const Decoration& d) {
            auto cf = canonicalize(g, d);
            if (cf.odd_automorphism) return true;
            if (!found.count(cf.key)) {
                std::string key = cf.key;
                found.emplace(std::move(key), from_canonical(std::move(cf)));
            }
            return found.size() <= req.cap;
        });
        for (auto& [key, gen] : found) per_class[idx].push_back(std::move(gen));
    });
    std::vector<Generator> out;
    for (auto& batch : per_class) {
        for (auto& gen : batch) out.push_back(std::move(gen));
        check_cap(out.size(), req);
    }
    std::sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) { return a.key < b.key; });
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

namespace {

struct DenseGraph {
    int p = 0;
    std::vector<std::vector<char>> adj;
    std::vector<Edge> edges;
    std::vector<int> degree;
};

DenseGraph dense_from_edges(int p, const std::vector<Edge>& edges)
{
    DenseGraph g;
    g.p = p;
    g.adj.assign(static_cast<std::size_t>(p), std::vector<char>(static_cast<std::size_t>(p), 0));
    g.degree.assign(static_cast<std::size_t>(p), 0);
    g.edges = edges;
    for (const auto& [a, b] : edges) {
        g.adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        g.adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
        ++g.degree[static_cast<std::size_t>(a)];
        ++g.degree[static_cast<std::size_t>(b)];
    }
    return g;
}

// Enumerates vertex bijections x -> y preserving adjacency (and labels when
// given) by extending partial maps one vertex at a time.
void for_each_isomorphism(const DenseGraph& x, const DenseGraph& y, const std::vector<int>* x_labels,
                          const std::vector<int>* y_labels, const std::function<bool(const std::vector<int>&)>& visit)
{
    const int p = x.p;
    std::vector<int> image(static_cast<std::size_t>(p), -1);
    std::vector<char> used(static_cast<std::size_t>(p), 0);
    bool stop = false;
    std::function<void(int)> extend = [&](int v) {
        if (stop) return;
        if (v == p) {
            if (!visit(image)) stop = true;
            return;
        }
        for (int w = 0; w < p && !stop; ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            if (x.degree[static_cast<std::size_t>(v)] != y.degree[static_cast<std::size_t>(w)]) continue;
            if (x_labels && (*x_labels)[static_cast<std::size_t>(v)] != (*y_labels)[static_cast<std::size_t>(w)]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                ok = x.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ==
                     y.adj[static_cast<std::size_t>(image[static_cast<std::size_t>(u)])][static_cast<std::size_t>(w)];
            if (!ok) continue;
            image[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            extend(v + 1);
            used[static_cast<std::size_t>(w)] = 0;
        }
        image[static_cast<std::size_t>(v)] = -1;
    };
    extend(0);
}

bool brute_isomorphic(const DenseGraph& x, const DenseGraph& y)
{
    bool found = false;
    for_each_isomorphism(x, y, nullptr, nullptr, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<std::vector<int>> brute_automorphisms(const DenseGraph& g)
{
    std::vector<std::vector<int>> out;
    for_each_isomorphism(g, g, nullptr, nullptr, [&](const std::vector<int>& phi) {
        out.push_back(phi);
        return true;
    });
    return out;
}

int brute_edge_sign(const DenseGraph& g, const std::vector<int>& phi)
{
    std::vector<int> perm;
    for (const auto& [a, b] : g.edges) {
        Edge img{std::min(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]),
                 std::max(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)])};
        perm.push_back(static_cast<int>(std::find(g.edges.begin(), g.edges.end(), img) - g.edges.begin()));
    }
    return permutation_sign(perm);
}

bool brute_connected(const DenseGraph& g)
{
    std::vector<char> seen(static_cast<std::size_t>(g.p), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < g.p; ++w)
            if (g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.p;
}

} // namespace

std::vector<Generator> brute_force_oracle(const EnumerationRequest& req)
{
    if (req.p > 7) throw std::invalid_argument("brute_force_oracle refuses p > 7");
    if (req.p <= 0 || req.q <= 0) return {};
    const int p = req.p, q = req.q;
    std::vector<Edge> pairs;
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) pairs.push_back({a, b});
    if (q > static_cast<int>(pairs.size())) return {};

    std::vector<DenseGraph> reps;
    std::vector<char> pick(pairs.size(), 0);
    std::fill(pick.begin(), pick.begin() + q, 1);
    do {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pick[i]) edges.push_back(pairs[i]);
        DenseGraph cand = dense_from_edges(p, edges);
        if (*std::min_element(cand.degree.begin(), cand.degree.end()) < 3) continue;
        if (req.connected_only && !brute_connected(cand)) continue;
        bool fresh = true;
        for (const auto& rep : reps)
            if (brute_isomorphic(cand, rep)) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(std::move(cand));
    } while (std::prev_permutation(pick.begin(), pick.end()));

    std::vector<Generator> out;
    for (const auto& rep : reps) {
        const auto auts = brute_automorphisms(rep);
        Graph g(p, rep.edges);
        if (!req.decorated) {
            bool odd = std::any_of(auts.begin(), auts.end(), [&](const auto& phi) { return brute_edge_sign(rep, phi) < 0; });
            if (!odd) out.push_back(from_canonical(canonicalize(g)));
            continue;
        }
        // Decorations by direct recursive assignment of labels, then orbits
        // under the brute-force automorphism group.
        const int n = 2 * q - 2 * p;
        std::vector<int> capacity(rep.degree);
        for (int& c : capacity) c -= 2;
        std::set<std::vector<int>> visited;
        std::vector<int> labels(static_cast<std::size_t>(n));
        std::function<void(int)> assign = [&](int t) {
            if (t == n) {
                if (visited.count(labels)) return;
                for (const auto& phi : auts) {
                    std::vector<int> image(labels.size());
                    for (std::size_t s = 0; s < labels.size(); ++s) image[s] = phi[static_cast<std::size_t>(labels[s])];
                    visited.insert(std::move(image));
                }
                out.push_back(from_canonical(canonicalize(g, Decoration{labels})));
                check_cap(out.size(), req);
                return;
            }
            for (int v = 0; v < p; ++v) {
                if (capacity[static_cast<std::size_t>(v)] == 0) continue;
                --capacity[static_cast<std::size_t>(v)];
                labels[static_cast<std::size_t>(t)] = v;
                assign(t + 1);
                ++capacity[static_cast<std::size_t>(v)];
            }
        };
        assign(0);
    }
    std::sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) { return a.key < b.key; });
    return out;
}

// ---------------------------------------------------------------------------
// JSONL and cache

std::string jsonl_record(const Generator& g)
{
    const Bidegree bd = bidegree(g.graph);
    nlohmann::ordered_json j;
    j["key"] = g.key;
    j["p"] = g.graph.vertex_count();
    j["q"] = g.graph.edge_count();
    j["n"] = bd.n;
    j["m"] = bd.m;
    j["decorated"] = g.decorated();
    return j.dump();
}

void write_jsonl(std::ostream& out, const std::vector<Generator>& basis)
{
    for (const auto& g : basis) out << jsonl_record(g) << '\n';
}

std::vector<Generator> read_jsonl(std::istream& in)
{
    std::vector<Generator> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        auto gen = Generator::from_key(j.at("key").get<std::string>());
        if (gen.decorated() != j.at("decorated").get<bool>() || gen.graph.vertex_count() != j.at("p").get<int>() ||
            gen.graph.edge_count() != j.at("q").get<int>())
            throw std::invalid_argument("inconsistent JSONL record: " + line);
        out.push_back(std::move(gen));
    }
    return out;
}

std::string cache_file_name(const EnumerationRequest& req)
{
    return "basis_" + std::to_string(req.p) + "_" + std::to_string(req.q) + "_" + (req.decorated ? "1" : "0") + "_" +
           (req.connected_only ? "1" : "0") + ".jsonl";
}

std::optional<std::vector<Generator>> load_cached_basis(const std::filesystem::path& dir, const EnumerationRequest& req)
{
    std::ifstream in(dir / cache_file_name(req));
    if (!in) return std::nullopt;
    try {
        return read_jsonl(in);
    } catch (const std::exception&) {
        return std::nullopt; // corrupt cache entries are recomputed
    }
}

void save_cached_basis(const std::filesystem::path& dir, const EnumerationRequest& req,
                       const std::vector<Generator>& basis)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto final_path = dir / cache_file_name(req);
    auto tmp = final_path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        write_jsonl(out, basis);
        if (!out) return;
    }
    std::filesystem::rename(tmp, final_path, ec);
}

std::vector<Generator> cached_basis(const std::filesystem::path& dir, const EnumerationRequest& req)
{
    if (dir.empty()) return enumerate_basis(req);
    if (auto hit = load_cached_basis(dir, req)) {
        check_cap(hit->size(), req);
        return std::move(*hit);
    }
    auto basis = enumerate_basis(req);
    save_cached_basis(dir, req, basis);
    return basis;
}

} // namespace gcw
