#include "gcw/aeven.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "gcw/canonical.hpp"
#include "gcw/errors.hpp"
#include "gcw/linalg.hpp"

namespace gcw {

IhxRelation ihx_relation(const Graph& source)
{
    const auto vals = source.valences();
    const auto four = std::find(vals.begin(), vals.end(), 4);
    if (four == vals.end() || std::count(vals.begin(), vals.end(), 4) != 1 ||
        std::count(vals.begin(), vals.end(), 3) != static_cast<long>(vals.size()) - 1)
        throw std::invalid_argument("ihx_relation: source must have one 4-valent vertex, the rest trivalent");
    const int w = static_cast<int>(four - vals.begin());
    const int fresh = source.vertex_count();

    std::vector<int> nbrs;
    for (int v = 0; v < source.vertex_count(); ++v)
        if (source.adjacent(w, v)) nbrs.push_back(v);

    // Each pairing keeps {nbrs[0], partner} on w and moves the other two to the new vertex.
    const int moved[3][2] = {{nbrs[2], nbrs[3]}, {nbrs[1], nbrs[3]}, {nbrs[1], nbrs[2]}};

    IhxRelation rel;
    rel.source_key = canonicalize(source).key;
    std::map<std::string, int> acc;
    for (const auto& pair : moved) {
        std::vector<Edge> edges{{w, fresh}};
        for (const auto& [a, b] : source.edges()) {
            Edge e{a, b};
            if (a == w && (b == pair[0] || b == pair[1])) e = {b, fresh};
            if (b == w && (a == pair[0] || a == pair[1])) e = {a, fresh};
            edges.push_back(e);
        }
        const Graph expansion(fresh + 1, std::move(edges));
        const CanonicalForm cf = canonicalize(expansion);
        if (cf.odd_automorphism) continue;
        acc[cf.key] += cf.edge_perm_parity;
    }
    for (const auto& [key, c] : acc)
        if (c != 0) rel.terms.push_back({key, c});
    return rel;
}

IhxSystem ihx_relation_matrix(int k, GraphComplex& complex)
{
    if (k < 1) throw std::invalid_argument("ihx_relation_matrix requires k >= 1");
    IhxSystem sys;
    const GradedComponent& trivalent = complex.component(0, 2 * k, false);
    for (const auto& gen : trivalent.basis) sys.column_keys.push_back(gen.key);

    EnumerationRequest req;
    req.p = 2 * k - 1;
    req.q = 3 * k - 1;
    req.connected_only = complex.options().connected_only;
    req.cap = complex.options().cap;
    req.threads = complex.options().threads;
    const auto sources = enumerate_admissible_classes(req);

    sys.matrix = RationalSparseMatrix(sources.size(), trivalent.dim());
    for (std::size_t r = 0; r < sources.size(); ++r) {
        IhxRelation rel = ihx_relation(sources[r].graph);
        for (const auto& term : rel.terms) {
            auto col = trivalent.find(term.key);
            if (!col) throw InvariantViolation("IHX expansion " + term.key + " missing from trivalent basis");
            sys.matrix.add(r, *col, term.coefficient);
        }
        sys.row_keys.push_back(sources[r].key);
        sys.relations.push_back(std::move(rel));
    }
    return sys;
}

AevenReport a_even(int k, AevenMethod method, GraphComplex& complex, int max_k)
{
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    if (k > max_k)
        throw ResourceLimitError("k=" + std::to_string(k) + " exceeds the configured bound " + std::to_string(max_k));
    AevenReport r;
    r.k = k;
    r.method = method;
    r.connected_only = complex.options().connected_only;
    if (k == 0) return r; // no graph has zero vertices and positive edges

    const GradedComponent& trivalent = complex.component(0, 2 * k, false);
    r.num_trivalent_classes = trivalent.dim();
    EliminationResult elim;
    if (method == AevenMethod::Ihx) {
        const IhxSystem sys = ihx_relation_matrix(k, complex);
        r.num_relations = sys.row_keys.size();
        elim = rank_nullity(sys.matrix);
    } else {
        const auto& d = complex.differential(0, 2 * k, false);
        r.num_relations = d.rows();
        elim = rank_nullity(d);
    }
    r.rank = elim.rank;
    r.dim = r.num_trivalent_classes - r.rank;
    for (std::size_t c = 0; c < trivalent.dim(); ++c)
        if (!std::binary_search(elim.pivot_columns.begin(), elim.pivot_columns.end(), c))
            r.basis_keys.push_back(trivalent.basis[c].key);
    return r;
}

std::size_t a_even_dim(int k, AevenMethod method, GraphComplex& complex, int max_k)
{
    return a_even(k, method, complex, max_k).dim;
}

std::string to_string(AevenMethod method) { return method == AevenMethod::Ihx ? "ihx" : "coker"; }

std::string to_json(const AevenReport& r)
{
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["num_trivalent_classes"] = r.num_trivalent_classes;
    j["num_relations"] = r.num_relations;
    j["rank"] = r.rank;
    j["dim"] = r.dim;
    j["method"] = to_string(r.method);
    j["connected_only"] = r.connected_only;
    j["basis_keys"] = r.basis_keys;
    return j.dump();
}

} // namespace gcw
