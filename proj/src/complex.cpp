#include "gcw/complex.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "gcw/canonical.hpp"
#include "gcw/errors.hpp"
#include "gcw/graph.hpp"
#include "gcw/linalg.hpp"
#include "gcw/parallel.hpp"

namespace gcw {

namespace {

using SparseColumn = std::map<std::size_t, mpq_class>;

std::vector<int> identity_order(int q)
{
    std::vector<int> order(static_cast<std::size_t>(q));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

RationalSparseMatrix assemble(std::size_t rows, std::vector<SparseColumn>&& columns)
{
    RationalSparseMatrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto& [r, v] : columns[c]) out.add(r, c, v);
    return out;
}

std::size_t lookup(const GradedComponent& target, const std::string& key)
{
    auto hit = target.find(key);
    if (!hit) throw InvariantViolation("generator " + key + " missing from target basis");
    return *hit;
}

} // namespace

std::optional<std::size_t> GradedComponent::find(const std::string& key) const
{
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

int max_excess(int n) { return n - 1; }

GraphComplex::GraphComplex(ComplexOptions options) : options_(std::move(options)) {}

const GradedComponent& GraphComplex::component(int m, int n, bool decorated)
{
    if (n % 2 != 0) throw std::invalid_argument("n must be even, got " + std::to_string(n));
    auto key = std::make_tuple(m, n, decorated);
    if (auto it = components_.find(key); it != components_.end()) return it->second;

    GradedComponent comp;
    comp.m = m;
    comp.n = n;
    comp.decorated = decorated;
    EnumerationRequest req;
    req.p = comp.vertex_count();
    req.q = comp.edge_count();
    req.decorated = decorated;
    req.connected_only = options_.connected_only;
    req.cap = options_.cap;
    req.threads = options_.threads;
    comp.basis = cached_basis(options_.cache_dir, req);
    for (std::size_t i = 0; i < comp.basis.size(); ++i) comp.index.emplace(comp.basis[i].key, i);
    return components_.emplace(key, std::move(comp)).first->second;
}

const RationalSparseMatrix& GraphComplex::differential(int m, int n, bool decorated)
{
    auto key = std::make_tuple(m, n, decorated);
    if (auto it = differentials_.find(key); it != differentials_.end()) return it->second;

    const GradedComponent& source = component(m, n, decorated);
    const GradedComponent& target = component(m + 1, n, decorated);

    std::vector<SparseColumn> columns(source.dim());
    parallel_for(source.dim(), options_.threads, [&](std::size_t col) {
        const Generator& gen = source.basis[col];
        const auto order = identity_order(gen.graph.edge_count());
        for (int e = 0; e < gen.graph.edge_count(); ++e) {
            const Contraction c = contract_edge(gen.graph, e);
            if (!c.admissible) continue;
            const CanonicalForm cf = decorated
                                         ? canonicalize(c.graph, contract_decoration(*gen.decoration, c.vertex_map))
                                         : canonicalize(c.graph);
            if (cf.odd_automorphism) continue; // target class is zero
            const std::size_t row = lookup(target, cf.key);
            const int sign = contraction_sign(order, e, c.edge_correspondence, canonical_edge_order(c.graph, cf));
            columns[col][row] += sign;
        }
        std::erase_if(columns[col], [](const auto& kv) { return kv.second == 0; });
    });
    return differentials_.emplace(key, assemble(target.dim(), std::move(columns))).first->second;
}

RationalSparseMatrix GraphComplex::average_map(int m, int n)
{
    const GradedComponent& source = component(m, n, false);
    const GradedComponent& target = component(m, n, true);
    std::vector<SparseColumn> columns(source.dim());
    parallel_for(source.dim(), options_.threads, [&](std::size_t col) {
        const Graph& g = source.basis[col].graph;
        mpq_class weight(mpz_class(1), decoration_count(g));
        weight.canonicalize();
        for_each_decoration(g, [&](const Decoration& d) {
            const CanonicalForm cf = canonicalize(g, d);
            columns[col][lookup(target, cf.key)] += cf.edge_perm_parity * weight;
            return true;
        });
        std::erase_if(columns[col], [](const auto& kv) { return kv.second == 0; });
    });
    return assemble(target.dim(), std::move(columns));
}

RationalSparseMatrix GraphComplex::forget_map(int m, int n)
{
    const GradedComponent& source = component(m, n, true);
    const GradedComponent& target = component(m, n, false);
    RationalSparseMatrix out(target.dim(), source.dim());
    for (std::size_t col = 0; col < source.dim(); ++col) {
        const CanonicalForm cf = canonicalize(source.basis[col].graph);
        if (cf.odd_automorphism) continue;
        out.set(lookup(target, cf.key), col, cf.edge_perm_parity);
    }
    return out;
}

HomologyReport GraphComplex::homology(int m, int n, bool decorated)
{
    const auto& d_out = differential(m, n, decorated);
    const auto& d_in = differential(m - 1, n, decorated);
    if (!image_in_kernel(d_in, d_out))
        throw InvariantViolation("differential does not square to zero at m=" + std::to_string(m) +
                                 " n=" + std::to_string(n));
    HomologyReport r;
    r.m = m;
    r.n = n;
    r.decorated = decorated;
    r.dim_space = component(m, n, decorated).dim();
    r.rank_d_in = rank_nullity(d_in).rank;
    r.dim_ker_d_out = rank_nullity(d_out).kernel_dim;
    if (r.dim_ker_d_out < r.rank_d_in) throw InvariantViolation("image larger than kernel");
    r.homology_dim = r.dim_ker_d_out - r.rank_d_in;
    return r;
}

std::size_t GraphComplex::forget_rank_on_cohomology(int m, int n)
{
    const auto& d_tilde = differential(m, n, true);
    const auto cocycles = columns_to_matrix(d_tilde.cols(), kernel_basis(d_tilde));
    const auto pushed = multiply(forget_map(m, n), cocycles);
    const auto& boundaries = differential(m - 1, n, false);
    return rank_nullity(hconcat(pushed, boundaries)).rank - rank_nullity(boundaries).rank;
}

std::string to_json(const HomologyReport& r)
{
    nlohmann::ordered_json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["decorated"] = r.decorated;
    j["dim_space"] = r.dim_space;
    j["rank_d_in"] = r.rank_d_in;
    j["dim_ker_d_out"] = r.dim_ker_d_out;
    j["homology_dim"] = r.homology_dim;
    return j.dump();
}

} // namespace gcw
