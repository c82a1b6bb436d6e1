#include "gcw/decoration.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcw {

bool is_decoration_of(const Graph& g, const Decoration& d)
{
    const auto vals = g.valences();
    const Bidegree bd = bidegree(g);
    if (bd.n < 0 || d.map.size() != static_cast<std::size_t>(bd.n)) return false;
    std::vector<int> hits(vals.size(), 0);
    for (int v : d.map) {
        if (v < 0 || v >= g.vertex_count()) return false;
        ++hits[static_cast<std::size_t>(v)];
    }
    for (std::size_t v = 0; v < vals.size(); ++v)
        if (hits[v] != vals[v] - 2) return false;
    return true;
}

mpz_class decoration_count(const Graph& g)
{
    const Bidegree bd = bidegree(g);
    if (bd.n < 0) throw std::logic_error("decoration_count: negative degree");
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(bd.n));
    for (int k : g.valences()) {
        if (k < 2) throw std::invalid_argument("decoration_count: valence below 2");
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k - 2));
        result /= f;
    }
    return result;
}

void for_each_decoration(const Graph& g, const std::function<bool(const Decoration&)>& visit)
{
    if (!is_admissible(g)) throw std::invalid_argument("decorations are defined on admissible graphs");
    const Bidegree bd = bidegree(g);
    if (bd.n < 0) throw std::logic_error("admissible graph with negative degree");

    Decoration d;
    d.map.reserve(static_cast<std::size_t>(bd.n));
    const auto vals = g.valences();
    for (int v = 0; v < g.vertex_count(); ++v)
        d.map.insert(d.map.end(), static_cast<std::size_t>(vals[static_cast<std::size_t>(v)] - 2), v);
    // d.map is now the sorted multiset; next_permutation walks its distinct
    // arrangements exactly once each.
    do {
        if (!visit(d)) return;
    } while (std::next_permutation(d.map.begin(), d.map.end()));
}

std::vector<Decoration> decorations_of(const Graph& g)
{
    std::vector<Decoration> out;
    for_each_decoration(g, [&](const Decoration& d) {
        out.push_back(d);
        return true;
    });
    return out;
}

Decoration contract_decoration(const Decoration& d, std::span<const int> vertex_map)
{
    Decoration out;
    out.map.reserve(d.map.size());
    for (int v : d.map) out.map.push_back(vertex_map[static_cast<std::size_t>(v)]);
    return out;
}

} // namespace gcw
