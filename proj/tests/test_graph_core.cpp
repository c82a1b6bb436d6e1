#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "gcw/canonical.hpp"
#include "gcw/decoration.hpp"
#include "gcw/enumerate.hpp"
#include "gcw/graph.hpp"

#include "oracles.hpp"

using namespace gcw;

namespace {

Graph complete(int p)
{
    std::vector<Edge> edges;
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) edges.push_back({a, b});
    return Graph(p, edges);
}

Graph k33() { return Graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}); }

// Triangles 012 and 345; matching edges are 0-3, 1-4, 2-5 (indices 6, 7, 8).
Graph prism() { return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}); }

Graph two_k4()
{
    std::vector<Edge> edges;
    for (int off : {0, 4})
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) edges.push_back({off + a, off + b});
    return Graph(8, edges);
}

// Wheel with hub 0 and rim 1..r.
Graph wheel(int r)
{
    std::vector<Edge> edges;
    for (int i = 1; i <= r; ++i) {
        edges.push_back({0, i});
        edges.push_back({i, i % r + 1});
    }
    return Graph(r + 1, edges);
}

std::vector<Graph> sample_admissible()
{
    std::vector<Graph> out{complete(4), complete(5), k33(), prism(), two_k4(), wheel(4), wheel(5), wheel(6)};
    std::mt19937_64 rng(7);
    for (int p = 4; p <= 7; ++p)
        for (int q = (3 * p + 1) / 2; q <= std::min(p * (p - 1) / 2, 14); ++q)
            for (int trial = 0; trial < 20; ++trial) {
                Graph g = oracle::random_graph(rng, p, q);
                if (is_admissible(g)) out.push_back(g);
            }
    return out;
}

} // namespace

TEST_CASE("graph construction rejects loops, repeats and bad endpoints")
{
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{-1, 1}}), std::invalid_argument);
    Graph g(3, {{2, 0}});
    CHECK(g.edge(0) == Edge{0, 2});
}

TEST_CASE("admissibility")
{
    CHECK(is_admissible(complete(4)));
    CHECK_FALSE(is_admissible(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})));
    CHECK_FALSE(is_admissible(Graph(0, {})));
    CHECK(is_admissible(two_k4()));
    CHECK_FALSE(is_admissible(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
}

TEST_CASE("bidegree")
{
    CHECK(bidegree(complete(4)) == Bidegree{4, 0});
    CHECK(bidegree(Graph(0, {})) == Bidegree{0, 0});
    CHECK(bidegree(complete(5)) == Bidegree{10, 5});
    for (const auto& g : sample_admissible()) {
        const auto b = bidegree(g);
        CHECK(b.n == 2 * g.edge_count() - 2 * g.vertex_count());
        CHECK(b.m == 2 * g.edge_count() - 3 * g.vertex_count());
        CHECK(b.m >= 0);
        CHECK(b.n % 2 == 0);
    }
}

TEST_CASE("valences sum to twice the edge count")
{
    for (const auto& g : sample_admissible()) {
        int sum = 0;
        for (int k : g.valences()) sum += k;
        CHECK(sum == 2 * g.edge_count());
    }
}

TEST_CASE("graph text format round trip")
{
    Graph g(4, {{2, 3}, {0, 1}, {0, 3}});
    std::ostringstream out;
    write_graph(out, g);
    CHECK(out.str() == "4 3\n1 2\n1 4\n3 4\n");
    std::istringstream in(out.str() + out.str());
    auto a = read_graph(in);
    auto b = read_graph(in);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == g.sorted());
    CHECK(*b == g.sorted());
    CHECK_FALSE(read_graph(in));
}

TEST_CASE("permutation sign")
{
    CHECK(permutation_sign(std::vector<int>{0, 1, 2}) == 1);
    CHECK(permutation_sign(std::vector<int>{1, 0, 2}) == -1);
    CHECK(permutation_sign(std::vector<int>{1, 2, 0}) == 1);
    CHECK(permutation_sign(std::vector<int>{3, 2, 1, 0}) == 1);
    CHECK(permutation_sign(std::vector<int>{}) == 1);
}

TEST_CASE("K4 keys agree under all 24 relabelings")
{
    const Graph k4 = complete(4);
    const std::string key = canonicalize(k4).key;
    CHECK(key == "4:6:1-2,1-3,1-4,2-3,2-4,3-4");
    std::vector<int> perm{0, 1, 2, 3};
    int seen = 0;
    do {
        CHECK(canonicalize(k4.relabeled(perm)).key == key);
        ++seen;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(seen == 24);
}

TEST_CASE("K33 and the prism get distinct keys")
{
    CHECK_FALSE(oracle::isomorphic(k33(), prism()));
    CHECK(canonicalize(k33()).key != canonicalize(prism()).key);
}

TEST_CASE("canonicalization is idempotent")
{
    for (const auto& g : sample_admissible()) {
        const auto cf = canonicalize(g);
        const auto again = canonicalize(cf.graph);
        CHECK(again.key == cf.key);
        CHECK(again.edge_perm_parity == 1);
        std::vector<int> id(static_cast<std::size_t>(g.vertex_count()));
        std::iota(id.begin(), id.end(), 0);
        CHECK(again.vertex_map == id);
        CHECK(again.graph == cf.graph);
    }
}

TEST_CASE("canonical form agrees with its vertex map and edge parity")
{
    for (const auto& g : sample_admissible()) {
        const auto cf = canonicalize(g);
        CHECK(g.relabeled(cf.vertex_map).sorted() == cf.graph);
        CHECK(oracle::transport_sign(g, cf.graph, cf.vertex_map) == cf.edge_perm_parity);
        CHECK(format_key(cf.graph, std::nullopt) == cf.key);
        const auto [parsed, dec] = parse_key(cf.key);
        CHECK(parsed == cf.graph);
        CHECK_FALSE(dec);
    }
}

TEST_CASE("property: keys are invariant under relabeling and parities compose")
{
    std::mt19937_64 rng(11);
    for (const auto& g : sample_admissible()) {
        const auto base = canonicalize(g);
        for (int trial = 0; trial < 5; ++trial) {
            const auto sigma = oracle::random_permutation(rng, g.vertex_count());
            Graph h = g.relabeled(sigma);
            const auto cf = canonicalize(h);
            CHECK(cf.key == base.key);
            // (g -> h) followed by (h -> canonical) has the parity of (g -> canonical)
            // up to an automorphism, which is even unless the class vanishes.
            if (!base.odd_automorphism)
                CHECK(oracle::transport_sign(g, h, sigma) * cf.edge_perm_parity == base.edge_perm_parity);
        }
    }
}

TEST_CASE("property: keys separate exactly the isomorphism classes")
{
    std::mt19937_64 rng(3);
    for (int p = 4; p <= 6; ++p)
        for (int q = 6; q <= std::min(p * (p - 1) / 2, 10); ++q)
            for (int trial = 0; trial < 15; ++trial) {
                const Graph a = oracle::random_graph(rng, p, q);
                const Graph b = oracle::random_graph(rng, p, q);
                CHECK((canonicalize(a).key == canonicalize(b).key) == oracle::isomorphic(a, b));
            }
}

TEST_CASE("automorphism group size and odd-automorphism flag match brute force")
{
    for (const auto& g : sample_admissible()) {
        if (g.vertex_count() > 7) continue;
        const auto cf = canonicalize(g);
        const auto brute = oracle::isomorphisms(g, g);
        CHECK(cf.automorphism_count == brute.size());
        CHECK(cf.odd_automorphism == oracle::has_odd_automorphism(g));
        CHECK(automorphisms(g).size() == brute.size());
    }
}

TEST_CASE("orientation classes")
{
    CHECK(orientation_class(complete(4)) == OrientationClass::Nonzero);
    CHECK(canonicalize(complete(4)).automorphism_count == 24);
    // Swapping the two copies is a product of six edge transpositions.
    CHECK(orientation_class(two_k4()) == OrientationClass::Nonzero);
    CHECK(canonicalize(two_k4()).automorphism_count == 24 * 24 * 2);
    CHECK(orientation_class(k33()) == OrientationClass::Zero);
    CHECK(orientation_class(prism()) == OrientationClass::Zero);

    // Swapping two vertices of one side of K33 transposes three pairs of edges.
    CHECK(oracle::transport_sign(k33(), k33(), std::vector<int>{1, 0, 2, 3, 4, 5}) == -1);
    // Swapping the two leaves of a symmetric pair in this graph moves two
    // pairs of edges, so the class survives.
    const Graph g(6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {4, 5}, {0, 1}});
    REQUIRE(is_admissible(g));
    CHECK(oracle::transport_sign(g, g, std::vector<int>{0, 1, 3, 2, 4, 5}) == 1);
    CHECK((orientation_class(g) == OrientationClass::Zero) == oracle::has_odd_automorphism(g));

    // Decorated classes never vanish.
    for (const auto& d : decorations_of(complete(4))) CHECK(orientation_class(complete(4), d) == OrientationClass::Nonzero);
    int count = 0;
    for_each_decoration(k33(), [&](const Decoration& d) {
        CHECK(orientation_class(k33(), d) == OrientationClass::Nonzero);
        return ++count < 50;
    });
}

TEST_CASE("edge contraction")
{
    const Graph k4 = complete(4);
    for (int e = 0; e < k4.edge_count(); ++e) CHECK_FALSE(contract_edge(k4, e).admissible);

    const Graph pr = prism();
    for (int e = 0; e < pr.edge_count(); ++e) {
        const auto c = contract_edge(pr, e);
        const bool matching = e >= 6;
        CHECK(c.admissible == matching);
        if (matching) {
            CHECK(c.graph.vertex_count() == 5);
            auto vals = c.graph.valences();
            std::sort(vals.begin(), vals.end());
            CHECK(vals == std::vector<int>{3, 3, 3, 3, 4});
        }
    }

    // Merged vertex keeps the smaller label; higher labels shift down.
    const Graph g(5, {{1, 3}, {0, 4}, {3, 4}});
    const auto c = contract_edge(g, 0);
    CHECK(c.vertex_map == std::vector<int>{0, 1, 2, 1, 3});
    CHECK(c.edge_correspondence == std::vector<int>{-1, 0, 1});
    CHECK(c.graph.edge(0) == Edge{0, 3});
    CHECK(c.graph.edge(1) == Edge{1, 3});

    // Disjoint union: the other component is untouched.
    const Graph pr6 = prism();
    std::vector<Edge> joined(pr6.edges());
    for (const auto& e : k4.edges()) joined.push_back({e.u + 6, e.v + 6});
    const Graph mixed(10, joined);
    const auto rung = contract_edge(mixed, 6);
    REQUIRE(rung.admissible);
    for (int i = 0; i < 6; ++i) {
        const auto& e = rung.graph.edge(pr6.edge_count() - 1 + i);
        const auto& orig = k4.edge(i);
        CHECK(e == Edge{orig.u + 5, orig.v + 5});
    }
}

TEST_CASE("property: contraction preserves degree and raises excess by one")
{
    for (const auto& g : sample_admissible())
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto c = contract_edge(g, e);
            const auto raw = oracle::raw_contract(g, e);
            const auto simple = oracle::simple_graph(raw);
            CHECK(c.admissible == (simple.has_value() && is_admissible(*simple)));
            CHECK(c.vertex_map == raw.vertex_map);
            if (!c.admissible) continue;
            CHECK(c.graph == *simple);
            CHECK(bidegree(c.graph).n == bidegree(g).n);
            CHECK(bidegree(c.graph).m == bidegree(g).m + 1);
            const auto& ed = g.edge(e);
            const auto vals = g.valences();
            CHECK(c.graph.valences()[c.vertex_map[ed.u]] == vals[ed.u] + vals[ed.v] - 2);
        }
}

TEST_CASE("contraction sign")
{
    const std::vector<int> identity3{0, 1, 2, 3};
    const std::vector<int> corr_first{-1, 0, 1, 2};
    const std::vector<int> target{0, 1, 2};
    CHECK(contraction_sign(identity3, 0, corr_first, target) == 1);
    const std::vector<int> corr_second{0, -1, 1, 2};
    CHECK(contraction_sign(identity3, 1, corr_second, target) == -1);
    CHECK(contraction_sign(identity3, 2, std::vector<int>{0, 1, -1, 2}, target) == 1);
    // A transposition in the target order flips the sign.
    CHECK(contraction_sign(identity3, 0, corr_first, std::vector<int>{1, 0, 2}) == -1);
}

TEST_CASE("property: contraction sign equals direct parity and composes with relabeling")
{
    std::mt19937_64 rng(5);
    for (const auto& g : sample_admissible())
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto c = contract_edge(g, e);
            if (!c.admissible) continue;
            std::vector<int> order(static_cast<std::size_t>(g.edge_count()));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            const auto cf = canonicalize(c.graph);
            const int sign = contraction_sign(order, e, c.edge_correspondence, canonical_edge_order(c.graph, cf));

            // Direct: e moved to the front, then the survivors mapped to
            // canonical edge positions, inversions counted by hand.
            const auto pos_e = std::find(order.begin(), order.end(), e) - order.begin();
            std::vector<int> image;
            for (int src : order)
                if (src != e) {
                    const auto& ed = c.graph.edge(c.edge_correspondence[src]);
                    image.push_back(cf.graph.find_edge(cf.vertex_map[ed.u], cf.vertex_map[ed.v]));
                }
            int inv = 0;
            for (std::size_t i = 0; i < image.size(); ++i)
                for (std::size_t j = i + 1; j < image.size(); ++j) inv += image[i] > image[j];
            CHECK(sign == ((pos_e + inv) % 2 ? -1 : 1));

            // Through an intermediate relabeling of the contracted graph.
            const auto sigma = oracle::random_permutation(rng, c.graph.vertex_count());
            const Graph mid = c.graph.relabeled(sigma);
            const auto cf_mid = canonicalize(mid);
            if (!cf.odd_automorphism)
                CHECK(sign == ((pos_e % 2 ? -1 : 1) * oracle::transport_sign(c.graph, mid, sigma) *
                               cf_mid.edge_perm_parity * [&] {
                                   // survivors in `order` listed by c.graph edge index
                                   std::vector<int> idx;
                                   for (int src : order)
                                       if (src != e) idx.push_back(c.edge_correspondence[src]);
                                   return permutation_sign(idx);
                               }()));
        }
}

TEST_CASE("decoration counts")
{
    CHECK(decoration_count(complete(4)) == 24);
    CHECK(decorations_of(complete(4)).size() == 24);

    // One 4-valent vertex, the rest trivalent, p=5, q=8.
    const Graph g = contract_edge(prism(), 6).graph;
    REQUIRE(bidegree(g) == Bidegree{6, 1});
    CHECK(decoration_count(g) == 360);
    CHECK(decorations_of(g).size() == 360);
    CHECK(oracle::enumerate_label_maps(g) == 360);

    const auto vals = g.valences();
    for (const auto& d : decorations_of(g)) {
        CHECK(is_decoration_of(g, d));
        for (int v = 0; v < g.vertex_count(); ++v)
            if (vals[v] == 3) CHECK(std::count(d.map.begin(), d.map.end(), v) == 1);
    }
    std::set<Decoration> distinct;
    for (const auto& d : decorations_of(g)) distinct.insert(d);
    CHECK(distinct.size() == 360);
}

TEST_CASE("property: decoration formula agrees with direct enumeration")
{
    for (const auto& g : sample_admissible()) {
        std::vector<int> need;
        for (int k : g.valences()) need.push_back(k - 2);
        CHECK(decoration_count(g) == oracle::count_label_assignments(need));
        if (decoration_count(g) <= 200000) CHECK(decorations_of(g).size() == decoration_count(g).get_ui());
    }
}

TEST_CASE("contracted decorations stay valid through n <= 8")
{
    for (int n = 2; n <= 8; n += 2)
        for (int m = 0; m < n; ++m) {
            EnumerationRequest req;
            req.p = n - m;
            req.q = 3 * n / 2 - m;
            for (const auto& gen : enumerate_admissible_classes(req)) {
                const auto& g = gen.graph;
                const auto vals = g.valences();
                int budget = 40; // a few decorations per graph
                for_each_decoration(g, [&](const Decoration& d) {
                    for (int e = 0; e < g.edge_count(); ++e) {
                        const auto c = contract_edge(g, e);
                        if (!c.admissible) continue;
                        const auto dc = contract_decoration(d, c.vertex_map);
                        CHECK(is_decoration_of(c.graph, dc));
                        const auto& ed = g.edge(e);
                        const int merged = c.vertex_map[ed.u];
                        CHECK(std::count(dc.map.begin(), dc.map.end(), merged) == vals[ed.u] + vals[ed.v] - 4);
                        for (std::size_t t = 0; t < d.map.size(); ++t)
                            if (d.map[t] != ed.u && d.map[t] != ed.v) CHECK(dc.map[t] == c.vertex_map[d.map[t]]);
                    }
                    return --budget > 0;
                });
            }
        }
}

TEST_CASE("decorated canonical forms")
{
    const Graph k4 = complete(4);
    std::set<std::string> keys;
    for (const auto& d : decorations_of(k4)) {
        const auto cf = canonicalize(k4, d);
        keys.insert(cf.key);
        CHECK(cf.automorphism_count == 1);
        CHECK(cf.key.find('|') != std::string::npos);
        REQUIRE(cf.decoration);
        const auto [g2, d2] = parse_key(cf.key);
        REQUIRE(d2);
        CHECK(*d2 == *cf.decoration);
        const auto again = canonicalize(g2, *d2);
        CHECK(again.key == cf.key);
        CHECK(again.edge_perm_parity == 1);
    }
    CHECK(keys.size() == 1);

    std::mt19937_64 rng(9);
    const Graph w = wheel(5);
    auto decs = decorations_of(w);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& d1 = decs[rng() % decs.size()];
        const auto& d2 = decs[rng() % decs.size()];
        const bool same = canonicalize(w, d1).key == canonicalize(w, d2).key;
        CHECK(same == oracle::isomorphic(w, w, &d1, &d2));
        const auto sigma = oracle::random_permutation(rng, w.vertex_count());
        Decoration moved;
        for (int v : d1.map) moved.map.push_back(sigma[v]);
        CHECK(canonicalize(w.relabeled(sigma), moved).key == canonicalize(w, d1).key);
    }
}

TEST_CASE("malformed keys are rejected")
{
    CHECK_THROWS_AS(parse_key(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("4:6:1-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("2:1:1-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("x:y:z"), std::invalid_argument);
}
