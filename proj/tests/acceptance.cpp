// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "gcw/aeven.hpp"
#include "gcw/canonical.hpp"
#include "gcw/complex.hpp"
#include "gcw/decoration.hpp"
#include "gcw/enumerate.hpp"
#include "gcw/linalg.hpp"
#include "gcw/strata.hpp"

#include "oracles.hpp"

using namespace gcw;

namespace {

constexpr std::uint64_t kExhaustiveDecorationLimit = 2'000'000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds; // 0: no limit
    std::function<Outcome()> body;
};

void require(Outcome& o, bool cond, const std::string& what)
{
    if (!cond && o.pass) o.detail = what;
    o.pass = o.pass && cond;
}

EnumerationRequest request(int p, int q, bool decorated = false, bool connected_only = false)
{
    EnumerationRequest r;
    r.p = p;
    r.q = q;
    r.decorated = decorated;
    r.connected_only = connected_only;
    return r;
}

Outcome aeven_values()
{
    Outcome o;
    GraphComplex cx;
    for (auto method : {AevenMethod::Ihx, AevenMethod::Coker}) {
        const auto tag = " (" + to_string(method) + ")";
        require(o, a_even_dim(0, method, cx) == 0, "dim A_0 != 0" + tag);
        require(o, a_even_dim(1, method, cx) == 0, "dim A_1 != 0" + tag);
        require(o, a_even_dim(3, method, cx) == 0, "dim A_3 != 0" + tag);
        const auto two = a_even(2, method, cx);
        require(o, two.dim == 1, "dim A_2 != 1" + tag);
        const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        require(o, two.basis_keys == std::vector<std::string>{canonicalize(k4).key}, "A_2 generator is not K4" + tag);
    }
    o.detail = o.pass ? "dims 0,0,1,0 for k=0..3; A_2 spanned by K4" : o.detail;
    return o;
}

Outcome aeven_methods_agree()
{
    Outcome o;
    GraphComplex cx;
    std::string dims;
    for (int k = 0; k <= 4; ++k) {
        const auto ihx = a_even_dim(k, AevenMethod::Ihx, cx);
        const auto coker = a_even_dim(k, AevenMethod::Coker, cx);
        require(o, ihx == coker, "methods differ at k=" + std::to_string(k));
        dims += (k ? "," : "") + std::to_string(ihx);
    }
    if (o.pass) o.detail = "k=0..4 dims " + dims + " by both methods";
    return o;
}

Outcome differential_squares()
{
    Outcome o;
    GraphComplex cx;
    int checked = 0;
    for (int n = 2; n <= 8; n += 2)
        for (int m = -1; m <= max_excess(n); ++m)
            for (bool dec : {false, true}) {
                if (dec && n > 6) continue;
                const auto product = multiply(cx.differential(m + 1, n, dec), cx.differential(m, n, dec));
                require(o, product.is_zero(),
                        "nonzero square at m=" + std::to_string(m) + " n=" + std::to_string(n) + (dec ? " decorated" : ""));
                ++checked;
            }
    if (o.pass) o.detail = std::to_string(checked) + " composites vanish exactly";
    return o;
}

Outcome chain_maps()
{
    Outcome o;
    GraphComplex cx;
    int checked = 0;
    for (int n = 2; n <= 6; n += 2)
        for (int m = 0; m <= max_excess(n); ++m) {
            const auto i = cx.average_map(m, n);
            const auto tag = " at m=" + std::to_string(m) + " n=" + std::to_string(n);
            require(o, multiply(cx.forget_map(m, n), i) == RationalSparseMatrix::identity(cx.component(m, n, false).dim()),
                    "f.i != id" + tag);
            require(o, multiply(cx.differential(m, n, true), i) == multiply(cx.average_map(m + 1, n), cx.differential(m, n, false)),
                    "d~.i != i.d" + tag);
            ++checked;
        }
    if (o.pass) o.detail = std::to_string(checked) + " bidegrees, both identities exact";
    return o;
}

Outcome decoration_formula()
{
    Outcome o;
    std::size_t graphs = 0, listed = 0;
    for (int p = 1; p <= 6; ++p)
        for (int q = 0; q <= p * (p - 1) / 2; ++q)
            for (const auto& cls : enumerate_admissible_classes(request(p, q))) {
                const Graph& g = cls.graph;
                const mpz_class formula = decoration_count(g);
                ++graphs;
                if (formula <= kExhaustiveDecorationLimit) {
                    // every label map, listed one by one, against the library's list
                    const auto brute = oracle::enumerate_label_maps(g);
                    std::uint64_t visited = 0;
                    bool valid = true;
                    for_each_decoration(g, [&](const Decoration& d) {
                        ++visited;
                        valid = valid && is_decoration_of(g, d);
                        return true;
                    });
                    require(o, formula == brute && visited == brute && valid, "formula disagrees on " + cls.key);
                    ++listed;
                } else {
                    std::vector<int> need;
                    for (int k : g.valences()) need.push_back(k - 2);
                    require(o, formula == oracle::count_label_assignments(need), "formula disagrees on " + cls.key);
                }
            }
    if (o.pass)
        o.detail = std::to_string(graphs) + " classes; " + std::to_string(listed) + " listed exhaustively, " +
                   std::to_string(graphs - listed) + " (|A| > 2e6) by memoized counting";
    return o;
}

Outcome decorated_dominates()
{
    Outcome o;
    GraphComplex cx;
    int checked = 0;
    for (int n = 2; n <= 6; n += 2)
        for (int m = 0; m <= max_excess(n); ++m) {
            const auto plain = cx.homology(m, n, false).homology_dim;
            const auto tag = " at m=" + std::to_string(m) + " n=" + std::to_string(n);
            require(o, cx.homology(m, n, true).homology_dim >= plain, "decorated smaller" + tag);
            require(o, cx.forget_rank_on_cohomology(m, n) >= plain, "forget rank smaller" + tag);
            ++checked;
        }
    if (o.pass) o.detail = std::to_string(checked) + " bidegrees";
    return o;
}

Outcome oracle_agreement()
{
    Outcome o;
    int cases = 0;
    std::size_t classes = 0;
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 10; ++q)
            for (bool conn : {false, true}) {
                const auto fast = enumerate_basis(request(p, q, false, conn));
                const auto slow = brute_force_oracle(request(p, q, false, conn));
                std::vector<std::string> a, b;
                for (const auto& g : fast) a.push_back(g.key);
                for (const auto& g : slow) b.push_back(g.key);
                require(o, fast.size() == slow.size() && a == b,
                        "p=" + std::to_string(p) + " q=" + std::to_string(q) + (conn ? " connected" : ""));
                classes += fast.size();
                ++cases;
            }
    if (o.pass) o.detail = std::to_string(cases) + " requests, " + std::to_string(classes) + " classes matched";
    return o;
}

Outcome codim2()
{
    Outcome o;
    std::size_t pairs = 0;
    for (int n = 1; n <= 5; ++n)
        for (const auto& [a, d] : strata::legal_codim2_pairs(n)) {
            require(o, strata::codim2_consistency(n, a, d), "inconsistent pair at n=" + std::to_string(n));
            ++pairs;
        }
    if (o.pass) o.detail = std::to_string(pairs) + " legal pairs";
    return o;
}

Outcome faces()
{
    Outcome o;
    for (int n = 1; n <= 8; ++n)
        require(o, strata::enumerate_nested(n, 1).size() == (std::size_t{1} << (n + 1)) - n - 2,
                "codim-1 count wrong at n=" + std::to_string(n));
    std::size_t covers = 0;
    for (int n = 1; n <= 5; ++n) {
        const auto poset = strata::face_poset(n, n);
        for (std::size_t i = 0; i < poset.nodes.size(); ++i)
            require(o, poset.dims[i] == 4 * n - static_cast<int>(poset.nodes[i].size()), "dimension formula");
        for (const auto& [lo, hi] : poset.covers) {
            require(o, poset.dims[lo] == poset.dims[hi] + 1, "cover dims at n=" + std::to_string(n));
            ++covers;
        }
    }
    if (o.pass) o.detail = "n=1..8 counts; " + std::to_string(covers) + " covering edges for n<=5";
    return o;
}

Outcome random_ranks()
{
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> dim(1, 12), cap(0, 8);
    std::uniform_real_distribution<double> density(0.1, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        const auto dense = oracle::random_rational(rng, r, c, density(rng), cap(rng));
        RationalSparseMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, dense[i][j]);
        const auto rank = rank_nullity(m).rank;
        require(o, rank == oracle::dense_rank(dense), "rank mismatch on trial " + std::to_string(trial));
        require(o, rank == rank_nullity(m.transpose()).rank, "transpose rank mismatch on trial " + std::to_string(trial));
    }
    if (o.pass) o.detail = "200 matrices up to 12x12";
    return o;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "A_even dimensions for k=0..3 and the K4 generator", 10, aeven_values},
        {2, "IHX and cokernel methods agree for k<=4", 300, aeven_methods_agree},
        {3, "squares of the differentials vanish (n<=8, decorated n<=6)", 600, differential_squares},
        {4, "averaging is a chain map and forgetting splits it (n<=6)", 600, chain_maps},
        {5, "decoration count formula for every admissible graph with p<=6", 0, decoration_formula},
        {6, "decorated cohomology dominates (n<=6)", 0, decorated_dominates},
        {7, "enumeration agrees with the brute-force oracle (p<=6, q<=10)", 0, oracle_agreement},
        {8, "codim-2 consistency for every legal pair (n<=5)", 60, codim2},
        {9, "codim-1 face counts (n<=8) and dimensions along covers (n<=5)", 0, faces},
        {10, "exact rank against a dense oracle and the transpose", 0, random_ranks},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.pass = false;
            o.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " - " << o.detail << " (" << timing
                  << ")" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
    return failed ? 1 : 0;
}
