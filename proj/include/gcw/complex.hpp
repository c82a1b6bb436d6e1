#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gcw/enumerate.hpp"
#include "gcw/rational_matrix.hpp"

namespace gcw {

struct ComplexOptions {
    bool connected_only = false;
    std::size_t cap = kDefaultGeneratorCap;
    unsigned threads = 1;
    std::filesystem::path cache_dir; // empty: no basis cache
};

// G^{m,n} (or its decorated version): graphs with p = n - m vertices and
// q = 3n/2 - m edges.
struct GradedComponent {
    int m = 0;
    int n = 0;
    bool decorated = false;
    std::vector<Generator> basis;
    std::unordered_map<std::string, std::size_t> index;

    int vertex_count() const { return n - m; }
    int edge_count() const { return 3 * n / 2 - m; }
    std::size_t dim() const { return basis.size(); }
    std::optional<std::size_t> find(const std::string& key) const;
};

struct HomologyReport {
    int m = 0;
    int n = 0;
    bool decorated = false;
    std::size_t dim_space = 0;
    std::size_t rank_d_in = 0;
    std::size_t dim_ker_d_out = 0;
    std::size_t homology_dim = 0;
};

// The edge-contraction complexes and the chain maps between them. Components
// and differentials are memoized; an instance is meant to be used from one
// thread (column construction inside it is parallel).
class GraphComplex {
public:
    explicit GraphComplex(ComplexOptions options = {});

    const ComplexOptions& options() const { return options_; }

    // Throws std::invalid_argument for odd n.
    const GradedComponent& component(int m, int n, bool decorated);

    // delta^{m,n}: component(m,n) -> component(m+1,n).
    const RationalSparseMatrix& differential(int m, int n, bool decorated);
    // i: G^{m,n} -> decorated G^{m,n}, (1/|A|) sum over all decorations.
    RationalSparseMatrix average_map(int m, int n);
    // f: decorated G^{m,n} -> G^{m,n}, forget the decoration.
    RationalSparseMatrix forget_map(int m, int n);

    // dim ker(delta^{m,n}) - rank(delta^{m-1,n}). Throws InvariantViolation if
    // the composite of the two differentials is nonzero.
    HomologyReport homology(int m, int n, bool decorated);

    // Rank of the map induced by f from decorated cocycles to H^{m,n}:
    // rank[f(Z~) | B] - rank B with B = im delta^{m-1,n}.
    std::size_t forget_rank_on_cohomology(int m, int n);

private:
    ComplexOptions options_;
    std::map<std::tuple<int, int, bool>, GradedComponent> components_;
    std::map<std::tuple<int, int, bool>, RationalSparseMatrix> differentials_;
};

// Largest excess m with a possibly nonempty component at degree n/2.
int max_excess(int n);

std::string to_json(const HomologyReport& r);

} // namespace gcw
