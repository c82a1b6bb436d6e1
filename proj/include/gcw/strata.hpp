#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace gcw::strata {

// Sorted subset of the based ground set {0, 1, ..., n}; 0 is the basepoint.
using IndexSet = std::vector<int>;

// Collection of >= 2-element subsets, pairwise disjoint or nested. Labels the
// boundary stratum of codimension |sets|.
struct NestedFamily {
    std::vector<IndexSet> sets; // sorted
    std::size_t size() const { return sets.size(); }
    auto operator<=>(const NestedFamily&) const = default;
};

// Pairwise disjoint >= 2-element subsets; the empty collection is allowed.
struct DisjointCollection {
    std::vector<IndexSet> sets; // sorted
    auto operator<=>(const DisjointCollection&) const = default;
};

// Partition of the ground set, blocks ordered by minimal representative. The
// block containing 0 is always first and still plays the role of [0].
struct QuotientSet {
    std::vector<IndexSet> blocks;
    std::size_t size() const { return blocks.size(); }
    // Index of the block containing element i.
    std::size_t block_of(int i) const;
    auto operator<=>(const QuotientSet&) const = default;
};

struct StratumLabel {
    int n = 0;
    NestedFamily family;
    int fiber_dim = 4;
    int base_dim = 0;
    int dimension() const { return fiber_dim * n - static_cast<int>(family.size()) + base_dim; }
};

bool is_nested(const std::vector<IndexSet>& sets);
bool is_disjoint_collection(const std::vector<IndexSet>& sets);

inline constexpr int kMaxNestedN = 8;
inline constexpr std::size_t kDefaultFamilyCap = 5'000'000;

// All nonempty nested families on {0..n} with at most max_size members,
// ordered by size and then lexicographically. Throws ResourceLimitError for
// n > 8 or when more than `cap` families would be produced.
std::vector<NestedFamily> enumerate_nested(int n, int max_size, std::size_t cap = kDefaultFamilyCap);

struct FacePoset {
    int n = 0;
    // nodes[0] is the empty family (the open stratum).
    std::vector<NestedFamily> nodes;
    std::vector<int> dims;
    // (F, G) with G = F plus one set.
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    // Every strict containment F < G; only filled on request.
    std::vector<std::pair<std::size_t, std::size_t>> containments;
};

FacePoset face_poset(int n, int max_size, bool with_containments = false, int fiber_dim = 4, int base_dim = 0);

// The strata making up the closure of the face of `family`: every nested
// family containing it (within max_size).
std::vector<NestedFamily> face_closure(const NestedFamily& family, int n, int max_size);

// Closures intersect in the closure of the union when the union is nested,
// and are disjoint otherwise.
std::optional<NestedFamily> face_intersection(const NestedFamily& a, const NestedFamily& b);

// n/S: S collapsed to one block. Throws std::invalid_argument if |S| < 2 or
// S is not a subset of {0..n}.
QuotientSet quotient(int n, const IndexSet& subset);
// n/S for a disjoint collection.
QuotientSet quotient(int n, const DisjointCollection& collection);
// Collapse the blocks with the given indices into one block.
QuotientSet collapse_blocks(const QuotientSet& q, const std::vector<std::size_t>& block_indices);

// S . A = { preimages of the blocks of (n/S)/A with >= 2 elements }, with A
// given as indices of blocks of n/S. Throws std::invalid_argument unless A
// has at least two distinct valid block indices.
DisjointCollection s_dot_a(int n, const DisjointCollection& collection, const std::vector<std::size_t>& block_indices);

// Block indices of the image of a subset of {0..n} in a quotient.
std::vector<std::size_t> image_blocks(const QuotientSet& q, const IndexSet& subset);

// Collapsing A and D in either order lands on the same stratum label {A, D}
// and the same residual quotient set. Legal pairs are disjoint or A strictly
// inside D; anything else throws std::invalid_argument.
bool codim2_consistency(int n, const IndexSet& a, const IndexSet& d);

// Unordered disjoint pairs (A < D) and nested pairs (A strictly inside D).
std::vector<std::pair<IndexSet, IndexSet>> legal_codim2_pairs(int n);

// Ordered pairs of distinct non-basepoint blocks of n/S, as block indices.
std::vector<std::pair<std::size_t, std::size_t>> propagator_index_set(int n, const DisjointCollection& collection);

// Every disjoint collection on {0..n}, the empty one included.
std::vector<DisjointCollection> enumerate_disjoint_collections(int n);

struct ScheduleLayer {
    int quotient_size = 0;
    std::vector<DisjointCollection> collections;
};

// Layers k = 3, ..., n+1: the collections S with |n/S| = k.
std::vector<ScheduleLayer> induction_schedule(int n);

// For every S in a layer and every A with |A| >= 2, S . A either lies in an
// earlier layer or has no propagator indices (|n/(S.A)| < 3).
bool schedule_is_closed(int n, const std::vector<ScheduleLayer>& schedule);

} // namespace gcw::strata
