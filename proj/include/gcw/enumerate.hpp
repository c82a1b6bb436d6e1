#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcw/decoration.hpp"
#include "gcw/graph.hpp"

namespace gcw {

inline constexpr std::size_t kDefaultGeneratorCap = 5'000'000;

struct EnumerationRequest {
    int p = 0;
    int q = 0;
    bool decorated = false;
    bool connected_only = false;
    std::size_t cap = kDefaultGeneratorCap;
    unsigned threads = 1;
};

// Basis element: an isomorphism class of (decorated) admissible graphs in its
// canonical labeling, oriented by the sorted edge order (sign +1).
struct Generator {
    std::string key;
    Graph graph;
    std::optional<Decoration> decoration;

    bool decorated() const { return decoration.has_value(); }
    static Generator from_key(const std::string& key);
};

// One representative per isomorphism class with nonvanishing orientation
// class, sorted by key. Decorated generators never vanish: the decoration
// labels every vertex, so the decorated automorphism group is trivial.
// Throws ResourceLimitError when a level of the search exceeds req.cap.
std::vector<Generator> enumerate_basis(const EnumerationRequest& req);

// Every isomorphism class of admissible graphs with p vertices and q edges,
// including those with an odd automorphism.
std::vector<Generator> enumerate_admissible_classes(const EnumerationRequest& req);

// Exhaustive oracle: all edge subsets, pairwise brute-force isomorphism and
// automorphism tests over every vertex bijection. Refuses p > 7.
std::vector<Generator> brute_force_oracle(const EnumerationRequest& req);

// JSONL record {"key","p","q","n","m","decorated"}.
std::string jsonl_record(const Generator& g);
void write_jsonl(std::ostream& out, const std::vector<Generator>& basis);
std::vector<Generator> read_jsonl(std::istream& in);

std::string cache_file_name(const EnumerationRequest& req);
std::optional<std::vector<Generator>> load_cached_basis(const std::filesystem::path& dir,
                                                        const EnumerationRequest& req);
void save_cached_basis(const std::filesystem::path& dir, const EnumerationRequest& req,
                       const std::vector<Generator>& basis);

// enumerate_basis with a read-through cache in `dir` (no caching when empty).
std::vector<Generator> cached_basis(const std::filesystem::path& dir, const EnumerationRequest& req);

} // namespace gcw
