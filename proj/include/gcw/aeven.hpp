#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gcw/complex.hpp"
#include "gcw/graph.hpp"
#include "gcw/rational_matrix.hpp"

namespace gcw {

enum class AevenMethod { Ihx, Coker };

inline constexpr int kDefaultMaxK = 5;

struct IhxTerm {
    std::string key;
    int coefficient = 0;
};

// The three trivalent expansions of the unique 4-valent vertex of a source
// graph. In every expansion the new edge comes first and the remaining edges
// follow the source edge order; terms landing on the same class accumulate
// and vanishing classes are dropped.
struct IhxRelation {
    std::string source_key;
    std::vector<IhxTerm> terms;
};

struct IhxSystem {
    std::vector<std::string> row_keys;    // source graphs (one 4-valent vertex)
    std::vector<std::string> column_keys; // nonvanishing trivalent classes
    std::vector<IhxRelation> relations;
    RationalSparseMatrix matrix;          // rows x columns
};

// Expansions of a graph whose valences are all 3 except one 4.
IhxRelation ihx_relation(const Graph& source);

// Rows: every admissible class with 2k-1 vertices and 3k-1 edges. Columns:
// the basis of G^{0,2k}.
IhxSystem ihx_relation_matrix(int k, GraphComplex& complex);

struct AevenReport {
    int k = 0;
    AevenMethod method = AevenMethod::Ihx;
    bool connected_only = false;
    std::size_t num_trivalent_classes = 0;
    std::size_t num_relations = 0;
    std::size_t rank = 0;
    std::size_t dim = 0;
    // Trivalent classes whose images form a basis of the quotient.
    std::vector<std::string> basis_keys;
};

// Throws ResourceLimitError for k > max_k and std::invalid_argument for k < 0.
AevenReport a_even(int k, AevenMethod method, GraphComplex& complex, int max_k = kDefaultMaxK);
std::size_t a_even_dim(int k, AevenMethod method, GraphComplex& complex, int max_k = kDefaultMaxK);

std::string to_string(AevenMethod method);
std::string to_json(const AevenReport& r);

} // namespace gcw
