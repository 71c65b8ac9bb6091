#pragma once

#include <string>
#include <vector>

#include "patmix/rgraph.hpp"

namespace patmix {

/// An r-graph pattern (m, E, R): m part indices, a set E of r-multisets on
/// the indices stored as length-m multiplicity vectors, and a set R of
/// recursive indices. Indices are 0-based internally; external formats are
/// 1-based.
struct Pattern {
    int r = 0;
    int m = 0;
    std::vector<std::vector<int>> multisets;  // each length m, entries sum to r
    std::vector<int> recursive;               // sorted subset of 0..m-1

    bool operator==(const Pattern& other) const = default;
};

Pattern make_pattern(int r, int m, std::vector<std::vector<int>> multisets,
                     std::vector<int> recursive);

struct BlowupResult {
    RGraph graph;
    long long edge_count = 0;
    std::vector<int> part_offset;  // part j occupies [offset[j], offset[j]+size[j])
    std::vector<int> part_size;
};

/// Blowup of E with contiguous parts of the given sizes; the edge count is
/// the exact integer sum over profiles of products of binomials.
BlowupResult blowup(const Pattern& p, const std::vector<long long>& sizes);

/// Exact edge count of the blowup without materializing the graph.
long long blowup_count(const Pattern& p, const std::vector<long long>& sizes);

/// Profile of an r-subset with respect to contiguous parts given by sizes.
std::vector<int> profile_of(const Edge& e, const std::vector<long long>& sizes);

/// Deletes index j (0-based), drops every multiset containing it, relabels.
Pattern remove_index(const Pattern& p, int j);

/// Link of index i: all (r-1)-multisets A with A + e_i in E.
std::vector<std::vector<int>> link_multiset(const Pattern& p, int i);

/// True iff lambda_P = 1: some index i has the full multiset r*e_i in E, or
/// some recursive i and j != i have (r-1)*e_i + e_j in E.
bool lagrangian_is_one(const Pattern& p);

/// True iff some multiset of E has multiplicity >= 2 at j, i.e. blowups
/// cover pairs inside part j.
bool covers_internal_pair(const Pattern& p, int j);

/// Non-recursive indices whose parts never contain shadow pairs of a blowup.
std::vector<int> uncovered_parts(const Pattern& p);

/// Symmetric matrix: entry (i,j), i != j, true iff some multiset contains
/// both indices. Diagonal entries report internal pair coverage.
std::vector<std::vector<bool>> pair_coverage(const Pattern& p);

// Built-in pattern library.
Pattern bipartite_pattern();   // (2, {{1,2}}, {}) with r = 2
Pattern k53_pattern();         // (5, K_5^3, {1})
Pattern b53_pattern();         // (7, B_{5,3}, {1})

/// Pattern (t, complement of the given design triples, R = [t]).
Pattern complement_design_pattern(int t, const std::vector<Edge>& design_triples);

}  // namespace patmix
