#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patmix/util.hpp"

namespace patmix {

using Edge = std::vector<int>;

/// A finite r-uniform hypergraph on vertices 0..n-1. Edges are strictly
/// sorted r-tuples and the edge list itself is kept lexicographically sorted,
/// so equality of RGraph values is structural equality.
struct RGraph {
    int r = 0;
    int n = 0;
    std::vector<Edge> edges;

    bool operator==(const RGraph& other) const = default;
};

/// Validates and normalizes (sorts edges, rejects duplicates/out-of-range).
RGraph make_rgraph(int r, int n, std::vector<Edge> edges);

RGraph complete_rgraph(int r, int n);
RGraph empty_rgraph(int r, int n);

bool has_edge(const RGraph& g, Edge e);

/// s-shadow: all (r-s)-subsets contained in some edge, on the same vertex set.
RGraph shadow(const RGraph& g, int s = 1);

/// (edge density, shadow density) = (|G|/C(n,r), |dG|/C(n,r-1)); requires n >= r.
std::pair<double, double> densities(const RGraph& g);

/// Injection V(F) -> V(G) mapping edges to edges, found by backtracking.
/// Returns the witness map when one exists.
std::optional<std::vector<int>> embeds(const RGraph& f, const RGraph& g);

/// Canonical representative under vertex relabeling: two graphs are
/// isomorphic iff their canonical forms compare equal. Exhaustive
/// branch-and-bound over labelings, capped at vertex_limit.
RGraph canonical_form(const RGraph& g, int vertex_limit = 10);

/// Minimum of |G symdiff sigma(H)| over bijections sigma; exhaustive search.
int edit_distance(const RGraph& g, const RGraph& h, int vertex_limit = 8);

/// Link of v: the (r-1)-graph {e \ {v} : v in e in G} on the same index space
/// (v becomes isolated).
RGraph link_of(const RGraph& g, int v);

/// All r-subsets of [n] not in G.
RGraph complement(const RGraph& g);

/// Induced subgraph on the sorted vertex set u, relabeled to 0..|u|-1.
RGraph induced(const RGraph& g, const std::vector<int>& u);

int degree(const RGraph& g, int v);
int min_degree(const RGraph& g);
int max_degree(const RGraph& g);

/// Adds a plain clone of v as vertex n: the clone's link equals the link
/// of v, and no edge contains both.
RGraph double_vertex(const RGraph& g, int v);

std::vector<int> degree_sequence(const RGraph& g);

/// Plain-text format: header "r n", then one edge per line.
std::string rgraph_to_text(const RGraph& g);
RGraph rgraph_from_text(const std::string& text);

}  // namespace patmix
