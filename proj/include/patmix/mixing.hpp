#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patmix/pattern.hpp"

namespace patmix {

/// An ordered family of patterns sharing one uniformity, addressed by id.
struct PatternFamily {
    std::vector<std::string> ids;
    std::vector<Pattern> patterns;
    int r = 0;
};

PatternFamily make_family(std::vector<std::string> ids, std::vector<Pattern> patterns);
int family_index(const PatternFamily& fam, const std::string& id);

/// A rooted recipe describing one mixing construction. A node either names a
/// base pattern with per-part sizes (exact mode) or limit ratios (ratio
/// mode), or is the edgeless construction ("empty"), or is a self-similar
/// marker leaf that stands for "repeat the parent construction in the limit"
/// (ratio mode only). Children are keyed by 0-based recursive part index.
struct RecipeTree {
    std::string base = "empty";
    bool self_similar = false;
    bool ratio_mode = false;
    std::vector<long long> sizes;
    std::vector<double> ratios;
    std::map<int, RecipeTree> children;

    bool operator==(const RecipeTree& other) const = default;
};

RecipeTree empty_recipe();

struct BuildResult {
    RGraph graph;
    long long edge_count = 0;
    std::vector<int> bottom_offset;  // level-1 parts of the root blowup
    std::vector<int> bottom_size;
};

/// Materializes an exact-mode recipe on n vertices laid out contiguously
/// per branch.
BuildResult build(const PatternFamily& fam, const RecipeTree& recipe, long long n);

struct LambdaWitness {
    long long value = 0;
    RecipeTree witness;
};

/// Exact extremal counts Lambda_{P_I}(n) memoized over all k <= cap, with
/// witness recipes. Sub-partition optima are independent of context, so the
/// table is shared across queries.
class MixingDP {
  public:
    MixingDP(PatternFamily fam, int cap = 200);

    long long lambda(int n);
    RecipeTree witness(int n);
    const PatternFamily& family() const { return fam_; }

  private:
    void ensure(int n);
    RecipeTree witness_locked(int n);

    PatternFamily fam_;
    int cap_;
    std::mutex mutex_;  // the table is get-or-compute under one lock
    // witness composition per n: (pattern index or -1 for empty, sizes)
    std::vector<long long> table_;
    std::vector<std::pair<int, std::vector<long long>>> choice_;
    int computed_ = -1;
};

LambdaWitness lambda_n(const PatternFamily& fam, int n, int cap = 200);

/// Limit edge density of a ratio-mode recipe; self-similar markers induce a
/// per-node fixed point rho = lambda_E(x) + sum_marked x_j^r * rho.
double limit_density(const PatternFamily& fam, const RecipeTree& recipe);

/// Converts a ratio-mode recipe into an exact-mode recipe on n vertices by
/// largest-remainder apportionment, unfolding self-similar markers into
/// copies of their parent node until parts drop below the uniformity.
RecipeTree unfold_exact(const PatternFamily& fam, const RecipeTree& recipe, long long n);

/// Decides whether F is a subgraph of some mixing construction on V(F),
/// memoizing on canonical forms. Shared across queries for one family.
class SubconstructionDecider {
  public:
    SubconstructionDecider(PatternFamily fam, int cap = 8);
    bool decide(const RGraph& f);

  private:
    bool decide_uncached(const RGraph& f);

    PatternFamily fam_;
    int cap_;
    std::recursive_mutex mutex_;  // decide re-enters through recursive parts
    std::unordered_map<std::string, bool> memo_;
};

bool is_subconstruction(const RGraph& f, const PatternFamily& fam, int cap = 8);

/// All r-graphs on at most max_vertices vertices (no isolated vertices,
/// up to isomorphism) that embed in no mixing construction. Isolated-vertex
/// paddings of the returned graphs are forbidden as well and are omitted.
std::vector<RGraph> forbidden_family(const PatternFamily& fam, int max_vertices,
                                     int cap = 6);

/// All maximum mixing constructions on [n], optionally deduplicated up to
/// isomorphism.
std::vector<RGraph> max_constructions(const PatternFamily& fam, int n, bool dedup,
                                      int cap = 12);

}  // namespace patmix
