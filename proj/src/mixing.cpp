#include "patmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "patmix/lagrange.hpp"

namespace patmix {

PatternFamily make_family(std::vector<std::string> ids, std::vector<Pattern> patterns) {
    if (ids.size() != patterns.size())
        throw std::invalid_argument("family ids and patterns differ in length");
    if (patterns.empty()) throw std::invalid_argument("family must be non-empty");
    int r = patterns.front().r;
    for (const Pattern& p : patterns)
        if (p.r != r) throw std::invalid_argument("family patterns differ in uniformity");
    std::set<std::string> seen(ids.begin(), ids.end());
    if (seen.size() != ids.size()) throw std::invalid_argument("duplicate family id");
    if (seen.count("empty")) throw std::invalid_argument("id \"empty\" is reserved");
    return PatternFamily{std::move(ids), std::move(patterns), r};
}

int family_index(const PatternFamily& fam, const std::string& id) {
    for (std::size_t i = 0; i < fam.ids.size(); ++i)
        if (fam.ids[i] == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown pattern id: " + id);
}

RecipeTree empty_recipe() { return RecipeTree{}; }

namespace {

void build_into(const PatternFamily& fam, const RecipeTree& node, long long offset,
                long long size, std::vector<Edge>& out, long long& count,
                std::vector<int>* bottom_offset, std::vector<int>* bottom_size) {
    if (node.self_similar)
        throw std::invalid_argument("self-similar markers have no exact-mode meaning");
    if (node.base == "empty") {
        if (!node.sizes.empty() || !node.children.empty())
            throw std::invalid_argument("empty recipe nodes carry no parts or children");
        return;
    }
    if (node.ratio_mode)
        throw std::invalid_argument("build requires an exact-mode recipe");
    const Pattern& p = fam.patterns[family_index(fam, node.base)];
    if (static_cast<int>(node.sizes.size()) != p.m)
        throw std::invalid_argument("recipe parts differ from pattern index count");
    long long total = 0;
    for (long long s : node.sizes) {
        if (s < 0) throw std::invalid_argument("negative part size");
        total += s;
    }
    if (total != size)
        throw std::invalid_argument("recipe part sizes do not fill the node");
    for (const auto& [j, child] : node.children) {
        if (!std::binary_search(p.recursive.begin(), p.recursive.end(), j))
            throw std::invalid_argument("child assigned to a non-recursive index");
        bool child_has_content = !(child.base == "empty" && !child.self_similar);
        if (child_has_content && node.sizes[j] == total && total > 0)
            throw std::invalid_argument("recursive part equals the whole node");
    }

    BlowupResult blow = blowup(p, node.sizes);
    count = checked_add(count, blow.edge_count);
    for (Edge e : blow.graph.edges) {
        for (int& v : e) v += static_cast<int>(offset);
        out.push_back(std::move(e));
    }
    if (bottom_offset) {
        for (int j = 0; j < p.m; ++j) {
            bottom_offset->push_back(static_cast<int>(offset) + blow.part_offset[j]);
            bottom_size->push_back(blow.part_size[j]);
        }
    }
    for (const auto& [j, child] : node.children)
        build_into(fam, child, offset + blow.part_offset[j], node.sizes[j], out, count,
                   nullptr, nullptr);
}

}  // namespace

BuildResult build(const PatternFamily& fam, const RecipeTree& recipe, long long n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (n > 2'000'000) throw CapacityError("construction too large to materialize");
    BuildResult res;
    std::vector<Edge> edges;
    long long count = 0;
    build_into(fam, recipe, 0, n, edges, count, &res.bottom_offset, &res.bottom_size);
    std::sort(edges.begin(), edges.end());
    res.graph = RGraph{fam.r, static_cast<int>(n), std::move(edges)};
    res.edge_count = count;
    return res;
}

// ---------------------------------------------------------------------------
// exact extremal counts

namespace {

// support/multiplicity view of a pattern for fast composition counting
struct CountData {
    struct Term {
        int support[4];
        int mult[4];
        int mult_desc[4];  // multiplicities sorted descending, for upper bounds
        int len;
    };
    std::vector<Term> terms;
    std::vector<int> recursive;
    int r;
    int m;
    bool all_simple = true;
    bool recursive_everywhere = false;
    long long missing_simple = 0;       // simple r-sets on [m] absent from E
    std::vector<Term> missing_terms;    // populated when counting via complement wins

    explicit CountData(const Pattern& p) : recursive(p.recursive), r(p.r), m(p.m) {
        recursive_everywhere = static_cast<int>(p.recursive.size()) == p.m;
        for (const auto& d : p.multisets) {
            Term t{};
            t.len = 0;
            for (int j = 0; j < p.m; ++j) {
                if (d[j] == 0) continue;
                if (t.len == 4) throw CapacityError("multiset support above 4 indices");
                t.support[t.len] = j;
                t.mult[t.len] = d[j];
                if (d[j] > 1) all_simple = false;
                ++t.len;
            }
            for (int s = 0; s < t.len; ++s) t.mult_desc[s] = t.mult[s];
            std::sort(t.mult_desc, t.mult_desc + t.len, std::greater<int>());
            terms.push_back(t);
        }
        if (all_simple) {
            missing_simple = binom(p.m, p.r) - static_cast<long long>(terms.size());
            if (r <= 4 && missing_simple < static_cast<long long>(terms.size())) {
                RGraph pr{p.r, p.m, {}};
                for (const Term& t : terms)
                    pr.edges.emplace_back(t.support, t.support + t.len);
                std::sort(pr.edges.begin(), pr.edges.end());
                for (const Edge& e : complement(pr).edges) {
                    Term t{};
                    t.len = p.r;
                    for (int s = 0; s < p.r; ++s) {
                        t.support[s] = e[s];
                        t.mult[s] = 1;
                    }
                    missing_terms.push_back(t);
                }
            }
        }
    }

    static long long small_binom(long long n, int k) {
        if (n < k) return 0;
        long long v = 1;
        for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
        return v;
    }

    static long long sat_mul(long long a, long long b) {
        long long out;
        if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<long long>::max();
        return out;
    }

    static long long sat_add(long long a, long long b) {
        long long out;
        if (__builtin_add_overflow(a, b, &out)) return std::numeric_limits<long long>::max();
        return out;
    }

    static long long elementary(const std::vector<long long>& comp, int r) {
        if (r > 4) throw CapacityError("elementary symmetric helper handles r <= 4");
        long long e[5] = {1, 0, 0, 0, 0};
        for (long long v : comp)
            for (int k = r; k >= 1; --k) e[k] += e[k - 1] * v;
        return e[r];
    }

    bool complement_mode() const { return all_simple && !missing_terms.empty(); }

    long long missing_sum(const std::vector<long long>& comp) const {
        long long missing = 0;
        for (const Term& t : missing_terms) {
            long long prod = 1;
            for (int s = 0; s < t.len && prod != 0; ++s) prod *= comp[t.support[s]];
            missing += prod;
        }
        return missing;
    }

    long long count(const std::vector<long long>& comp) const {
        if (complement_mode()) return elementary(comp, r) - missing_sum(comp);
        long long total = 0;
        for (const Term& t : terms) {
            long long prod = 1;
            for (int s = 0; s < t.len && prod != 0; ++s)
                prod *= small_binom(comp[t.support[s]], t.mult[s]);
            total += prod;
        }
        return total;
    }

    // valid for any assignment of the descending sizes to indices; saturates
    // instead of overflowing, a saturated bound is still a bound
    long long count_upper_bound(const std::vector<long long>& sizes_desc) const {
        long long matched = 0;
        for (const Term& t : terms) {
            long long prod = 1;
            for (int s = 0; s < t.len && prod != 0; ++s)
                prod = sat_mul(prod, small_binom(sizes_desc[s], t.mult_desc[s]));
            matched = sat_add(matched, prod);
        }
        if (!all_simple || m < r) return matched;
        // for simple patterns the blowup term is e_r(sizes) minus the sum over
        // absent r-sets, each at least the product of the r smallest sizes
        std::vector<long long> e(r + 1, 0);
        e[0] = 1;
        for (long long v : sizes_desc)
            for (int k = r; k >= 1; --k) e[k] = sat_add(e[k], sat_mul(e[k - 1], v));
        long long tail = 1;
        for (int i = m - r; i < m; ++i) tail = sat_mul(tail, sizes_desc[i]);
        long long via_missing = e[r] == std::numeric_limits<long long>::max()
                                    ? e[r]
                                    : e[r] - sat_mul(missing_simple, tail);
        return std::min(matched, std::max<long long>(via_missing, 0));
    }
};

void for_each_partition_desc(long long rem, int idx, int m, long long bound,
                             std::vector<long long>& s,
                             const std::function<void(const std::vector<long long>&)>& fn) {
    if (idx == m - 1) {
        if (rem <= bound) {
            s[idx] = rem;
            fn(s);
        }
        return;
    }
    long long lo = (rem + (m - idx) - 1) / (m - idx);  // keep descending feasible
    for (long long v = std::min(rem, bound); v >= lo; --v) {
        s[idx] = v;
        for_each_partition_desc(rem - v, idx + 1, m, v, s, fn);
    }
}

}  // namespace

MixingDP::MixingDP(PatternFamily fam, int cap) : fam_(std::move(fam)), cap_(cap) {
    table_.assign(1, 0);
    choice_.assign(1, {-1, {}});
}

long long MixingDP::lambda(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return table_[n];
}

void MixingDP::ensure(int n) {
    if (n < 0) throw std::invalid_argument("negative n");
    if (n > cap_) {
        std::ostringstream os;
        os << "lambda_n cap exceeded: n = " << n << " > " << cap_;
        throw CapacityError(os.str());
    }
    if (n <= computed_) return;
    std::vector<CountData> counters;
    counters.reserve(fam_.patterns.size());
    for (const Pattern& p : fam_.patterns) counters.emplace_back(p);

    table_.resize(n + 1, 0);
    choice_.resize(n + 1, {-1, {}});
    for (int k = std::max(computed_ + 1, 0); k <= n; ++k) {
        long long best = 0;
        std::pair<int, std::vector<long long>> best_choice{-1, {}};
        if (k < fam_.r) {
            table_[k] = 0;
            choice_[k] = best_choice;
            continue;
        }
        for (std::size_t pi = 0; pi < fam_.patterns.size(); ++pi) {
            const Pattern& p = fam_.patterns[pi];
            const CountData& cd = counters[pi];
            // seed with the balanced composition so the bound prunes early
            {
                std::vector<long long> comp(p.m, k / p.m);
                for (int j = 0; j < k % p.m; ++j) ++comp[j];
                bool valid = true;
                for (int j : p.recursive)
                    if (comp[j] == k && k > 0) valid = false;
                if (valid) {
                    long long v = cd.count(comp);
                    for (int j : p.recursive) v += table_[comp[j]];
                    if (v > best) {
                        best = v;
                        best_choice = {static_cast<int>(pi), comp};
                    }
                }
            }
            const bool fast_value = cd.complement_mode() && cd.recursive_everywhere;
            std::vector<long long> s(p.m);
            for_each_partition_desc(
                k, 0, p.m, k, s, [&](const std::vector<long long>& sizes) {
                    long long ub = cd.count_upper_bound(sizes);
                    int rec_budget = static_cast<int>(p.recursive.size());
                    for (int t = 0; t < p.m && rec_budget > 0; ++t, --rec_budget)
                        ub += sizes[t] == k ? binom(k, fam_.r) : table_[sizes[t]];
                    if (ub < best) return;
                    // hoist the assignment-invariant pieces of the value
                    long long invariant = 0;
                    if (fast_value) {
                        invariant = CountData::elementary(sizes, fam_.r);
                        for (long long v : sizes)
                            invariant += v == k ? 0 : table_[v];
                    }
                    std::vector<long long> comp(sizes);
                    std::sort(comp.begin(), comp.end());
                    do {
                        bool valid = true;
                        for (int j : p.recursive)
                            if (comp[j] == k && k > 0) { valid = false; break; }
                        if (!valid) continue;
                        long long v;
                        if (fast_value) {
                            v = invariant - cd.missing_sum(comp);
                        } else {
                            v = cd.count(comp);
                            for (int j : p.recursive) v += table_[comp[j]];
                        }
                        if (v < best) continue;
                        if (v > best) {
                            best = v;
                            best_choice = {static_cast<int>(pi), comp};
                            continue;
                        }
                        if (best_choice.first < 0) continue;  // keep empty witness at 0
                        auto cand = std::make_pair(fam_.ids[pi], comp);
                        auto cur = std::make_pair(fam_.ids[best_choice.first],
                                                  best_choice.second);
                        if (cand < cur) best_choice = {static_cast<int>(pi), comp};
                    } while (std::next_permutation(comp.begin(), comp.end()));
                });
        }
        table_[k] = best;
        choice_[k] = std::move(best_choice);
    }
    computed_ = std::max(computed_, n);
}

RecipeTree MixingDP::witness(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return witness_locked(n);
}

RecipeTree MixingDP::witness_locked(int n) {
    const auto& [pi, comp] = choice_[n];
    if (pi < 0) return empty_recipe();
    RecipeTree node;
    node.base = fam_.ids[pi];
    node.sizes = comp;
    const Pattern& p = fam_.patterns[pi];
    for (int j : p.recursive) {
        int size = static_cast<int>(comp[j]);
        if (size >= fam_.r && table_[size] > 0) node.children[j] = witness_locked(size);
    }
    return node;
}

LambdaWitness lambda_n(const PatternFamily& fam, int n, int cap) {
    MixingDP dp(fam, cap);
    return LambdaWitness{dp.lambda(n), dp.witness(n)};
}

// ---------------------------------------------------------------------------
// limit densities

namespace {

void check_ratio_node(const PatternFamily& fam, const RecipeTree& node) {
    const Pattern& p = fam.patterns[family_index(fam, node.base)];
    if (static_cast<int>(node.ratios.size()) != p.m)
        throw std::invalid_argument("recipe ratios differ from pattern index count");
    double sum = 0.0;
    for (double x : node.ratios) {
        if (x < 0.0) throw std::invalid_argument("negative ratio");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("ratios must sum to 1");
    for (const auto& [j, child] : node.children) {
        (void)child;
        if (!std::binary_search(p.recursive.begin(), p.recursive.end(), j))
            throw std::invalid_argument("child assigned to a non-recursive index");
    }
}

}  // namespace

double limit_density(const PatternFamily& fam, const RecipeTree& recipe) {
    if (recipe.self_similar)
        throw std::invalid_argument("self-similar marker cannot be the recipe root");
    if (recipe.base == "empty") return 0.0;
    check_ratio_node(fam, recipe);
    const Pattern& p = fam.patterns[family_index(fam, recipe.base)];
    double base_value = lagrange_poly(p, recipe.ratios);
    double marked = 0.0;
    for (const auto& [j, child] : recipe.children) {
        double w = std::pow(recipe.ratios[j], p.r);
        if (child.self_similar)
            marked += w;
        else
            base_value += w * limit_density(fam, child);
    }
    if (marked >= 1.0 - 1e-12)
        throw std::domain_error("self-similar fixed point has unit contraction");
    return base_value / (1.0 - marked);
}

namespace {

std::vector<long long> apportion(const std::vector<double>& ratios, long long n) {
    const int m = static_cast<int>(ratios.size());
    std::vector<long long> sizes(m);
    std::vector<std::pair<double, int>> fractions(m);
    long long assigned = 0;
    for (int j = 0; j < m; ++j) {
        double exact = ratios[j] * static_cast<double>(n);
        sizes[j] = static_cast<long long>(std::floor(exact));
        assigned += sizes[j];
        fractions[j] = {exact - std::floor(exact), j};
    }
    std::stable_sort(fractions.begin(), fractions.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    for (long long i = 0; i < n - assigned; ++i) ++sizes[fractions[i % m].second];
    return sizes;
}

}  // namespace

RecipeTree unfold_exact(const PatternFamily& fam, const RecipeTree& recipe, long long n) {
    if (recipe.self_similar)
        throw std::invalid_argument("self-similar marker cannot be the recipe root");
    if (recipe.base == "empty") return empty_recipe();
    check_ratio_node(fam, recipe);
    RecipeTree out;
    out.base = recipe.base;
    out.sizes = apportion(recipe.ratios, n);
    for (const auto& [j, child] : recipe.children) {
        long long size = out.sizes[j];
        if (size < fam.r || size >= n) continue;
        RecipeTree sub = child.self_similar ? unfold_exact(fam, recipe, size)
                                            : unfold_exact(fam, child, size);
        if (sub.base != "empty") out.children[j] = std::move(sub);
    }
    return out;
}

// ---------------------------------------------------------------------------
// subconstruction decision

SubconstructionDecider::SubconstructionDecider(PatternFamily fam, int cap)
    : fam_(std::move(fam)), cap_(cap) {}

namespace {

std::string graph_key(const RGraph& g) {
    std::ostringstream os;
    os << g.r << ':' << g.n;
    for (const Edge& e : g.edges) {
        os << '|';
        for (int v : e) os << v << ',';
    }
    return os.str();
}

struct PartitionSearch {
    const RGraph& f;
    const Pattern& p;
    SubconstructionDecider& decider;
    std::vector<int> order;  // vertices, max degree first
    std::vector<int> part;   // vertex -> part or -1
    std::vector<std::vector<int>> edge_of_vertex;

    PartitionSearch(const RGraph& f_, const Pattern& p_, SubconstructionDecider& d)
        : f(f_), p(p_), decider(d) {
        auto deg = degree_sequence(f);
        order.resize(f.n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
        part.assign(f.n, -1);
        edge_of_vertex.resize(f.n);
        for (std::size_t i = 0; i < f.edges.size(); ++i)
            for (int v : f.edges[i]) edge_of_vertex[v].push_back(static_cast<int>(i));
    }

    bool edge_ok(int ei) const {
        const Edge& e = f.edges[ei];
        std::vector<int> prof(p.m, 0);
        int only_part = part[e[0]];
        bool single = true;
        for (int v : e) {
            ++prof[part[v]];
            if (part[v] != only_part) single = false;
        }
        if (single &&
            std::binary_search(p.recursive.begin(), p.recursive.end(), only_part))
            return true;
        return std::binary_search(p.multisets.begin(), p.multisets.end(), prof);
    }

    bool assign(std::size_t pos) {
        if (pos == order.size()) return finish();
        int v = order[pos];
        for (int j = 0; j < p.m; ++j) {
            part[v] = j;
            bool ok = true;
            for (int ei : edge_of_vertex[v]) {
                bool complete = true;
                for (int u : f.edges[ei])
                    if (part[u] < 0) { complete = false; break; }
                if (complete && !edge_ok(ei)) { ok = false; break; }
            }
            if (ok && assign(pos + 1)) return true;
        }
        part[v] = -1;
        return false;
    }

    bool finish() {
        // the V_j != V rule: a recursive part must not hold every vertex
        for (int j : p.recursive) {
            bool all = true;
            for (int v = 0; v < f.n; ++v)
                if (part[v] != j) { all = false; break; }
            if (all && f.n > 0) return false;
        }
        for (int j : p.recursive) {
            std::vector<int> verts;
            for (int v = 0; v < f.n; ++v)
                if (part[v] == j) verts.push_back(v);
            if (verts.empty()) continue;
            RGraph inside = induced(f, verts);
            // edges already realized by the blowup do not constrain the part
            std::vector<int> self_profile(p.m, 0);
            self_profile[j] = p.r;
            if (std::binary_search(p.multisets.begin(), p.multisets.end(), self_profile))
                continue;
            if (inside.edges.empty()) continue;
            if (!decider.decide(inside)) return false;
        }
        return true;
    }
};

}  // namespace

bool SubconstructionDecider::decide(const RGraph& f) {
    if (f.r != fam_.r) throw std::invalid_argument("uniformity mismatch with family");
    if (f.n > cap_) throw CapacityError("is_subconstruction vertex cap exceeded");
    if (f.edges.empty()) return true;
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    std::string key = graph_key(canonical_form(f, cap_));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result = decide_uncached(f);
    memo_[key] = result;
    return result;
}

bool SubconstructionDecider::decide_uncached(const RGraph& f) {
    for (const Pattern& p : fam_.patterns) {
        PartitionSearch search(f, p, *this);
        if (search.assign(0)) return true;
    }
    return false;
}

bool is_subconstruction(const RGraph& f, const PatternFamily& fam, int cap) {
    SubconstructionDecider d(fam, cap);
    return d.decide(f);
}

// ---------------------------------------------------------------------------
// forbidden family and extremal enumeration

std::vector<RGraph> forbidden_family(const PatternFamily& fam, int max_vertices, int cap) {
    if (max_vertices > cap) throw CapacityError("forbidden_family cap exceeded");
    if (max_vertices < fam.r) return {};
    const int n = max_vertices;
    // orderly generation of all isomorphism classes on n vertices
    std::set<std::string> seen;
    std::vector<RGraph> frontier{empty_rgraph(fam.r, n)};
    seen.insert(graph_key(frontier.front()));
    std::vector<RGraph> all_classes{frontier.front()};
    RGraph full = complete_rgraph(fam.r, n);
    while (!frontier.empty()) {
        std::vector<RGraph> next;
        for (const RGraph& g : frontier) {
            for (const Edge& e : full.edges) {
                if (std::binary_search(g.edges.begin(), g.edges.end(), e)) continue;
                std::vector<Edge> edges = g.edges;
                edges.insert(std::upper_bound(edges.begin(), edges.end(), e), e);
                RGraph h{fam.r, n, std::move(edges)};
                RGraph canon = canonical_form(h, n);
                std::string key = graph_key(canon);
                if (seen.insert(key).second) {
                    next.push_back(canon);
                    all_classes.push_back(canon);
                }
            }
        }
        frontier = std::move(next);
    }

    // strip isolated vertices; padded variants are members whenever the
    // support graph is, so only support graphs are reported
    std::set<std::string> reduced_seen;
    std::vector<RGraph> reduced;
    for (const RGraph& g : all_classes) {
        if (g.edges.empty()) continue;
        std::vector<char> covered(g.n, 0);
        for (const Edge& e : g.edges)
            for (int v : e) covered[v] = 1;
        std::vector<int> verts;
        for (int v = 0; v < g.n; ++v)
            if (covered[v]) verts.push_back(v);
        RGraph canon = canonical_form(induced(g, verts), n);
        if (reduced_seen.insert(graph_key(canon)).second) reduced.push_back(canon);
    }

    SubconstructionDecider decider(fam, std::max(cap, max_vertices));
    std::vector<RGraph> out;
    for (const RGraph& g : reduced)
        if (!decider.decide(g)) out.push_back(g);
    std::sort(out.begin(), out.end(), [](const RGraph& a, const RGraph& b) {
        return std::tie(a.n, a.edges) < std::tie(b.n, b.edges);
    });
    return out;
}

namespace {

void append_shifted(std::vector<Edge>& out, const RGraph& g, int offset) {
    for (Edge e : g.edges) {
        for (int& v : e) v += offset;
        out.push_back(std::move(e));
    }
}

struct MaxEnumerator {
    const PatternFamily& fam;
    MixingDP& dp;
    std::map<int, std::vector<RGraph>> memo;

    std::vector<RGraph> all_max(int k) {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        std::vector<RGraph> result;
        long long target = dp.lambda(k);
        if (target == 0) {
            result.push_back(empty_rgraph(fam.r, k));
            memo[k] = result;
            return result;
        }
        std::set<std::vector<Edge>> dedup_edges;
        for (const Pattern& p : fam.patterns) {
            std::vector<long long> comp(p.m, 0);
            enumerate_comps(p, comp, 0, k, target, dedup_edges, result);
        }
        memo[k] = result;
        return result;
    }

    void enumerate_comps(const Pattern& p, std::vector<long long>& comp, int idx,
                         long long rem, long long target,
                         std::set<std::vector<Edge>>& dedup_edges,
                         std::vector<RGraph>& result) {
        if (idx == p.m - 1) {
            comp[idx] = rem;
            try_comp(p, comp, target, dedup_edges, result);
            return;
        }
        for (long long v = 0; v <= rem; ++v) {
            comp[idx] = v;
            enumerate_comps(p, comp, idx + 1, rem - v, target, dedup_edges, result);
        }
    }

    void try_comp(const Pattern& p, const std::vector<long long>& comp, long long target,
                  std::set<std::vector<Edge>>& dedup_edges, std::vector<RGraph>& result) {
        long long k = std::accumulate(comp.begin(), comp.end(), 0LL);
        for (int j : p.recursive)
            if (comp[j] == k && k > 0) return;
        long long v = blowup_count(p, comp);
        for (int j : p.recursive) v += dp.lambda(static_cast<int>(comp[j]));
        if (v != target) return;
        BlowupResult blow = blowup(p, comp);
        std::vector<int> rec_parts;
        for (int j : p.recursive)
            if (comp[j] >= fam.r && dp.lambda(static_cast<int>(comp[j])) > 0)
                rec_parts.push_back(j);
        std::vector<Edge> acc = blow.graph.edges;
        expand(blow, rec_parts, 0, acc, static_cast<int>(k), dedup_edges, result);
    }

    void expand(const BlowupResult& blow, const std::vector<int>& rec_parts,
                std::size_t idx, std::vector<Edge>& acc, int k,
                std::set<std::vector<Edge>>& dedup_edges, std::vector<RGraph>& result) {
        if (idx == rec_parts.size()) {
            std::vector<Edge> edges = acc;
            std::sort(edges.begin(), edges.end());
            if (dedup_edges.insert(edges).second)
                result.push_back(RGraph{fam.r, k, std::move(edges)});
            return;
        }
        int j = rec_parts[idx];
        for (const RGraph& sub : all_max(blow.part_size[j])) {
            std::size_t mark = acc.size();
            append_shifted(acc, sub, blow.part_offset[j]);
            expand(blow, rec_parts, idx + 1, acc, k, dedup_edges, result);
            acc.resize(mark);
        }
    }
};

}  // namespace

std::vector<RGraph> max_constructions(const PatternFamily& fam, int n, bool dedup, int cap) {
    if (n > cap) throw CapacityError("max_constructions cap exceeded");
    MixingDP dp(fam, std::max(n, cap));
    MaxEnumerator en{fam, dp, {}};
    std::vector<RGraph> labeled = en.all_max(n);
    if (!dedup) return labeled;
    std::set<std::string> seen;
    std::vector<RGraph> out;
    for (const RGraph& g : labeled) {
        RGraph canon = canonical_form(g, std::max(n, 10));
        if (seen.insert(graph_key(canon)).second) out.push_back(canon);
    }
    return out;
}

}  // namespace patmix
