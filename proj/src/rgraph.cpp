#include "patmix/rgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_set>

namespace patmix {

namespace {

bool colex_less(const Edge& a, const Edge& b) {
    // compare from the largest element down; edges on an initial vertex
    // segment precede all edges leaving it
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// -1 candidate wins, 0 undecided, +1 candidate can never beat best
int compare_partial(const std::vector<Edge>& partial, const std::vector<Edge>& best, int k) {
    std::size_t i = 0;
    for (; i < partial.size(); ++i) {
        if (i >= best.size() || best[i].back() >= k) {
            // candidate has extra in-prefix edges that best lacks
            return -1;
        }
        if (partial[i] != best[i]) return colex_less(partial[i], best[i]) ? -1 : +1;
    }
    // equal on the candidate's full prefix; if best has more in-prefix edges
    // the candidate is already larger
    if (i < best.size() && best[i].back() < k) return +1;
    return 0;
}

}  // namespace

RGraph make_rgraph(int r, int n, std::vector<Edge> edges) {
    if (r < 1) throw std::invalid_argument("uniformity must be at least 1");
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != r)
            throw std::invalid_argument("edge arity differs from uniformity");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("edge has a repeated vertex");
        if (e.front() < 0 || e.back() >= n)
            throw std::invalid_argument("edge vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    return RGraph{r, n, std::move(edges)};
}

RGraph complete_rgraph(int r, int n) {
    RGraph g{r, n, {}};
    if (n < r) return g;
    Edge e(r);
    for (int i = 0; i < r; ++i) e[i] = i;
    while (true) {
        g.edges.push_back(e);
        int i = r - 1;
        while (i >= 0 && e[i] == n - r + i) --i;
        if (i < 0) break;
        ++e[i];
        for (int j = i + 1; j < r; ++j) e[j] = e[j - 1] + 1;
    }
    return g;
}

RGraph empty_rgraph(int r, int n) { return RGraph{r, n, {}}; }

bool has_edge(const RGraph& g, Edge e) {
    std::sort(e.begin(), e.end());
    return std::binary_search(g.edges.begin(), g.edges.end(), e);
}

RGraph shadow(const RGraph& g, int s) {
    if (s < 1 || s > g.r - 1)
        throw std::invalid_argument("shadow order must satisfy 1 <= s <= r-1");
    const int k = g.r - s;
    if (k == 2) {
        // pair shadow via an adjacency bitmap; this is the hot case
        std::vector<char> seen(static_cast<std::size_t>(g.n) * g.n, 0);
        for (const Edge& e : g.edges)
            for (int i = 0; i < g.r; ++i)
                for (int j = i + 1; j < g.r; ++j)
                    seen[static_cast<std::size_t>(e[i]) * g.n + e[j]] = 1;
        RGraph out{2, g.n, {}};
        for (int a = 0; a < g.n; ++a)
            for (int b = a + 1; b < g.n; ++b)
                if (seen[static_cast<std::size_t>(a) * g.n + b]) out.edges.push_back({a, b});
        return out;
    }
    std::unordered_set<Edge, IntVectorHash> sub;
    std::vector<int> idx(k);
    for (const Edge& e : g.edges) {
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Edge f(k);
            for (int i = 0; i < k; ++i) f[i] = e[idx[i]];
            sub.insert(std::move(f));
            int i = k - 1;
            while (i >= 0 && idx[i] == g.r - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    RGraph out{k, g.n, std::vector<Edge>(sub.begin(), sub.end())};
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::pair<double, double> densities(const RGraph& g) {
    if (g.n < g.r) throw std::invalid_argument("densities need n >= r");
    double ed = static_cast<double>(g.edges.size()) / static_cast<double>(binom(g.n, g.r));
    double sd = g.edges.empty()
                    ? 0.0
                    : static_cast<double>(shadow(g, 1).edges.size()) /
                          static_cast<double>(binom(g.n, g.r - 1));
    return {ed, sd};
}

namespace {

struct Embedder {
    const RGraph& f;
    const RGraph& g;
    std::unordered_set<Edge, IntVectorHash> g_edges;
    std::vector<int> order;        // f-vertices, high degree first
    std::vector<int> f_deg, g_deg;
    std::vector<int> map;          // f vertex -> g vertex or -1
    std::vector<char> used;

    explicit Embedder(const RGraph& f_, const RGraph& g_) : f(f_), g(g_) {
        g_edges.insert(g.edges.begin(), g.edges.end());
        f_deg = degree_sequence(f);
        g_deg = degree_sequence(g);
        order.resize(f.n);
        for (int i = 0; i < f.n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return f_deg[a] > f_deg[b]; });
        map.assign(f.n, -1);
        used.assign(g.n, 0);
    }

    bool consistent(int fv) const {
        Edge mapped;
        for (const Edge& e : f.edges) {
            bool touches = false, complete = true;
            for (int v : e) {
                if (v == fv) touches = true;
                if (map[v] < 0) complete = false;
            }
            if (!touches || !complete) continue;
            mapped.clear();
            for (int v : e) mapped.push_back(map[v]);
            std::sort(mapped.begin(), mapped.end());
            if (!g_edges.count(mapped)) return false;
        }
        return true;
    }

    bool search(std::size_t pos) {
        if (pos == order.size()) return true;
        int fv = order[pos];
        for (int gv = 0; gv < g.n; ++gv) {
            if (used[gv] || g_deg[gv] < f_deg[fv]) continue;
            map[fv] = gv;
            used[gv] = 1;
            if (consistent(fv) && search(pos + 1)) return true;
            map[fv] = -1;
            used[gv] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> embeds(const RGraph& f, const RGraph& g) {
    if (f.r != g.r) throw std::invalid_argument("uniformity mismatch in embeds");
    if (f.n > g.n) return std::nullopt;
    Embedder emb(f, g);
    if (!emb.search(0)) return std::nullopt;
    return emb.map;
}

namespace {

struct Canonicalizer {
    const RGraph& g;
    std::vector<std::vector<int>> incident;  // vertex -> edge indices
    std::vector<int> label;                  // original vertex -> new label or -1
    std::vector<int> chosen;                 // new label -> original vertex
    std::vector<Edge> partial;               // relabeled complete edges, colex sorted
    std::vector<Edge> best;
    bool have_best = false;
    std::vector<int> candidates;             // vertex visit order, high degree first

    explicit Canonicalizer(const RGraph& g_) : g(g_) {
        incident.resize(g.n);
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            for (int v : g.edges[i]) incident[v].push_back(static_cast<int>(i));
        label.assign(g.n, -1);
        candidates.resize(g.n);
        for (int i = 0; i < g.n; ++i) candidates[i] = i;
        auto deg = degree_sequence(g);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
    }

    void run() { descend(0); }

    void descend(int k) {
        if (k == g.n) {
            if (!have_best || std::lexicographical_compare(partial.begin(), partial.end(),
                                                           best.begin(), best.end(), colex_less)) {
                best = partial;
                have_best = true;
            }
            return;
        }
        for (int v : candidates) {
            if (label[v] >= 0) continue;
            label[v] = k;
            std::vector<Edge> added;
            for (int ei : incident[v]) {
                bool complete = true;
                for (int u : g.edges[ei])
                    if (label[u] < 0) { complete = false; break; }
                if (!complete) continue;
                Edge e;
                for (int u : g.edges[ei]) e.push_back(label[u]);
                std::sort(e.begin(), e.end());
                added.push_back(std::move(e));
            }
            for (Edge& e : added) {
                auto it = std::upper_bound(partial.begin(), partial.end(), e, colex_less);
                partial.insert(it, std::move(e));
            }
            int verdict = have_best ? compare_partial(partial, best, k + 1) : 0;
            if (verdict <= 0) descend(k + 1);
            // edges completed at this level are exactly those whose relabeled
            // form contains the current maximum label k
            partial.erase(std::remove_if(partial.begin(), partial.end(),
                                         [k](const Edge& e) { return e.back() == k; }),
                          partial.end());
            label[v] = -1;
        }
    }
};

}  // namespace

RGraph canonical_form(const RGraph& g, int vertex_limit) {
    if (g.n > vertex_limit)
        throw CapacityError("canonical_form vertex count exceeds limit");
    if (g.edges.empty()) return empty_rgraph(g.r, g.n);
    Canonicalizer c(g);
    c.run();
    std::vector<Edge> edges = c.best;
    std::sort(edges.begin(), edges.end());
    return RGraph{g.r, g.n, std::move(edges)};
}

int edit_distance(const RGraph& g, const RGraph& h, int vertex_limit) {
    if (g.n != h.n || g.r != h.r)
        throw std::invalid_argument("edit_distance needs matching n and r");
    if (g.n > vertex_limit)
        throw CapacityError("edit_distance vertex count exceeds limit");
    std::unordered_set<Edge, IntVectorHash> g_edges(g.edges.begin(), g.edges.end());
    std::vector<int> perm(h.n);
    for (int i = 0; i < h.n; ++i) perm[i] = i;
    int best = static_cast<int>(g.edges.size() + h.edges.size());
    do {
        int common = 0;
        Edge mapped;
        for (const Edge& e : h.edges) {
            mapped.clear();
            for (int v : e) mapped.push_back(perm[v]);
            std::sort(mapped.begin(), mapped.end());
            if (g_edges.count(mapped)) ++common;
        }
        int dist = static_cast<int>(g.edges.size() + h.edges.size()) - 2 * common;
        best = std::min(best, dist);
        if (best == 0) return 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

RGraph link_of(const RGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("link vertex out of range");
    RGraph out{g.r - 1, g.n, {}};
    for (const Edge& e : g.edges) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f;
        for (int u : e)
            if (u != v) f.push_back(u);
        out.edges.push_back(std::move(f));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

RGraph complement(const RGraph& g) {
    RGraph all = complete_rgraph(g.r, g.n);
    RGraph out{g.r, g.n, {}};
    std::set_difference(all.edges.begin(), all.edges.end(), g.edges.begin(), g.edges.end(),
                        std::back_inserter(out.edges));
    return out;
}

RGraph induced(const RGraph& g, const std::vector<int>& u) {
    std::vector<int> verts = u;
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw std::invalid_argument("induced vertex set has duplicates");
    for (int v : verts)
        if (v < 0 || v >= g.n) throw std::invalid_argument("induced vertex out of range");
    std::vector<int> newlabel(g.n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) newlabel[verts[i]] = static_cast<int>(i);
    RGraph out{g.r, static_cast<int>(verts.size()), {}};
    for (const Edge& e : g.edges) {
        bool inside = true;
        for (int v : e)
            if (newlabel[v] < 0) { inside = false; break; }
        if (!inside) continue;
        Edge f;
        for (int v : e) f.push_back(newlabel[v]);
        std::sort(f.begin(), f.end());
        out.edges.push_back(std::move(f));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

int degree(const RGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("degree vertex out of range");
    int d = 0;
    for (const Edge& e : g.edges)
        if (std::binary_search(e.begin(), e.end(), v)) ++d;
    return d;
}

std::vector<int> degree_sequence(const RGraph& g) {
    std::vector<int> d(g.n, 0);
    for (const Edge& e : g.edges)
        for (int v : e) ++d[v];
    return d;
}

int min_degree(const RGraph& g) {
    if (g.n == 0) throw std::invalid_argument("min_degree of empty vertex set");
    auto d = degree_sequence(g);
    return *std::min_element(d.begin(), d.end());
}

int max_degree(const RGraph& g) {
    if (g.n == 0) throw std::invalid_argument("max_degree of empty vertex set");
    auto d = degree_sequence(g);
    return *std::max_element(d.begin(), d.end());
}

RGraph double_vertex(const RGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("double_vertex out of range");
    RGraph out{g.r, g.n + 1, g.edges};
    for (const Edge& e : g.edges) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f;
        for (int u : e)
            if (u != v) f.push_back(u);
        f.push_back(g.n);
        std::sort(f.begin(), f.end());
        out.edges.push_back(std::move(f));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::string rgraph_to_text(const RGraph& g) {
    std::ostringstream os;
    os << g.r << ' ' << g.n << '\n';
    for (const Edge& e : g.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
    return os.str();
}

RGraph rgraph_from_text(const std::string& text) {
    std::istringstream is(text);
    int r = 0, n = 0;
    if (!(is >> r >> n)) throw std::invalid_argument("bad r n header");
    std::vector<Edge> edges;
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        Edge e;
        int v;
        while (ls >> v) e.push_back(v);
        if (e.empty()) continue;
        edges.push_back(std::move(e));
    }
    return make_rgraph(r, n, std::move(edges));
}

}  // namespace patmix
