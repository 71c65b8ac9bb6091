#include "patmix/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace patmix {

Pattern make_pattern(int r, int m, std::vector<std::vector<int>> multisets,
                     std::vector<int> recursive) {
    if (r < 1) throw std::invalid_argument("pattern uniformity must be at least 1");
    if (m < 1) throw std::invalid_argument("pattern needs at least one index");
    for (const auto& d : multisets) {
        if (static_cast<int>(d.size()) != m)
            throw std::invalid_argument("multiset length differs from m");
        int total = 0;
        for (int c : d) {
            if (c < 0) throw std::invalid_argument("negative multiplicity");
            total += c;
        }
        if (total != r) throw std::invalid_argument("multiset total differs from r");
    }
    std::sort(multisets.begin(), multisets.end());
    if (std::adjacent_find(multisets.begin(), multisets.end()) != multisets.end())
        throw std::invalid_argument("duplicate multiset in E");
    std::sort(recursive.begin(), recursive.end());
    if (std::adjacent_find(recursive.begin(), recursive.end()) != recursive.end())
        throw std::invalid_argument("duplicate recursive index");
    for (int j : recursive)
        if (j < 0 || j >= m) throw std::invalid_argument("recursive index out of range");
    return Pattern{r, m, std::move(multisets), std::move(recursive)};
}

long long blowup_count(const Pattern& p, const std::vector<long long>& sizes) {
    if (static_cast<int>(sizes.size()) != p.m)
        throw std::invalid_argument("sizes length differs from pattern m");
    for (long long s : sizes)
        if (s < 0) throw std::invalid_argument("negative part size");
    long long total = 0;
    for (const auto& d : p.multisets) {
        long long term = 1;
        for (int j = 0; j < p.m && term != 0; ++j)
            if (d[j] > 0) term = checked_mul(term, binom(sizes[j], d[j]));
        total = checked_add(total, term);
    }
    return total;
}

std::vector<int> profile_of(const Edge& e, const std::vector<long long>& sizes) {
    std::vector<int> prof(sizes.size(), 0);
    for (int v : e) {
        long long acc = 0;
        std::size_t j = 0;
        for (; j < sizes.size(); ++j) {
            acc += sizes[j];
            if (v < acc) break;
        }
        if (j == sizes.size()) throw std::invalid_argument("vertex outside all parts");
        ++prof[j];
    }
    return prof;
}

namespace {

// emits all ways to pick d[j] vertices from each part
void emit_profile_edges(const std::vector<int>& d, const std::vector<int>& offset,
                        const std::vector<long long>& sizes, int j, Edge& acc,
                        std::vector<Edge>& out) {
    if (j == static_cast<int>(d.size())) {
        out.push_back(acc);
        return;
    }
    if (d[j] == 0) {
        emit_profile_edges(d, offset, sizes, j + 1, acc, out);
        return;
    }
    const int k = d[j];
    if (sizes[j] < k) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i) acc.push_back(offset[j] + idx[i]);
        emit_profile_edges(d, offset, sizes, j + 1, acc, out);
        acc.resize(acc.size() - k);
        int i = k - 1;
        while (i >= 0 && idx[i] == sizes[j] - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

}  // namespace

BlowupResult blowup(const Pattern& p, const std::vector<long long>& sizes) {
    long long count = blowup_count(p, sizes);
    long long n = 0;
    std::vector<int> offset(p.m), size(p.m);
    for (int j = 0; j < p.m; ++j) {
        offset[j] = static_cast<int>(n);
        size[j] = static_cast<int>(sizes[j]);
        n = checked_add(n, sizes[j]);
    }
    if (n > 2'000'000)
        throw CapacityError("blowup graph too large to materialize");
    BlowupResult res;
    res.edge_count = count;
    res.part_offset = offset;
    res.part_size = size;
    std::vector<Edge> edges;
    Edge acc;
    for (const auto& d : p.multisets)
        emit_profile_edges(d, offset, sizes, 0, acc, edges);
    for (Edge& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
    res.graph = RGraph{p.r, static_cast<int>(n), std::move(edges)};
    return res;
}

Pattern remove_index(const Pattern& p, int j) {
    if (p.m < 2) throw std::invalid_argument("cannot remove the only index");
    if (j < 0 || j >= p.m) throw std::invalid_argument("remove_index out of range");
    std::vector<std::vector<int>> kept;
    for (const auto& d : p.multisets) {
        if (d[j] > 0) continue;
        std::vector<int> nd;
        nd.reserve(p.m - 1);
        for (int i = 0; i < p.m; ++i)
            if (i != j) nd.push_back(d[i]);
        kept.push_back(std::move(nd));
    }
    std::vector<int> rec;
    for (int i : p.recursive) {
        if (i == j) continue;
        rec.push_back(i < j ? i : i - 1);
    }
    return make_pattern(p.r, p.m - 1, std::move(kept), std::move(rec));
}

std::vector<std::vector<int>> link_multiset(const Pattern& p, int i) {
    if (i < 0 || i >= p.m) throw std::invalid_argument("link index out of range");
    std::vector<std::vector<int>> out;
    for (const auto& d : p.multisets) {
        if (d[i] == 0) continue;
        std::vector<int> a = d;
        --a[i];
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool lagrangian_is_one(const Pattern& p) {
    for (const auto& d : p.multisets) {
        for (int i = 0; i < p.m; ++i) {
            if (d[i] == p.r) return true;
            if (d[i] == p.r - 1 &&
                std::binary_search(p.recursive.begin(), p.recursive.end(), i)) {
                for (int j = 0; j < p.m; ++j)
                    if (j != i && d[j] == 1) return true;
            }
        }
    }
    return false;
}

bool covers_internal_pair(const Pattern& p, int j) {
    if (j < 0 || j >= p.m) throw std::invalid_argument("part index out of range");
    for (const auto& d : p.multisets)
        if (d[j] >= 2) return true;
    return false;
}

std::vector<int> uncovered_parts(const Pattern& p) {
    std::vector<int> out;
    for (int j = 0; j < p.m; ++j) {
        if (std::binary_search(p.recursive.begin(), p.recursive.end(), j)) continue;
        if (!covers_internal_pair(p, j)) out.push_back(j);
    }
    return out;
}

std::vector<std::vector<bool>> pair_coverage(const Pattern& p) {
    std::vector<std::vector<bool>> cov(p.m, std::vector<bool>(p.m, false));
    for (const auto& d : p.multisets)
        for (int i = 0; i < p.m; ++i) {
            if (d[i] == 0) continue;
            if (d[i] >= 2) cov[i][i] = true;
            for (int j = i + 1; j < p.m; ++j)
                if (d[j] > 0) cov[i][j] = cov[j][i] = true;
        }
    return cov;
}

namespace {

std::vector<int> simple_multiset(int m, std::initializer_list<int> support) {
    std::vector<int> d(m, 0);
    for (int v : support) ++d[v];
    return d;
}

}  // namespace

Pattern bipartite_pattern() {
    return make_pattern(2, 2, {simple_multiset(2, {0, 1})}, {});
}

Pattern k53_pattern() {
    std::vector<std::vector<int>> e;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) e.push_back(simple_multiset(5, {a, b, c}));
    return make_pattern(3, 5, std::move(e), {0});
}

Pattern b53_pattern() {
    // all triples with at least two vertices in {0,1,2}, plus the three
    // crossed K_{2,2} link groups on {3,4,5,6}
    std::set<Edge> triples;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c) {
                int low = (a < 3) + (b < 3) + (c < 3);
                if (low >= 2) triples.insert({a, b, c});
            }
    auto cross = [&](int apex, std::pair<int, int> left, std::pair<int, int> right) {
        for (int x : {left.first, left.second})
            for (int y : {right.first, right.second}) {
                Edge e{apex, x, y};
                std::sort(e.begin(), e.end());
                triples.insert(e);
            }
    };
    cross(0, {3, 4}, {5, 6});
    cross(1, {3, 5}, {4, 6});
    cross(2, {3, 6}, {4, 5});
    std::vector<std::vector<int>> e;
    for (const Edge& t : triples) e.push_back(simple_multiset(7, {t[0], t[1], t[2]}));
    return make_pattern(3, 7, std::move(e), {0});
}

Pattern complement_design_pattern(int t, const std::vector<Edge>& design_triples) {
    RGraph design = make_rgraph(3, t, design_triples);
    RGraph comp = complement(design);
    std::vector<std::vector<int>> e;
    for (const Edge& tr : comp.edges) e.push_back(simple_multiset(t, {tr[0], tr[1], tr[2]}));
    std::vector<int> rec(t);
    std::iota(rec.begin(), rec.end(), 0);
    return make_pattern(3, t, std::move(e), std::move(rec));
}

}  // namespace patmix
