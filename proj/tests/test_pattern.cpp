#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "patmix/io.hpp"
#include "patmix/pattern.hpp"
#include "patmix/sts.hpp"

using namespace patmix;

TEST_CASE("pattern validation") {
    CHECK_THROWS_AS(make_pattern(3, 2, {{1, 1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_pattern(3, 2, {{2, 1}, {2, 1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_pattern(3, 2, {{2, 1}}, {2}), std::invalid_argument);
}

TEST_CASE("blowup basics") {
    BlowupResult kb = blowup(bipartite_pattern(), {2, 2});
    CHECK(kb.edge_count == 4);
    CHECK(kb.graph == make_rgraph(2, 4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
    CHECK(kb.part_offset == std::vector<int>{0, 2});

    BlowupResult ident = blowup(k53_pattern(), {1, 1, 1, 1, 1});
    CHECK(ident.edge_count == 10);
    CHECK(ident.graph == complete_rgraph(3, 5));

    Pattern p = make_pattern(3, 2, {{2, 1}}, {});
    BlowupResult mixed = blowup(p, {3, 2});
    CHECK(mixed.edge_count == 6);  // C(3,2) * C(2,1)
    CHECK(mixed.edge_count == oracles::brute_blowup_count(p, {3, 2}));

    CHECK_THROWS_AS(blowup_count(p, {3}), std::invalid_argument);
}

TEST_CASE("blowup count equals brute enumeration for all small sizes") {
    auto check_all = [](const Pattern& p, int budget) {
        std::vector<long long> sizes(p.m, 0);
        std::function<void(int, int)> rec = [&](int idx, int remaining) {
            if (idx == p.m) {
                CHECK(blowup_count(p, sizes) == oracles::brute_blowup_count(p, sizes));
                return;
            }
            for (int v = 0; v <= remaining; ++v) {
                sizes[idx] = v;
                rec(idx + 1, remaining - v);
            }
        };
        rec(0, budget);
    };
    check_all(bipartite_pattern(), 10);
    check_all(k53_pattern(), 9);
    check_all(make_pattern(3, 3, {{2, 1, 0}, {1, 1, 1}, {0, 2, 1}, {3, 0, 0}}, {0}), 9);
}

TEST_CASE("blowup graph matches brute graph") {
    std::mt19937_64 rng(3);
    Pattern p = make_pattern(3, 3, {{2, 1, 0}, {1, 1, 1}, {0, 0, 3}}, {});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long long> sizes{static_cast<long long>(rng() % 4),
                                     static_cast<long long>(rng() % 4),
                                     static_cast<long long>(rng() % 4)};
        BlowupResult res = blowup(p, sizes);
        CHECK(res.graph == oracles::brute_blowup_graph(p, sizes));
        CHECK(res.edge_count == static_cast<long long>(res.graph.edges.size()));
    }
}

TEST_CASE("zero-size part equals removing the index") {
    Pattern p = b53_pattern();
    for (int j = 0; j < p.m; ++j) {
        Pattern sub = remove_index(p, j);
        std::vector<long long> sizes(p.m, 1);
        sizes[j] = 0;
        sizes[(j + 1) % p.m] = 2;
        std::vector<long long> sub_sizes;
        for (int i = 0; i < p.m; ++i)
            if (i != j) sub_sizes.push_back(sizes[i]);
        CHECK(blowup(p, sizes).graph == blowup(sub, sub_sizes).graph);
    }
}

TEST_CASE("remove_index") {
    Pattern p = make_pattern(2, 3, {{1, 1, 0}, {1, 0, 1}}, {});
    Pattern q = remove_index(p, 2);
    CHECK(q.m == 2);
    CHECK(q.multisets == std::vector<std::vector<int>>{{1, 1}});

    Pattern k = remove_index(k53_pattern(), 4);
    CHECK(k.m == 4);
    CHECK(k.multisets.size() == 4);  // K_4^3
    CHECK(k.recursive == std::vector<int>{0});

    // removing an index outside every multiset keeps E up to relabeling
    Pattern loose = make_pattern(2, 3, {{1, 1, 0}}, {2});
    Pattern dropped = remove_index(loose, 2);
    CHECK(dropped.multisets == std::vector<std::vector<int>>{{1, 1}});
    CHECK(dropped.recursive.empty());

    CHECK_THROWS_AS(remove_index(make_pattern(3, 1, {{3}}, {}), 0), std::invalid_argument);
}

TEST_CASE("link_multiset") {
    Pattern k = k53_pattern();
    auto link0 = link_multiset(k, 0);
    CHECK(link0.size() == 6);  // all pairs on the other four indices
    for (const auto& a : link0) CHECK(a[0] == 0);

    Pattern p = make_pattern(3, 2, {{2, 1}}, {});
    CHECK(link_multiset(p, 0) == std::vector<std::vector<int>>{{1, 1}});
    CHECK(link_multiset(p, 1) == std::vector<std::vector<int>>{{2, 0}});
}

TEST_CASE("lagrangian_is_one predicate") {
    CHECK(lagrangian_is_one(make_pattern(3, 1, {{3}}, {})));
    CHECK(lagrangian_is_one(make_pattern(3, 2, {{2, 1}}, {0})));
    CHECK_FALSE(lagrangian_is_one(k53_pattern()));
    CHECK_FALSE(lagrangian_is_one(b53_pattern()));
    CHECK_FALSE(lagrangian_is_one(make_pattern(3, 2, {{2, 1}}, {1})));
}

TEST_CASE("uncovered parts and pair coverage") {
    CHECK(uncovered_parts(k53_pattern()) == std::vector<int>{1, 2, 3, 4});
    CHECK(uncovered_parts(b53_pattern()) == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(uncovered_parts(make_pattern(3, 2, {{2, 1}}, {})) == std::vector<int>{1});

    auto cov1 = pair_coverage(k53_pattern());
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) CHECK(cov1[i][j]);
    auto cov2 = pair_coverage(b53_pattern());
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) CHECK(cov2[i][j]);

    auto cov3 = pair_coverage(make_pattern(3, 3, {{1, 2, 0}}, {}));
    CHECK(cov3[0][1]);
    CHECK_FALSE(cov3[0][2]);
    CHECK_FALSE(cov3[1][2]);
    CHECK(cov3[1][1]);  // multiplicity 2 covers internal pairs
}

TEST_CASE("library patterns match their definitions") {
    Pattern k = k53_pattern();
    CHECK(k.multisets.size() == 10);
    CHECK(k.recursive == std::vector<int>{0});

    // independent enumeration of the B_{5,3} definition: triples with at
    // least two vertices among the first three, plus three crossed groups
    std::set<std::vector<int>> expected;
    auto add = [&](int a, int b, int c) {
        std::vector<int> d(7, 0);
        ++d[a];
        ++d[b];
        ++d[c];
        expected.insert(d);
    };
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c)
                if ((a < 3) + (b < 3) + (c < 3) >= 2) add(a, b, c);
    for (int x : {3, 4})
        for (int y : {5, 6}) add(0, x, y);
    for (int x : {3, 5})
        for (int y : {4, 6}) add(1, x, y);
    for (int x : {3, 6})
        for (int y : {4, 5}) add(2, x, y);
    Pattern b = b53_pattern();
    CHECK(b.multisets.size() == expected.size());
    CHECK(std::set<std::vector<int>>(b.multisets.begin(), b.multisets.end()) == expected);
    CHECK(b.recursive == std::vector<int>{0});

    // links of the first three indices restricted to the last four form K_{2,2}
    for (int i = 0; i < 3; ++i) {
        int cross = 0;
        for (const auto& a : link_multiset(b, i)) {
            bool in_tail = true;
            for (int j = 0; j < 3; ++j)
                if (a[j] > 0) in_tail = false;
            if (in_tail) ++cross;
        }
        CHECK(cross == 4);
    }
}

TEST_CASE("pattern from a Steiner system") {
    STS fano = sts_generate(7);
    Pattern pd = pattern_from_sts(fano);
    CHECK(pd.m == 7);
    CHECK(pd.multisets.size() == 28);  // C(7,3) - 7
    CHECK(pd.recursive.size() == 7);
}

TEST_CASE("oversized exact counts are reported, not wrapped") {
    Pattern p = make_pattern(4, 2, {{2, 2}}, {});
    CHECK_THROWS_AS(blowup_count(p, {3'000'000'000LL, 3'000'000'000LL}), CapacityError);
}

TEST_CASE("pattern JSON round trip uses 1-based R") {
    Pattern p = k53_pattern();
    std::string json = pattern_to_json(p);
    CHECK(json.find("\"R\":[1]") != std::string::npos);
    CHECK(pattern_from_json(json) == p);
}
