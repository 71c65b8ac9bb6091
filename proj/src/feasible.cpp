#include "patmix/feasible.hpp"

#include <algorithm>
#include <cmath>

#include "patmix/lagrange.hpp"

namespace patmix {

namespace {

struct CoverageSplit {
    std::vector<int> uncovered_nonrecursive;
    std::vector<int> uncovered_recursive;
    std::vector<std::pair<int, int>> uncovered_cross;
};

CoverageSplit coverage_split(const Pattern& p) {
    CoverageSplit out;
    out.uncovered_nonrecursive = uncovered_parts(p);
    for (int j : p.recursive)
        if (!covers_internal_pair(p, j)) out.uncovered_recursive.push_back(j);
    auto cov = pair_coverage(p);
    for (int i = 0; i < p.m; ++i)
        for (int j = i + 1; j < p.m; ++j)
            if (!cov[i][j]) out.uncovered_cross.emplace_back(i, j);
    return out;
}

void check_ratios(const Pattern& p, const RecipeTree& node) {
    if (static_cast<int>(node.ratios.size()) != p.m)
        throw std::invalid_argument("recipe ratios differ from pattern index count");
    double sum = 0.0;
    for (double x : node.ratios) {
        if (x < 0.0) throw std::invalid_argument("negative ratio");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("ratios must sum to 1");
    for (const auto& [j, child] : node.children) {
        (void)child;
        if (!std::binary_search(p.recursive.begin(), p.recursive.end(), j))
            throw std::invalid_argument("child assigned to a non-recursive index");
    }
}

}  // namespace

double limit_shadow_density(const PatternFamily& fam, const RecipeTree& recipe) {
    if (fam.r != 3)
        throw std::invalid_argument("shadow recursion is defined for 3-graphs only");
    if (recipe.self_similar)
        throw std::invalid_argument("self-similar marker cannot be the recipe root");
    if (recipe.base == "empty") return 0.0;
    const Pattern& p = fam.patterns[family_index(fam, recipe.base)];
    check_ratios(p, recipe);
    const auto& x = recipe.ratios;
    CoverageSplit split = coverage_split(p);
    double value = 1.0;
    for (int j : split.uncovered_nonrecursive) value -= x[j] * x[j];
    for (auto [i, j] : split.uncovered_cross) value -= 2.0 * x[i] * x[j];
    double marked = 0.0;
    for (int j : split.uncovered_recursive) {
        double w = x[j] * x[j];
        auto it = recipe.children.find(j);
        if (it == recipe.children.end()) {
            value -= w;  // child shadow density 0
        } else if (it->second.self_similar) {
            value -= w;
            marked += w;
        } else {
            value -= w * (1.0 - limit_shadow_density(fam, it->second));
        }
    }
    if (marked >= 1.0 - 1e-12)
        throw std::domain_error("self-similar shadow fixed point has unit contraction");
    return value / (1.0 - marked);
}

std::vector<AffineMap> ifs_maps(const PatternFamily& fam, std::uint64_t seed, int starts) {
    if (fam.r != 3)
        throw std::invalid_argument("shadow recursion is defined for 3-graphs only");
    std::vector<AffineMap> maps;
    for (std::size_t i = 0; i < fam.patterns.size(); ++i) {
        const Pattern& p = fam.patterns[i];
        if (p.recursive.size() != 1)
            throw std::invalid_argument("ifs_maps needs exactly one recursive index per pattern");
        OptimalVectorReport rep = pattern_lagrangian(p, fam.ids[i], seed, starts);
        if (rep.degenerate || !rep.converged)
            throw std::domain_error("degenerate optimum for pattern " + fam.ids[i]);
        const auto& x = rep.vector;
        int rec = p.recursive.front();
        CoverageSplit split = coverage_split(p);
        double c = 1.0;
        for (int j : split.uncovered_nonrecursive) c -= x[j] * x[j];
        for (auto [a, b] : split.uncovered_cross) c -= 2.0 * x[a] * x[b];
        double rho = 0.0;
        if (!covers_internal_pair(p, rec)) {
            rho = x[rec] * x[rec];
            c -= rho;
        }
        maps.push_back(AffineMap{c, rho});
    }
    return maps;
}

std::vector<double> iterate_M(const std::vector<AffineMap>& maps, std::vector<double> points,
                              int k) {
    if (k < 0) throw std::invalid_argument("negative iteration count");
    if (points.empty()) throw std::invalid_argument("empty starting set");
    auto dedup = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        std::vector<double> out;
        for (double x : v)
            if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
        v = std::move(out);
    };
    dedup(points);
    for (int step = 0; step < k; ++step) {
        std::vector<double> next;
        next.reserve(points.size() * maps.size());
        for (const AffineMap& map : maps)
            for (double x : points) next.push_back(map(x));
        dedup(next);
        points = std::move(next);
    }
    return points;
}

bool open_set_check(const std::vector<AffineMap>& maps, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval must satisfy a < b");
    // floating comparison only; the slack keeps attractor endpoints, which
    // map exactly onto themselves, from flipping the verdict on rounding
    const double eps = 1e-9 * std::max(1.0, std::abs(b - a));
    std::vector<std::pair<double, double>> images;
    for (const AffineMap& map : maps) {
        double lo = map(a), hi = map(b);
        if (lo > hi) std::swap(lo, hi);
        if (lo < a - eps || hi > b + eps) return false;
        images.emplace_back(lo, hi);
    }
    std::sort(images.begin(), images.end());
    for (std::size_t i = 1; i < images.size(); ++i)
        if (images[i].first < images[i - 1].second - eps) return false;
    return true;
}

double hausdorff_dimension(const std::vector<double>& ratios) {
    if (ratios.empty()) throw std::invalid_argument("need at least one ratio");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("ratios must lie strictly inside (0,1)");
    if (ratios.size() == 1) return 0.0;
    auto total = [&](double d) {
        double s = 0.0;
        for (double r : ratios) s += std::pow(r, d);
        return s;
    };
    double lo = 0.0, hi = 2.0 * static_cast<double>(ratios.size());
    while (total(hi) > 1.0) hi *= 2.0;  // ratios near 1 need a wider bracket
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (total(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace patmix
