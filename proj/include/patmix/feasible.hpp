#pragma once

#include <cstdint>
#include <vector>

#include "patmix/mixing.hpp"

namespace patmix {

/// One-dimensional contraction x -> c + rho * x with |rho| < 1.
struct AffineMap {
    double c = 0.0;
    double rho = 0.0;

    double operator()(double x) const { return c + rho * x; }
    double fixed_point() const { return c / (1.0 - rho); }
};

/// Limiting shadow density of a ratio-mode recipe for 3-uniform families.
/// A pair of vertices is uncovered exactly when no blowup edge can contain
/// it; uncovered recursive parts recurse into the child's shadow density.
double limit_shadow_density(const PatternFamily& fam, const RecipeTree& recipe);

/// Extracts the shadow-density contraction of each pattern with a single
/// recursive index, evaluated at its optimal vector.
std::vector<AffineMap> ifs_maps(const PatternFamily& fam, std::uint64_t seed = 1,
                                int starts = 32);

/// Applies every map to the point set k times, deduplicating at 1e-12.
std::vector<double> iterate_M(const std::vector<AffineMap>& maps,
                              std::vector<double> points, int k);

/// Open set condition on the interval (a, b): all images land inside and are
/// pairwise disjoint.
bool open_set_check(const std::vector<AffineMap>& maps, double a, double b);

/// The unique d >= 0 with sum_i ratios_i^d = 1 (0 when there is one ratio).
double hausdorff_dimension(const std::vector<double>& ratios);

}  // namespace patmix
