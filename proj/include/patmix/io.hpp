#pragma once

#include <string>
#include <vector>

#include "patmix/feasible.hpp"
#include "patmix/lagrange.hpp"
#include "patmix/mixing.hpp"
#include "patmix/sts.hpp"

namespace patmix {

// JSON wire formats. Part indices and design points are 1-based externally
// and 0-based in memory; multiplicity vectors are positional. Floating
// values are quantized to 12 significant digits on emission, so
// parse-then-emit is a fixed point.

std::string rgraph_to_json(const RGraph& g);
RGraph rgraph_from_json(const std::string& text);

std::string pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const std::string& text);

std::string recipe_to_json(const RecipeTree& recipe);
RecipeTree recipe_from_json(const std::string& text);

std::string report_to_json(const OptimalVectorReport& rep);
OptimalVectorReport report_from_json(const std::string& text);

std::string maps_to_json(const std::vector<AffineMap>& maps);
std::vector<AffineMap> maps_from_json(const std::string& text);

std::string points_to_json(const std::vector<double>& points);
std::vector<double> points_from_json(const std::string& text);
std::string points_to_csv(const std::vector<double>& points);

std::string fingerprint_to_json(const Fingerprint& f);
Fingerprint fingerprint_from_json(const std::string& text);

/// 12-significant-digit quantization used for all emitted numbers.
double quantize12(double x);
std::string format12(double x);

}  // namespace patmix
