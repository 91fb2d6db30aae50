#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wcg/rules.hpp"

namespace wcg {

using WeightTriple = std::array<std::int64_t, 3>;

/// Classes of all three-player weight vectors with 1 <= sum <= max_sum.
struct ClassMap {
    std::string rule;
    int alternatives = 0;
    std::int64_t max_sum = 0;
    /// Class id -> minimal representative (sorted), in (sum, lexicographic) order.
    std::vector<WeightVector> representatives;
    /// Unsorted triples ordered by sum, then lexicographically.
    std::vector<WeightTriple> points;
    /// Class id of each point.
    std::vector<int> class_of;
};

/// 28 for Borda with three alternatives, 7 otherwise.
std::int64_t default_max_sum(const RuleId& rule, int m);

ClassMap sample_simplex(const RuleId& rule, int m, std::int64_t max_sum);

struct SvgOptions {
    int width = 640;
    int height = 600;
    /// Raster cell edge in pixels.
    int cell = 3;
    std::uint64_t palette_seed = 1;
};

/// Triangle plot of the map: player 1 at the top vertex, players 2 and 3 at
/// the bottom left and right. Each raster cell takes the class of the
/// nearest sampled point; classes covering only a few cells are also drawn
/// as dots at their sampled points.
std::string render_svg(const ClassMap& map, const SvgOptions& options = {});

/// "w1,w2,w3,rep" rows; rep is the quoted class representative.
std::string export_csv(const ClassMap& map);
ClassMap parse_csv(std::string_view text);

} // namespace wcg
