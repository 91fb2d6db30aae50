#include "wcg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wcg/equivalence.hpp"

namespace wcg {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string hsl_hex(double h, double s, double l)
{
    auto channel = [&](double n) {
        const double k = std::fmod(n + h * 12.0, 12.0);
        const double a = s * std::min(l, 1.0 - l);
        const double v = l - a * std::max(-1.0, std::min({k - 3.0, 9.0 - k, 1.0}));
        return static_cast<int>(std::lround(v * 255.0));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(0), channel(8), channel(4));
    return buf;
}

std::vector<std::string> palette(std::size_t count, std::uint64_t seed)
{
    const double offset = static_cast<double>(splitmix64(seed) >> 11) / 9007199254740992.0;
    std::vector<std::string> colors;
    for (std::size_t i = 0; i < count; ++i) {
        const double hue = std::fmod(offset + 0.618033988749895 * static_cast<double>(i), 1.0);
        const double sat = 0.50 + 0.15 * static_cast<double>(i % 3);
        const double light = 0.48 + 0.12 * static_cast<double>((i / 3) % 3);
        colors.push_back(hsl_hex(hue, sat, light));
    }
    return colors;
}

std::string rep_text(const WeightVector& w)
{
    return "(" + w.to_string() + ")";
}

} // namespace

std::int64_t default_max_sum(const RuleId& rule, int m)
{
    return (rule.kind() == RuleKind::borda && m == 3) ? 28 : 7;
}

ClassMap sample_simplex(const RuleId& rule, int m, std::int64_t max_sum)
{
    if (max_sum < 1)
        throw Error("max sum must be at least 1");
    ClassMap map;
    map.rule = rule.name();
    map.alternatives = m;
    map.max_sum = max_sum;

    // Class of every sorted triple; sums ascending and lexicographic order
    // within a sum make the first member of each class its label.
    std::unordered_map<std::string, int> class_by_game;
    std::map<WeightTriple, int> class_by_sorted;
    for (std::int64_t s = 1; s <= max_sum; ++s) {
        for (std::int64_t a = (s + 2) / 3; a <= s; ++a) {
            for (std::int64_t b = (s - a + 1) / 2; b <= std::min(a, s - a); ++b) {
                const std::int64_t c = s - a - b;
                if (c > b)
                    continue;
                const WeightVector w{a, b, c};
                const auto game = compact_winner_map(rule, w, m);
                auto [it, inserted] =
                    class_by_game.try_emplace(std::string(game.begin(), game.end()), static_cast<int>(map.representatives.size()));
                if (inserted)
                    map.representatives.push_back(w);
                class_by_sorted[{a, b, c}] = it->second;
            }
        }
    }
    for (std::int64_t s = 1; s <= max_sum; ++s) {
        for (std::int64_t a = 0; a <= s; ++a) {
            for (std::int64_t b = 0; b <= s - a; ++b) {
                const WeightTriple p{a, b, s - a - b};
                WeightTriple sorted = p;
                std::sort(sorted.begin(), sorted.end(), std::greater<>());
                map.points.push_back(p);
                map.class_of.push_back(class_by_sorted.at(sorted));
            }
        }
    }
    return map;
}

std::string render_svg(const ClassMap& map, const SvgOptions& options)
{
    if (map.points.empty() || map.representatives.empty())
        throw Error("cannot render an empty class map");
    if (options.width < 100 || options.height < 100 || options.cell < 1)
        throw Error("SVG dimensions too small");

    const double pad = 20.0;
    const double row_h = 16.0;
    const double col_w = 120.0;
    const std::size_t k = map.representatives.size();
    const int rows_per_col = std::max(1, static_cast<int>((options.height - 2 * pad - 20) / row_h));
    const int legend_cols = static_cast<int>((k + rows_per_col - 1) / rows_per_col);
    const double legend_w = legend_cols * col_w;
    const double sqrt3 = std::sqrt(3.0);
    const double side = std::min(options.width - 3 * pad - legend_w, (options.height - 2 * pad - 20) * 2.0 / sqrt3);
    if (side < 20)
        throw Error("SVG dimensions too small for the legend");
    const double tri_h = side * sqrt3 / 2.0;
    const double x0 = pad;
    const double y0 = pad + 10;
    const double vx[3] = {x0 + side / 2.0, x0, x0 + side};
    const double vy[3] = {y0, y0 + tri_h, y0 + tri_h};

    std::vector<double> px(map.points.size());
    std::vector<double> py(map.points.size());
    for (std::size_t i = 0; i < map.points.size(); ++i) {
        const auto& p = map.points[i];
        const double s = static_cast<double>(p[0] + p[1] + p[2]);
        px[i] = (p[0] * vx[0] + p[1] * vx[1] + p[2] * vx[2]) / s;
        py[i] = (p[0] * vy[0] + p[1] * vy[1] + p[2] * vy[2]) / s;
    }

    const auto colors = palette(k, options.palette_seed);
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
        << "<title>" << map.rule << " classes, m=" << map.alternatives << ", weight sums up to " << map.max_sum
        << "</title>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n<g shape-rendering=\"crispEdges\">\n";

    const double c = options.cell;
    const int cols = static_cast<int>(std::ceil(side / c));
    const int rows = static_cast<int>(std::ceil(tri_h / c));
    std::vector<int> cell_count(k, 0);
    const double det = (vy[1] - vy[2]) * (vx[0] - vx[2]) + (vx[2] - vx[1]) * (vy[0] - vy[2]);
    for (int r = 0; r < rows; ++r) {
        const double cy = y0 + (r + 0.5) * c;
        int run_start = -1;
        int run_class = -1;
        auto flush = [&](int end) {
            if (run_class < 0)
                return;
            svg << "<rect x=\"" << fmt(x0 + run_start * c) << "\" y=\"" << fmt(y0 + r * c) << "\" width=\""
                << fmt((end - run_start) * c) << "\" height=\"" << fmt(c) << "\" fill=\"" << colors[run_class]
                << "\"/>\n";
            run_class = -1;
        };
        for (int q = 0; q < cols; ++q) {
            const double cx = x0 + (q + 0.5) * c;
            const double b0 = ((vy[1] - vy[2]) * (cx - vx[2]) + (vx[2] - vx[1]) * (cy - vy[2])) / det;
            const double b1 = ((vy[2] - vy[0]) * (cx - vx[2]) + (vx[0] - vx[2]) * (cy - vy[2])) / det;
            const double b2 = 1.0 - b0 - b1;
            int cls = -1;
            if (b0 >= 0 && b1 >= 0 && b2 >= 0) {
                double best = 0;
                std::size_t best_i = 0;
                for (std::size_t i = 0; i < px.size(); ++i) {
                    const double d = (px[i] - cx) * (px[i] - cx) + (py[i] - cy) * (py[i] - cy);
                    if (i == 0 || d < best) {
                        best = d;
                        best_i = i;
                    }
                }
                cls = map.class_of[best_i];
                ++cell_count[cls];
            }
            if (cls != run_class) {
                flush(q);
                if (cls >= 0) {
                    run_start = q;
                    run_class = cls;
                }
            }
        }
        flush(cols);
    }
    svg << "</g>\n";

    // Classes that are too thin to see in the raster.
    svg << "<g stroke=\"#000000\" stroke-width=\"0.5\">\n";
    for (std::size_t i = 0; i < map.points.size(); ++i) {
        const int cls = map.class_of[i];
        if (cell_count[cls] >= 4)
            continue;
        svg << "<circle cx=\"" << fmt(px[i]) << "\" cy=\"" << fmt(py[i]) << "\" r=\"3\" fill=\"" << colors[cls]
            << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<polygon points=\"" << fmt(vx[0]) << ',' << fmt(vy[0]) << ' ' << fmt(vx[1]) << ',' << fmt(vy[1]) << ' '
        << fmt(vx[2]) << ',' << fmt(vy[2]) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<text x=\"" << fmt(vx[0]) << "\" y=\"" << fmt(vy[0] - 6) << "\" text-anchor=\"middle\">w1</text>\n";
    svg << "<text x=\"" << fmt(vx[1]) << "\" y=\"" << fmt(vy[1] + 14) << "\" text-anchor=\"start\">w2</text>\n";
    svg << "<text x=\"" << fmt(vx[2]) << "\" y=\"" << fmt(vy[2] + 14) << "\" text-anchor=\"end\">w3</text>\n";

    const double lx = x0 + side + pad;
    for (std::size_t i = 0; i < k; ++i) {
        const double ex = lx + static_cast<double>(i / rows_per_col) * col_w;
        const double ey = y0 + static_cast<double>(i % rows_per_col) * row_h;
        svg << "<g class=\"legend-entry\"><rect x=\"" << fmt(ex) << "\" y=\"" << fmt(ey) << "\" width=\"10\" height=\"10\" fill=\""
            << colors[i] << "\" stroke=\"#000000\" stroke-width=\"0.5\"/><text x=\"" << fmt(ex + 14) << "\" y=\""
            << fmt(ey + 9) << "\">" << rep_text(map.representatives[i]) << "</text></g>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

std::string export_csv(const ClassMap& map)
{
    std::string out = "w1,w2,w3,rep\n";
    for (std::size_t i = 0; i < map.points.size(); ++i) {
        const auto& p = map.points[i];
        out += std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) + ",\"" +
               map.representatives[map.class_of[i]].to_string() + "\"\n";
    }
    return out;
}

ClassMap parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.substr(0, 12) != "w1,w2,w3,rep")
        throw ParseError("CSV must start with the header 'w1,w2,w3,rep'");
    ClassMap map;
    std::vector<WeightVector> labels;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto quote = line.find('"');
        if (quote == std::string::npos || quote == 0 || line.back() != '"' || quote + 1 >= line.size())
            throw ParseError("CSV line " + std::to_string(line_no) + " needs a quoted representative");
        const WeightVector point = WeightVector::parse(line.substr(0, quote - 1));
        if (point.size() != 3 || line[quote - 1] != ',')
            throw ParseError("CSV line " + std::to_string(line_no) + " must start with three weights");
        map.points.push_back({point[0], point[1], point[2]});
        labels.push_back(WeightVector::parse(line.substr(quote + 1, line.size() - quote - 2)));
        map.max_sum = std::max(map.max_sum, point.sum());
    }
    map.representatives = labels;
    std::sort(map.representatives.begin(), map.representatives.end(), representative_less);
    map.representatives.erase(std::unique(map.representatives.begin(), map.representatives.end()),
                              map.representatives.end());
    for (const auto& l : labels) {
        const auto it = std::lower_bound(map.representatives.begin(), map.representatives.end(), l, representative_less);
        map.class_of.push_back(static_cast<int>(it - map.representatives.begin()));
    }
    return map;
}

} // namespace wcg
