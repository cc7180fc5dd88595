#include "ward/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ward/footprint.hpp"

namespace ward {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string points_attr(const Polygon& poly) {
    std::string out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) out += ' ';
        out += num(poly[i].x) + ',' + num(poly[i].y);
    }
    return out;
}

std::uint8_t lerp8(std::uint8_t a, std::uint8_t b, double t) {
    return static_cast<std::uint8_t>(std::lround(a + (static_cast<double>(b) - a) * t));
}

Rgb lerp(Rgb a, Rgb b, double t) { return {lerp8(a.r, b.r, t), lerp8(a.g, b.g, t), lerp8(a.b, b.b, t)}; }

const char* fill_for(const ObjectSpec& obj) {
    if (obj.kind == DomainKind::door) return "#c9a66b";
    switch (obj.support.profile) {
        case SupportProfile::supportive: return "#9ecae1";
        case SupportProfile::hazardous: return "#fc9272";
        default: return "#d9d9d9";
    }
}

}  // namespace

HeatScale HeatScale::for_grid(const RiskGrid& grid) {
    HeatScale s;
    for (std::size_t i = 0; i < grid.cells.size(); ++i)
        if (grid.mask[i]) s.range = std::max(s.range, std::abs(grid.cells[i] - 1.0));
    return s;
}

Rgb HeatScale::color(double value) const {
    if (!(range > 0.0)) return neutral;
    const double t = std::clamp((value - 1.0) / range, -1.0, 1.0);
    return t >= 0.0 ? lerp(neutral, scale_high, t) : lerp(neutral, scale_low, -t);
}

std::string render_schematic(const Problem& problem, const Layout& layout, const SchematicStyle& style) {
    const RoomSpec& room = problem.room;
    const Polygon::Box box = room.bounds();
    const double ppm = style.pixels_per_metre;
    const double m = style.margin;
    const double width = (box.max_x - box.min_x) * ppm + 2.0 * m;
    const double height = (box.max_y - box.min_y) * ppm + 2.0 * m;
    auto px = [&](Point p) {
        return Point{m + (p.x - box.min_x) * ppm, m + (box.max_y - p.y) * ppm};
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    os << "<title>" << escape(problem.name) << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    // world coordinates inside, y up
    os << "<g id=\"world\" transform=\"translate(" << num(m - box.min_x * ppm) << ' ' << num(m + box.max_y * ppm)
       << ") scale(" << num(ppm) << ' ' << num(-ppm) << ")\">\n";

    os << "<g id=\"sub-rooms\">\n";
    os << "<polygon class=\"sub-room\" data-id=\"main\" points=\"" << points_attr(room.main_room())
       << "\" fill=\"#fbfbf4\" stroke=\"none\"/>\n";
    os << "<polygon class=\"sub-room\" data-id=\"bathroom\" points=\"" << points_attr(room.bathroom())
       << "\" fill=\"#eef5fa\" stroke=\"none\"/>\n";
    os << "</g>\n";

    const bool have_layout = !layout.placements.empty();

    if (have_layout && style.show_clearances) {
        os << "<g id=\"clearances\">\n";
        for (std::size_t i = 0; i < problem.objects.size(); ++i) {
            const ObjectSpec& obj = problem.objects[i];
            for (const Polygon& c : clearance_region(obj, layout.placements[i], room))
                os << "<polygon class=\"clearance\" data-id=\"" << escape(obj.id) << "\" points=\"" << points_attr(c)
                   << "\" fill=\"#31a354\" fill-opacity=\"0.12\" stroke=\"#31a354\" stroke-width=\"0.01\""
                      " stroke-dasharray=\"0.05 0.04\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g id=\"walls\" stroke=\"#252525\" stroke-width=\"0.06\" stroke-linecap=\"square\">\n";
    for (const WallSegment& w : room.walls().segments()) {
        if (w.shared && w.owner == SubRoom::bathroom) continue;  // drawn once from the main side
        os << "<line class=\"wall";
        if (w.hallway) os << " hallway";
        if (w.shared) os << " shared";
        os << "\" x1=\"" << num(w.seg.a.x) << "\" y1=\"" << num(w.seg.a.y) << "\" x2=\"" << num(w.seg.b.x)
           << "\" y2=\"" << num(w.seg.b.y) << "\"/>\n";
    }
    os << "</g>\n";

    if (have_layout) {
        os << "<g id=\"objects\">\n";
        for (std::size_t i = 0; i < problem.objects.size(); ++i) {
            const ObjectSpec& obj = problem.objects[i];
            const Placement& pl = layout.placements[i];
            if (obj.kind == DomainKind::ceiling_light) continue;
            if (obj.kind == DomainKind::door) {
                const Segment open = door_opening(obj, pl, room);
                os << "<line class=\"door-opening\" data-id=\"" << escape(obj.id) << "\" x1=\"" << num(open.a.x)
                   << "\" y1=\"" << num(open.a.y) << "\" x2=\"" << num(open.b.x) << "\" y2=\"" << num(open.b.y)
                   << "\" stroke=\"#ffffff\" stroke-width=\"0.08\"/>\n";
                if (room.door_operation() == DoorOperation::swinging) {
                    const SwingArc arc = door_swing_arc(obj, pl, room);
                    const Point leaf_end = arc.hinge + arc.radius * Point{std::cos(arc.start_angle + arc.sweep),
                                                                          std::sin(arc.start_angle + arc.sweep)};
                    const Point closed = arc.hinge + arc.radius * Point{std::cos(arc.start_angle),
                                                                        std::sin(arc.start_angle)};
                    os << "<path class=\"door-swing\" data-id=\"" << escape(obj.id) << "\" d=\"M " << num(arc.hinge.x)
                       << ' ' << num(arc.hinge.y) << " L " << num(leaf_end.x) << ' ' << num(leaf_end.y) << " A "
                       << num(arc.radius) << ' ' << num(arc.radius) << " 0 0 0 " << num(closed.x) << ' '
                       << num(closed.y) << "\" fill=\"none\" stroke=\"#8c6d31\" stroke-width=\"0.015\"/>\n";
                }
            }
            os << "<polygon class=\"footprint\" data-id=\"" << escape(obj.id) << "\" points=\""
               << points_attr(footprint(obj, pl, room)) << "\" fill=\"" << fill_for(obj)
               << "\" stroke=\"#404040\" stroke-width=\"0.015\"/>\n";
        }
        os << "</g>\n";

        os << "<g id=\"lights\">\n";
        for (std::size_t i = 0; i < problem.objects.size(); ++i) {
            const ObjectSpec& obj = problem.objects[i];
            if (obj.kind != DomainKind::ceiling_light) continue;
            const Point p = std::get<Point>(layout.placements[i]);
            os << "<circle class=\"light\" data-id=\"" << escape(obj.id) << "\" cx=\"" << num(p.x) << "\" cy=\""
               << num(p.y) << "\" r=\"0.12\" fill=\"#ffd92f\" stroke=\"#b8860b\" stroke-width=\"0.015\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</g>\n";

    if (have_layout) {
        os << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111111\">\n";
        for (std::size_t i = 0; i < problem.objects.size(); ++i) {
            const ObjectSpec& obj = problem.objects[i];
            const Point c = px(object_frame(obj, layout.placements[i], room).center);
            const bool light = obj.kind == DomainKind::ceiling_light;
            os << "<text x=\"" << num(c.x) << "\" y=\"" << num(c.y + (light ? 0.12 * ppm + 11.0 : 4.0)) << '"'
               << (light ? " font-size=\"9\" fill=\"#7a5c00\"" : "") << '>'
               << escape(obj.name.empty() ? obj.id : obj.name) << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_schematic(const Problem& problem) { return render_schematic(problem, Layout{}); }

std::string render_heatmap_svg(const RiskGrid& grid, int pixels_per_cell) {
    if (grid.cells.empty()) throw std::invalid_argument("empty risk grid");
    if (pixels_per_cell < 1) throw std::invalid_argument("pixels_per_cell must be positive");
    const HeatScale scale = HeatScale::for_grid(grid);
    const int pc = pixels_per_cell;
    const int map_w = static_cast<int>(grid.cols) * pc;
    const int map_h = static_cast<int>(grid.rows) * pc;
    const int bar_x = map_w + 20;
    const int bar_w = 18;
    const int total_w = bar_x + bar_w + 60;
    const int total_h = std::max(map_h, 120);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << total_h
       << "\" viewBox=\"0 0 " << total_w << ' ' << total_h << "\" shape-rendering=\"crispEdges\">\n";
    os << "<g id=\"cells\">\n";
    for (std::size_t row = 0; row < grid.rows; ++row) {
        for (std::size_t col = 0; col < grid.cols; ++col) {
            const std::size_t idx = grid.index(col, row);
            if (!grid.mask[idx]) continue;
            const int x = static_cast<int>(col) * pc;
            const int y = static_cast<int>(grid.rows - 1 - row) * pc;
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << pc << "\" height=\"" << pc << "\" fill=\""
               << hex(scale.color(grid.cells[idx])) << "\"><title>" << num(grid.cells[idx]) << "</title></rect>\n";
        }
    }
    os << "</g>\n";

    // colour bar, top = 1 + range
    os << "<defs><linearGradient id=\"bar\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"1\">"
       << "<stop offset=\"0\" stop-color=\"" << hex(HeatScale::scale_high) << "\"/>"
       << "<stop offset=\"0.5\" stop-color=\"" << hex(HeatScale::neutral) << "\"/>"
       << "<stop offset=\"1\" stop-color=\"" << hex(HeatScale::scale_low) << "\"/>"
       << "</linearGradient></defs>\n";
    const int bar_top = 10;
    const int bar_h = total_h - 20;
    os << "<g id=\"colorbar\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<rect x=\"" << bar_x << "\" y=\"" << bar_top << "\" width=\"" << bar_w << "\" height=\"" << bar_h
       << "\" fill=\"url(#bar)\" stroke=\"#404040\" stroke-width=\"0.5\"/>\n";
    const double lo = 1.0 - scale.range;
    const double hi = 1.0 + scale.range;
    const double ticks[3] = {hi, 1.0, lo};
    for (int k = 0; k < 3; ++k) {
        const double y = bar_top + bar_h * 0.5 * k;
        char label[32];
        std::snprintf(label, sizeof label, "%.2f", ticks[k]);
        os << "<text x=\"" << bar_x + bar_w + 4 << "\" y=\"" << num(y + 3.5) << "\">" << label << "</text>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_heatmap_ppm(const RiskGrid& grid, int pixels_per_cell) {
    if (grid.cells.empty()) throw std::invalid_argument("empty risk grid");
    if (pixels_per_cell < 1) throw std::invalid_argument("pixels_per_cell must be positive");
    const HeatScale scale = HeatScale::for_grid(grid);
    const std::size_t pc = static_cast<std::size_t>(pixels_per_cell);
    const std::size_t w = grid.cols * pc;
    const std::size_t h = grid.rows * pc;
    std::string out = "P6\n" + std::to_string(w) + ' ' + std::to_string(h) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + w * h * 3);
    for (std::size_t y = 0; y < h; ++y) {
        const std::size_t row = grid.rows - 1 - y / pc;
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t idx = grid.index(x / pc, row);
            const Rgb c = grid.mask[idx] ? scale.color(grid.cells[idx]) : HeatScale::blank;
            char* p = &out[header + (y * w + x) * 3];
            p[0] = static_cast<char>(c.r);
            p[1] = static_cast<char>(c.g);
            p[2] = static_cast<char>(c.b);
        }
    }
    return out;
}

std::string grid_csv(const RiskGrid& grid) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "# origin_x=%.17g,origin_y=%.17g,resolution=%.17g,cols=%zu,rows=%zu,unreachable=%d\n",
                  grid.origin.x, grid.origin.y, grid.resolution, grid.cols, grid.rows, grid.unreachable ? 1 : 0);
    os << buf;
    for (std::size_t row = 0; row < grid.rows; ++row) {
        for (std::size_t col = 0; col < grid.cols; ++col) {
            if (col) os << ',';
            const std::size_t idx = grid.index(col, row);
            if (grid.mask[idx]) {
                std::snprintf(buf, sizeof buf, "%.17g", grid.cells[idx]);
                os << buf;
            }
        }
        os << '\n';
    }
    return os.str();
}

RiskGrid parse_grid_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    RiskGrid g;
    if (!std::getline(is, line)) throw std::runtime_error("grid csv: empty input");
    int unreachable = 0;
    if (std::sscanf(line.c_str(), "# origin_x=%lf,origin_y=%lf,resolution=%lf,cols=%zu,rows=%zu,unreachable=%d",
                    &g.origin.x, &g.origin.y, &g.resolution, &g.cols, &g.rows, &unreachable) != 6)
        throw std::runtime_error("grid csv: malformed header");
    g.unreachable = unreachable != 0;
    g.cells.assign(g.cols * g.rows, 0.0);
    g.mask.assign(g.cols * g.rows, 0);
    for (std::size_t row = 0; row < g.rows; ++row) {
        if (!std::getline(is, line)) throw std::runtime_error("grid csv: missing rows");
        std::size_t col = 0;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            const std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (col >= g.cols) throw std::runtime_error("grid csv: too many fields in row " + std::to_string(row));
            if (!field.empty()) {
                g.cells[g.index(col, row)] = std::stod(field);
                g.mask[g.index(col, row)] = 1;
            }
            ++col;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != g.cols) throw std::runtime_error("grid csv: wrong field count in row " + std::to_string(row));
    }
    return g;
}

}  // namespace ward
