#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ward/risk.hpp"
#include "ward/room_model.hpp"

namespace ward {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Diverging scale centred on 1.0: `scale_low` at 1 - range, white at 1.0, `scale_high` at 1 + range.
struct HeatScale {
    double range = 0.0;  // max |v - 1| over in-room cells

    static constexpr Rgb scale_low{33, 102, 172};
    static constexpr Rgb neutral{255, 255, 255};
    static constexpr Rgb scale_high{178, 24, 43};
    static constexpr Rgb blank{208, 208, 208};

    static HeatScale for_grid(const RiskGrid& grid);
    Rgb color(double value) const;
};

struct SchematicStyle {
    double pixels_per_metre = 80.0;
    double margin = 40.0;
    bool show_clearances = true;
};

/// SVG plan of the room: walls, sub-rooms, labelled footprints, door swings, light markers.
std::string render_schematic(const Problem& problem, const Layout& layout, const SchematicStyle& style = {});

/// Walls only.
std::string render_schematic(const Problem& problem);

/// SVG heatmap with a colour bar beside the grid. Masked cells are left out.
std::string render_heatmap_svg(const RiskGrid& grid, int pixels_per_cell = 16);

/// Binary PPM (P6) of cols*pixels_per_cell by rows*pixels_per_cell pixels; north is up.
std::string render_heatmap_ppm(const RiskGrid& grid, int pixels_per_cell = 16);

/// Header comment with the grid geometry, then one line per grid row (row 0 first); masked cells are empty.
std::string grid_csv(const RiskGrid& grid);
RiskGrid parse_grid_csv(const std::string& text);

}  // namespace ward
