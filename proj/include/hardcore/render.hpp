#pragma once

// Deterministic SVG drawings of lattice configurations: sites, particles,
// parallelograms and shaded cells.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "hardcore/errors.hpp"
#include "hardcore/lattice.hpp"

namespace hardcore {

enum class Mark { Site, Particle, Added, Removed, Highlight };

struct ScenePoint {
    Vec2 pos;  // ambient
    Mark mark = Mark::Site;
    int order = 0;  // insertion order for Added / Removed, 0 otherwise
};

struct ScenePolygon {
    std::vector<Vec2> corners;  // ambient
    std::string fill = "none";
    std::string stroke = "#555555";
    double opacity = 1.0;
};

struct Scene {
    LatticeKind kind = LatticeKind::Z2;
    std::string title;
    std::vector<ScenePolygon> polygons;  // drawn first
    std::vector<ScenePoint> points;
};

struct SvgStyle {
    double scale = 18.0;    // pixels per unit length
    double margin = 1.0;    // in unit lengths
    std::size_t max_elements = 50000;
};

/// Colours per insertion order: single, double, triple, quadruple, more.
inline const char* order_colour(int n) {
    static const char* c[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#d62728", "#9467bd"};
    return c[std::clamp(n, 1, 5) - 1];
}

inline std::string render_svg(const Scene& s, const SvgStyle& st = {}) {
    const std::size_t n = s.points.size() + s.polygons.size();
    if (n > st.max_elements) throw BudgetError("scene has " + std::to_string(n) + " elements", static_cast<long long>(st.max_elements));
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    auto grow = [&](Vec2 v) {
        const auto c = to_cartesian(s.kind, v);
        if (first) {
            x0 = x1 = c[0];
            y0 = y1 = c[1];
            first = false;
        }
        x0 = std::min(x0, c[0]);
        x1 = std::max(x1, c[0]);
        y0 = std::min(y0, c[1]);
        y1 = std::max(y1, c[1]);
    };
    for (const auto& p : s.points) grow(p.pos);
    for (const auto& p : s.polygons)
        for (const Vec2& v : p.corners) grow(v);
    x0 -= st.margin;
    y0 -= st.margin;
    x1 += st.margin;
    y1 += st.margin;
    const double w = (x1 - x0) * st.scale, h = (y1 - y0) * st.scale;

    std::string out;
    char buf[256];
    auto px = [&](Vec2 v) {
        const auto c = to_cartesian(s.kind, v);
        return std::pair<double, double>{(c[0] - x0) * st.scale, (y1 - c[1]) * st.scale};
    };
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n",
                  w, h, w, h);
    out += buf;
    if (!s.title.empty()) out += "<title>" + s.title + "</title>\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& p : s.polygons) {
        out += "<polygon points=\"";
        for (std::size_t i = 0; i < p.corners.size(); ++i) {
            const auto [x, y] = px(p.corners[i]);
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", x, y);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "\" fill=\"%s\" fill-opacity=\"%.2f\" stroke=\"%s\" stroke-width=\"1\"/>\n",
                      p.fill.c_str(), p.opacity, p.stroke.c_str());
        out += buf;
    }
    const double r_site = 0.08 * st.scale, r_part = 0.3 * st.scale;
    for (const auto& p : s.points) {
        const auto [x, y] = px(p.pos);
        switch (p.mark) {
            case Mark::Site:
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#999999\"/>\n", x, y, r_site);
                break;
            case Mark::Particle:
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#222222\"/>\n", x, y, r_part);
                break;
            case Mark::Highlight:
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#d62728\"/>\n", x, y, r_part);
                break;
            case Mark::Added:
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", x, y, r_part,
                              order_colour(p.order));
                break;
            case Mark::Removed:
                std::snprintf(buf, sizeof buf,
                              "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                              x, y, r_part, order_colour(p.order));
                break;
        }
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace hardcore
