#pragma once

// Report emission: JSON run reports, CSV tables, and the SVG lightcone
// figure. Reports are self-contained (the echoed config reproduces the run)
// and deterministic for a fixed config apart from the "meta" block.

#include <chrono>
#include <fstream>
#include <iomanip>

#include "margulis/config.hpp"

namespace margulis {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// JSON serialization of result types
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["pass"] = c.pass;
    nlohmann::ordered_json mins = nlohmann::ordered_json::array();
    for (const auto& lm : c.min_alpha_by_length) {
        mins.push_back({{"length", lm.length},
                        {"min_alpha", lm.min_alpha},
                        {"argmin_word", lm.argmin.str()}});
    }
    j["min_alpha_by_length"] = mins;
    j["violator"] = {{"word", c.violator_word.str()}, {"alpha", c.violator_alpha}};
    j["tolerances"] = {{"tol", c.tol}, {"margin_required", c.margin_required}};
    j["words_checked"] = c.words_checked;
    j["crosscheck"] = {{"count", c.crosschecked}, {"max_rel_err", c.crosscheck_max_err}};
    return j;
}

inline nlohmann::ordered_json to_json(const SchottkyCheck& c) {
    nlohmann::ordered_json j;
    j["pass"] = c.ok;
    j["disjointness_margin"] = c.disjointness_margin;
    j["inclusion_slack"] = c.inclusion_slack;
    if (!c.first_violation.empty()) j["first_violation"] = c.first_violation;
    return j;
}

inline nlohmann::ordered_json to_json(const PropertyCReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.ok;
    j["depth"] = r.depth;
    j["arc_samples"] = r.arc_samples;
    j["w_plus_count"] = r.w_plus_count;
    j["w_minus_count"] = r.w_minus_count;
    j["min_slack"] = r.min_slack;
    j["sides_positive"] = r.sides_positive;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

inline nlohmann::ordered_json to_json(const OrderingReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.ok;
    j["checks"] = r.checks;
    j["min_margin"] = r.min_margin;
    if (!r.first_violation.empty()) j["first_violation"] = r.first_violation;
    return j;
}

inline nlohmann::ordered_json to_json(const Deformation& d) {
    nlohmann::ordered_json j;
    j["vg"] = {d.vg.x1, d.vg.x2, d.vg.x3};
    j["vh"] = {d.vh.x1, d.vh.x2, d.vh.x3};
    j["provenance"] = {{"n", d.provenance.n},
                       {"seed", {d.provenance.seed.x1, d.provenance.seed.x2, d.provenance.seed.x3}},
                       {"scale_k", d.provenance.scale_k},
                       {"vh_recipe", d.provenance.vh_recipe}};
    return j;
}

// ---------------------------------------------------------------------------
// Report wrapper
// ---------------------------------------------------------------------------

struct Report {
    std::string command;
    nlohmann::ordered_json config_echo;
    nlohmann::ordered_json result;
    double wall_time_ms = 0.0;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["config"] = config_echo;
        j["result"] = result;
        j["version"] = kVersion;
        j["meta"] = {{"timestamp", iso_timestamp()}, {"wall_time_ms", wall_time_ms}};
        return j;
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw Error("cannot write report to " + path);
        out << to_json().dump(2) << "\n";
    }

    static std::string iso_timestamp() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::ostringstream os;
        os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct AlphaRow {
    std::string word;
    int length = 0;
    double alpha = 0.0;
};

inline void write_alpha_csv(const std::string& path, std::span<const AlphaRow> rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write CSV to " + path);
    out << "word,length,alpha\n";
    out << std::setprecision(17);
    for (const AlphaRow& r : rows) out << r.word << "," << r.length << "," << r.alpha << "\n";
}

struct AngleRow {
    std::string label;
    double theta = 0.0;
};

inline void write_angles_csv(const std::string& path, std::span<const AngleRow> rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write CSV to " + path);
    out << "label,theta\n";
    out << std::setprecision(17);
    for (const AngleRow& r : rows) out << r.label << "," << r.theta << "\n";
}

// ---------------------------------------------------------------------------
// SVG figure: the circle of future lightlike rays with the Schottky arcs,
// the intervals U^- and U_n^+, the rays x^+(g h^i), the seed ray, and the
// shaded wedge where the cone meets the half-space.
// ---------------------------------------------------------------------------

struct FigureArc {
    std::string id;
    std::string label;
    ConicalInterval arc;
    std::string color;
    double radius;  // drawing radius in px
};

struct FigureRay {
    std::string id;
    std::string label;
    double theta = 0.0;
};

struct Figure {
    std::vector<FigureArc> arcs;
    std::vector<FigureRay> rays;
    double wedge_from = 0.0;  // shaded sector boundary angles
    double wedge_to = 0.0;
    bool has_wedge = false;
};

namespace detail {

inline std::string svg_point(double cx, double cy, double r, double theta) {
    std::ostringstream os;
    os << std::setprecision(8) << (cx + r * std::cos(theta)) << " "
       << (cy - r * std::sin(theta));
    return os.str();
}

}  // namespace detail

inline std::string render_svg(const Figure& fig) {
    constexpr double kSize = 720.0;
    constexpr double kC = kSize / 2.0;
    constexpr double kR = 260.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (fig.has_wedge) {
        const double span = angle_mod_2pi(fig.wedge_to - fig.wedge_from);
        svg << "  <path id=\"wedge-cn\" d=\"M " << kC << " " << kC << " L "
            << detail::svg_point(kC, kC, kR, fig.wedge_from) << " A " << kR << " " << kR << " 0 "
            << (span > std::numbers::pi ? 1 : 0) << " 0 "
            << detail::svg_point(kC, kC, kR, fig.wedge_to)
            << " Z\" fill=\"#ffd54d\" fill-opacity=\"0.55\" stroke=\"none\"/>\n";
    }
    svg << "  <circle cx=\"" << kC << "\" cy=\"" << kC << "\" r=\"" << kR
        << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (const FigureArc& a : fig.arcs) {
        const double t0 = a.arc.start().theta;
        const double span = a.arc.length();
        svg << "  <path id=\"" << a.id << "\" d=\"M " << detail::svg_point(kC, kC, a.radius, t0)
            << " A " << a.radius << " " << a.radius << " 0 " << (span > std::numbers::pi ? 1 : 0)
            << " 0 " << detail::svg_point(kC, kC, a.radius, t0 + span) << "\" fill=\"none\" stroke=\""
            << a.color << "\" stroke-width=\"7\" stroke-linecap=\"round\"/>\n";
        const double mid = t0 + span / 2.0;
        svg << "  <text x=\"" << kC + (a.radius + 26) * std::cos(mid) << "\" y=\""
            << kC - (a.radius + 26) * std::sin(mid)
            << "\" font-size=\"15\" text-anchor=\"middle\" fill=\"" << a.color << "\">" << a.label
            << "</text>\n";
    }
    for (const FigureRay& r : fig.rays) {
        svg << "  <line id=\"" << r.id << "\" x1=\"" << kC << "\" y1=\"" << kC << "\" x2=\""
            << kC + kR * std::cos(r.theta) << "\" y2=\"" << kC - kR * std::sin(r.theta)
            << "\" stroke=\"#333\" stroke-width=\"1.2\"/>\n";
        svg << "  <text x=\"" << kC + (kR + 10) * std::cos(r.theta) << "\" y=\""
            << kC - (kR + 10) * std::sin(r.theta) << "\" font-size=\"12\" fill=\"#333\">" << r.label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace margulis
