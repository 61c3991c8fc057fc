/*
Copyright 2026 The holotape Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holotape/holo_sim.hpp"
#include "holotape/ledger.hpp"
#include "holotape/machine.hpp"
#include "holotape/samples.hpp"

namespace holotape {

struct PowerFit {
    double exponent = 0;  // slope of ln y against ln x
    double intercept = 0; // ln y at ln x = 0
    double residual = 0;  // root mean square of the log residuals
    std::size_t points = 0;
};

/// Ordinary least squares on (ln x, ln y). Needs at least 4 points with x, y > 0.
inline PowerFit fit_power_law(const std::vector<std::pair<double, double>> &xy) {
    if (xy.size() < 4) {
        throw std::invalid_argument("power-law fit needs at least 4 points, got " +
                                    std::to_string(xy.size()));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(xy.size());
    for (auto [x, y] : xy) {
        if (x <= 0 || y <= 0) throw std::invalid_argument("power-law fit needs positive values");
        auto lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    auto den = n * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("power-law fit needs at least two distinct x values");
    PowerFit f;
    f.points = xy.size();
    f.exponent = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.exponent * sx) / n;
    double ss = 0;
    for (auto [x, y] : xy) {
        auto r = std::log(y) - (f.intercept + f.exponent * std::log(x));
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

struct ScalingRow {
    std::uint64_t t = 0; // steps actually simulated
    std::uint64_t b = 0;
    std::uint64_t T = 0;
    std::uint64_t k = 0;
    std::uint64_t volume = 0;
    std::uint64_t max_screen = 0;
    std::uint64_t max_book = 0;
    std::uint64_t max_total = 0;
    std::uint32_t depth = 0;
    bool chain_holds = true;
    bool audits_agree = true;
    std::string error; // non-empty when the grid point failed

    bool ok() const noexcept { return error.empty(); }
};

struct ScalingReport {
    std::string machine;
    std::vector<ScalingRow> rows; // ascending t
    std::optional<PowerFit> fit;
    std::string fit_note; // why the fit is missing, if it is
};

using InputFamily = std::function<std::vector<Symbol>(std::uint64_t t)>;
using BlockRule = std::function<std::uint64_t(std::uint64_t t)>;

inline std::uint64_t sqrt_block_rule(std::uint64_t t) {
    return std::max<std::uint64_t>(1, samples::isqrt_ceil(t));
}

/// The bundled input family for a machine (see samples::default_input).
inline InputFamily default_family(const MachineSpec &m) {
    return [m](std::uint64_t t) { return parse_input(m, samples::default_input(m, t)); };
}

/// One streaming run per grid point with a ledger attached, then a log-log fit of max_screen against t.
inline ScalingReport area_law_study(const MachineSpec &m, const InputFamily &family,
                                    std::vector<std::uint64_t> grid, const BlockRule &rule,
                                    std::uint64_t c_int) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    ScalingReport rep;
    rep.machine = m.name();
    std::vector<std::pair<double, double>> pts;
    for (auto t : grid) {
        ScalingRow row;
        row.t = t;
        row.k = m.tapes();
        row.b = rule(t);
        try {
            ScreenLedger ledger;
            auto res = holo_run(m, family(t), t, HoloOptions{row.b, c_int, &ledger});
            row.t = res.steps;
            row.T = res.blocks;
            row.depth = res.depth;
            row.volume = row.k * res.steps;
            row.max_screen = ledger.max_screen();
            row.max_book = ledger.max_book();
            row.max_total = ledger.max_total();
            row.chain_holds = ledger.chain_holds();
            row.audits_agree = ledger.audits_agree();
            if (row.max_screen > 0) pts.emplace_back(static_cast<double>(row.t), static_cast<double>(row.max_screen));
        } catch (const Error &e) {
            row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
    }
    try {
        rep.fit = fit_power_law(pts);
    } catch (const std::invalid_argument &e) {
        rep.fit_note = e.what();
    }
    return rep;
}

struct VolumeRow {
    std::uint64_t volume = 0;
    std::uint64_t max_screen = 0;
    double ratio = 0; // max_screen / sqrt(volume)
};

inline std::vector<VolumeRow> volume_vs_screen(const ScalingReport &rep) {
    std::vector<VolumeRow> out;
    for (const auto &r : rep.rows) {
        if (!r.ok() || r.volume == 0) continue;
        out.push_back({r.volume, r.max_screen,
                       static_cast<double>(r.max_screen) / std::sqrt(static_cast<double>(r.volume))});
    }
    return out;
}

inline std::string scaling_csv(const std::vector<ScalingReport> &reports) {
    std::ostringstream os;
    os << "machine,t,b,T,k,volume,max_screen,max_book,max_total,exponent_fit,residual\n";
    os << std::setprecision(6);
    for (const auto &rep : reports) {
        for (const auto &r : rep.rows) {
            if (!r.ok()) continue;
            os << rep.machine << ',' << r.t << ',' << r.b << ',' << r.T << ',' << r.k << ',' << r.volume
               << ',' << r.max_screen << ',' << r.max_book << ',' << r.max_total << ',';
            if (rep.fit) {
                os << rep.fit->exponent << ',' << rep.fit->residual;
            } else {
                os << ',';
            }
            os << '\n';
        }
    }
    return os.str();
}

/// Log-log chart of max_screen against t, one polyline per report, no external assets.
inline std::string scaling_svg(const std::vector<ScalingReport> &reports) {
    const double W = 640, H = 420, pad = 56;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto &rep : reports) {
        for (const auto &r : rep.rows) {
            if (!r.ok() || r.max_screen == 0 || r.t == 0) continue;
            x0 = std::min(x0, std::log2(double(r.t)));
            x1 = std::max(x1, std::log2(double(r.t)));
            y0 = std::min(y0, std::log2(double(r.max_screen)));
            y1 = std::max(y1, std::log2(double(r.max_screen)));
        }
    }
    if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-9) x1 = x0 + 1;
    if (y1 - y0 < 1e-9) y1 = y0 + 1;
    auto px = [&](double lx) { return pad + (lx - x0) / (x1 - x0) * (W - 2 * pad); };
    auto py = [&](double ly) { return H - pad - (ly - y0) / (y1 - y0) * (H - 2 * pad); };
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream os;
    os << std::fixed << std::setprecision(1);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">log2 t</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
       << ")\" text-anchor=\"middle\">log2 max_screen</text>\n";
    for (int i = 0; i <= 4; ++i) {
        double lx = x0 + (x1 - x0) * i / 4, ly = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << px(lx) << "\" y=\"" << H - pad + 16 << "\" text-anchor=\"middle\">" << lx
           << "</text>\n";
        os << "<text x=\"" << pad - 6 << "\" y=\"" << py(ly) + 4 << "\" text-anchor=\"end\">" << ly
           << "</text>\n";
    }
    std::size_t ci = 0;
    for (const auto &rep : reports) {
        const char *color = colors[ci++ % 5];
        std::ostringstream pts;
        pts << std::fixed << std::setprecision(1);
        for (const auto &r : rep.rows) {
            if (!r.ok() || r.max_screen == 0 || r.t == 0) continue;
            auto x = px(std::log2(double(r.t))), y = py(std::log2(double(r.max_screen)));
            pts << x << ',' << y << ' ';
            os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << pts.str() << "\"/>\n";
        os << "<text x=\"" << W - pad - 4 << "\" y=\"" << pad + 16 * ci << "\" text-anchor=\"end\" fill=\""
           << color << "\">" << rep.machine;
        if (rep.fit) os << std::setprecision(3) << " slope " << rep.fit->exponent << std::setprecision(1);
        os << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/**
 * Grid syntax: comma-separated terms, each a number, 2^e, or a range
 * 2^a..2^b covering every power of two in between.
 */
inline std::vector<std::uint64_t> parse_grid(std::string_view spec) {
    auto number = [&](std::string_view s) -> std::uint64_t {
        if (s.empty()) throw std::invalid_argument("empty grid term");
        auto caret = s.find('^');
        auto digits = [&](std::string_view d) {
            if (d.empty() || d.find_first_not_of("0123456789") != std::string_view::npos) {
                throw std::invalid_argument("bad grid term '" + std::string(s) + "'");
            }
            return std::stoull(std::string(d));
        };
        if (caret == std::string_view::npos) return digits(s);
        auto base = digits(s.substr(0, caret));
        auto exp = digits(s.substr(caret + 1));
        if (base != 2 || exp > 62) throw std::invalid_argument("bad grid term '" + std::string(s) + "'");
        return std::uint64_t{1} << exp;
    };
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto comma = spec.find(',', pos);
        auto term = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto dots = term.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(number(term));
        } else {
            auto a = number(term.substr(0, dots)), b = number(term.substr(dots + 2));
            if (a == 0 || b < a) throw std::invalid_argument("bad grid range '" + std::string(term) + "'");
            for (auto v = a; v <= b && v != 0; v *= 2) out.push_back(v);
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace holotape
