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
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "holotape/run.hpp"

namespace holotape {

/// Update event of one head in one step: layer tau in [0, t-1], head in [0, k-1].
struct Event {
    std::uint64_t tau = 0;
    std::uint32_t head = 0;
    bool operator==(const Event &) const = default;
    auto operator<=>(const Event &) const = default;
};

enum class EdgeKind : std::uint8_t { Control, Data };

inline const char *to_string(EdgeKind e) { return e == EdgeKind::Control ? "control" : "data"; }

struct Edge {
    Event from;
    Event to;
    EdgeKind kind = EdgeKind::Control;
    bool operator==(const Edge &) const = default;
};

/**
 * Events of a run and their causal edges. Vertices are implicit: every
 * (tau, head) with tau < t and head < k. Control edges join consecutive
 * layers completely; a data edge joins the last event that wrote a cell to
 * the next event of the same head reading it.
 */
struct SpacetimeDag {
    std::uint64_t t = 0;
    std::uint32_t k = 0;
    std::vector<Edge> edges; // sorted by (from, to, kind)

    std::vector<Event> vertices() const {
        std::vector<Event> out;
        out.reserve(t * k);
        for (std::uint64_t tau = 0; tau < t; ++tau) {
            for (std::uint32_t i = 0; i < k; ++i) out.push_back({tau, i});
        }
        return out;
    }

    bool operator==(const SpacetimeDag &) const = default;
};

inline SpacetimeDag build_dag(const RunRecord &run) {
    if (run.steps() == 0) throw std::invalid_argument("spacetime graph needs at least one step");
    SpacetimeDag g;
    g.t = run.steps();
    g.k = static_cast<std::uint32_t>(run.machine().tapes());
    // last event to touch each cell, per tape
    std::vector<std::unordered_map<std::int64_t, std::uint64_t>> last(g.k);
    for (std::uint64_t tau = 0; tau < g.t; ++tau) {
        std::vector<Edge> data;
        for (std::uint32_t i = 0; i < g.k; ++i) {
            auto cell = run.head(tau, i);
            auto it = last[i].find(cell);
            if (it != last[i].end()) data.push_back({{it->second, i}, {tau, i}, EdgeKind::Data});
            last[i][cell] = tau;
        }
        // edges are emitted grouped by target layer, then sorted below
        for (auto &e : data) g.edges.push_back(e);
        if (tau + 1 < g.t) {
            for (std::uint32_t i = 0; i < g.k; ++i) {
                for (std::uint32_t j = 0; j < g.k; ++j) {
                    g.edges.push_back({{tau, i}, {tau + 1, j}, EdgeKind::Control});
                }
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge &a, const Edge &b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return a.kind < b.kind;
    });
    return g;
}

inline std::uint64_t volume(const SpacetimeDag &g) { return g.t * g.k; }

inline nlohmann::json dag_to_json(const SpacetimeDag &g) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto &v : g.vertices()) vs.push_back({{"tau", v.tau}, {"head", v.head}});
    nlohmann::json es = nlohmann::json::array();
    for (const auto &e : g.edges) {
        es.push_back({{"from", {e.from.tau, e.from.head}},
                      {"to", {e.to.tau, e.to.head}},
                      {"kind", to_string(e.kind)}});
    }
    return {{"t", g.t}, {"k", g.k}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

/// Inverse of dag_to_json. Rejects documents whose vertex list is not the regular k*t grid.
inline SpacetimeDag dag_from_json(const nlohmann::json &j) {
    try {
        SpacetimeDag g;
        g.t = j.at("t").get<std::uint64_t>();
        g.k = j.at("k").get<std::uint32_t>();
        const auto &vs = j.at("vertices");
        if (vs.size() != g.t * g.k) throw DecodeError("vertex count is not k*t");
        std::size_t n = 0;
        for (const auto &v : g.vertices()) {
            const auto &x = vs.at(n++);
            if (x.at("tau").get<std::uint64_t>() != v.tau || x.at("head").get<std::uint32_t>() != v.head) {
                throw DecodeError("vertex list out of canonical order");
            }
        }
        for (const auto &e : j.at("edges")) {
            auto kind = e.at("kind").get<std::string>();
            if (kind != "control" && kind != "data") throw DecodeError("unknown edge kind " + kind);
            g.edges.push_back({{e.at("from").at(0).get<std::uint64_t>(), e.at("from").at(1).get<std::uint32_t>()},
                               {e.at("to").at(0).get<std::uint64_t>(), e.at("to").at(1).get<std::uint32_t>()},
                               kind == "control" ? EdgeKind::Control : EdgeKind::Data});
        }
        return g;
    } catch (const nlohmann::json::exception &ex) {
        throw DecodeError(std::string("malformed graph document: ") + ex.what());
    }
}

inline std::string dag_to_dot(const SpacetimeDag &g) {
    std::ostringstream os;
    auto id = [](const Event &v) { return "v_" + std::to_string(v.tau) + "_" + std::to_string(v.head); };
    os << "digraph spacetime {\n";
    for (const auto &v : g.vertices()) os << "  " << id(v) << ";\n";
    for (const auto &e : g.edges) {
        os << "  " << id(e.from) << " -> " << id(e.to);
        if (e.kind == EdgeKind::Data) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

/// "json" or "dot".
inline std::string export_dag(const SpacetimeDag &g, std::string_view format) {
    if (format == "json") return dag_to_json(g).dump(2) + "\n";
    if (format == "dot") return dag_to_dot(g);
    throw std::invalid_argument("unknown graph format '" + std::string(format) + "'");
}

} // namespace holotape
