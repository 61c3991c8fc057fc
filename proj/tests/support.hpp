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

// Test-only oracles and generators. Nothing here reuses library logic beyond
// the public data types, so the checks stay independent of the code under test.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "holotape/holotape.hpp"

namespace testing_support {

namespace ht = holotape;

#ifndef HOLOTAPE_MACHINES_DIR
#define HOLOTAPE_MACHINES_DIR "machines"
#endif

inline std::string machine_path(const std::string &name) {
    return std::string(HOLOTAPE_MACHINES_DIR) + "/" + name + ".tm";
}

inline std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ht::MachineSpec bundled(const std::string &name) { return ht::parse_machine(slurp(machine_path(name))); }

inline const std::vector<std::string> &bundled_names() {
    static const std::vector<std::string> names = {"writer2", "counter", "palin", "sweep8"};
    return names;
}

/**
 * Second interpreter: reads the canonical text form itself, keeps tapes as
 * std::map keyed by cell and works on symbol and state names throughout.
 */
class ReferenceMachine {
  public:
    explicit ReferenceMachine(const std::string &text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "tapes") ls >> k_;
            if (key == "blank") ls >> blank_;
            if (key == "start") ls >> start_;
            if (key == "delta") {
                std::string q, w;
                ls >> q;
                std::vector<std::string> read(k_);
                for (auto &r : read) ls >> r;
                ls >> w; // arrow
                Rule rule;
                ls >> rule.next;
                rule.write.resize(k_);
                for (auto &x : rule.write) ls >> x;
                for (std::size_t i = 0; i < k_; ++i) {
                    std::string mv;
                    ls >> mv;
                    rule.move.push_back(mv == "L" ? -1 : mv == "R" ? 1 : 0);
                }
                rules_[{q, read}] = rule;
            }
        }
    }

    struct State {
        std::string q;
        std::vector<std::int64_t> heads;
        std::vector<std::map<std::int64_t, std::string>> tapes;
    };

    State initial(const std::vector<std::string> &input) const {
        State s{start_, std::vector<std::int64_t>(k_, 0), std::vector<std::map<std::int64_t, std::string>>(k_)};
        for (std::size_t i = 0; i < input.size(); ++i) s.tapes[0][static_cast<std::int64_t>(i)] = input[i];
        return s;
    }

    std::string cell(const State &s, std::size_t tape, std::int64_t c) const {
        auto it = s.tapes[tape].find(c);
        return it == s.tapes[tape].end() ? blank_ : it->second;
    }

    /// false when no rule applies (halting state).
    bool step(State &s) const {
        std::vector<std::string> read;
        for (std::size_t i = 0; i < k_; ++i) read.push_back(cell(s, i, s.heads[i]));
        auto it = rules_.find({s.q, read});
        if (it == rules_.end()) return false;
        for (std::size_t i = 0; i < k_; ++i) {
            s.tapes[i][s.heads[i]] = it->second.write[i];
            s.heads[i] += it->second.move[i];
        }
        s.q = it->second.next;
        return true;
    }

    std::size_t tapes() const { return k_; }

  private:
    struct Rule {
        std::string next;
        std::vector<std::string> write;
        std::vector<int> move;
    };
    std::size_t k_ = 1;
    std::string blank_ = "_";
    std::string start_;
    std::map<std::pair<std::string, std::vector<std::string>>, Rule> rules_;
};

/// Library configuration equals the reference state on every cell of the library window.
inline bool agrees(const ht::MachineSpec &m, const ht::Configuration &c, const ReferenceMachine &ref,
                   const ReferenceMachine::State &s) {
    if (m.states()[c.state] != s.q) return false;
    for (std::size_t i = 0; i < c.tapes.size(); ++i) {
        const auto &t = c.tapes[i];
        if (t.head != s.heads[i]) return false;
        for (auto cell = t.span().lo; cell <= t.span().hi; ++cell) {
            if (m.symbols()[t.at(cell)] != ref.cell(s, i, cell)) return false;
        }
    }
    return true;
}

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng &rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// Random total machine with k tapes, a small alphabet and a few states.
inline ht::MachineSpec random_machine(Rng &rng, std::size_t k = 0) {
    if (k == 0) k = uniform(rng, 1, 2);
    std::size_t nsym = uniform(rng, 2, 3);
    std::size_t nstates = uniform(rng, 1, 4);
    std::vector<std::string> syms = {"_", "a", "b"};
    syms.resize(nsym);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < nstates; ++i) states.push_back("q" + std::to_string(i));
    auto all_states = states;
    all_states.push_back("acc");
    all_states.push_back("rej");
    ht::MachineBuilder b("rnd", k);
    b.work_alphabet(syms).input_alphabet({"a"}).blank("_").states(all_states).start("q0").accept("acc").reject("rej");
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= nsym;
    for (const auto &q : states) {
        for (std::size_t c = 0; c < combos; ++c) {
            std::vector<std::string> read(k), write(k);
            std::vector<ht::Move> moves(k);
            auto x = c;
            for (std::size_t i = k; i-- > 0;) {
                read[i] = syms[x % nsym];
                x /= nsym;
            }
            for (std::size_t i = 0; i < k; ++i) {
                write[i] = syms[uniform(rng, 0, nsym - 1)];
                moves[i] = static_cast<ht::Move>(static_cast<int>(uniform(rng, 0, 2)) - 1);
            }
            // mostly stay inside the working states so runs are long
            auto r = uniform(rng, 0, 19);
            std::string next = r == 0 ? "acc" : r == 1 ? "rej" : states[uniform(rng, 0, nstates - 1)];
            b.on(q, read, next, write, moves);
        }
    }
    return b.build();
}

inline std::string random_word(Rng &rng, const std::string &letters, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(letters[uniform(rng, 0, letters.size() - 1)]);
    return s;
}

inline ht::Span random_span(Rng &rng) {
    if (uniform(rng, 0, 5) == 0) return ht::Span{};
    auto lo = static_cast<std::int64_t>(uniform(rng, 0, 2000)) - 1000;
    if (uniform(rng, 0, 20) == 0) lo = static_cast<std::int64_t>(uniform(rng, 0, UINT64_MAX >> 2)) - (INT64_MAX >> 3);
    return {lo, lo + static_cast<std::int64_t>(uniform(rng, 0, 12))};
}

inline std::vector<ht::Symbol> random_symbols(Rng &rng, std::size_t n) {
    std::vector<ht::Symbol> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<ht::Symbol>(uniform(rng, 0, 3) == 0 ? uniform(rng, 0, 65535) : uniform(rng, 0, 5)));
    }
    return out;
}

inline ht::IntervalSummary random_summary(Rng &rng) {
    ht::IntervalSummary s;
    s.L = uniform(rng, 1, 1u << 20);
    s.R = s.L + uniform(rng, 0, uniform(rng, 0, 1) ? 10 : UINT32_MAX);
    s.q_in = static_cast<ht::StateId>(uniform(rng, 0, uniform(rng, 0, 1) ? 10 : UINT32_MAX));
    s.q_out = static_cast<ht::StateId>(uniform(rng, 0, 10));
    s.policy = uniform(rng, 0, 1) ? ht::WindowPolicy::Full : ht::WindowPolicy::Boundary;
    auto k = uniform(rng, 1, 3);
    for (std::uint64_t i = 0; i < k; ++i) {
        ht::TapeInterface t;
        t.head_in = static_cast<std::int64_t>(uniform(rng, 0, 400)) - 200;
        t.head_out = static_cast<std::int64_t>(uniform(rng, 0, 400)) - 200;
        t.entry_span = random_span(rng);
        t.entry = random_symbols(rng, t.entry_span.length());
        t.exit_span = uniform(rng, 0, 1) ? t.entry_span : random_span(rng);
        t.exit = random_symbols(rng, t.exit_span.length());
        s.tapes.push_back(std::move(t));
    }
    return s;
}

inline ht::Configuration random_configuration(Rng &rng) {
    ht::Configuration c;
    c.time = uniform(rng, 0, uniform(rng, 0, 1) ? 100 : UINT64_MAX);
    c.state = static_cast<ht::StateId>(uniform(rng, 0, 20));
    auto k = uniform(rng, 1, 3);
    for (std::uint64_t i = 0; i < k; ++i) {
        ht::Tape t;
        t.lo = static_cast<std::int64_t>(uniform(rng, 0, 200)) - 100;
        if (uniform(rng, 0, 30) == 0) t.lo = INT64_MIN + static_cast<std::int64_t>(uniform(rng, 0, 5));
        t.cells = random_symbols(rng, uniform(rng, 1, 16));
        t.head = t.lo + static_cast<std::int64_t>(uniform(rng, 0, t.cells.size() - 1));
        c.tapes.push_back(std::move(t));
    }
    return c;
}

/// Per-block visited spans recomputed from materialized configurations (not from the head log).
inline std::vector<std::vector<ht::Span>> brute_force_spans(const std::vector<ht::Configuration> &history,
                                                            std::uint64_t b) {
    std::vector<std::vector<ht::Span>> out;
    const auto t = history.size() - 1;
    for (std::uint64_t first = 1; first <= t; first += b) {
        auto last = std::min(first + b - 1, t);
        std::vector<ht::Span> spans(history[0].tapes.size());
        for (auto tau = first - 1; tau <= last; ++tau) {
            for (std::size_t i = 0; i < spans.size(); ++i) {
                auto h = history[tau].tapes[i].head;
                if (spans[i].empty()) {
                    spans[i] = {h, h};
                } else {
                    spans[i].lo = std::min(spans[i].lo, h);
                    spans[i].hi = std::max(spans[i].hi, h);
                }
            }
        }
        out.push_back(spans);
    }
    return out;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// ceil(log2 n) by bit inspection, n >= 1.
inline std::uint32_t ceil_log2_bits(std::uint64_t n) {
    std::uint32_t floor = 63 - static_cast<std::uint32_t>(__builtin_clzll(n));
    return floor + ((n & (n - 1)) ? 1 : 0);
}

} // namespace testing_support
