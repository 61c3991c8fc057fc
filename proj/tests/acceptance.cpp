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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace holotape;
using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Every test ledger row ever produced, checked by criterion 5.
std::uint64_t g_rows_checked = 0;
std::uint64_t g_rows_broken = 0;

void absorb(const ScreenLedger &led) {
    for (const auto &r : led.rows()) {
        ++g_rows_checked;
        if (!(r.s_screen <= r.s_total())) ++g_rows_broken;
    }
}

std::vector<Span> hull(const std::vector<Configuration> &hist, std::uint64_t from, std::uint64_t to) {
    std::vector<Span> out(hist[from].tapes.size());
    for (auto tau = from; tau <= to; ++tau) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i].include(hist[tau].tapes[i].head);
    }
    return out;
}

std::uint64_t isqrt_up(std::uint64_t t) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(t)));
    while (r * r < t) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= t) --r;
    return r;
}

std::string fmt(double x, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

// 1. streaming emissions equal the oracle history exactly
Outcome oracle_equivalence() {
    Outcome o;
    std::uint64_t total = 0, equal = 0;
    for (const auto &name : bundled_names()) {
        auto m = bundled(name);
        for (std::uint64_t t : {256ull, 1024ull, 4096ull}) {
            auto in = parse_input(m, samples::default_input(m, t));
            auto r = run(m, in, t);
            auto hist = r.history();
            ScreenLedger led(true);
            std::uint64_t seen = 0, good = 0, expect_tau = 1;
            holo_run(m, in, t, {isqrt_up(t), 2, &led}, [&](const Emission &e) {
                ++seen;
                if (e.tau == expect_tau++ && e.tau <= r.steps() && e.configuration() == hist[e.tau]) ++good;
            });
            absorb(led);
            total += r.steps();
            equal += good;
            if (seen != r.steps() || good != r.steps()) {
                o.pass = false;
                o.detail += " " + name + "@" + std::to_string(t);
            }
        }
    }
    o.detail = std::to_string(equal) + "/" + std::to_string(total) + " configurations equal" +
               (o.pass ? "" : "; mismatches:" + o.detail);
    return o;
}

// 2. tau <-> (leaf, offset) is a bijection and each pair is visited once
Outcome projective_duality() {
    Outcome o;
    const std::uint64_t tmax = 10000;
    std::uint64_t pairs = 0, sims = 0;
    auto sweeper = samples::sweep(tmax);
    std::vector<std::uint32_t> hits;
    for (std::uint64_t t = 1; t <= tmax && o.pass; ++t) {
        for (std::uint64_t b : {std::uint64_t{1}, std::uint64_t{3}, isqrt_up(t), t}) {
            auto d = decompose(t, b);
            const auto T = ceil_div(t, b);
            if (d.count() != T) o.pass = false;
            // every tau maps into range and back; the pair count equals t, so the map is onto
            std::uint64_t slots = 0;
            for (std::uint64_t leaf = 1; leaf <= T; ++leaf) slots += std::min(b, t - (leaf - 1) * b);
            if (slots != t) o.pass = false;
            for (std::uint64_t tau = 1; tau <= t; ++tau) {
                auto p = time_to_leaf(d, tau);
                if (p.leaf != (tau - 1) / b + 1 || p.offset != (tau - 1) % b || leaf_to_time(d, p) != tau) {
                    o.pass = false;
                }
            }
            pairs += t;
            hits.assign(t, 0);
            bool order_ok = true;
            std::uint64_t next = 1;
            holo_run(sweeper, {}, t, {b, 2, nullptr}, [&](const Emission &e) {
                if (e.tau != next++) order_ok = false;
                auto slot = (e.leaf - 1) * b + e.offset;
                if (slot < t) ++hits[slot];
                else order_ok = false;
            });
            for (auto h : hits) order_ok = order_ok && h == 1;
            if (!order_ok) {
                o.pass = false;
                o.detail = "sweep t=" + std::to_string(t) + " b=" + std::to_string(b) + " ";
            }
            ++sims;
        }
    }
    // multi-cell machines on window sizes that cover their working region
    for (auto name : {"counter", "palin"}) {
        auto m = bundled(name);
        for (std::uint64_t t = 100; t <= tmax; t += 97) {
            auto in = parse_input(m, samples::default_input(m, t));
            for (std::uint64_t b : {isqrt_up(t), t}) {
                hits.assign(t, 0);
                std::uint64_t next = 1;
                bool ok = true;
                try {
                    holo_run(m, in, t, {b, 2, nullptr}, [&](const Emission &e) {
                        ok = ok && e.tau == next++ && leaf_to_time(decompose(t, b), {e.leaf, e.offset}) == e.tau;
                        ++hits[e.tau - 1];
                    });
                } catch (const std::exception &e) {
                    ok = false;
                }
                for (auto h : hits) ok = ok && h == 1;
                if (!ok) {
                    o.pass = false;
                    o.detail += std::string(name) + " t=" + std::to_string(t) + " b=" + std::to_string(b) + " ";
                }
                ++sims;
            }
        }
    }
    o.detail += std::to_string(pairs) + " (tau, leaf, offset) triples over t<=10^4, b in {1,3,ceil(sqrt t),t}; " +
                std::to_string(sims) + " streaming runs each captured every pair once";
    return o;
}

struct GridRun {
    std::string machine;
    ScalingReport report;
};

std::vector<GridRun> &grid_runs() {
    static std::vector<GridRun> runs;
    return runs;
}

// 3. log-log exponent of max_screen against t
Outcome area_law() {
    Outcome o;
    const auto grid = parse_grid("2^10..2^18");
    for (auto name : {"counter", "palin"}) {
        auto m = bundled(name);
        auto rep = area_law_study(m, default_family(m), grid, sqrt_block_rule, 2);
        if (rep.rows.size() < 5 || !rep.fit) {
            o.pass = false;
            o.detail += std::string(name) + ": no fit (" + rep.fit_note + ") ";
            continue;
        }
        double first = 0, worst = 0;
        for (const auto &r : rep.rows) {
            if (!r.ok()) {
                o.pass = false;
                o.detail += std::string(name) + " t=" + std::to_string(r.t) + ": " + r.error + " ";
                continue;
            }
            double ratio = r.max_screen / (std::sqrt(double(r.t)) * std::log2(double(r.t)));
            if (first == 0) first = ratio;
            worst = std::max(worst, ratio);
        }
        bool band = rep.fit->exponent >= 0.35 && rep.fit->exponent <= 0.70;
        bool bounded = worst <= first;
        o.pass = o.pass && band && bounded;
        o.detail += std::string(name) + " exponent " + fmt(rep.fit->exponent) + (band ? "" : " (out of band)") +
                    ", screen/(sqrt t log2 t) max " + fmt(worst) + " vs " + fmt(first) + " at t=2^10" +
                    (bounded ? "" : " (grows)") + "; ";
        grid_runs().push_back({name, std::move(rep)});
    }
    o.detail += std::to_string(grid.size()) + " grid points 2^10..2^18";
    return o;
}

// 4. one c_book, fitted at the smallest grid point, bounds bookkeeping everywhere
Outcome bookkeeping_bound() {
    Outcome o;
    if (grid_runs().size() != 2) return {false, "area-law runs missing"};
    auto lg = [](std::uint64_t T) { return std::max<std::uint64_t>(1, ceil_log2_bits(T)); };
    double c_book = 0;
    for (const auto &g : grid_runs()) {
        const auto &r = g.report.rows.front();
        c_book = std::max(c_book, double(r.max_book) / double(lg(r.T)));
    }
    double slack = 1e300;
    for (const auto &g : grid_runs()) {
        for (const auto &r : g.report.rows) {
            auto bound = c_book * double(lg(r.T));
            if (&r != &g.report.rows.front()) slack = std::min(slack, bound / double(r.max_book));
            if (!(double(r.max_book) <= bound)) {
                o.pass = false;
                o.detail += g.machine + " t=" + std::to_string(r.t) + " book " + std::to_string(r.max_book) +
                            " > " + fmt(bound) + "; ";
            }
        }
    }
    o.detail += "c_book = " + fmt(c_book, 6) + " cells per tree level; tightest bound/observed after the fitting point = " + fmt(slack);
    return o;
}

// 5. screen never exceeds total, over every recorded ledger row
Outcome screen_total_chain() {
    // re-run the area-law grid with per-step rows so every step of those runs is inspected too
    Outcome o;
    for (const auto &g : grid_runs()) {
        auto m = bundled(g.machine);
        for (const auto &row : g.report.rows) {
            ScreenLedger led(true);
            auto in = parse_input(m, samples::default_input(m, row.t));
            holo_run(m, in, row.t, {row.b, 2, &led});
            absorb(led);
            if (led.max_screen() != row.max_screen || !led.audits_agree()) {
                o.pass = false;
                o.detail += g.machine + " t=" + std::to_string(row.t) + " rerun disagrees; ";
            }
        }
    }
    o.pass = o.pass && g_rows_checked > 0 && g_rows_broken == 0;
    o.detail += std::to_string(g_rows_checked - g_rows_broken) + "/" + std::to_string(g_rows_checked) +
                " ledger rows with s_screen <= s_total";
    return o;
}

std::vector<Symbol> random_input(Rng &rng, const MachineSpec &m) {
    std::vector<Symbol> letters;
    for (Symbol s = 0; s < m.alphabet_size(); ++s) {
        if (m.in_input_alphabet(s)) letters.push_back(s);
    }
    std::vector<Symbol> w;
    if (letters.empty()) return w;
    auto n = uniform(rng, 0, 24);
    for (std::uint64_t i = 0; i < n; ++i) w.push_back(letters[uniform(rng, 0, letters.size() - 1)]);
    // palindromes half the time so the checker also runs to acceptance
    if (uniform(rng, 0, 1)) w.insert(w.end(), w.rbegin(), w.rend());
    return w;
}

// 6. witness programs have fixed length and reproduce the oracle
Outcome witness_constancy() {
    Outcome o;
    Rng rng(0x5eed);
    for (const auto &name : bundled_names()) {
        auto m = bundled(name);
        std::set<std::size_t> point_len, hist_len;
        int cases = 0, good = 0;
        while (cases < 120) {
            auto input = random_input(rng, m);
            auto r = run(m, input, uniform(rng, 1, 600));
            if (r.steps() == 0) continue;
            ++cases;
            auto hist = r.history();
            auto L = uniform(rng, 1, r.steps());
            auto R = uniform(rng, L, r.steps());
            auto tau = uniform(rng, L - 1, R);
            auto s = full_summary(r, {L, R});
            auto pw = build_witness(m, WitnessKind::Pointwise);
            auto hw = build_witness(m, WitnessKind::History);
            point_len.insert(pw.bytes.size());
            hist_len.insert(hw.bytes.size());
            auto want_point = encode_configuration(restrict_to(hist[tau], hull(hist, L - 1, tau), r.initial()));
            std::vector<Configuration> want_hist;
            for (auto x = L - 1; x <= R; ++x) want_hist.push_back(restrict_to(hist[x], hull(hist, L - 1, x), r.initial()));
            bool ok = run_witness(pw, pointwise_conditional(s, tau)) == want_point &&
                      run_witness(hw, encode_summary(s)) == encode_history(want_hist);
            good += ok;
        }
        bool constant = point_len.size() == 1 && hist_len.size() == 1;
        o.pass = o.pass && constant && good == cases;
        o.detail += name + " |p*|=" + std::to_string(*point_len.begin()) + " |p+|=" +
                    std::to_string(*hist_len.begin()) + (constant ? "" : " (varies)") + " " +
                    std::to_string(good) + "/" + std::to_string(cases) + " cases; ";
    }
    o.detail.resize(o.detail.size() - 2);
    return o;
}

// 7. tree depth and coherence of labels with a left-deep fold
Outcome tree_structure() {
    Outcome o;
    const std::uint64_t tmax = 1u << 16;
    // independent recursion: depth(1) = 0, depth(n) = 1 + depth(ceil(n/2))
    std::vector<std::uint32_t> memo(tmax + 1, 0);
    for (std::uint64_t n = 2; n <= tmax; ++n) memo[n] = 1 + memo[(n + 1) / 2];
    std::uint64_t mism = 0;
    for (std::uint64_t T = 1; T <= tmax; ++T) {
        if (tree_depth(T) != ceil_log2_bits(T) || memo[T] != ceil_log2_bits(T)) ++mism;
    }
    for (std::uint64_t T = 1; T <= 4096; ++T) {
        auto tree = build_tree(decompose(T, 1));
        std::uint32_t deepest = 0;
        for (const auto &n : tree.nodes()) deepest = std::max<std::uint32_t>(deepest, n.level);
        if (deepest != ceil_log2_bits(T) || tree.depth() != deepest) ++mism;
    }
    Rng rng(77);
    int folds = 0, folds_ok = 0;
    while (folds < 50) {
        MachineSpec m = uniform(rng, 0, 1) ? bundled(bundled_names()[uniform(rng, 0, 3)]) : random_machine(rng);
        auto r = run(m, random_input(rng, m), uniform(rng, 1, 3000));
        if (r.steps() == 0) continue;
        ++folds;
        auto b = uniform(rng, 1, std::max<std::uint64_t>(1, r.steps() / 2));
        auto d = decompose(r.steps(), b);
        auto tree = label_tree(build_tree(d), r, 2, WindowPolicy::Full);
        std::vector<IntervalSummary> leaves;
        for (std::uint64_t k = 1; k <= d.count(); ++k) leaves.push_back(leaf_summary(r, d, k, 2));
        folds_ok += encode_summary(tree.label(0)) == encode_summary(fold_left(leaves));
    }
    o.pass = mism == 0 && folds_ok == folds;
    o.detail = "depth = ceil(log2 T) for T <= 65536 (" + std::to_string(mism) + " mismatches); root equals fold " +
               std::to_string(folds_ok) + "/" + std::to_string(folds) + " bytewise";
    return o;
}

// 8. codecs invert and self-delimit
Outcome encoding_round_trips() {
    Outcome o;
    Rng rng(2026);
    const int n = 10000;
    Bytes cat_s, cat_c, cat_h;
    std::vector<IntervalSummary> ss;
    std::vector<Configuration> cs;
    std::vector<std::vector<Configuration>> hs;
    int bad = 0;
    for (int i = 0; i < n; ++i) {
        ss.push_back(random_summary(rng));
        cs.push_back(random_configuration(rng));
        std::vector<Configuration> h;
        for (auto j = uniform(rng, 0, 4); j > 0; --j) h.push_back(random_configuration(rng));
        hs.push_back(std::move(h));
        auto es = encode_summary(ss.back());
        auto ec = encode_configuration(cs.back());
        auto eh = encode_history(hs.back());
        bad += !(decode_summary(es) == ss.back());
        bad += !(decode_configuration(ec) == cs.back());
        bad += !(decode_history(eh) == hs.back());
        cat_s.insert(cat_s.end(), es.begin(), es.end());
        cat_c.insert(cat_c.end(), ec.begin(), ec.end());
        cat_h.insert(cat_h.end(), eh.begin(), eh.end());
    }
    int cat_bad = 0;
    try {
        ByteReader rs(cat_s), rc(cat_c), rh(cat_h);
        for (int i = 0; i < n; ++i) {
            cat_bad += !(decode_summary(rs) == ss[i]);
            cat_bad += !(decode_configuration(rc) == cs[i]);
            cat_bad += !(decode_history(rh) == hs[i]);
        }
        rs.expect_end();
        rc.expect_end();
        rh.expect_end();
    } catch (const DecodeError &e) {
        cat_bad = -1;
    }
    o.pass = bad == 0 && cat_bad == 0;
    o.detail = std::to_string(3 * n - bad) + "/" + std::to_string(3 * n) +
               " round-trips exact; concatenated streams of " + std::to_string(n) + " records " +
               (cat_bad == 0 ? "decode back exactly" : "FAILED to split");
    return o;
}

// 9. block checker against a brute-force scan of materialized configurations
Outcome block_checker() {
    Outcome o;
    std::uint64_t checks = 0, agree = 0, fails_seen = 0, passes_seen = 0;
    for (const auto &name : bundled_names()) {
        auto m = bundled(name);
        auto r = run(m, samples::default_input(m, 1024), 1024);
        auto hist = r.history();
        const auto t = r.steps();
        std::set<std::uint64_t> grid = {1, 2, 3, 5, 8, 13, 32, 64, t / 4, t / 2, t};
        for (auto b : grid) {
            if (b == 0) continue;
            auto spans = brute_force_spans(hist, b);
            for (std::uint64_t c : {1ull, 2ull, 4ull}) {
                ++checks;
                auto rep = check_block_respecting(r, b, c);
                bool ok = rep.blocks.size() == spans.size();
                bool all = true;
                for (std::size_t k = 0; ok && k < spans.size(); ++k) {
                    bool pass = true;
                    for (const auto &s : spans[k]) pass = pass && s.length() <= b * c;
                    ok = rep.blocks[k].spans == spans[k] && rep.blocks[k].pass == pass;
                    all = all && pass;
                }
                ok = ok && rep.verdict() == all;
                agree += ok;
                (all ? passes_seen : fails_seen) += 1;
            }
        }
    }
    o.pass = agree == checks && fails_seen > 0 && passes_seen > 0;
    o.detail = std::to_string(agree) + "/" + std::to_string(checks) + " (machine, b, c_int) verdicts agree (" +
               std::to_string(passes_seen) + " respecting, " + std::to_string(fails_seen) + " violating)";
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> check;
    };
    // order matters: 4 and 5 reuse the runs made by 3, 5 also reads the rows kept by 1
    std::vector<Criterion> all = {
        {"oracle-equivalence", oracle_equivalence}, {"projective-duality", projective_duality},
        {"area-law", area_law},                     {"bookkeeping-bound", bookkeeping_bound},
        {"screen-total-chain", screen_total_chain}, {"witness-constancy", witness_constancy},
        {"tree-structure", tree_structure},         {"encoding-round-trips", encoding_round_trips},
        {"block-checker", block_checker},
    };
    int failures = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << all[i].name << ": " << o.detail << " ("
                  << fmt(secs, 3) << " s)" << std::endl;
    }
    return failures;
}
