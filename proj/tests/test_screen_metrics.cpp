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

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace holotape;
using namespace testing_support;

TEST(Ledger, CellsPerWord) {
    EXPECT_EQ(cells_per_word(1), 64u);
    EXPECT_EQ(cells_per_word(2), 64u);
    EXPECT_EQ(cells_per_word(3), 41u);
    EXPECT_EQ(cells_per_word(4), 32u);
    EXPECT_EQ(cells_per_word(256), 8u);
    EXPECT_EQ(cells_per_word(257), 8u);
}

TEST(Ledger, MeterHandles) {
    Meter m;
    {
        MeterHandle a(m, 5);
        MeterHandle b(m, 7);
        EXPECT_EQ(m.live(), 12);
        a.resize(2);
        EXPECT_EQ(m.live(), 9);
        MeterHandle c(std::move(b));
        EXPECT_EQ(m.live(), 9);
        a = std::move(c);
        EXPECT_EQ(m.live(), 7);
    }
    EXPECT_EQ(m.live(), 0);
    EXPECT_EQ(m.peak(), 12);
}

TEST(Ledger, Writer2ByHand) {
    // one tape, |alphabet| = 2 so 64 cells per word; b = 1, c_int = 2 gives a 2-cell window
    ScreenLedger led(true);
    holo_run(samples::writer2(), {}, 10, {1, 2, &led});
    ASSERT_EQ(led.rows().size(), 2u);
    const auto &r1 = led.rows()[0];
    const auto &r2 = led.rows()[1];
    EXPECT_EQ(r1.tau, 1u);
    EXPECT_EQ(r1.s_screen, 2u);
    // fixed 20 words, two open frames of 4 words
    EXPECT_EQ(r1.s_book, 64u * (20 + 8));
    EXPECT_EQ(r2.tau, 2u);
    // block 1 visited cells 0 and 1; their entry symbols are now retained
    EXPECT_EQ(r2.s_screen, 4u);
    // plus one pending left digest of 10 words
    EXPECT_EQ(r2.s_book, 64u * (20 + 8 + 10));
    EXPECT_EQ(led.max_screen(), 4u);
    EXPECT_EQ(led.max_total(), r2.s_total());
    EXPECT_EQ(led.audits(), 2u);
    EXPECT_TRUE(led.audits_agree());
    EXPECT_TRUE(led.chain_holds());
}

TEST(Ledger, RowsAreConsistent) {
    for (const auto &name : bundled_names()) {
        auto m = bundled(name);
        auto in = parse_input(m, samples::default_input(m, 3000));
        ScreenLedger led(true);
        auto b = sqrt_block_rule(3000);
        auto res = holo_run(m, in, 3000, {b, 2, &led});
        ASSERT_EQ(led.rows().size(), res.steps);
        std::uint64_t ms = 0, mb = 0, mt = 0;
        for (std::size_t i = 0; i < led.rows().size(); ++i) {
            const auto &r = led.rows()[i];
            ASSERT_EQ(r.tau, i + 1);
            ASSERT_LE(r.s_screen, r.s_total());
            // window never exceeds its reservation, retained entry never exceeds one block window
            ASSERT_LE(r.s_screen, 2 * m.tapes() * 2 * b);
            ms = std::max(ms, r.s_screen);
            mb = std::max(mb, r.s_book);
            mt = std::max(mt, r.s_total());
        }
        EXPECT_EQ(ms, led.max_screen());
        EXPECT_EQ(mb, led.max_book());
        EXPECT_EQ(mt, led.max_total());
        EXPECT_EQ(led.audits(), res.steps);
        EXPECT_TRUE(led.audits_agree()) << name;
    }
}

TEST(Ledger, ChainFlagTracksRows) {
    ScreenLedger led;
    led.record(1, 5, 0);
    EXPECT_TRUE(led.chain_holds());
    led.audit(true);
    led.audit(false);
    EXPECT_FALSE(led.audits_agree());
    EXPECT_EQ(led.audits(), 2u);
    EXPECT_TRUE(led.rows().empty());
}

TEST(Fit, RecoversKnownExponent) {
    std::vector<std::pair<double, double>> pts;
    for (int e = 4; e <= 12; ++e) {
        double x = std::ldexp(1.0, e);
        pts.emplace_back(x, 3.0 * std::pow(x, 0.5));
    }
    auto f = fit_power_law(pts);
    EXPECT_NEAR(f.exponent, 0.5, 1e-12);
    EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
    EXPECT_EQ(f.points, 9u);
    pts.resize(3);
    EXPECT_THROW(fit_power_law(pts), std::invalid_argument);
    EXPECT_THROW(fit_power_law({{1, 1}, {1, 2}, {1, 3}, {1, 4}}), std::invalid_argument);
    EXPECT_THROW(fit_power_law({{1, 1}, {2, 0}, {3, 3}, {4, 4}}), std::invalid_argument);
}

TEST(Study, SmallGrid) {
    auto m = bundled("counter");
    auto rep = area_law_study(m, default_family(m), parse_grid("2^6..2^11"), sqrt_block_rule, 2);
    EXPECT_EQ(rep.machine, "counter");
    ASSERT_EQ(rep.rows.size(), 6u);
    ASSERT_TRUE(rep.fit);
    for (const auto &r : rep.rows) {
        EXPECT_TRUE(r.ok()) << r.error;
        EXPECT_EQ(r.volume, r.k * r.t);
        EXPECT_EQ(r.T, ceil_div(r.t, r.b));
        EXPECT_EQ(r.depth, ceil_log2_bits(r.T));
        EXPECT_TRUE(r.chain_holds);
        EXPECT_TRUE(r.audits_agree);
    }
    auto vs = volume_vs_screen(rep);
    ASSERT_EQ(vs.size(), 6u);
    EXPECT_DOUBLE_EQ(vs[0].ratio, double(vs[0].max_screen) / std::sqrt(double(vs[0].volume)));
    EXPECT_TRUE(volume_vs_screen(ScalingReport{}).empty());

    auto csv = scaling_csv({rep});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "machine,t,b,T,k,volume,max_screen,max_book,max_total,exponent_fit,residual");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    auto svg = scaling_svg({rep});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    std::size_t circles = 0;
    for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
    EXPECT_EQ(circles, 6u);
}

TEST(Study, FailingPointIsRecorded) {
    auto m = samples::sweep(64);
    auto rep = area_law_study(m, [](std::uint64_t) { return std::vector<Symbol>{}; }, {16, 32, 64},
                              [](std::uint64_t) { return 4; }, 1);
    for (const auto &r : rep.rows) EXPECT_FALSE(r.ok());
    EXPECT_FALSE(rep.fit);
    EXPECT_FALSE(rep.fit_note.empty());
    EXPECT_EQ(scaling_csv({rep}).find('\n') + 1, scaling_csv({rep}).size());
}

TEST(Grid, Parse) {
    EXPECT_EQ(parse_grid("2^10..2^13"), (std::vector<std::uint64_t>{1024, 2048, 4096, 8192}));
    EXPECT_EQ(parse_grid("5,2^3,100"), (std::vector<std::uint64_t>{5, 8, 100}));
    EXPECT_EQ(parse_grid("7"), (std::vector<std::uint64_t>{7}));
    for (auto bad : {"", "x", "3^4", "2^10..2^9", "1,,2", "2^99"}) {
        EXPECT_THROW(parse_grid(bad), std::invalid_argument) << bad;
    }
}

TEST(Study, StationaryHeadScalesWithWindowOnly) {
    MachineBuilder b("still", 1);
    b.work_alphabet({"_", "1"}).input_alphabet({"1"}).blank("_").states({"q", "acc", "rej"}).start("q").accept("acc").reject("rej");
    b.on("q", {"_"}, "q", {"1"}, {Move::Stay});
    b.on("q", {"1"}, "q", {"_"}, {Move::Stay});
    auto m = b.build();
    auto rep = area_law_study(m, [](std::uint64_t) { return std::vector<Symbol>{}; }, parse_grid("2^6..2^14"),
                              sqrt_block_rule, 2);
    for (const auto &r : rep.rows) {
        ASSERT_TRUE(r.ok());
        // the reserved window plus block 1's single retained cell
        EXPECT_EQ(r.max_screen, 2 * r.b + 1);
    }
    ASSERT_TRUE(rep.fit);
    EXPECT_NEAR(rep.fit->exponent, 0.5, 0.05);
}
