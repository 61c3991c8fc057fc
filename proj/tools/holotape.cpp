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

// holotape command-line tool.
//
// Exit codes: 0 success, 2 usage/IO/parse errors, 3 model violations
// (run not block-respecting, window escape), 4 internal invariant breaches
// (incompatible digests, verification mismatch).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "holotape/holotape.hpp"

namespace ht = holotape;

namespace {

constexpr int kUsage = 2;
constexpr int kModel = 3;
constexpr int kInternal = 4;

struct Failure {
    int code;
    std::string message;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kUsage, "cannot read " + path};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string &path, const std::string &data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw Failure{kUsage, "cannot write " + path};
}

void write_file(const std::string &path, const ht::Bytes &data) {
    write_file(path, std::string(data.begin(), data.end()));
}

ht::MachineSpec load_machine(const std::string &path) {
    auto text = read_file(path);
    try {
        return ht::parse_machine(text);
    } catch (const ht::Error &e) {
        throw Failure{kUsage, path + ": " + e.what()};
    }
}

// Explicit --input wins; otherwise the machine's bundled input family for t steps.
std::vector<ht::Symbol> resolve_input(const ht::MachineSpec &m, const std::optional<std::string> &input,
                                      std::uint64_t t) {
    return ht::parse_input(m, input ? *input : ht::samples::default_input(m, t));
}

std::uint64_t block_size(std::optional<std::uint64_t> b, std::uint64_t t) {
    return b ? *b : ht::sqrt_block_rule(t);
}

std::string format_configuration(const ht::MachineSpec &m, const ht::Configuration &c) {
    std::ostringstream os;
    os << "time=" << c.time << " state=" << m.states().at(c.state) << "\n";
    for (std::size_t i = 0; i < c.tapes.size(); ++i) {
        const auto &t = c.tapes[i];
        auto span = t.span();
        os << "tape " << i << ": head=" << t.head << " window=[" << span.lo << "," << span.hi << "] ";
        for (auto cell = span.lo; cell <= span.hi; ++cell) {
            const auto &sym = m.symbols().at(t.at(cell));
            if (cell == t.head) {
                os << '[' << sym << ']';
            } else {
                os << sym;
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string hash_hex(const ht::Bytes &bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ht::fnv1a(bytes)));
    return buf;
}

// Shared flags for commands that simulate t steps.
struct RunFlags {
    std::string machine;
    std::optional<std::string> input;
    std::uint64_t t = 0;
    std::optional<std::uint64_t> b;
    std::uint64_t c_int = 2;

    void attach(CLI::App *sub, bool with_block = true) {
        sub->add_option("machine", machine, "machine definition file")->required();
        sub->add_option("--input", input, "input word (default: the machine's bundled input family)");
        sub->add_option("--t", t, "number of steps")->required();
        if (with_block) {
            sub->add_option("--b", b, "block size (default ceil(sqrt(t)))");
            sub->add_option("--c-int", c_int, "window constant")->check(CLI::PositiveNumber);
        }
    }
};

int cmd_run(const std::string &path, const std::string &input, std::uint64_t max_steps,
            const std::optional<std::string> &emit) {
    auto m = load_machine(path);
    auto r = ht::run(m, input, max_steps);
    std::cout << "t=" << r.steps() << " " << ht::to_string(r.halted()) << "\n";
    std::cout << "final state " << m.states()[r.final_configuration().state] << "\n";
    if (emit) {
        ht::HistoryWriter w(r.steps() + 1);
        for (auto cur = r.cursor();; cur.next()) {
            w.add(cur.current());
            if (cur.done()) break;
        }
        write_file(*emit, std::move(w).finish());
    }
    return 0;
}

int cmd_simulate(const RunFlags &f, bool verify, const std::optional<std::string> &ledger_csv) {
    auto m = load_machine(f.machine);
    auto input = resolve_input(m, f.input, f.t);
    auto b = block_size(f.b, f.t);
    ht::ScreenLedger ledger(ledger_csv.has_value());
    std::optional<ht::RunRecord> oracle;
    std::optional<ht::RunRecord::Cursor> cursor;
    if (verify) {
        oracle.emplace(ht::run(m, input, f.t));
        cursor.emplace(oracle->cursor());
    }
    std::uint64_t checked = 0, matched = 0;
    auto res = ht::holo_run(m, input, f.t, ht::HoloOptions{b, f.c_int, &ledger}, [&](const ht::Emission &e) {
        if (!verify) return;
        cursor->next();
        auto c = e.configuration();
        ++checked;
        const auto &o = cursor->current();
        if (o.time == e.tau && c == ht::restrict_to(o, c.spans(), oracle->initial())) ++matched;
    });
    std::cout << "steps " << res.steps << " blocks " << res.blocks << " b " << b << " c_int " << f.c_int
              << " depth " << res.depth << " " << ht::to_string(res.halted) << "\n";
    std::cout << "max_screen " << ledger.max_screen() << " max_book " << ledger.max_book() << " max_total "
              << ledger.max_total() << " max_pending " << res.max_pending << "\n";
    if (res.root) std::cout << "root " << hash_hex(ht::encode_summary(*res.root)) << "\n";
    if (ledger_csv) {
        std::ostringstream os;
        os << "tau,s_screen,s_book,s_total\n";
        for (const auto &r : ledger.rows()) {
            os << r.tau << ',' << r.s_screen << ',' << r.s_book << ',' << r.s_total() << "\n";
        }
        write_file(*ledger_csv, os.str());
    }
    if (verify) {
        std::cout << "verified " << matched << "/" << oracle->steps() << "\n";
        if (matched != oracle->steps() || checked != oracle->steps()) return kInternal;
    }
    if (!ledger.chain_holds() || !ledger.audits_agree()) {
        std::cerr << "ledger audit failed\n";
        return kInternal;
    }
    return 0;
}

int cmd_check_blocks(const RunFlags &f, bool json) {
    auto m = load_machine(f.machine);
    auto r = ht::run(m, resolve_input(m, f.input, f.t), f.t);
    auto b = block_size(f.b, r.steps() ? r.steps() : 1);
    auto rep = ht::check_block_respecting(r, b, f.c_int);
    if (json) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto &c : rep.blocks) {
            nlohmann::json spans = nlohmann::json::array();
            for (const auto &s : c.spans) spans.push_back({s.lo, s.hi});
            blocks.push_back({{"block", c.block}, {"L", c.steps.first}, {"R", c.steps.last},
                              {"spans", spans}, {"pass", c.pass}});
        }
        std::cout << nlohmann::json{{"t", r.steps()}, {"b", b}, {"c_int", f.c_int}, {"limit", rep.limit},
                                    {"verdict", rep.verdict()}, {"blocks", blocks}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto &c : rep.blocks) {
            std::cout << "block " << c.block << " [" << c.steps.first << "," << c.steps.last << "]";
            for (const auto &s : c.spans) std::cout << " " << s.length();
            std::cout << (c.pass ? " ok" : " FAIL") << "\n";
        }
        std::cout << "verdict " << (rep.verdict() ? "block-respecting" : "not block-respecting") << " (limit "
                  << rep.limit << ")\n";
    }
    return rep.verdict() ? 0 : kModel;
}

int cmd_tree(const RunFlags &f, bool label, const std::string &policy, const std::optional<std::string> &out) {
    auto m = load_machine(f.machine);
    auto r = ht::run(m, resolve_input(m, f.input, f.t), f.t);
    auto b = block_size(f.b, r.steps() ? r.steps() : 1);
    auto tree = ht::build_tree(ht::decompose(r.steps(), b));
    if (label) {
        tree = ht::label_tree(std::move(tree), r, f.c_int,
                              policy == "full" ? ht::WindowPolicy::Full : ht::WindowPolicy::Boundary);
    }
    auto doc = ht::tree_to_json(tree).dump(2) + "\n";
    if (out) {
        write_file(*out, doc);
        std::cout << "T " << tree.leaf_count() << " depth " << tree.depth() << "\n";
    } else {
        std::cout << doc;
    }
    return 0;
}

int cmd_replay_at(const RunFlags &f, std::uint64_t tau) {
    auto m = load_machine(f.machine);
    auto input = resolve_input(m, f.input, f.t);
    auto b = block_size(f.b, f.t);
    auto pos = ht::time_to_leaf(tau, b);
    auto c = ht::reconstruct_at(m, input, f.t, ht::HoloOptions{b, f.c_int, nullptr}, tau);
    std::cout << "leaf=" << pos.leaf << " offset=" << pos.offset << "\n" << format_configuration(m, c);
    return 0;
}

struct WitnessFlags {
    std::string kind = "pointwise";
    std::optional<std::string> out;
    std::optional<std::string> input;
    std::optional<std::uint64_t> t;
    std::optional<std::string> interval;
    std::optional<std::uint64_t> tau;
};

int cmd_witness(const std::string &path, const WitnessFlags &w) {
    auto m = load_machine(path);
    if (w.kind != "pointwise" && w.kind != "history") throw Failure{kUsage, "unknown witness kind " + w.kind};
    auto kind = w.kind == "history" ? ht::WitnessKind::History : ht::WitnessKind::Pointwise;
    auto prog = ht::build_witness(m, kind);
    if (w.out) {
        write_file(*w.out, prog.bytes);
    } else {
        std::cout << ht::to_hex(prog.bytes) << "\n";
    }
    std::cerr << "witness " << w.kind << " " << prog.bytes.size() << " bytes\n";
    if (!w.t) return 0;

    // Optional check: run the program on an oracle summary and compare.
    auto r = ht::run(m, resolve_input(m, w.input, *w.t), *w.t);
    if (r.steps() == 0) throw Failure{kUsage, "run has no steps to summarize"};
    ht::StepInterval iv{1, r.steps()};
    if (w.interval) {
        auto colon = w.interval->find(':');
        if (colon == std::string::npos) throw Failure{kUsage, "--interval expects L:R"};
        iv = {std::stoull(w.interval->substr(0, colon)), std::stoull(w.interval->substr(colon + 1))};
    }
    auto s = ht::full_summary(r, iv);
    ht::Bytes expected, got;
    if (kind == ht::WitnessKind::Pointwise) {
        auto tau = w.tau.value_or(iv.last);
        got = ht::run_witness(prog, ht::pointwise_conditional(s, tau));
        auto spans = ht::decode_configuration(got).spans();
        expected = ht::encode_configuration(ht::restrict_to(r.at(tau), spans, r.initial()));
    } else {
        got = ht::run_witness(prog, ht::encode_summary(s));
        auto hist = ht::decode_history(got);
        ht::HistoryWriter hw(hist.size());
        for (const auto &c : hist) hw.add(ht::restrict_to(r.at(c.time), c.spans(), r.initial()));
        expected = std::move(hw).finish();
    }
    std::cerr << "output " << got.size() << " bytes, " << (got == expected ? "matches oracle" : "MISMATCH")
              << "\n";
    return got == expected ? 0 : kInternal;
}

int cmd_scaling(const std::vector<std::string> &machines, const std::string &grid, const std::string &rule,
                std::uint64_t c_int, bool fit, const std::optional<std::string> &csv,
                const std::optional<std::string> &svg) {
    std::vector<ht::ScalingReport> reports;
    ht::BlockRule b_rule = ht::sqrt_block_rule;
    if (rule == "2sqrt") {
        b_rule = [](std::uint64_t t) { return 2 * ht::sqrt_block_rule(t); };
    } else if (rule != "sqrt") {
        throw Failure{kUsage, "unknown block rule " + rule};
    }
    auto points = ht::parse_grid(grid);
    for (const auto &path : machines) {
        auto m = load_machine(path);
        reports.push_back(ht::area_law_study(m, ht::default_family(m), points, b_rule, c_int));
    }
    auto table = ht::scaling_csv(reports);
    if (csv) {
        write_file(*csv, table);
    } else {
        std::cout << table;
    }
    if (svg) write_file(*svg, ht::scaling_svg(reports));
    // fit lines share stdout only when the table went to a file
    auto &note = csv ? std::cout : std::cerr;
    int rc = 0;
    for (const auto &rep : reports) {
        for (const auto &r : rep.rows) {
            if (!r.ok()) {
                std::cerr << rep.machine << " t=" << r.t << ": " << r.error << "\n";
                rc = kModel;
            }
        }
        if (fit) {
            if (rep.fit) {
                note << rep.machine << " exponent " << rep.fit->exponent << " residual " << rep.fit->residual
                          << " points " << rep.fit->points << "\n";
            } else {
                note << rep.machine << " no fit: " << rep.fit_note << "\n";
            }
        }
    }
    return rc;
}

int cmd_export_dag(const RunFlags &f, const std::string &format, const std::optional<std::string> &out) {
    auto m = load_machine(f.machine);
    auto r = ht::run(m, resolve_input(m, f.input, f.t), f.t);
    auto dag = ht::build_dag(r);
    auto doc = ht::export_dag(dag, format);
    if (out) {
        write_file(*out, doc);
        std::cout << "volume " << ht::volume(dag) << " edges " << dag.edges.size() << "\n";
    } else {
        std::cout << doc;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"holotape: block-summary simulation of multitape Turing machines"};
    app.require_subcommand(1);

    // run
    std::string run_machine, run_input;
    std::uint64_t max_steps = 1000000;
    std::optional<std::string> emit;
    auto *run = app.add_subcommand("run", "direct linear-space execution");
    run->add_option("machine", run_machine, "machine definition file")->required();
    run->add_option("input", run_input, "input word");
    run->add_option("--max-steps", max_steps, "step budget");
    run->add_option("--emit-history", emit, "write the encoded history C_0..C_t to a file");

    // simulate
    RunFlags sim;
    bool verify = false;
    std::optional<std::string> ledger_csv;
    auto *simulate = app.add_subcommand("simulate", "streaming simulation with screen accounting");
    sim.attach(simulate);
    simulate->add_flag("--verify", verify, "compare every emitted configuration with the direct run");
    simulate->add_option("--ledger", ledger_csv, "write per-step ledger CSV");

    // check-blocks
    RunFlags chk;
    bool chk_json = false;
    auto *check = app.add_subcommand("check-blocks", "measure per-block visited spans");
    chk.attach(check);
    check->add_flag("--json", chk_json, "JSON report");

    // tree
    RunFlags tr;
    bool label = false;
    std::string policy = "boundary";
    std::optional<std::string> tree_out;
    auto *tree = app.add_subcommand("tree", "balanced tree over the time blocks (JSON)");
    tr.attach(tree);
    tree->add_flag("--label", label, "attach summaries computed from the direct run");
    tree->add_option("--policy", policy, "window policy for labels")->check(CLI::IsMember({"boundary", "full"}));
    tree->add_option("--out", tree_out, "output file");

    // replay-at
    RunFlags ra;
    std::uint64_t tau = 0;
    auto *replay = app.add_subcommand("replay-at", "reconstruct one configuration by streaming simulation");
    ra.attach(replay);
    replay->add_option("--tau", tau, "step index")->required();

    // witness
    std::string wit_machine;
    WitnessFlags wf;
    auto *witness = app.add_subcommand("witness", "emit a witness program; optionally check it on a run");
    witness->add_option("machine", wit_machine, "machine definition file")->required();
    witness->add_option("--kind", wf.kind, "pointwise or history")->check(CLI::IsMember({"pointwise", "history"}));
    witness->add_option("--out", wf.out, "write program bytes to a file instead of hex to stdout");
    witness->add_option("--t", wf.t, "also run the program on a summary of this run");
    witness->add_option("--input", wf.input, "input word for the check run");
    witness->add_option("--interval", wf.interval, "summarized steps L:R (default 1:t)");
    witness->add_option("--tau", wf.tau, "time for the pointwise check (default R)");

    // scaling
    std::vector<std::string> sc_machines;
    std::string grid = "2^10..2^18", rule = "sqrt";
    std::uint64_t sc_c_int = 2;
    bool fit = false;
    std::optional<std::string> csv, svg;
    auto *scaling = app.add_subcommand("scaling", "screen-area scaling study");
    scaling->add_option("machines", sc_machines, "machine definition files")->required();
    scaling->add_option("--t-grid", grid, "grid, e.g. 2^10..2^18 or 1024,4096");
    scaling->add_option("--b-rule", rule, "sqrt or 2sqrt");
    scaling->add_option("--c-int", sc_c_int, "window constant")->check(CLI::PositiveNumber);
    scaling->add_flag("--fit", fit, "report the fitted exponent");
    scaling->add_option("--csv", csv, "CSV output file (default stdout)");
    scaling->add_option("--svg", svg, "log-log chart output file");

    // export-dag
    RunFlags dg;
    std::string format = "json";
    std::optional<std::string> dag_out;
    auto *dag = app.add_subcommand("export-dag", "spacetime graph of a run");
    dg.attach(dag, false);
    dag->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    dag->add_option("--out", dag_out, "output file");

    // sample
    std::string sample_name;
    auto *sample = app.add_subcommand("sample", "print a bundled machine definition");
    sample->add_option("name", sample_name, "writer2, counter, palin or sweep<n>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*run) return cmd_run(run_machine, run_input, max_steps, emit);
        if (*simulate) return cmd_simulate(sim, verify, ledger_csv);
        if (*check) return cmd_check_blocks(chk, chk_json);
        if (*tree) return cmd_tree(tr, label, policy, tree_out);
        if (*replay) return cmd_replay_at(ra, tau);
        if (*witness) return cmd_witness(wit_machine, wf);
        if (*scaling) return cmd_scaling(sc_machines, grid, rule, sc_c_int, fit, csv, svg);
        if (*dag) return cmd_export_dag(dg, format, dag_out);
        if (*sample) {
            auto m = ht::samples::by_name(sample_name);
            if (!m) throw Failure{kUsage, "no bundled machine named " + sample_name};
            std::cout << ht::serialize_machine(*m);
            return 0;
        }
    } catch (const Failure &f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const ht::NonBlockRespecting &e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: increase --b or --c-int\n";
        return kModel;
    } catch (const ht::ModelViolation &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kModel;
    } catch (const ht::Incompatible &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const ht::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error &e) {
        // bad argument values (out_of_range, invalid_argument) surface here
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
