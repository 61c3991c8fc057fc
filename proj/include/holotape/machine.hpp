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
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <unordered_map>
#include <string>
#include <string_view>
#include <vector>

#include "holotape/errors.hpp"
#include "holotape/varint.hpp"

namespace holotape {

/// Index into a machine's work alphabet, in declared order.
using Symbol = std::uint16_t;
/// Index into a machine's state list, in declared order.
using StateId = std::uint32_t;

/// Head displacement of one transition; Lipschitz locality means only these three exist.
enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

inline char move_letter(Move m) {
    switch (m) {
    case Move::Left: return 'L';
    case Move::Stay: return 'S';
    case Move::Right: return 'R';
    }
    return '?';
}

inline std::optional<Move> parse_move(std::string_view tok) {
    if (tok == "L" || tok == "-1") return Move::Left;
    if (tok == "S" || tok == "0") return Move::Stay;
    if (tok == "R" || tok == "+1" || tok == "1") return Move::Right;
    return std::nullopt;
}

/// One row of the transition table.
struct TransitionRef {
    StateId next;
    std::span<const Symbol> writes;
    std::span<const Move> moves;
};

/**
 * Deterministic k-tape machine. Immutable after construction; build one with
 * MachineBuilder, parse_machine or decode_machine.
 *
 * The transition table is dense: one row per (non-halting state, k-tuple of
 * work symbols), tape 0 being the most significant digit of the tuple index.
 */
class MachineSpec {
  public:
    static constexpr std::size_t kMaxTableRows = std::size_t{1} << 24;

    const std::string &name() const noexcept { return name_; }
    std::size_t tapes() const noexcept { return k_; }

    const std::vector<std::string> &states() const noexcept { return states_; }
    std::size_t state_count() const noexcept { return states_.size(); }
    StateId start() const noexcept { return start_; }
    StateId accept() const noexcept { return accept_; }
    StateId reject() const noexcept { return reject_; }
    bool halting(StateId q) const noexcept { return q == accept_ || q == reject_; }

    /// Work alphabet Γ in declared order; Symbol values index into it.
    const std::vector<std::string> &symbols() const noexcept { return symbols_; }
    std::size_t alphabet_size() const noexcept { return symbols_.size(); }
    Symbol blank() const noexcept { return blank_; }
    const std::vector<Symbol> &input_alphabet() const noexcept { return input_; }
    bool in_input_alphabet(Symbol s) const {
        return std::find(input_.begin(), input_.end(), s) != input_.end();
    }

    std::optional<StateId> state_id(std::string_view name) const {
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (states_[i] == name) return static_cast<StateId>(i);
        }
        return std::nullopt;
    }

    std::optional<Symbol> symbol_id(std::string_view name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i] == name) return static_cast<Symbol>(i);
        }
        return std::nullopt;
    }

    /// Number of k-tuples over Γ.
    std::size_t combos() const noexcept { return combos_; }

    std::size_t tuple_index(std::span<const Symbol> read) const {
        std::size_t idx = 0;
        for (auto s : read) {
            idx = idx * symbols_.size() + s;
        }
        return idx;
    }

    std::vector<Symbol> tuple_at(std::size_t idx) const {
        std::vector<Symbol> read(k_);
        for (std::size_t i = k_; i-- > 0;) {
            read[i] = static_cast<Symbol>(idx % symbols_.size());
            idx /= symbols_.size();
        }
        return read;
    }

    /// δ(q, read). Throws HaltedError on accept/reject.
    TransitionRef transition(StateId q, std::span<const Symbol> read) const {
        return row(q, tuple_index(read));
    }

    TransitionRef row(StateId q, std::size_t tuple) const {
        if (halting(q)) {
            throw HaltedError("no transition out of halting state " + states_[q]);
        }
        std::size_t r = static_cast<std::size_t>(q) * combos_ + tuple;
        return {next_[r], std::span<const Symbol>(writes_).subspan(r * k_, k_),
                std::span<const Move>(moves_).subspan(r * k_, k_)};
    }

    bool operator==(const MachineSpec &) const = default;

  private:
    friend class MachineBuilder;

    std::string name_;
    std::size_t k_ = 1;
    std::vector<std::string> states_;
    StateId start_ = 0;
    StateId accept_ = 0;
    StateId reject_ = 0;
    std::vector<std::string> symbols_;
    Symbol blank_ = 0;
    std::vector<Symbol> input_;
    std::size_t combos_ = 0;
    std::vector<StateId> next_;
    std::vector<Symbol> writes_;
    std::vector<Move> moves_;
};

/**
 * Assembles and validates a MachineSpec from names. Used by the text parser,
 * the binary decoder and the bundled sample generators.
 */
class MachineBuilder {
  public:
    MachineBuilder(std::string name, std::size_t tapes) : name_(std::move(name)), k_(tapes) {
        if (tapes == 0) {
            throw MachineError("machine needs at least one tape");
        }
    }

    MachineBuilder &work_alphabet(std::vector<std::string> symbols) {
        work_ = std::move(symbols);
        return *this;
    }
    MachineBuilder &input_alphabet(std::vector<std::string> symbols) {
        input_ = std::move(symbols);
        return *this;
    }
    MachineBuilder &blank(std::string symbol) {
        blank_ = std::move(symbol);
        return *this;
    }
    MachineBuilder &states(std::vector<std::string> names) {
        states_ = std::move(names);
        return *this;
    }
    MachineBuilder &start(std::string q) {
        start_ = std::move(q);
        return *this;
    }
    MachineBuilder &accept(std::string q) {
        accept_ = std::move(q);
        return *this;
    }
    MachineBuilder &reject(std::string q) {
        reject_ = std::move(q);
        return *this;
    }

    struct Rule {
        std::string state;
        std::vector<std::string> read;
        std::string next;
        std::vector<std::string> write;
        std::vector<Move> moves;
        std::size_t line = 0; // source line when parsed, 0 otherwise
    };

    MachineBuilder &on(Rule rule) {
        rules_.push_back(std::move(rule));
        return *this;
    }

    MachineBuilder &on(std::string state, std::vector<std::string> read, std::string next,
                       std::vector<std::string> write, std::vector<Move> moves) {
        return on(Rule{std::move(state), std::move(read), std::move(next), std::move(write),
                       std::move(moves), 0});
    }

    /// Rows not given explicitly are filled from this callback instead of failing totality.
    using Fallback = std::function<Rule(const std::string &state, const std::vector<std::string> &read)>;
    MachineBuilder &otherwise(Fallback fallback) {
        fallback_ = std::move(fallback);
        return *this;
    }

    MachineSpec build() const {
        MachineSpec m;
        m.name_ = name_;
        m.k_ = k_;
        if (name_.empty()) throw MachineError("machine has no name");
        if (work_.empty()) throw MachineError("empty work alphabet");
        if (work_.size() > 0xFFFF) throw MachineError("work alphabet too large");
        check_unique(work_, "symbol");
        m.symbols_ = work_;
        Index ix;
        for (std::size_t i = 0; i < work_.size(); ++i) ix.symbols.emplace(work_[i], static_cast<Symbol>(i));
        m.blank_ = ix.symbol(blank_, 0, "blank");
        check_unique(input_, "input symbol");
        for (const auto &s : input_) {
            auto id = ix.symbol(s, 0, "input symbol");
            if (id == m.blank_) throw MachineError("blank must not be an input symbol");
            m.input_.push_back(id);
        }

        std::vector<std::string> names = states_;
        if (names.empty()) {
            // no explicit list: order of first appearance
            std::set<std::string> seen;
            auto add = [&names, &seen](const std::string &q) {
                if (!q.empty() && seen.insert(q).second) names.push_back(q);
            };
            add(start_);
            add(accept_);
            add(reject_);
            for (const auto &r : rules_) {
                add(r.state);
                add(r.next);
            }
        }
        check_unique(names, "state");
        m.states_ = names;
        for (std::size_t i = 0; i < names.size(); ++i) ix.states.emplace(names[i], static_cast<StateId>(i));
        m.start_ = ix.state(start_, 0, "start");
        m.accept_ = ix.state(accept_, 0, "accept");
        m.reject_ = ix.state(reject_, 0, "reject");
        if (m.accept_ == m.reject_) throw MachineError("accept and reject must differ");

        std::size_t combos = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            combos *= work_.size();
            if (combos * names.size() > MachineSpec::kMaxTableRows) {
                throw MachineError("transition table too large");
            }
        }
        m.combos_ = combos;
        std::size_t rows = combos * names.size();
        constexpr StateId kUnset = ~StateId{0};
        m.next_.assign(rows, kUnset);
        m.writes_.assign(rows * k_, 0);
        m.moves_.assign(rows * k_, Move::Stay);

        auto install = [&](const Rule &r) {
            auto where = [&r](const std::string &msg) {
                return r.line ? "line " + std::to_string(r.line) + ": " + msg : msg;
            };
            if (r.read.size() != k_ || r.write.size() != k_ || r.moves.size() != k_) {
                throw MachineError(where("transition arity does not match tape count"));
            }
            StateId q = ix.state(r.state, r.line, "state");
            if (m.halting(q)) {
                throw MachineError(where("halting state " + r.state + " has an outgoing transition"));
            }
            std::vector<Symbol> read(k_);
            for (std::size_t i = 0; i < k_; ++i) read[i] = ix.symbol(r.read[i], r.line, "symbol");
            std::size_t row = q * combos + m.tuple_index(read);
            if (m.next_[row] != kUnset) {
                throw MachineError(where("duplicate delta entry for state " + r.state));
            }
            m.next_[row] = ix.state(r.next, r.line, "state");
            for (std::size_t i = 0; i < k_; ++i) {
                m.writes_[row * k_ + i] = ix.symbol(r.write[i], r.line, "symbol");
                m.moves_[row * k_ + i] = r.moves[i];
            }
        };
        for (const auto &r : rules_) install(r);

        for (StateId q = 0; q < names.size(); ++q) {
            if (m.halting(q)) continue;
            for (std::size_t c = 0; c < combos; ++c) {
                std::size_t row = q * combos + c;
                if (m.next_[row] != kUnset) continue;
                std::vector<std::string> read;
                for (auto s : m.tuple_at(c)) read.push_back(work_[s]);
                if (!fallback_) {
                    std::string tuple;
                    for (const auto &s : read) tuple += " " + s;
                    throw MachineError("delta is not total: missing entry for state " +
                                       names[q] + " reading" + tuple);
                }
                auto r = fallback_(names[q], read);
                r.state = names[q];
                r.read = read;
                install(r);
            }
        }
        for (auto &n : m.next_) {
            if (n == kUnset) n = 0; // halting rows, never read
        }
        return m;
    }

  private:
    static void check_unique(const std::vector<std::string> &v, const char *what) {
        std::set<std::string> seen;
        for (const auto &s : v) {
            if (!seen.insert(s).second) {
                throw MachineError(std::string("duplicate ") + what + " '" + s + "'");
            }
        }
    }

    struct Index {
        std::unordered_map<std::string, Symbol> symbols;
        std::unordered_map<std::string, StateId> states;

        static std::string where(std::size_t line) {
            return line ? "line " + std::to_string(line) + ": " : std::string();
        }
        Symbol symbol(const std::string &s, std::size_t line, const char *what) const {
            auto it = symbols.find(s);
            if (it == symbols.end()) throw MachineError(where(line) + "unknown " + what + " '" + s + "'");
            return it->second;
        }
        StateId state(const std::string &q, std::size_t line, const char *what) const {
            auto it = states.find(q);
            if (it == states.end()) throw MachineError(where(line) + "unknown " + what + " '" + q + "'");
            return it->second;
        }
    };

    std::string name_;
    std::size_t k_;
    std::vector<std::string> work_;
    std::vector<std::string> input_;
    std::string blank_;
    std::vector<std::string> states_;
    std::string start_;
    std::string accept_;
    std::string reject_;
    std::vector<Rule> rules_;
    Fallback fallback_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace detail

/**
 * Parses the line-oriented machine format:
 *
 *     machine <name>
 *     tapes <k>
 *     blank <sym>
 *     input_alphabet <sym>...
 *     work_alphabet <sym>...
 *     states <q>...            (optional; otherwise order of first appearance)
 *     start <q> / accept <q> / reject <q>
 *     delta <q> <s1>..<sk> -> <q'> <w1>..<wk> <m1>..<mk>     m in {L,S,R}
 *
 * '#' starts a comment. The delta table must be total over non-halting states.
 */
inline MachineSpec parse_machine(std::string_view text) {
    std::optional<std::string> name;
    std::optional<std::size_t> tapes;
    std::optional<std::string> blank, start, accept, reject;
    std::optional<std::vector<std::string>> input, work, states;
    struct RawDelta {
        std::size_t line;
        std::vector<std::string> tok;
    };
    std::vector<RawDelta> deltas;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = detail::split_ws(line);
        if (tok.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const auto &key = tok[0];
        auto single = [&](std::optional<std::string> &slot) {
            if (tok.size() != 2) throw ParseError(lineno, "'" + key + "' takes exactly one argument");
            if (slot) throw ParseError(lineno, "duplicate '" + key + "'");
            slot = tok[1];
        };
        auto list = [&](std::optional<std::vector<std::string>> &slot) {
            if (slot) throw ParseError(lineno, "duplicate '" + key + "'");
            slot = std::vector<std::string>(tok.begin() + 1, tok.end());
        };
        if (key == "machine") {
            single(name);
        } else if (key == "tapes") {
            std::optional<std::string> v;
            single(v);
            if (tapes) throw ParseError(lineno, "duplicate 'tapes'");
            try {
                std::size_t used = 0;
                auto n = std::stoul(*v, &used);
                if (used != v->size() || n == 0 || n > 16) throw std::invalid_argument(*v);
                tapes = n;
            } catch (const std::exception &) {
                throw ParseError(lineno, "bad tape count '" + *v + "'");
            }
        } else if (key == "blank") {
            single(blank);
        } else if (key == "start") {
            single(start);
        } else if (key == "accept") {
            single(accept);
        } else if (key == "reject") {
            single(reject);
        } else if (key == "input_alphabet") {
            list(input);
        } else if (key == "work_alphabet") {
            list(work);
        } else if (key == "states") {
            list(states);
        } else if (key == "delta") {
            deltas.push_back({lineno, std::move(tok)});
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
        if (eol == text.size()) break;
    }

    auto require = [&](bool present, const char *what) {
        if (!present) throw ParseError(lineno, std::string("missing '") + what + "'");
    };
    require(name.has_value(), "machine");
    require(tapes.has_value(), "tapes");
    require(blank.has_value(), "blank");
    require(work.has_value(), "work_alphabet");
    require(start.has_value(), "start");
    require(accept.has_value(), "accept");
    require(reject.has_value(), "reject");

    MachineBuilder b(*name, *tapes);
    b.work_alphabet(*work).input_alphabet(input.value_or(std::vector<std::string>{})).blank(*blank);
    if (states) b.states(*states);
    b.start(*start).accept(*accept).reject(*reject);

    const std::size_t k = *tapes;
    for (const auto &d : deltas) {
        // delta q s1..sk -> q' w1..wk m1..mk
        if (d.tok.size() != 2 + k + 1 + 1 + 2 * k || d.tok[2 + k] != "->") {
            throw ParseError(d.line, "malformed delta: expected 'delta <q> <s1..s" +
                                         std::to_string(k) + "> -> <q'> <w1..wk> <m1..mk>'");
        }
        MachineBuilder::Rule r;
        r.line = d.line;
        r.state = d.tok[1];
        r.read.assign(d.tok.begin() + 2, d.tok.begin() + 2 + k);
        r.next = d.tok[3 + k];
        r.write.assign(d.tok.begin() + 4 + k, d.tok.begin() + 4 + 2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            const auto &mt = d.tok[4 + 2 * k + i];
            auto mv = parse_move(mt);
            if (!mv) {
                throw MachineError("line " + std::to_string(d.line) + ": invalid move '" + mt +
                                   "' (expected L, S or R)");
            }
            r.moves.push_back(*mv);
        }
        b.on(std::move(r));
    }
    return b.build();
}

/// Canonical text form: fixed directive order, explicit state list, rows sorted by (state, tuple).
inline std::string serialize_machine(const MachineSpec &m) {
    std::ostringstream os;
    auto join = [&os](const std::vector<std::string> &v) {
        for (const auto &s : v) os << ' ' << s;
    };
    os << "machine " << m.name() << '\n';
    os << "tapes " << m.tapes() << '\n';
    os << "blank " << m.symbols()[m.blank()] << '\n';
    os << "input_alphabet";
    for (auto s : m.input_alphabet()) os << ' ' << m.symbols()[s];
    os << '\n';
    os << "work_alphabet";
    join(m.symbols());
    os << '\n';
    os << "states";
    join(m.states());
    os << '\n';
    os << "start " << m.states()[m.start()] << '\n';
    os << "accept " << m.states()[m.accept()] << '\n';
    os << "reject " << m.states()[m.reject()] << '\n';
    for (StateId q = 0; q < m.state_count(); ++q) {
        if (m.halting(q)) continue;
        for (std::size_t c = 0; c < m.combos(); ++c) {
            auto read = m.tuple_at(c);
            auto tr = m.row(q, c);
            os << "delta " << m.states()[q];
            for (auto s : read) os << ' ' << m.symbols()[s];
            os << " -> " << m.states()[tr.next];
            for (auto s : tr.writes) os << ' ' << m.symbols()[s];
            for (auto mv : tr.moves) os << ' ' << move_letter(mv);
            os << '\n';
        }
    }
    return os.str();
}

inline constexpr std::uint8_t kMachineMagic = 0x4D;
inline constexpr std::uint8_t kFormatVersion = 0x01;

/// Binary machine encoding (magic 0x4D); the payload of witness programs.
inline void encode_machine(ByteWriter &w, const MachineSpec &m) {
    w.byte(kMachineMagic);
    w.byte(kFormatVersion);
    w.string(m.name());
    w.varint(m.tapes());
    w.varint(m.alphabet_size());
    for (const auto &s : m.symbols()) w.string(s);
    w.varint(m.blank());
    w.varint(m.input_alphabet().size());
    for (auto s : m.input_alphabet()) w.varint(s);
    w.varint(m.state_count());
    for (const auto &q : m.states()) w.string(q);
    w.varint(m.start());
    w.varint(m.accept());
    w.varint(m.reject());
    for (StateId q = 0; q < m.state_count(); ++q) {
        if (m.halting(q)) continue;
        for (std::size_t c = 0; c < m.combos(); ++c) {
            auto tr = m.row(q, c);
            w.varint(tr.next);
            for (auto s : tr.writes) w.varint(s);
            for (auto mv : tr.moves) w.byte(static_cast<std::uint8_t>(static_cast<int>(mv) + 1));
        }
    }
}

inline Bytes encode_machine(const MachineSpec &m) {
    ByteWriter w;
    encode_machine(w, m);
    return std::move(w).bytes();
}

inline MachineSpec decode_machine(ByteReader &r) {
    r.expect(kMachineMagic, "machine magic");
    r.expect(kFormatVersion, "machine version");
    auto name = r.string();
    auto k = r.count(16);
    auto nsym = r.count(0xFFFF);
    if (nsym == 0) throw DecodeError("empty work alphabet");
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < nsym; ++i) symbols.push_back(r.string());
    auto blank = r.count(nsym - 1);
    auto nin = r.count(nsym);
    std::vector<std::string> input;
    for (std::size_t i = 0; i < nin; ++i) input.push_back(symbols.at(r.count(nsym - 1)));
    auto nstates = r.count(MachineSpec::kMaxTableRows);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < nstates; ++i) states.push_back(r.string());
    if (nstates == 0) throw DecodeError("machine without states");
    auto start = r.count(nstates - 1);
    auto accept = r.count(nstates - 1);
    auto reject = r.count(nstates - 1);

    MachineBuilder b(name, k);
    b.work_alphabet(symbols).input_alphabet(input).blank(symbols[blank]).states(states);
    b.start(states[start]).accept(states[accept]).reject(states[reject]);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) {
        combos *= nsym;
        if (combos * nstates > MachineSpec::kMaxTableRows) throw DecodeError("machine table too large");
    }
    try {
        for (std::size_t q = 0; q < nstates; ++q) {
            if (q == accept || q == reject) continue;
            for (std::size_t c = 0; c < combos; ++c) {
                MachineBuilder::Rule rule;
                rule.state = states[q];
                std::size_t idx = c;
                rule.read.resize(k);
                for (std::size_t i = k; i-- > 0;) {
                    rule.read[i] = symbols[idx % nsym];
                    idx /= nsym;
                }
                rule.next = states[r.count(nstates - 1)];
                for (std::size_t i = 0; i < k; ++i) rule.write.push_back(symbols[r.count(nsym - 1)]);
                for (std::size_t i = 0; i < k; ++i) {
                    auto mv = r.byte();
                    if (mv > 2) throw DecodeError("bad move byte");
                    rule.moves.push_back(static_cast<Move>(static_cast<int>(mv) - 1));
                }
                b.on(std::move(rule));
            }
        }
        return b.build();
    } catch (const MachineError &e) {
        throw DecodeError(std::string("invalid machine: ") + e.what());
    }
}

inline MachineSpec decode_machine(ByteView bytes) {
    ByteReader r(bytes);
    auto m = decode_machine(r);
    r.expect_end();
    return m;
}

/**
 * Input words: whitespace-separated tokens when the text contains whitespace,
 * otherwise one symbol per character.
 */
inline std::vector<Symbol> parse_input(const MachineSpec &m, std::string_view text) {
    std::vector<std::string> tokens;
    if (text.find_first_of(" \t\n") != std::string_view::npos) {
        tokens = detail::split_ws(text);
    } else {
        for (char c : text) tokens.emplace_back(1, c);
    }
    std::vector<Symbol> out;
    out.reserve(tokens.size());
    for (const auto &t : tokens) {
        auto id = m.symbol_id(t);
        if (!id || !m.in_input_alphabet(*id)) {
            throw MachineError("input symbol '" + t + "' is not in the input alphabet of " +
                               m.name());
        }
        out.push_back(*id);
    }
    return out;
}

inline std::string format_input(const MachineSpec &m, std::span<const Symbol> input) {
    bool single = std::all_of(input.begin(), input.end(),
                              [&m](Symbol s) { return m.symbols()[s].size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!single && i) out += ' ';
        out += m.symbols()[input[i]];
    }
    return out;
}

} // namespace holotape
