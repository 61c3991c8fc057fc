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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace holotape {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a machine-definition document.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed machine text that violates a semantic rule (unknown symbol, partial delta, ...).
class MachineError : public Error {
  public:
    using Error::Error;
};

/// Stepping a configuration whose control state is accept or reject.
class HaltedError : public Error {
  public:
    using Error::Error;
};

/// Malformed, truncated or trailing bytes in one of the binary formats.
class DecodeError : public Error {
  public:
    using Error::Error;
};

/// Two summaries that cannot be composed.
class Incompatible : public Error {
  public:
    explicit Incompatible(std::string reason)
        : Error("incompatible summaries: " + reason), reason_(std::move(reason)) {}

    const std::string &reason() const noexcept { return reason_; }

  private:
    std::string reason_;
};

/// The run does not satisfy the locality discipline the simulator relies on.
class ModelViolation : public Error {
  public:
    using Error::Error;
};

/// A time-block visited more cells on some tape than its interface window allows.
class NonBlockRespecting : public ModelViolation {
  public:
    NonBlockRespecting(std::size_t block, std::size_t tape, std::int64_t lo, std::int64_t hi,
                       std::int64_t limit)
        : ModelViolation("block " + std::to_string(block) + " is not block-respecting: tape " +
                         std::to_string(tape) + " visits [" + std::to_string(lo) + "," +
                         std::to_string(hi) + "] (" + std::to_string(hi - lo + 1) +
                         " cells) > limit " + std::to_string(limit)),
          block_(block), tape_(tape), lo_(lo), hi_(hi), limit_(limit) {}

    std::size_t block() const noexcept { return block_; }
    std::size_t tape() const noexcept { return tape_; }
    std::int64_t span_lo() const noexcept { return lo_; }
    std::int64_t span_hi() const noexcept { return hi_; }
    std::int64_t limit() const noexcept { return limit_; }

  private:
    std::size_t block_;
    std::size_t tape_;
    std::int64_t lo_;
    std::int64_t hi_;
    std::int64_t limit_;
};

/// A block re-entered a cell that was modified earlier and has since left the live window.
class StaleCell : public ModelViolation {
  public:
    StaleCell(std::size_t block, std::size_t tape, std::int64_t cell)
        : ModelViolation("block " + std::to_string(block) + " re-enters modified cell " +
                         std::to_string(cell) + " on tape " + std::to_string(tape) +
                         " outside the live window"),
          block_(block), tape_(tape), cell_(cell) {}

    std::size_t block() const noexcept { return block_; }
    std::size_t tape() const noexcept { return tape_; }
    std::int64_t cell() const noexcept { return cell_; }

  private:
    std::size_t block_;
    std::size_t tape_;
    std::int64_t cell_;
};

/// Replay left the window it was given.
class WindowEscape : public ModelViolation {
  public:
    WindowEscape(std::size_t tape, std::int64_t cell)
        : ModelViolation("replay escaped its window: tape " + std::to_string(tape) + " cell " +
                         std::to_string(cell)),
          tape_(tape), cell_(cell) {}

    std::size_t tape() const noexcept { return tape_; }
    std::int64_t cell() const noexcept { return cell_; }

  private:
    std::size_t tape_;
    std::int64_t cell_;
};

} // namespace holotape
