#pragma once

#include <string>
#include <vector>

#include "tame/polymap.hpp"

namespace tame {

// straight-line program: input fold, ordered simultaneous full-state steps,
// output fold. No loops or branches exist in this representation.
struct StraightLineProgram {
    int arity = 0;      // k
    int state_dim = 0;  // n
    int out_dim = 0;    // l
    PolyMap input;      // k -> n
    std::vector<PolyMap> steps;  // each n -> n
    PolyMap output;     // n -> l

    bool operator==(const StraightLineProgram& o) const {
        return arity == o.arity && state_dim == o.state_dim && out_dim == o.out_dim &&
               input == o.input && steps == o.steps && output == o.output;
    }
};

struct ExecutionTrace {
    std::vector<Int> input;
    std::vector<std::vector<Int>> states;  // one per step boundary, starting at f_in(u)
    std::vector<Int> output;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

std::vector<Int> run(const StraightLineProgram& p, const std::vector<Int>& u);
ExecutionTrace run_trace(const StraightLineProgram& p, const std::vector<Int>& u);

// dimensional consistency; collects diagnostics instead of throwing
ValidationReport validate(const StraightLineProgram& p);

// textual frontend. Syntax, one clause per line, '#' comments:
//   input x1, .., xn = <exprs over u1..uk>
//   <name> = <expr over state vars>            (temporary, scoped to its step)
//   xi, .., xj = <exprs>                       (simultaneous step; missing
//                                               state variables keep their value)
//   output <exprs>  |  output v1, .., vl = <exprs>
// Loop and branch keywords are rejected as not straight-line.
StraightLineProgram parse_program_text(const std::string& text);

// canonical text for a program; parse_program_text(emit) reproduces behavior
std::string emit_program_text(const StraightLineProgram& p,
                              const std::vector<std::string>& header_comments = {});

} // namespace tame
