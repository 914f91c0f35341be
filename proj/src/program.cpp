#include "tame/program.hpp"

namespace tame {

std::vector<Int> run(const StraightLineProgram& p, const std::vector<Int>& u) {
    require(static_cast<int>(u.size()) == p.arity, ErrorKind::usage, "input arity mismatch");
    std::vector<Int> state = p.input.evaluate(u);
    for (const PolyMap& s : p.steps) state = s.evaluate(state);
    return p.output.evaluate(state);
}

ExecutionTrace run_trace(const StraightLineProgram& p, const std::vector<Int>& u) {
    require(static_cast<int>(u.size()) == p.arity, ErrorKind::usage, "input arity mismatch");
    ExecutionTrace t;
    t.input = u;
    t.states.push_back(p.input.evaluate(u));
    for (const PolyMap& s : p.steps) t.states.push_back(s.evaluate(t.states.back()));
    t.output = p.output.evaluate(t.states.back());
    return t;
}

ValidationReport validate(const StraightLineProgram& p) {
    ValidationReport r;
    auto flag = [&r](const std::string& msg) {
        r.ok = false;
        r.diagnostics.push_back(msg);
    };
    if (p.arity < 0 || p.state_dim < 1 || p.out_dim < 1)
        flag("dimensions must be positive (state and output) and the arity non-negative");
    if (p.input.domain() != p.arity)
        flag("input map domain differs from the declared arity");
    if (p.input.codomain() != p.state_dim)
        flag("input map codomain differs from the state dimension");
    for (size_t i = 0; i < p.steps.size(); ++i) {
        if (p.steps[i].domain() != p.state_dim || p.steps[i].codomain() != p.state_dim)
            flag("step " + std::to_string(i + 1) + ": state dimension mismatch");
    }
    if (p.output.domain() != p.state_dim)
        flag("output map domain differs from the state dimension");
    if (p.output.codomain() != p.out_dim)
        flag("output map codomain differs from the declared output arity");
    return r;
}

} // namespace tame
