#include <doctest.h>

#include "fixtures.hpp"
#include "tame/program.hpp"

using namespace tame;
using fixtures::make_poly;

namespace {
std::string data_file(const char* name) {
    return std::string(TAME_TEST_DATA_DIR) + "/" + name;
}
} // namespace

TEST_CASE("parse and run the add/multiply source") {
    StraightLineProgram p = parse_program_text(fixtures::read_text_file(data_file("fun1.slp")));
    CHECK(p.arity == 2);
    CHECK(p.state_dim == 2);
    CHECK(p.out_dim == 2);
    CHECK(p.steps.size() == 1);
    CHECK(p == fixtures::add_multiply_program());
    CHECK(run(p, {Int(2), Int(3)}) == std::vector<Int>{Int(5), Int(6)});
    CHECK(run(p, {Int(1), Int(1)}) == std::vector<Int>{Int(2), Int(1)});
    CHECK(run(p, {Int(-4), Int(7)}) == std::vector<Int>{Int(3), Int(-28)});
}

TEST_CASE("trace of the 4-variable worked program") {
    StraightLineProgram p = parse_program_text(fixtures::read_text_file(data_file("appendix_p.slp")));
    CHECK(p.arity == 4);
    CHECK(p.state_dim == 4);
    CHECK(p.steps.size() == 3);
    ExecutionTrace t = run_trace(p, {Int(3), Int(5), Int(3), Int(2)});
    REQUIRE(t.states.size() == 4);
    CHECK(t.states[0] == std::vector<Int>{Int(3), Int(5), Int(3), Int(2)});
    CHECK(t.states[1] == std::vector<Int>{Int(2), Int(3), Int(3), Int(2)});
    CHECK(t.states[2] == std::vector<Int>{Int(2), Int(3), Int(25), Int(-16)});
    CHECK(t.states[3] == std::vector<Int>{Int(5), Int(6), Int(25), Int(-16)});
    CHECK(t.output == std::vector<Int>{Int(5), Int(6)});
}

TEST_CASE("loop source is rejected as not straight-line") {
    std::string text = fixtures::read_text_file(data_file("fun5.slp"));
    try {
        parse_program_text(text);
        FAIL("factorial source was accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::not_straight_line);
        std::string msg = e.what();
        CHECK(msg.find("not straight-line") != std::string::npos);
        CHECK(msg.find("while") != std::string::npos);
        CHECK(msg.find("private inverse map") != std::string::npos);
        CHECK(e.line == 5);
    }
}

TEST_CASE("every control keyword is rejected, not just while") {
    for (const char* kw : {"for", "if", "goto", "repeat"}) {
        std::string text = "input x1 = u1\n" + std::string(kw) + " x1 < 3\noutput x1\n";
        std::string accepted = std::string("control keyword accepted: ") + kw;
        try {
            parse_program_text(text);
            FAIL(accepted);
        } catch (const Error& e) {
            CHECK(e.kind == ErrorKind::not_straight_line);
        }
    }
}

TEST_CASE("frontend diagnostics") {
    auto error_of = [](const std::string& text) -> std::pair<ErrorKind, std::string> {
        try {
            parse_program_text(text);
        } catch (const Error& e) {
            return {e.kind, e.what()};
        }
        return {ErrorKind::internal, "accepted"};
    };

    auto [k1, m1] = error_of("input x1, x2 = u1, u2\nx1 = x5\noutput x1\n");
    CHECK(k1 == ErrorKind::parse);
    CHECK(m1.find("unknown variable x5") != std::string::npos);
    CHECK(m1.find("2 variables") != std::string::npos);

    // temporaries are scoped to their step
    auto [k2, m2] = error_of(
        "input x1, x2 = u1, u2\nt = x1 + x2\nx1 = t\nx2 = t\noutput x1, x2\n");
    CHECK(k2 == ErrorKind::parse);
    CHECK(m2.find("unknown variable 't'") != std::string::npos);

    // a pending temporary must feed a step before output
    auto [k3, m3] = error_of("input x1 = u1\nt = x1 + 1\noutput x1\n");
    CHECK(k3 == ErrorKind::parse);
    CHECK(m3.find("temporaries must feed a state assignment") != std::string::npos);

    // duplicate step target
    auto [k4, m4] = error_of("input x1, x2 = u1, u2\nx1, x1 = x2, x2\noutput x1\n");
    CHECK(k4 == ErrorKind::parse);
    CHECK(m4.find("x1") != std::string::npos);

    // output arity mismatch in named form
    auto [k5, m5] = error_of("input x1 = u1\noutput v1, v2 = x1\n");
    CHECK(k5 == ErrorKind::parse);

    // missing input clause
    auto [k6, m6] = error_of("x1 = x1 + 1\noutput x1\n");
    CHECK(k6 == ErrorKind::parse);

    // empty source
    auto [k7, m7] = error_of("# nothing here\n");
    CHECK(k7 == ErrorKind::parse);
}

TEST_CASE("partial assignments keep the remaining state") {
    StraightLineProgram p = parse_program_text(
        "input x1, x2 = u1, u2\nx2 = x1\noutput x1, x2\n");
    CHECK(run(p, {Int(3), Int(9)}) == std::vector<Int>{Int(3), Int(3)});

    // simultaneous swap
    StraightLineProgram swap = parse_program_text(
        "input x1, x2 = u1, u2\nx1, x2 = x2, x1\noutput x1, x2\n");
    CHECK(run(swap, {Int(3), Int(9)}) == std::vector<Int>{Int(9), Int(3)});
}

TEST_CASE("temporaries inline into the simultaneous step") {
    StraightLineProgram p = parse_program_text(
        "input x1, x2 = u1, u2\n"
        "s = x1 + x2\n"
        "d = x1 - x2\n"
        "x1, x2 = s*d, s + 2\n"
        "output x1, x2\n");
    CHECK(p.steps.size() == 1);
    CHECK(run(p, {Int(5), Int(3)}) == std::vector<Int>{Int(16), Int(10)});
}

TEST_CASE("input clause folds expressions over u") {
    StraightLineProgram p = parse_program_text(
        "input x1, x2 = u1 + u2, 2*u1^2\nx1 = x1 * x2\noutput x1\n");
    CHECK(p.arity == 2);
    CHECK(run(p, {Int(3), Int(4)}) == std::vector<Int>{Int(126)});
    // arity is the largest u index anywhere in the clause
    StraightLineProgram q = parse_program_text("input x1 = u3\noutput x1\n");
    CHECK(q.arity == 3);
    CHECK(run(q, {Int(1), Int(2), Int(7)}) == std::vector<Int>{Int(7)});
}

TEST_CASE("constant program has arity 0") {
    StraightLineProgram p = parse_program_text("input x1 = 41\nx1 = x1 + 1\noutput x1\n");
    CHECK(p.arity == 0);
    CHECK(run(p, {}) == std::vector<Int>{Int(42)});
}

TEST_CASE("emit then parse reproduces the program") {
    for (const char* name : {"fun1.slp", "appendix_p.slp"}) {
        StraightLineProgram p = parse_program_text(fixtures::read_text_file(data_file(name)));
        std::string text = emit_program_text(p, {"round trip"});
        CHECK(text.find("# round trip") != std::string::npos);
        StraightLineProgram q = parse_program_text(text);
        CHECK(p == q);
    }
}

TEST_CASE("run_trace agrees with run and validates dimensions") {
    StraightLineProgram p = fixtures::add_multiply_program();
    CHECK(validate(p).ok);
    ExecutionTrace t = run_trace(p, {Int(4), Int(5)});
    CHECK(t.output == run(p, {Int(4), Int(5)}));
    CHECK(t.input == std::vector<Int>{Int(4), Int(5)});

    StraightLineProgram broken = p;
    broken.steps.push_back(PolyMap::identity(3));
    ValidationReport r = validate(broken);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.diagnostics.empty());

    CHECK_THROWS_AS((void)run(p, {Int(1)}), Error);
}
