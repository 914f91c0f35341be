#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "tame/serialize.hpp"

using namespace tame;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

const char* cli_path() { return std::getenv("TAME_CLI"); }

fs::path fresh_dir() {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("tame_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

// runs the CLI with the workspace pinned to dir; relative artifact paths land there
CliResult run_cli(const fs::path& dir, const std::string& args) {
    fs::path log = dir / "last_out.txt";
    std::string cmd = "TAME_WORKSPACE='" + dir.string() + "' '" + std::string(cli_path()) + "' " +
                      args + " > '" + log.string() + "' 2>&1";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = fixtures::read_text_file(log.string());
    return r;
}

std::string data_file(const char* name) {
    return std::string(TAME_TEST_DATA_DIR) + "/" + name;
}

} // namespace

#define NEED_CLI()                                             \
    if (!cli_path()) {                                         \
        MESSAGE("TAME_CLI not set; CLI test skipped");         \
        return;                                                \
    }

TEST_CASE("cli: same seed produces byte-identical key files") {
    NEED_CLI();
    fs::path d1 = fresh_dir(), d2 = fresh_dir();
    std::string args = "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11";
    CliResult r1 = run_cli(d1, args);
    CliResult r2 = run_cli(d2, args);
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(fixtures::read_text_file((d1 / "key.priv.json").string()) ==
          fixtures::read_text_file((d2 / "key.priv.json").string()));
    CHECK(fixtures::read_text_file((d1 / "key.pub.json").string()) ==
          fixtures::read_text_file((d2 / "key.pub.json").string()));
    CHECK(r1.out.find("fingerprint = ") != std::string::npos);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("cli: version-0 pipeline end to end") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11").code == 0);

    CliResult plain = run_cli(d, "run --program '" + data_file("fun1.slp") + "' --input 2,3");
    CHECK(plain.code == 0);
    CHECK(plain.out.find("output = (5, 6)") != std::string::npos);

    CliResult tr = run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                                  "' --version 0");
    CHECK(tr.code == 0);
    CHECK(tr.out.find("PASS") != std::string::npos);

    CliResult en = run_cli(d, "encrypt --key key.pub.json --version 0 --input 2,3");
    CHECK(en.code == 0);
    CHECK(en.out.find("within bound") != std::string::npos);

    CliResult rn = run_cli(d, "run --transformed transformed.json --ct ct.json");
    CHECK(rn.code == 0);

    CliResult de = run_cli(d, "decrypt --key key.priv.json --version 0 --ct ct.out.json "
                              "--program '" + data_file("fun1.slp") + "'");
    CHECK(de.code == 0);
    CHECK(de.out.find("program output = (5, 6)") != std::string::npos);

    // plain decrypt of the input ciphertext recovers the plaintext tuple
    CliResult dd = run_cli(d, "decrypt --key key.priv.json --version 0 --ct ct.json");
    CHECK(dd.code == 0);
    CHECK(dd.out.find("plaintext = (2, 3)") != std::string::npos);

    CliResult ve = run_cli(d, "verify --key key.priv.json --program '" + data_file("fun1.slp") +
                                  "' --transformed transformed.json --version 0 --trials 25 "
                                  "--input-bound 50 --seed 2");
    CHECK(ve.code == 0);
    CHECK(ve.out.find("25/25 trials passed") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("cli: version-2 pipeline end to end") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 4 --degree 2 --coeff-bound 1000 --monomials 40 --seed 7 "
                     "--rng-bound 50").code == 0);

    CliResult tr = run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                                  "' --version 2 --rand-slots 2 --seed 3");
    CHECK(tr.code == 0);

    CliResult en = run_cli(d, "encrypt --key key.pub.json --scheme scheme.json --input 2,3 "
                              "--enc-seed 5");
    CHECK(en.code == 0);

    CHECK(run_cli(d, "run --transformed transformed.json --ct ct.json").code == 0);

    CliResult de = run_cli(d, "decrypt --key key.priv.json --scheme scheme.json --ct ct.out.json "
                              "--program '" + data_file("fun1.slp") + "'");
    CHECK(de.code == 0);
    CHECK(de.out.find("program output = (5, 6)") != std::string::npos);

    CliResult dd = run_cli(d, "decrypt --key key.priv.json --scheme scheme.json --ct ct.json");
    CHECK(dd.code == 0);
    CHECK(dd.out.find("plaintext = (2, 3)") != std::string::npos);

    CliResult ve = run_cli(d, "verify --key key.priv.json --program '" + data_file("fun1.slp") +
                                  "' --transformed transformed.json --scheme scheme.json "
                                  "--trials 20 --input-bound 50 --seed 2");
    CHECK(ve.code == 0);
    CHECK(ve.out.find("20/20 trials passed") != std::string::npos);

    // different --enc-seed moves the ciphertext, same seed reproduces it
    CliResult e1 = run_cli(d, "encrypt --key key.pub.json --scheme scheme.json --input 2,3 "
                              "--enc-seed 5 --out ct_a.json");
    CliResult e2 = run_cli(d, "encrypt --key key.pub.json --scheme scheme.json --input 2,3 "
                              "--enc-seed 6 --out ct_b.json");
    CHECK(e1.code == 0);
    CHECK(e2.code == 0);
    CHECK(fixtures::read_text_file((d / "ct_a.json").string()) ==
          fixtures::read_text_file((d / "ct.json").string()));
    CHECK(fixtures::read_text_file((d / "ct_a.json").string()) !=
          fixtures::read_text_file((d / "ct_b.json").string()));
    fs::remove_all(d);
}

TEST_CASE("cli: exit codes") {
    NEED_CLI();
    fs::path d = fresh_dir();

    // unknown flag and missing subcommand are usage errors
    CHECK(run_cli(d, "keygen --nope").code == 2);
    CHECK(run_cli(d, "").code == 2);

    // infeasible budgets
    CliResult inf = run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 1 --monomials 5 --seed 1");
    CHECK(inf.code == 3);
    CHECK(inf.out.find("infeasible") != std::string::npos);

    // loop construct is rejected with the leakage rationale
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11").code == 0);
    CliResult loop = run_cli(d, "transform --key key.priv.json --program '" +
                                    data_file("fun5.slp") + "' --version 0");
    CHECK(loop.code == 2);
    CHECK(loop.out.find("not straight-line") != std::string::npos);
    CHECK(loop.out.find("line 5") != std::string::npos);
    CHECK(loop.out.find("private inverse map") != std::string::npos);

    // version 2 encryption without the scheme companion
    CliResult nos = run_cli(d, "encrypt --key key.pub.json --version 2 --input 2,3");
    CHECK(nos.code == 2);
    CHECK(nos.out.find("needs --scheme") != std::string::npos);

    // decrypt requires the private key
    CliResult pubdec = run_cli(d, "decrypt --key key.pub.json --version 0 --ct ct.json");
    CHECK(pubdec.code == 2);
    CHECK(pubdec.out.find("private key") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("cli: tampered transformed program fails verify with a counterexample") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11").code == 0);
    CHECK(run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                         "' --version 0").code == 0);

    Json tp = read_json_file(d / "transformed.json");
    tp["steps"][0]["components"][0][0]["c"] = "999999";
    write_json_file(d / "transformed.json", tp);

    CliResult ve = run_cli(d, "verify --key key.priv.json --program '" + data_file("fun1.slp") +
                                  "' --transformed transformed.json --version 0 --trials 10 "
                                  "--input-bound 20 --seed 2");
    CHECK(ve.code == 1);
    CHECK(ve.out.find("FAIL trial") != std::string::npos);
    CHECK(ve.out.find("u = (") != std::string::npos);
    CHECK(ve.out.find("expected (") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("cli: ciphertext from one key is rejected by another key's program") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11").code == 0);
    CHECK(run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                         "' --version 0").code == 0);
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 12 "
                     "--out-private other.priv.json --out-public other.pub.json").code == 0);
    CHECK(run_cli(d, "encrypt --key other.pub.json --version 0 --input 2,3 --out other_ct.json")
              .code == 0);
    CliResult rn = run_cli(d, "run --transformed transformed.json --ct other_ct.json");
    CHECK(rn.code == 1);
    CHECK(rn.out.find("different keys") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("cli: stats and emit") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 2 --degree 2 --coeff-bound 3 --monomials 5 --seed 11").code == 0);

    CliResult sp = run_cli(d, "stats --key key.priv.json");
    CHECK(sp.code == 0);
    CHECK(sp.out.find("bit width B") != std::string::npos);
    CHECK(sp.out.find("psi:") != std::string::npos);

    CliResult su = run_cli(d, "stats --key key.pub.json --bits 16");
    CHECK(su.code == 0);
    CHECK(su.out.find("public key") != std::string::npos);

    CliResult em = run_cli(d, "emit --program '" + data_file("fun1.slp") + "'");
    CHECK(em.code == 0);
    CHECK(em.out.find("input x1, x2 = u1, u2") != std::string::npos);
    CHECK(em.out.find("output x1, x2") != std::string::npos);

    CHECK(run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                         "' --version 0").code == 0);
    CliResult et = run_cli(d, "emit --transformed transformed.json");
    CHECK(et.code == 0);
    CHECK(et.out.find("encrypted program: scheme version 0") != std::string::npos);

    // exactly one source is required
    CHECK(run_cli(d, "emit").code == 2);
    CHECK(run_cli(d, "emit --program a.slp --transformed b.json").code == 2);
    fs::remove_all(d);
}

TEST_CASE("cli: public artifacts never carry the inverse map") {
    NEED_CLI();
    fs::path d = fresh_dir();
    CHECK(run_cli(d, "keygen --n 4 --degree 2 --coeff-bound 1000 --monomials 40 --seed 7 "
                     "--rng-bound 50").code == 0);
    CHECK(run_cli(d, "transform --key key.priv.json --program '" + data_file("fun1.slp") +
                         "' --version 2 --rand-slots 2 --seed 3").code == 0);
    CHECK(run_cli(d, "encrypt --key key.pub.json --scheme scheme.json --input 2,3 --enc-seed 5")
              .code == 0);
    for (const char* name : {"key.pub.json", "transformed.json", "ct.json"}) {
        std::string text = fixtures::read_text_file((d / name).string());
        CHECK(text.find("\"psi\"") == std::string::npos);
        CHECK(text.find("\"seed\"") == std::string::npos);
        CHECK(text.find("\"factorization\"") == std::string::npos);
    }
    fs::remove_all(d);
}
