// CLI contract checks: exit codes, messages, determinism, file outputs.
// Invoked by ctest with the twocenter binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_cli;
std::filesystem::path g_dir;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const auto out_path = g_dir / "stdout.txt";
    const auto err_path = g_dir / "stderr.txt";
    const std::string cmd =
        g_cli + " " + args + " > " + out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok   %s\n", what.c_str());
    } else {
        std::printf("FAIL %s\n", what.c_str());
        ++g_failures;
    }
}

void expect_contains(const std::string& haystack, const std::string& needle,
                     const std::string& what) {
    expect(haystack.find(needle) != std::string::npos, what + " (expected '" + needle + "')");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: twocenter_cli_tests <path-to-twocenter>\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "twocenter_cli_tests";
    std::filesystem::create_directories(g_dir);

    // orbit: happy path writes JSON, CSV and SVG.
    {
        const auto json = (g_dir / "orbit.json").string();
        const auto csv = (g_dir / "orbit.csv").string();
        const auto svg = (g_dir / "orbit.svg").string();
        const RunResult r = run("orbit --mu 0.5 --c -0.5 --k 3 --l 2 --resolution 128 --out " +
                                json + " --csv " + csv + " --svg " + svg);
        expect(r.exit_code == 0, "orbit exits 0");
        expect(std::filesystem::exists(json) && std::filesystem::exists(csv) &&
                   std::filesystem::exists(svg),
               "orbit writes all three files");
        expect_contains(slurp(csv), "q1,q2", "csv carries the header");
        expect_contains(slurp(svg), "<svg", "svg written");
    }

    // orbit: precondition violations exit 2 with the rule named.
    {
        const RunResult r = run("orbit --mu 0.5 --c -0.5 --k 2 --l 4");
        expect(r.exit_code == 2, "non-coprime k,l exits 2");
        expect_contains(r.err, "k and l must be coprime", "coprime message");
    }
    {
        const RunResult r = run("orbit --c -2 --mu 0.5 --k 3 --l 2");
        expect(r.exit_code == 2, "sub-critical c exits 2");
        expect_contains(r.err, "c below critical value c_J = -1", "critical value message");
    }

    // invariants: worked example values in the JSON.
    {
        const RunResult r = run("invariants --mu 0.5 --c -0.5 --k 3 --l 2 --resolution 256");
        expect(r.exit_code == 0, "invariants exits 0");
        expect_contains(r.out, "\"j0\":4", "T_{3,2} j0");
        expect_contains(r.out, "\"n\":2", "T_{3,2} n");
        expect_contains(r.out, "\"jEM\":0", "T_{3,2} jEM");

        const RunResult again = run("invariants --mu 0.5 --c -0.5 --k 3 --l 2 --resolution 256");
        expect(r.out == again.out, "identical flags give byte-identical output");
    }
    {
        const RunResult r = run("invariants --mu 0.5 --c -0.5 --k 2 --l 3 --resolution 256");
        expect(r.exit_code == 0, "invariants (2,3) exits 0");
        expect_contains(r.out, "\"j0\":5", "T_{2,3} j0");
        expect_contains(r.out, "\"jE\":9", "T_{2,3} jE");
        expect_contains(r.out, "\"n\":3", "T_{2,3} n");
        expect_contains(r.out, "\"jEM\":2", "T_{2,3} jEM");
    }

    // invariants --from: round trip equals direct computation.
    {
        const auto json = (g_dir / "roundtrip.json").string();
        run("orbit --mu 0.5 --c -0.5 --k 3 --l 2 --resolution 256 --out " + json);
        const RunResult direct =
            run("invariants --mu 0.5 --c -0.5 --k 3 --l 2 --resolution 256");
        const RunResult loaded = run("invariants --from " + json);
        expect(loaded.exit_code == 0, "invariants --from exits 0");
        expect(direct.out == loaded.out, "--from round trip equals direct computation");
    }

    // sweep: small grid passes; bogus tolerance fails with the check named.
    {
        const RunResult r = run("sweep --mu 0.5 --c auto --max-k 2 --max-l 2 --resolution 192");
        expect(r.exit_code == 0, "small sweep exits 0");
        expect_contains(r.out, "tori fully verified", "sweep summary printed");
    }
    {
        const RunResult r = run("sweep --mu 0.5 --c auto --max-k 0 --max-l 0");
        expect(r.exit_code == 0, "empty sweep exits 0");
        expect_contains(r.out, "0/0", "empty summary");
    }
    {
        const RunResult r = run(
            "sweep --mu 0.5 --c auto --max-k 1 --max-l 1 --resolution 192 --tol-geom 1e-30");
        expect(r.exit_code == 1, "injected failing tolerance exits 1");
        expect_contains(r.out, "first failure:", "failing check named");
    }

    std::printf("%s: %d failure(s)\n", g_failures ? "FAIL" : "PASS", g_failures);
    return g_failures ? 1 : 0;
}
