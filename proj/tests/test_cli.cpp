#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

const std::filesystem::path kWorkDir =
    std::filesystem::temp_directory_path() / "sparsestab_cli_test";

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult run_cli(const std::string& args) {
    const std::filesystem::path out = kWorkDir / "stdout.txt";
    const std::filesystem::path err = kWorkDir / "stderr.txt";
    const std::string cmd = std::string(SPARSESTAB_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("setup") {
    std::filesystem::create_directories(kWorkDir);
    CHECK(std::filesystem::exists(kWorkDir));
}

TEST_CASE("extent subcommand") {
    const CliResult r = run_cli("extent --phi 0.7853981633974483 --t 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("extent 1.17157") != std::string::npos);
    CHECK(r.out.find("l1 1.08239") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("extent --phi 0.5").exit_code == 2);           // missing --t
    CHECK(run_cli("extent --phi 0.5 --t 1 --bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // subcommand required
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("phi outside the open interval exits with 3") {
    CHECK(run_cli("extent --phi 0 --t 1").exit_code == 3);
    CHECK(run_cli("extent --phi 1.5707963267948966 --t 1").exit_code == 3);
}

TEST_CASE("sparsify then norm round trip") {
    const std::filesystem::path file = kWorkDir / "decomp.json";
    const CliResult s = run_cli(
        "sparsify --phi 0.7853981633974483 --t 10 --delta 0.25 --mode correlated --seed 7 --out " +
        file.string());
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("k 22") != std::string::npos);
    REQUIRE(std::filesystem::exists(file));

    const CliResult exact = run_cli("norm --in " + file.string() + " --method exact");
    CHECK(exact.exit_code == 0);
    CHECK(exact.out.find("norm ") != std::string::npos);

    const CliResult fast = run_cli("norm --in " + file.string() +
                                   " --method fastnorm --epsilon 0.2 --pfail 0.2 --seed 3");
    CHECK(fast.exit_code == 0);
    CHECK(fast.out.find("samples 1000") != std::string::npos);  // ceil(8/(0.04*0.2))

    const CliResult badmethod = run_cli("norm --in " + file.string() + " --method magic");
    CHECK(badmethod.exit_code == 3);
}

TEST_CASE("sparsify determinism across invocations") {
    const std::filesystem::path a = kWorkDir / "a.json";
    const std::filesystem::path b = kWorkDir / "b.json";
    const std::string base =
        "sparsify --phi 0.7853981633974483 --t 8 --delta 0.3 --mode iid --seed 99 --out ";
    CHECK(run_cli(base + a.string()).exit_code == 0);
    CHECK(run_cli(base + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("correlated mode away from pi/4 exits with 3") {
    const CliResult r = run_cli("sparsify --phi 1.0 --t 10 --delta 0.25 --mode correlated "
                                "--seed 1 --out " +
                                (kWorkDir / "never.json").string());
    CHECK(r.exit_code == 3);
    CHECK_FALSE(std::filesystem::exists(kWorkDir / "never.json"));
}

TEST_CASE("infeasible delta exits with 3") {
    const CliResult r = run_cli("sparsify --phi 0.7853981633974483 --t 2 --delta 0.9 "
                                "--mode correlated --seed 1 --out " +
                                (kWorkDir / "never2.json").string());
    CHECK(r.exit_code == 3);
}

TEST_CASE("norm rejects malformed input with 2") {
    const std::filesystem::path bad = kWorkDir / "bad.json";
    std::ofstream(bad) << "{\"t\": 1}";
    CHECK(run_cli("norm --in " + bad.string() + " --method exact").exit_code == 2);
}

TEST_CASE("validate subcommand") {
    const std::filesystem::path rep = kWorkDir / "report.json";
    const CliResult r = run_cli("validate --t 6 --delta 0.4 --mode iid --runs 50 --seed 4 --out " +
                                rep.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("assertion           PASS") != std::string::npos);
    CHECK(std::filesystem::exists(rep));
}

TEST_CASE("tailcheck subcommand") {
    const CliResult r = run_cli("tailcheck --t 4 --delta 0.2 --mode iid --runs 20 --seed 6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("VACUOUS") != std::string::npos);
}

TEST_CASE("bench subcommand") {
    const std::filesystem::path dir = kWorkDir / "bench";
    const CliResult r = run_cli("bench --t-min 14 --t-max 14 --runs 2 --L 4 --seed 1 --out-dir " +
                                dir.string());
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir / "runs.csv"));
    CHECK(std::filesystem::exists(dir / "worst_case.csv"));
    CHECK(std::filesystem::exists(dir / "difference.csv"));
}

TEST_CASE("teardown") {
    std::filesystem::remove_all(kWorkDir);
    CHECK_FALSE(std::filesystem::exists(kWorkDir));
}
