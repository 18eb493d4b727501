#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string cli_path;

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run(const std::string &args) {
    const std::string cmd = cli_path + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        output.append(buf, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Fresh scratch directory, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pnflow-cli-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char *name) const { return (path / name).string(); }
    static inline int counter = 0;
};

std::vector<std::string> split(const std::string &line, char sep = '\t') {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        out.push_back(line);
    return out;
}

void make_dumbbell(const TempDir &dir) {
    auto r = run("gen dumbbell --rows 7 --cols 7 --out " + (dir / "db.tsv") +
                 " --left-out " + (dir / "left.txt") + " --right-out " +
                 (dir / "right.txt"));
    REQUIRE(r.exit_code == 0);
}

} // namespace

TEST_CASE("diffuse on a dumbbell recovers the left side exactly") {
    TempDir dir;
    make_dumbbell(dir);
    // Mass slightly above vol(left) = 169 so the sweep can cover the whole
    // side; seed 24 is the center of the left grid (degree 4).
    auto r = run("diffuse --graph " + (dir / "db.tsv") +
                 " --seed 24 --p 4 --delta 43 --mu 0.01 --truth " +
                 (dir / "left.txt") + " --cluster-out " + (dir / "c.txt") +
                 " --x-out " + (dir / "x.tsv") + " --metrics-out " +
                 (dir / "m.tsv"));
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(dir / "c.txt") == slurp(dir / "left.txt"));

    const auto table = lines(slurp(dir / "m.tsv"));
    REQUIRE(table.size() == 2);
    CHECK(table[0] ==
          "precision\trecall\tf1\tjaccard\tconductance\tdelta\tp\teps\tpushes"
          "\ttouched");
    const auto row = split(table[1]);
    REQUIRE(row.size() == 10);
    CHECK(row[2] == "1"); // f1
    CHECK(std::stod(row[4]) == doctest::Approx(1.0 / 169.0));
}

TEST_CASE("infeasible mass exits with code 3 and writes nothing") {
    TempDir dir;
    make_dumbbell(dir);
    auto r = run("diffuse --graph " + (dir / "db.tsv") +
                 " --seed 24 --p 2 --delta 1000 --cluster-out " +
                 (dir / "c.txt") + " --x-out " + (dir / "x.tsv"));
    CHECK(r.exit_code == 3);
    CHECK_FALSE(fs::exists(dir / "c.txt"));
    CHECK_FALSE(fs::exists(dir / "x.tsv"));
}

TEST_CASE("repeated runs are byte-identical") {
    TempDir dir;
    make_dumbbell(dir);
    const std::string base = "diffuse --graph " + (dir / "db.tsv") +
                             " --seed 24 --p 2 --delta 30 --rng-seed 7";
    for (const char *tag : {"a", "b"}) {
        fs::create_directories(dir.path / tag);
        REQUIRE(run(base + " --cluster-out " + (dir.path / tag / "c.txt").string() +
                    " --x-out " + (dir.path / tag / "x.tsv").string() +
                    " --metrics-out " + (dir.path / tag / "m.tsv").string() +
                    " --trace " + (dir.path / tag / "t.tsv").string())
                    .exit_code == 0);
    }
    for (const char *name : {"c.txt", "x.tsv", "m.tsv", "t.tsv"})
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
}

TEST_CASE("budget exhaustion exits with code 4") {
    TempDir dir;
    make_dumbbell(dir);
    auto r = run("diffuse --graph " + (dir / "db.tsv") +
                 " --seed 24 --p 4 --delta 43 --budget 5 --cluster-out " +
                 (dir / "c.txt") + " --x-out " + (dir / "x.tsv"));
    CHECK(r.exit_code == 4);
    CHECK_FALSE(fs::exists(dir / "c.txt"));
}

TEST_CASE("bad flags and missing files map to parse and io exits") {
    TempDir dir;
    CHECK(run("diffuse --no-such-flag").exit_code == 2);
    CHECK(run("diffuse --graph " + (dir / "missing.tsv") +
              " --seed 0 --p 2 --delta 1")
              .exit_code == 5);
    make_dumbbell(dir);
    // mu on the p = 2 path is inconsistent.
    CHECK(run("diffuse --graph " + (dir / "db.tsv") +
              " --seed 24 --p 2 --delta 2 --mu 0.1")
              .exit_code == 2);
}

TEST_CASE("sweep and eval round-trip diffuse outputs") {
    TempDir dir;
    make_dumbbell(dir);
    REQUIRE(run("diffuse --graph " + (dir / "db.tsv") +
                " --seed 24 --p 4 --delta 43 --mu 0.01 --cluster-out " +
                (dir / "c.txt") + " --x-out " + (dir / "x.tsv"))
                .exit_code == 0);
    auto sw = run("sweep --graph " + (dir / "db.tsv") + " --x " +
                  (dir / "x.tsv") + " --cluster-out " + (dir / "c2.txt"));
    REQUIRE(sw.exit_code == 0);
    CHECK(slurp(dir / "c2.txt") == slurp(dir / "c.txt"));

    auto ev = run("eval --graph " + (dir / "db.tsv") + " --cluster " +
                  (dir / "c.txt") + " --truth " + (dir / "left.txt"));
    REQUIRE(ev.exit_code == 0);
    const auto table = lines(ev.output);
    REQUIRE(table.size() == 2);
    CHECK(split(table[1])[2] == "1"); // f1 against the left side
}

TEST_CASE("experiment with one trial matches diffuse + eval") {
    TempDir dir;
    REQUIRE(run("gen planted --blocks 25 25 25 25 --p-in 0.5 --p-out 0.02"
                " --seed 3 --out " +
                (dir / "pp.tsv") + " --blocks-out " + (dir / "block"))
                .exit_code == 0);
    auto exp = run("experiment --graph " + (dir / "pp.tsv") + " --truth " +
                   (dir / "block0.txt") +
                   " --p 4 --mass-mult 2 --trials 1 --mu 0.05 --rng-seed 11");
    REQUIRE(exp.exit_code == 0);
    const auto table = lines(exp.output);
    REQUIRE(table.size() == 4); // header, trial row, mean, stddev
    const auto row = split(table[1]);
    REQUIRE(row.size() == 12);
    const std::string seed = row[3];

    // vol(block0) via a feasibility-free diffuse with the same derived delta.
    const std::string delta = row[4];
    REQUIRE(run("diffuse --graph " + (dir / "pp.tsv") + " --seed " + seed +
                " --p 4 --delta " + delta + " --mu 0.05 --rng-seed 11 --truth " +
                (dir / "block0.txt") + " --cluster-out " + (dir / "c.txt") +
                " --x-out " + (dir / "x.tsv") + " --metrics-out " +
                (dir / "m.tsv"))
                .exit_code == 0);
    const auto metrics = split(lines(slurp(dir / "m.tsv"))[1]);
    CHECK(metrics[2] == row[7]);  // f1
    CHECK(metrics[4] == row[9]);  // conductance
    CHECK(metrics[8] == row[10]); // pushes

    // Summary rows carry the cell parameters and the trial's own stats.
    CHECK(split(table[2])[0] == "mean");
    CHECK(split(table[2])[7] == row[7]);
    CHECK(split(table[3])[0] == "stddev");
}

TEST_CASE("gen planted is deterministic in its seed") {
    TempDir dir;
    REQUIRE(run("gen planted --blocks 20 20 --p-in 0.4 --p-out 0.05 --seed 9"
                " --out " +
                (dir / "a.tsv"))
                .exit_code == 0);
    REQUIRE(run("gen planted --blocks 20 20 --p-in 0.4 --p-out 0.05 --seed 9"
                " --out " +
                (dir / "b.tsv"))
                .exit_code == 0);
    CHECK(slurp(dir / "a.tsv") == slurp(dir / "b.tsv"));
}

int main(int argc, char **argv) {
    doctest::Context context;
    context.applyCommandLine(argc > 1 ? argc - 1 : argc, argv);
    if (argc > 1)
        cli_path = argv[argc - 1];
    if (cli_path.empty() || !fs::exists(cli_path)) {
        std::fprintf(stderr, "usage: cli_tests [doctest args] <pnflow binary>\n");
        return 1;
    }
    return context.run();
}
