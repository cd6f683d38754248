// End-to-end checks of the command-line driver: spawns the real binary
// (path passed as argv[1]) and inspects exit codes and output files.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_binary;

int run_cli(const std::string& args) {
    std::string cmd = g_binary + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("simulate writes byte-identical output for identical seeds") {
    namespace fs = std::filesystem;
    fs::path a = fs::temp_directory_path() / "rbb_cli_sim_a";
    fs::path b = fs::temp_directory_path() / "rbb_cli_sim_b";
    fs::remove_all(a);
    fs::remove_all(b);

    CHECK(run_cli("simulate --n 16 --rounds 10 --seed 1 --out " + a.string()) == 0);
    CHECK(run_cli("simulate --n 16 --rounds 10 --seed 1 --out " + b.string()) == 0);

    auto csv_a = slurp(a / "trajectory.csv");
    auto csv_b = slurp(b / "trajectory.csv");
    CHECK(!csv_a.empty());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("round,max_load,empty_bins,overloaded_bins,", 0) == 0);

    // manifest exists and lists the data files
    auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(manifest.contains("spec"));
    CHECK(manifest["spec"]["seed"] == 1);
    bool lists_csv = false;
    for (const auto& f : manifest["outputs"])
        if (f == "trajectory.csv") lists_csv = true;
    CHECK(lists_csv);

    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("exact emits the counterexample rationals") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rbb_cli_exact";
    fs::remove_all(dir);
    CHECK(run_cli("exact --n 2 --trials 50000 --out " + dir.string()) == 0);

    auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    bool p1 = false, p2 = false, p12 = false;
    for (const auto& line : summary["lines"]) {
        if (!line.contains("exact")) continue;
        if (line["exact"]["num"] == "1" && line["exact"]["den"] == "4") p1 = true;
        if (line["exact"]["num"] == "3" && line["exact"]["den"] == "8") p2 = true;
        if (line["exact"]["num"] == "1" && line["exact"]["den"] == "8") p12 = true;
    }
    CHECK(p1);
    CHECK(p2);
    CHECK(p12);
    CHECK(summary["all_pass"] == true);
    fs::remove_all(dir);
}

TEST_CASE("couple validates n and topology") {
    CHECK(run_cli("couple --n 10 --rounds 10 --trials 1") == 1);
    CHECK(run_cli("couple --n 16 --topology ring --rounds 10 --trials 1") == 1);
}

TEST_CASE("unknown flag values fail with exit 1") {
    CHECK(run_cli("simulate --n 16 --strategy nonsense") == 1);
    CHECK(run_cli("simulate --n 1") == 1);
    CHECK(run_cli("exact --n 3 --trials 10") == 1);
}

TEST_CASE("spec file drives an experiment, flags override") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rbb_cli_spec";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path spec = dir / "exp.spec";
    {
        std::ofstream out(spec);
        out << "kind = stabilize\n";
        out << "n = 9999\n"; // overridden below
        out << "trials = 5\n";
        out << "seed = 7\n";
    }
    CHECK(run_cli("stabilize --spec " + spec.string() + " --n 64 --out " +
                  (dir / "out").string()) == 0);
    auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["spec"]["n"] == 64);
    CHECK(summary["spec"]["trials"] == 5);
    CHECK(summary["spec"]["seed"] == 7);
    fs::remove_all(dir);
}

TEST_CASE("bounds prints formula values") {
    CHECK(run_cli("bounds --mu 100 --delta 0.25") == 0);
    CHECK(run_cli("bounds --mu 100 --delta 2.0") == 1); // domain error
}

int main(int argc, char** argv) {
    if (argc > 1) g_binary = argv[argc - 1];
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv);
    return context.run();
}
