#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "usc/cli.hpp"

using namespace usc;
using namespace usc::cli;
namespace fs = std::filesystem;

namespace {

const std::string source_dir = USC_SOURCE_DIR;
const std::string binary = USC_BINARY;

// Fresh scratch directory per test.
fs::path scratch()
{
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    const fs::path dir = fs::temp_directory_path() / (std::string("usc_cli_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int shell(const std::string& cmd)
{
    const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_path(const std::string& name) { return source_dir + "/configs/" + name + ".json"; }

// Minimal CSV reader: header names and numeric rows.
struct Csv {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;

    explicit Csv(const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string cell;
            std::vector<double> row;
            while (std::getline(ls, cell, ',')) {
                if (header) {
                    names.push_back(cell);
                } else {
                    row.push_back(std::strtod(cell.c_str(), nullptr));
                }
            }
            if (!header) rows.push_back(row);
            header = false;
        }
    }
    double at(std::size_t row, const std::string& name) const
    {
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (names[k] == name) return rows.at(row).at(k);
        }
        throw std::out_of_range("no column " + name);
    }
};

ConfigError parse_error(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "config parsed without error";
    return ConfigError("none");
}

int run_quiet(const std::string& config, const fs::path& out_dir, std::size_t jobs = 1, bool do_sweep = false)
{
    std::ostringstream out, err;
    RunOptions opt;
    opt.out_dir = out_dir.string();
    opt.jobs = jobs;
    return do_sweep ? sweep(config, opt, out, err) : run(config, opt, out, err);
}

} // namespace

// ----------------------------------------------------------------- config

TEST(Config, SyntaxErrorHasPosition)
{
    const auto e = parse_error("{\n  \"name\": \"x\",\n  \"model\": \"jc\",,\n}");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
}

TEST(Config, UnknownKeysAreRejected)
{
    const auto top = parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "grid": {"t1": 1}, "colour": 1})");
    EXPECT_NE(std::string(top.what()).find("colour"), std::string::npos);

    const auto param = parse_error("{\"name\": \"x\", \"model\": \"jc\", \"task\": \"evolve\",\n"
                                   " \"parameters\": {\"g\": 0.1, \"frobnicate\": 2}}");
    EXPECT_NE(std::string(param.what()).find("frobnicate"), std::string::npos);
    EXPECT_EQ(param.line(), 2u);

    const auto mode = parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "truncations": {"mech": 4}})");
    EXPECT_NE(std::string(mode.what()).find("mech"), std::string::npos);
}

TEST(Config, SchemaViolations)
{
    parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "name": "y"})");
    parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "parameters": {"g": "big"}})");
    parse_error(R"({"name": "x", "model": "nope", "task": "evolve"})");
    parse_error(R"({"name": "x", "model": "jc", "task": "kerr_verify"})");
    parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "truncations": {"q": 4}})");
    parse_error(R"({"name": "x", "model": "jc", "task": "spectrum", "sweep": {"parameter": "h", "values": [1]}})");
    parse_error(R"({"name": "x", "model": "jc", "task": "spectrum", "sweep": {"parameter": "g", "values": []}})");
    parse_error(R"({"name": "x", "model": "jc", "task": "evolve", "grid": {"t1": -1}})");
    parse_error(R"({"name": "../x", "model": "jc", "task": "evolve"})");
    parse_error(R"({"model": "jc", "task": "evolve"})");
    parse_error("[1, 2]");
}

TEST(Config, ValidConfigRoundTrip)
{
    const auto c = parse_config(R"({"name": "ok", "model": "jc", "task": "evolve",
        "parameters": {"g": 0.2}, "truncations": {"cav": 7}, "initial": {"q": 1},
        "grid": {"t1": 2, "n_points": 5}, "convergence": {"tolerance": 1e-5}})");
    EXPECT_EQ(c.numbers.at("g"), 0.2);
    EXPECT_EQ(c.truncations.at("cav"), 7u);
    EXPECT_EQ(c.initial.at("q"), 1u);
    ASSERT_TRUE(c.grid);
    EXPECT_EQ(c.grid->n_points, 5u);
    EXPECT_EQ(c.convergence_tolerance, 1e-5);
    EXPECT_FALSE(c.echo.empty());
}

TEST(Config, SweepRange)
{
    const auto c = parse_config(R"({"name": "s", "model": "jc", "task": "spectrum",
        "sweep": {"parameter": "g", "start": 0, "stop": 1, "count": 5}})");
    ASSERT_TRUE(c.sweep);
    EXPECT_EQ(c.sweep->values, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
}

// --------------------------------------------------------------- registry

TEST(Registry, ListsModelsAndSchemes)
{
    EXPECT_GE(registry().size(), 15u);
    for (const char* name : {"jc", "rabi", "two_tone", "ion_bichromatic", "kerr_circuit", "example_III", "parity_chain"}) {
        EXPECT_NE(find_entry(name), nullptr) << name;
    }
    EXPECT_EQ(find_entry("warp_drive"), nullptr);
    const std::string text = list_schemes();
    EXPECT_NE(text.find("two_tone"), std::string::npos);
    EXPECT_NE(text.find("example_III"), std::string::npos);
}

TEST(Registry, DefaultsResolve)
{
    for (const auto& e : registry()) {
        ExperimentConfig c;
        c.model = e.name;
        const Args a = resolve_args(e, c);
        EXPECT_EQ(a.numbers.size() + a.choices.size(), e.params.size()) << e.name;
        EXPECT_NO_THROW(layout(e, a)) << e.name;
    }
}

// ----------------------------------------------------------------- output

TEST(Output, NumberFormat)
{
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(INFINITY), "inf");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    EXPECT_EQ(std::strtod(format_number(1.0 / 3.0).c_str(), nullptr), 1.0 / 3.0);
}

TEST(Output, CsvLayout)
{
    ResultTable t;
    t.add_column("t", {0.0, 0.5});
    t.add_column("x", {1.0, 2.0});
    std::ostringstream os;
    write_csv(t, os);
    EXPECT_EQ(os.str(), "t,x\r\n0,1\r\n0.5,2\r\n");
}

TEST(Output, HashIsStable)
{
    EXPECT_EQ(hash_text("abc"), hash_text("abc"));
    EXPECT_NE(hash_text("abc"), hash_text("abd"));
    EXPECT_EQ(hash_text("").size(), 16u);
}

// ----------------------------------------------------------------- runner

TEST(Runner, VacuumRabiOscillation)
{
    const auto dir = scratch();
    ASSERT_EQ(run_quiet(config_path("jc_vacuum_rabi"), dir), ExitCode::Ok);
    const Csv csv(read_file(dir / "jc_vacuum_rabi.csv"));
    EXPECT_EQ(csv.names, (std::vector<std::string>{"t", "P_e", "n_cav"}));
    ASSERT_EQ(csv.rows.size(), 101u);
    // P_e = cos^2(g t); t1 = pi / (2 g) with g = 0.05.
    for (std::size_t k = 0; k < csv.rows.size(); ++k) {
        const double t = csv.at(k, "t");
        EXPECT_NEAR(csv.at(k, "P_e"), std::pow(std::cos(0.05 * t), 2), 1e-6);
        EXPECT_NEAR(csv.at(k, "P_e") + csv.at(k, "n_cav"), 1.0, 1e-9);
    }
    EXPECT_NEAR(csv.at(100, "P_e"), 0.0, 1e-6);
    EXPECT_TRUE(fs::exists(dir / "jc_vacuum_rabi.meta.json"));
    const std::string meta = read_file(dir / "jc_vacuum_rabi.meta.json");
    EXPECT_NE(meta.find("config_hash"), std::string::npos);
}

TEST(Runner, KerrCircuitResidual)
{
    const auto dir = scratch();
    ASSERT_EQ(run_quiet(config_path("kerr_verify"), dir), ExitCode::Ok);
    const Csv csv(read_file(dir / "kerr_verify.csv"));
    EXPECT_LT(csv.at(0, "residual"), 1e-8);
}

TEST(Runner, RerunIsByteIdentical)
{
    const auto a = scratch() / "a", b = a.parent_path() / "b";
    ASSERT_EQ(run_quiet(config_path("jc_vacuum_rabi"), a), ExitCode::Ok);
    ASSERT_EQ(run_quiet(config_path("jc_vacuum_rabi"), b), ExitCode::Ok);
    EXPECT_EQ(read_file(a / "jc_vacuum_rabi.csv"), read_file(b / "jc_vacuum_rabi.csv"));
}

TEST(Runner, SweepIndependentOfJobs)
{
    const auto a = scratch() / "a", b = a.parent_path() / "b";
    ASSERT_EQ(run_quiet(config_path("example_I_sweep"), a, 1, true), ExitCode::Ok);
    ASSERT_EQ(run_quiet(config_path("example_I_sweep"), b, 8, true), ExitCode::Ok);
    const std::string x = read_file(a / "example_I_sweep.csv");
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, read_file(b / "example_I_sweep.csv"));
}

TEST(Runner, PointSweepIndependentOfJobs)
{
    // Non-spectrum sweeps run one task per point on the worker pool.
    const auto dir = scratch();
    const std::string cfg = write_file(dir / "k.json", R"({"name": "k", "model": "kerr_circuit", "task": "kerr_verify",
        "truncations": {"b": 8}, "sweep": {"parameter": "theta1", "values": [0.2, 0.4, 0.6, 0.8]}})");
    ASSERT_EQ(run_quiet(cfg, dir / "a", 1, true), ExitCode::Ok);
    ASSERT_EQ(run_quiet(cfg, dir / "b", 4, true), ExitCode::Ok);
    EXPECT_EQ(read_file(dir / "a" / "k.csv"), read_file(dir / "b" / "k.csv"));
    const Csv csv(read_file(dir / "a" / "k.csv"));
    EXPECT_EQ(csv.rows.size(), 4u);
}

TEST(Runner, SinglePointSweepMatchesRun)
{
    const auto dir = scratch();
    const std::string base = R"("model": "example_I", "task": "spectrum",
        "parameters": {"g": 0.05, "R": 1.0, "theta": 0.7853981633974483, "f": 0.3, "D1": 1.4},
        "truncations": {"a1": 5}, "convergence": {"check": false})";
    const std::string direct = write_file(dir / "d.json", "{\"name\": \"d\", " + base + "}");
    const std::string swept = write_file(
        dir / "s.json", "{\"name\": \"s\", " + base + R"(, "sweep": {"parameter": "D1", "values": [1.4], "levels": 4}})");
    ASSERT_EQ(run_quiet(direct, dir), ExitCode::Ok);
    ASSERT_EQ(run_quiet(swept, dir, 1, true), ExitCode::Ok);
    const Csv d(read_file(dir / "d.csv")), s(read_file(dir / "s.csv"));
    for (int k = 0; k < 4; ++k) {
        const std::string col = "level_" + std::to_string(k);
        EXPECT_EQ(d.at(0, col), s.at(0, col)) << col;
    }
}

TEST(Runner, ConvergenceFailureIsReported)
{
    // Rabi model at g = 0.5 with a 3-level cavity is far from converged.
    const auto dir = scratch();
    const std::string cfg = write_file(dir / "c.json", R"({"name": "c", "model": "rabi", "task": "evolve",
        "parameters": {"g": 0.5}, "truncations": {"cav": 3}, "initial": {"q": 1},
        "grid": {"t1": 5, "n_points": 11}})");
    EXPECT_EQ(run_quiet(cfg, dir), ExitCode::ConvergenceFailure);
    // The output is still written.
    EXPECT_TRUE(fs::exists(dir / "c.csv"));
}

TEST(Runner, PhysicsFailureIsReported)
{
    const auto dir = scratch();
    const std::string cfg = write_file(dir / "p.json", R"({"name": "p", "model": "two_tone", "task": "spectrum",
        "parameters": {"omega_2": 1.0}, "truncations": {"cav": 4}})");
    EXPECT_EQ(run_quiet(cfg, dir), ExitCode::PhysicsFailure);
}

// ------------------------------------------------------------ executable

TEST(Binary, ExitCodes)
{
    const auto dir = scratch();
    const std::string out = " -o " + dir.string();
    EXPECT_EQ(shell(binary + " list"), 0);
    EXPECT_EQ(shell(binary + " run " + config_path("jc_vacuum_rabi") + out), 0);
    EXPECT_EQ(shell(binary + " run " + source_dir + "/tests/data/bad_syntax.json" + out), 2);
    EXPECT_EQ(shell(binary + " run " + source_dir + "/tests/data/unknown_key.json" + out), 2);
    EXPECT_EQ(shell(binary + " run " + (dir / "missing.json").string() + out), 2);
    EXPECT_EQ(shell(binary + " frobnicate"), 2);
    EXPECT_EQ(shell(binary + " sweep " + config_path("jc_vacuum_rabi") + out), 2);
    EXPECT_EQ(shell(binary + " sweep " + config_path("example_I_sweep") + " --jobs 0" + out), 2);
    const std::string phys = write_file(dir / "p.json", R"({"name": "p", "model": "two_tone", "task": "spectrum",
        "parameters": {"omega_2": 1.0}, "truncations": {"cav": 4}})");
    EXPECT_EQ(shell(binary + " run " + phys + out), 3);
    const std::string conv = write_file(dir / "c.json", R"({"name": "c", "model": "rabi", "task": "evolve",
        "parameters": {"g": 0.5}, "truncations": {"cav": 3}, "initial": {"q": 1}, "grid": {"t1": 5, "n_points": 11}})");
    EXPECT_EQ(shell(binary + " run " + conv + out), 4);
}

TEST(Binary, ThreadEnvironment)
{
    const auto dir = scratch();
    const std::string out = " -o " + dir.string();
    EXPECT_EQ(shell("USC_NUM_THREADS=abc " + binary + " list"), 2);
    EXPECT_EQ(shell("USC_NUM_THREADS=0 " + binary + " list"), 2);
    EXPECT_EQ(shell("USC_NUM_THREADS=4x " + binary + " list"), 2);
    EXPECT_EQ(shell("USC_NUM_THREADS=3 " + binary + " sweep " + config_path("example_I_sweep") + out), 0);
}

TEST(Binary, CsvIdenticalAcrossJobCounts)
{
    const auto dir = scratch();
    ASSERT_EQ(shell(binary + " sweep " + config_path("example_I_sweep") + " --jobs 1 -o " + (dir / "a").string()), 0);
    ASSERT_EQ(shell(binary + " sweep " + config_path("example_I_sweep") + " --jobs 8 -o " + (dir / "b").string()), 0);
    ASSERT_EQ(shell("USC_NUM_THREADS=8 " + binary + " sweep " + config_path("example_I_sweep") + " -o " +
                    (dir / "c").string()),
              0);
    const std::string a = read_file(dir / "a" / "example_I_sweep.csv");
    EXPECT_EQ(a, read_file(dir / "b" / "example_I_sweep.csv"));
    EXPECT_EQ(a, read_file(dir / "c" / "example_I_sweep.csv"));
}

TEST(Runner, EnvThreadsParsing)
{
    ::unsetenv("USC_NUM_THREADS");
    EXPECT_FALSE(env_threads());
    ::setenv("USC_NUM_THREADS", "6", 1);
    EXPECT_EQ(env_threads(), 6u);
    ::setenv("USC_NUM_THREADS", "-1", 1);
    EXPECT_THROW(env_threads(), ConfigError);
    ::unsetenv("USC_NUM_THREADS");
}
