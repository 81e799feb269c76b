#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "usc/dynamics.hpp"

// Config-driven experiment runner.
namespace usc::cli {

using dynamics::ResultTable;
using dynamics::TimeGrid;
using hilbert::Operator;

inline constexpr const char* library_version = "1.0.0";

enum ExitCode : int { Ok = 0, ConfigFailure = 2, PhysicsFailure = 3, ConvergenceFailure = 4 };

// Bad config: parse errors and schema violations, with a 1-based position
// in the source text when one is known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

enum class Task { Evolve, Spectrum, SteadyState, SchemeCheck, KerrVerify, AmplifyCheck };

std::string to_string(Task t);

struct SweepConfig {
    std::string parameter;
    std::vector<double> values;
    std::size_t levels = 4;
};

struct ExperimentConfig {
    std::string name;
    std::string model;
    Task task = Task::Evolve;
    std::string description;
    double reference_value = 1.0;
    std::string reference_unit = "1";
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> choices;
    std::map<std::string, std::size_t> truncations;
    std::map<std::string, std::size_t> initial;
    std::optional<TimeGrid> grid;
    std::optional<SweepConfig> sweep;
    std::vector<std::string> outputs;
    bool convergence_check = true;
    double convergence_tolerance = 1e-6;
    // Canonical JSON of the validated input, echoed into the metadata.
    std::string echo;
};

// Strict JSON: unknown keys, duplicate keys and wrong types are rejected.
// Parameter and truncation names are checked against the registry.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// ------------------------------------------------------------- registry

enum class ParamType { Real, Integer, Choice };

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::Real;
    double value = 0.0;
    std::string choice;
    std::vector<std::string> choices;
    std::string doc;
};

enum class ModeKind { Qubit, Boson, Spin, Level };

struct ModeSpec {
    std::string name;
    ModeKind kind = ModeKind::Boson;
    std::size_t cutoff = 10;
    // Fixed-dimension sites cannot be truncated from the config.
    bool fixed = false;
    // Integer parameter giving the number of copies (sites named name0, name1, ...).
    std::string repeat;
    // Spin: dimension is this integer parameter plus one.
    std::string dim_param;
    // Cutoff tied to another mode.
    std::string follows;
};

// A concrete site of the Hilbert space.
struct Site {
    std::string name;
    std::string base;
    ModeKind kind;
    std::size_t dim;
};

// Resolved inputs for one evaluation.
class Args {
public:
    double operator[](const std::string& name) const;
    std::size_t integer(const std::string& name) const;
    const std::string& choice(const std::string& name) const;
    std::size_t cutoff(const std::string& mode) const;

    std::map<std::string, double> numbers;
    std::map<std::string, std::string> choices;
    std::map<std::string, std::size_t> cutoffs;
};

struct System {
    Operator H;
    std::optional<dynamics::TimeDependentH> H_td;
    std::vector<dynamics::Channel> channels;
};

struct CheckResult {
    ResultTable table;
    // Scalars reported in the metadata and used as sweep-row values.
    std::vector<std::pair<std::string, double>> summary;
};

struct Entry {
    std::string name;
    std::string group;
    std::string summary;
    std::vector<ParamSpec> params;
    // Site order of the Hilbert space.
    std::vector<ModeSpec> modes;
    std::vector<Task> tasks;
    std::function<System(const Args&)> system;
    std::function<CheckResult(const Args&, const std::optional<TimeGrid>&)> check;
};

const std::vector<Entry>& registry();
// nullptr when unknown.
const Entry* find_entry(const std::string& name);
// One block per entry with its parameter and truncation schema.
std::string list_schemes();

// Parameter defaults overridden by the config.
Args resolve_args(const Entry& e, const ExperimentConfig& c);
std::vector<Site> layout(const Entry& e, const Args& a);

// --------------------------------------------------------------- tasks

struct TaskOutput {
    ResultTable table;
    std::vector<std::pair<std::string, double>> summary;
};

// jobs parallelizes spectrum sweeps.
TaskOutput run_task(const Entry& e, const ExperimentConfig& c, const Args& a, std::size_t jobs = 1);

struct Convergence {
    bool checked = false;
    double max_delta = 0.0;
    double tolerance = 0.0;
    std::map<std::string, std::size_t> cutoffs, doubled;
    bool passed() const { return !checked || max_delta <= tolerance; }
};

// Re-runs the task with every truncatable cutoff doubled and compares the tables.
Convergence convergence_check(const Entry& e, const ExperimentConfig& c, const Args& a, const TaskOutput& base);

// -------------------------------------------------------------- output

// %.17g, with nan / inf / -inf spelled out.
std::string format_number(double x);
// RFC 4180: header row, CRLF line ends, quoted text fields where needed.
void write_csv(const ResultTable& t, std::ostream& os);
void write_csv_file(const ResultTable& t, const std::string& path);

struct RunMeta {
    std::string config_echo;
    std::string config_hash;
    std::string reference_unit;
    double reference_value = 1.0;
    Convergence convergence;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::pair<std::string, double>> timings;
    std::map<std::string, std::string> table_metadata;
    std::vector<std::string> warnings;
};

void write_meta_file(const RunMeta& m, const std::string& path);
// FNV-1a 64-bit, hex.
std::string hash_text(const std::string& text);

// -------------------------------------------------------------- runner

struct RunOptions {
    std::string out_dir = ".";
    std::size_t jobs = 1;
};

int run(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err);
int sweep(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err);
int list(std::ostream& out);

// Reads USC_NUM_THREADS; returns nullopt when unset, throws ConfigError when malformed.
std::optional<std::size_t> env_threads();

} // namespace usc::cli
