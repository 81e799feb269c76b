#include "usc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>

namespace usc::cli {

namespace {

namespace fs = std::filesystem;

// Collects library warnings for the metadata and echoes them to stderr.
class WarningSink {
public:
    explicit WarningSink(std::ostream& err) : err_(err)
    {
        set_warning_handler([this](std::string_view m) {
            std::lock_guard lock(mutex_);
            if (seen_.insert(std::string(m)).second) err_ << "warning: " << m << "\n";
        });
    }
    ~WarningSink() { set_warning_handler({}); }
    WarningSink(const WarningSink&) = delete;
    WarningSink& operator=(const WarningSink&) = delete;

    std::vector<std::string> sorted() const
    {
        std::lock_guard lock(mutex_);
        return {seen_.begin(), seen_.end()};
    }

private:
    std::ostream& err_;
    mutable std::mutex mutex_;
    std::set<std::string> seen_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Prepared {
    ExperimentConfig config;
    const Entry* entry = nullptr;
    Args args;
};

Prepared prepare(const std::string& path)
{
    Prepared p;
    p.config = load_config(path);
    p.entry = find_entry(p.config.model);
    if (!p.entry) throw ConfigError("unknown model '" + p.config.model + "'");
    p.args = resolve_args(*p.entry, p.config);
    return p;
}

std::string output_path(const RunOptions& opt, const std::string& file)
{
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + opt.out_dir + "': " + ec.message());
    return (fs::path(opt.out_dir) / file).string();
}

void finish(const Prepared& p, const RunOptions& opt, const TaskOutput& o, const Convergence& conv,
            std::vector<std::pair<std::string, double>> timings, const WarningSink& sink, std::ostream& out)
{
    const std::string csv = output_path(opt, p.config.name + ".csv");
    const std::string meta = output_path(opt, p.config.name + ".meta.json");
    write_csv_file(o.table, csv);
    RunMeta m;
    m.config_echo = p.config.echo;
    m.config_hash = hash_text(p.config.echo);
    m.reference_unit = p.config.reference_unit;
    m.reference_value = p.config.reference_value;
    m.convergence = conv;
    m.summary = o.summary;
    m.timings = std::move(timings);
    m.table_metadata = o.table.metadata;
    m.warnings = sink.sorted();
    write_meta_file(m, meta);
    for (const auto& [k, v] : o.summary) out << k << " = " << format_number(v) << "\n";
    out << "wrote " << csv << "\n";
}

int report_convergence(const Convergence& conv, std::ostream& err)
{
    if (conv.passed()) return ExitCode::Ok;
    err << "truncation not converged: doubling the cutoffs changed the results by " << format_number(conv.max_delta)
        << " (tolerance " << format_number(conv.tolerance) << ")\n";
    return ExitCode::ConvergenceFailure;
}

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return ExitCode::ConfigFailure;
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return is_convergence_kind(e.kind()) ? ExitCode::ConvergenceFailure : ExitCode::PhysicsFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::PhysicsFailure;
    }
}

} // namespace

std::optional<std::size_t> env_threads()
{
    const char* s = std::getenv("USC_NUM_THREADS");
    if (!s || !*s) return std::nullopt;
    const std::string v(s);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || ptr != v.data() + v.size() || n == 0) {
        throw ConfigError("USC_NUM_THREADS must be a positive integer, got '" + v + "'");
    }
    return n;
}

int run(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    WarningSink sink(err);
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Prepared p = prepare(config_path);
        const TaskOutput o = run_task(*p.entry, p.config, p.args, opt.jobs);
        const double t_task = seconds_since(t0);
        const Convergence conv = convergence_check(*p.entry, p.config, p.args, o);
        finish(p, opt, o, conv, {{"task", t_task}, {"total", seconds_since(t0)}}, sink, out);
        return report_convergence(conv, err);
    });
}

int sweep(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    WarningSink sink(err);
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Prepared p = prepare(config_path);
        if (!p.config.sweep) throw ConfigError("'sweep' needs a sweep block in the config");
        const SweepConfig& sw = *p.config.sweep;

        if (p.config.task == Task::Spectrum) {
            const TaskOutput o = run_task(*p.entry, p.config, p.args, opt.jobs);
            const double t_task = seconds_since(t0);
            const Convergence conv = convergence_check(*p.entry, p.config, p.args, o);
            finish(p, opt, o, conv, {{"task", t_task}, {"total", seconds_since(t0)}}, sink, out);
            return report_convergence(conv, err);
        }

        // One task per sweep point; each row holds the point's summary
        // (or the last table row when the task has no summary).
        ExperimentConfig point = p.config;
        point.sweep.reset();
        const std::size_t n = sw.values.size();
        std::vector<std::vector<std::pair<std::string, double>>> rows(n);
        std::vector<std::string> errors(n);
        std::vector<bool> convergence_kind(n, false);
        dynamics::parallel_for(n, opt.jobs, [&](std::size_t k) {
            try {
                Args a = p.args;
                a.numbers[sw.parameter] = sw.values[k];
                const TaskOutput o = run_task(*p.entry, point, a);
                if (!o.summary.empty()) {
                    rows[k] = o.summary;
                } else {
                    for (std::size_t c = 0; c < o.table.names.size(); ++c) {
                        rows[k].push_back({o.table.names[c], o.table.rows() ? o.table.columns[c].back() : std::nan("")});
                    }
                }
            } catch (const Error& e) {
                errors[k] = std::string(to_string(e.kind())) + ": " + e.what();
                convergence_kind[k] = is_convergence_kind(e.kind());
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        });

        std::vector<std::string> names;
        for (const auto& r : rows) {
            if (!r.empty()) {
                for (const auto& kv : r) names.push_back(kv.first);
                break;
            }
        }
        TaskOutput o;
        o.table.add_column(sw.parameter, sw.values);
        for (const auto& name : names) {
            std::vector<double> col(n, std::numeric_limits<double>::quiet_NaN());
            for (std::size_t k = 0; k < n; ++k) {
                for (const auto& kv : rows[k]) {
                    if (kv.first == name) col[k] = kv.second;
                }
            }
            o.table.add_column(name, std::move(col));
        }
        o.table.errors = errors;
        if (!o.table.has_errors()) o.table.errors.clear();
        o.summary.push_back({"points", static_cast<double>(n)});
        o.summary.push_back({"failed_points", static_cast<double>(std::count_if(errors.begin(), errors.end(),
                                                                                [](const std::string& s) { return !s.empty(); }))});
        finish(p, opt, o, Convergence{}, {{"total", seconds_since(t0)}}, sink, out);

        int code = ExitCode::Ok;
        for (std::size_t k = 0; k < n; ++k) {
            if (errors[k].empty()) continue;
            err << sw.parameter << " = " << format_number(sw.values[k]) << ": " << errors[k] << "\n";
            code = std::max<int>(code, convergence_kind[k] ? ExitCode::ConvergenceFailure : ExitCode::PhysicsFailure);
        }
        // A physics failure outranks a convergence one.
        if (code == ExitCode::ConvergenceFailure &&
            std::any_of(errors.begin(), errors.end(), [](const std::string& s) { return !s.empty(); })) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!errors[k].empty() && !convergence_kind[k]) return static_cast<int>(ExitCode::PhysicsFailure);
            }
        }
        return code;
    });
}

int list(std::ostream& out)
{
    out << list_schemes();
    return ExitCode::Ok;
}

} // namespace usc::cli
