#include "usc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace usc::cli {

using nlohmann::json;

ConfigError::ConfigError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                              : message),
      line_(line),
      column_(column)
{
}

std::string to_string(Task t)
{
    switch (t) {
    case Task::Evolve: return "evolve";
    case Task::Spectrum: return "spectrum";
    case Task::SteadyState: return "steady_state";
    case Task::SchemeCheck: return "scheme_check";
    case Task::KerrVerify: return "kerr_verify";
    case Task::AmplifyCheck: return "amplify_check";
    }
    return "?";
}

namespace {

struct Position {
    std::size_t line = 0, column = 0;
};

Position position_at(const std::string& text, std::size_t offset)
{
    Position p{1, 1};
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

// Best-effort location of a key path: each key is searched after the previous one.
Position locate(const std::string& text, const std::vector<std::string>& path, std::size_t occurrence = 1)
{
    std::size_t pos = 0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const std::string quoted = "\"" + path[k] + "\"";
        const std::size_t reps = k + 1 == path.size() ? occurrence : 1;
        for (std::size_t r = 0; r < reps; ++r) {
            const std::size_t found = text.find(quoted, r == 0 ? pos : pos + 1);
            if (found == std::string::npos) return {};
            pos = found;
        }
    }
    return position_at(text, pos);
}

class Checker {
public:
    explicit Checker(const std::string& text) : text_(text) {}

    [[noreturn]] void fail(const std::string& msg, const std::vector<std::string>& path) const
    {
        const Position p = locate(text_, path);
        throw ConfigError(msg, p.line, p.column);
    }

    void only_keys(const json& obj, const std::set<std::string>& allowed, const std::vector<std::string>& path) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!allowed.count(it.key())) {
                auto p = path;
                p.push_back(it.key());
                std::string where = path.empty() ? "top level" : "'" + path.back() + "'";
                fail("unknown key '" + it.key() + "' in " + where, p);
            }
        }
    }

    const json& object(const json& obj, const std::string& key, const std::vector<std::string>& path) const
    {
        const json& v = obj.at(key);
        if (!v.is_object()) fail("'" + key + "' must be an object", with(path, key));
        return v;
    }

    std::string string(const json& obj, const std::string& key, const std::vector<std::string>& path) const
    {
        const json& v = obj.at(key);
        if (!v.is_string()) fail("'" + key + "' must be a string", with(path, key));
        return v.get<std::string>();
    }

    double number(const json& obj, const std::string& key, const std::vector<std::string>& path) const
    {
        const json& v = obj.at(key);
        if (!v.is_number()) fail("'" + key + "' must be a number", with(path, key));
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail("'" + key + "' must be finite", with(path, key));
        return x;
    }

    std::size_t count(const json& obj, const std::string& key, const std::vector<std::string>& path) const
    {
        const json& v = obj.at(key);
        if (!v.is_number_integer() && !v.is_number_unsigned()) fail("'" + key + "' must be an integer", with(path, key));
        const long long x = v.get<long long>();
        if (x < 0) fail("'" + key + "' must be non-negative", with(path, key));
        return static_cast<std::size_t>(x);
    }

    static std::vector<std::string> with(std::vector<std::string> p, const std::string& k)
    {
        p.push_back(k);
        return p;
    }

private:
    const std::string& text_;
};

json parse_strict(const std::string& text)
{
    // Duplicate keys are legal JSON but ambiguous in a config.
    std::vector<std::set<std::string>> seen;
    std::map<std::string, std::size_t> repeats;
    std::string duplicate;
    auto cb = [&](int, json::parse_event_t ev, json& parsed) {
        if (ev == json::parse_event_t::object_start) {
            seen.emplace_back();
        } else if (ev == json::parse_event_t::object_end) {
            if (!seen.empty()) seen.pop_back();
        } else if (ev == json::parse_event_t::key && !seen.empty() && duplicate.empty()) {
            const auto key = parsed.get<std::string>();
            ++repeats[key];
            if (!seen.back().insert(key).second) duplicate = key;
        }
        return true;
    };
    json j;
    try {
        j = json::parse(text, cb);
    } catch (const json::parse_error& e) {
        const Position p = position_at(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        if (auto k = what.find("syntax error"); k != std::string::npos) what = what.substr(k);
        throw ConfigError("invalid JSON: " + what, p.line, p.column);
    }
    if (!duplicate.empty()) {
        const Position p = locate(text, {duplicate}, repeats[duplicate]);
        throw ConfigError("duplicate key '" + duplicate + "'", p.line, p.column);
    }
    return j;
}

std::optional<Task> task_from(const std::string& s)
{
    for (Task t : {Task::Evolve, Task::Spectrum, Task::SteadyState, Task::SchemeCheck, Task::KerrVerify,
                   Task::AmplifyCheck}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

bool valid_name(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    }) && s.front() != '.';
}

} // namespace

ExperimentConfig parse_config(const std::string& text)
{
    const json j = parse_strict(text);
    const Checker ck(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object", 1, 1);
    ck.only_keys(j,
                 {"name", "model", "task", "description", "reference_frequency", "parameters", "truncations",
                  "initial", "grid", "sweep", "outputs", "convergence"},
                 {});
    for (const char* req : {"name", "model", "task"}) {
        if (!j.contains(req)) throw ConfigError(std::string("missing required key '") + req + "'", 1, 1);
    }

    ExperimentConfig c;
    c.name = ck.string(j, "name", {});
    if (!valid_name(c.name)) ck.fail("'name' may only use letters, digits, '_', '-' and '.'", {"name"});
    c.model = ck.string(j, "model", {});
    const Entry* e = find_entry(c.model);
    if (!e) ck.fail("unknown model '" + c.model + "' (see 'usc list')", {"model"});
    const auto task = task_from(ck.string(j, "task", {}));
    if (!task) ck.fail("unknown task '" + j.at("task").get<std::string>() + "'", {"task"});
    c.task = *task;
    if (std::find(e->tasks.begin(), e->tasks.end(), c.task) == e->tasks.end()) {
        std::string ok;
        for (Task t : e->tasks) ok += (ok.empty() ? "" : ", ") + to_string(t);
        ck.fail("model '" + c.model + "' does not support task '" + to_string(c.task) + "' (supports " + ok + ")",
                {"task"});
    }
    if (j.contains("description")) c.description = ck.string(j, "description", {});

    if (j.contains("reference_frequency")) {
        const json& r = ck.object(j, "reference_frequency", {});
        ck.only_keys(r, {"value", "unit"}, {"reference_frequency"});
        if (r.contains("value")) c.reference_value = ck.number(r, "value", {"reference_frequency"});
        if (!(c.reference_value > 0.0)) ck.fail("reference frequency must be positive", {"reference_frequency", "value"});
        if (r.contains("unit")) c.reference_unit = ck.string(r, "unit", {"reference_frequency"});
    }

    if (j.contains("parameters")) {
        const json& p = ck.object(j, "parameters", {});
        for (auto it = p.begin(); it != p.end(); ++it) {
            const std::vector<std::string> path{"parameters", it.key()};
            auto spec = std::find_if(e->params.begin(), e->params.end(),
                                     [&](const ParamSpec& s) { return s.name == it.key(); });
            if (spec == e->params.end()) ck.fail("unknown parameter '" + it.key() + "' for model '" + c.model + "'", path);
            if (spec->type == ParamType::Choice) {
                const std::string v = ck.string(p, it.key(), {"parameters"});
                if (std::find(spec->choices.begin(), spec->choices.end(), v) == spec->choices.end()) {
                    std::string ok;
                    for (const auto& s : spec->choices) ok += (ok.empty() ? "" : ", ") + s;
                    ck.fail("parameter '" + it.key() + "' must be one of " + ok, path);
                }
                c.choices[it.key()] = v;
            } else if (spec->type == ParamType::Integer) {
                c.numbers[it.key()] = static_cast<double>(ck.count(p, it.key(), {"parameters"}));
            } else {
                c.numbers[it.key()] = ck.number(p, it.key(), {"parameters"});
            }
        }
    }

    if (j.contains("truncations")) {
        const json& t = ck.object(j, "truncations", {});
        for (auto it = t.begin(); it != t.end(); ++it) {
            const std::vector<std::string> path{"truncations", it.key()};
            auto m = std::find_if(e->modes.begin(), e->modes.end(), [&](const ModeSpec& s) { return s.name == it.key(); });
            if (m == e->modes.end()) ck.fail("unknown mode '" + it.key() + "' for model '" + c.model + "'", path);
            if (m->fixed) ck.fail("mode '" + it.key() + "' has a fixed dimension", path);
            if (!m->follows.empty()) ck.fail("mode '" + it.key() + "' follows the cutoff of '" + m->follows + "'", path);
            const std::size_t n = ck.count(t, it.key(), {"truncations"});
            if (n < 2) ck.fail("cutoff must be at least 2", path);
            c.truncations[it.key()] = n;
        }
    }

    if (j.contains("initial")) {
        const json& t = ck.object(j, "initial", {});
        for (auto it = t.begin(); it != t.end(); ++it) {
            const std::vector<std::string> path{"initial", it.key()};
            auto m = std::find_if(e->modes.begin(), e->modes.end(), [&](const ModeSpec& s) { return s.name == it.key(); });
            if (m == e->modes.end()) ck.fail("unknown mode '" + it.key() + "' in initial state", path);
            const std::size_t level = ck.count(t, it.key(), {"initial"});
            const std::string& owner = m->follows.empty() ? m->name : m->follows;
            auto src = std::find_if(e->modes.begin(), e->modes.end(), [&](const ModeSpec& s) { return s.name == owner; });
            const std::size_t cut = c.truncations.count(owner) ? c.truncations[owner] : src->cutoff;
            if (m->kind != ModeKind::Spin && level >= cut) ck.fail("initial level beyond the cutoff", path);
            c.initial[it.key()] = level;
        }
    }

    if (j.contains("grid")) {
        const json& g = ck.object(j, "grid", {});
        ck.only_keys(g, {"t0", "t1", "n_points", "tolerance"}, {"grid"});
        TimeGrid grid;
        if (g.contains("t0")) grid.t0 = ck.number(g, "t0", {"grid"});
        if (!g.contains("t1")) ck.fail("grid needs 't1'", {"grid"});
        grid.t1 = ck.number(g, "t1", {"grid"});
        if (g.contains("n_points")) grid.n_points = ck.count(g, "n_points", {"grid"});
        if (g.contains("tolerance")) grid.tolerance = ck.number(g, "tolerance", {"grid"});
        try {
            grid.validate();
        } catch (const Error& err) {
            ck.fail(std::string("invalid grid: ") + err.what(), {"grid"});
        }
        c.grid = grid;
    }

    if (j.contains("sweep")) {
        const json& s = ck.object(j, "sweep", {});
        ck.only_keys(s, {"parameter", "values", "start", "stop", "count", "levels"}, {"sweep"});
        if (!s.contains("parameter")) ck.fail("sweep needs 'parameter'", {"sweep"});
        SweepConfig sw;
        sw.parameter = ck.string(s, "parameter", {"sweep"});
        auto spec = std::find_if(e->params.begin(), e->params.end(),
                                 [&](const ParamSpec& p) { return p.name == sw.parameter; });
        if (spec == e->params.end() || spec->type == ParamType::Choice) {
            ck.fail("sweep parameter '" + sw.parameter + "' is not a numeric parameter of '" + c.model + "'",
                    {"sweep", "parameter"});
        }
        if (s.contains("values")) {
            if (s.contains("start") || s.contains("stop") || s.contains("count")) {
                ck.fail("sweep takes either 'values' or 'start'/'stop'/'count'", {"sweep"});
            }
            const json& v = s.at("values");
            if (!v.is_array() || v.empty()) ck.fail("'values' must be a non-empty array", {"sweep", "values"});
            for (const auto& x : v) {
                if (!x.is_number()) ck.fail("'values' must hold numbers", {"sweep", "values"});
                sw.values.push_back(x.get<double>());
            }
        } else {
            for (const char* k : {"start", "stop", "count"}) {
                if (!s.contains(k)) ck.fail(std::string("sweep needs 'values' or '") + k + "'", {"sweep"});
            }
            const double a = ck.number(s, "start", {"sweep"}), b = ck.number(s, "stop", {"sweep"});
            const std::size_t n = ck.count(s, "count", {"sweep"});
            if (n < 1) ck.fail("'count' must be positive", {"sweep", "count"});
            for (std::size_t k = 0; k < n; ++k) {
                sw.values.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
            }
        }
        if (spec->type == ParamType::Integer) {
            for (double x : sw.values) {
                if (x < 0 || x != std::floor(x)) ck.fail("integer parameter swept over a non-integer value", {"sweep"});
            }
        }
        if (s.contains("levels")) sw.levels = ck.count(s, "levels", {"sweep"});
        if (sw.levels < 1) ck.fail("'levels' must be positive", {"sweep", "levels"});
        c.sweep = sw;
    }

    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        if (!o.is_array()) ck.fail("'outputs' must be an array of names", {"outputs"});
        for (const auto& x : o) {
            if (!x.is_string()) ck.fail("'outputs' must hold strings", {"outputs"});
            c.outputs.push_back(x.get<std::string>());
        }
    }

    if (j.contains("convergence")) {
        const json& v = ck.object(j, "convergence", {});
        ck.only_keys(v, {"check", "tolerance"}, {"convergence"});
        if (v.contains("check")) {
            if (!v.at("check").is_boolean()) ck.fail("'check' must be true or false", {"convergence", "check"});
            c.convergence_check = v.at("check").get<bool>();
        }
        if (v.contains("tolerance")) c.convergence_tolerance = ck.number(v, "tolerance", {"convergence"});
        if (!(c.convergence_tolerance > 0.0)) ck.fail("convergence tolerance must be positive", {"convergence"});
    }

    c.echo = j.dump(2);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace usc::cli
