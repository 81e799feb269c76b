#include "usc/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

namespace usc::cli {

using json = nlohmann::ordered_json;

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// JSON has no nan / inf; those go in as strings.
json number(double x)
{
    if (std::isfinite(x)) return x;
    return format_number(x);
}

json pairs(const std::vector<std::pair<std::string, double>>& v)
{
    json j = json::object();
    for (const auto& [k, x] : v) j[k] = number(x);
    return j;
}

} // namespace

void write_csv(const ResultTable& t, std::ostream& os)
{
    t.validate();
    const bool errors = t.has_errors();
    for (std::size_t k = 0; k < t.names.size(); ++k) os << (k ? "," : "") << quote(t.names[k]);
    if (errors) os << (t.names.empty() ? "" : ",") << "error";
    os << "\r\n";
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << format_number(t.columns[k][r]);
        if (errors) os << (t.columns.empty() ? "" : ",") << quote(t.errors[r]);
        os << "\r\n";
    }
}

void write_csv_file(const ResultTable& t, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    write_csv(t, f);
    if (!f) throw ConfigError("write failed for '" + path + "'");
}

std::string hash_text(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_meta_file(const RunMeta& m, const std::string& path)
{
    json j;
    j["version"] = library_version;
    j["config_hash"] = m.config_hash;
    j["config"] = m.config_echo.empty() ? json::object() : json::parse(m.config_echo);
    j["reference_frequency"] = {{"value", number(m.reference_value)}, {"unit", m.reference_unit}};
    json conv;
    conv["checked"] = m.convergence.checked;
    if (m.convergence.checked) {
        conv["max_delta"] = number(m.convergence.max_delta);
        conv["tolerance"] = number(m.convergence.tolerance);
        conv["passed"] = m.convergence.passed();
        conv["cutoffs"] = m.convergence.cutoffs;
        conv["doubled"] = m.convergence.doubled;
    }
    j["convergence"] = conv;
    j["summary"] = pairs(m.summary);
    j["timings_s"] = pairs(m.timings);
    j["table_metadata"] = m.table_metadata;
    j["warnings"] = m.warnings;

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << j.dump(2) << "\n";
    if (!f) throw ConfigError("write failed for '" + path + "'");
}

} // namespace usc::cli
