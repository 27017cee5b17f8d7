#include "oulab/report.hpp"

#include <fstream>

#include "json.hpp"

namespace oulab {

std::string trace_csv_string(const FrequencyTrace& trace) {
    std::string out = "tau,H,I,N,N_prime,flags\n";
    for (std::size_t k = 0; k < trace.tau.size(); ++k) {
        out += format_double(trace.tau[k]);
        out += ',';
        out += format_double(trace.H[k]);
        out += ',';
        out += format_double(trace.I[k]);
        out += ',';
        out += format_double(trace.N[k]);
        out += ',';
        out += format_double(trace.N_prime[k]);
        out += ',';
        out += trace.flags[k];
        out += '\n';
    }
    return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
        f << content;
        if (!f.good()) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_trace_csv(const std::filesystem::path& path, const FrequencyTrace& trace) {
    atomic_write(path, trace_csv_string(trace));
}

namespace {

nlohmann::ordered_json row_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["anchor"] = r.anchor;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

}  // namespace

std::string report_json_string(const ReportMeta& meta, std::span<const CheckReport> rows) {
    nlohmann::ordered_json doc;
    doc["scenario"] = meta.scenario;
    doc["mode"] = meta.mode;
    doc["dim"] = meta.dim;
    doc["T0"] = meta.T0;
    doc["A"] = meta.A;
    doc["L"] = meta.L;
    if (meta.has_seed) doc["seed"] = meta.seed;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : rows) {
        checks.push_back(row_json(r));
        all = all && r.pass;
    }
    doc["checks"] = checks;
    doc["pass"] = all;
    return doc.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path& path, const ReportMeta& meta, std::span<const CheckReport> rows) {
    atomic_write(path, report_json_string(meta, rows));
}

}  // namespace oulab
