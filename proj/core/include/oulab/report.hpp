#pragma once

#include <filesystem>

#include "oulab/frequency.hpp"

namespace oulab {

/// Trace CSV with the fixed column order  tau,H,I,N,N_prime,flags  and
/// shortest round-trip decimals (<= 17 significant digits). Written atomically
/// (temp file + rename).
void write_trace_csv(const std::filesystem::path& path, const FrequencyTrace& trace);

std::string trace_csv_string(const FrequencyTrace& trace);

struct ReportMeta {
    std::string scenario;
    std::string mode;
    int dim = 1;
    double T0 = 0.0;
    double A = 0.0;
    double L = 0.0;
    std::uint64_t seed = 0;
    bool has_seed = false;
};

/// JSON report document: scenario metadata plus one row per check
/// ({check, anchor, inputs, lhs, rhs, margin, pass, detail}). Atomic write.
void write_report_json(const std::filesystem::path& path, const ReportMeta& meta, std::span<const CheckReport> rows);

std::string report_json_string(const ReportMeta& meta, std::span<const CheckReport> rows);

/// Write text to path atomically via a sibling temp file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace oulab
