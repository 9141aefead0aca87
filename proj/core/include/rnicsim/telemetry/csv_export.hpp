#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rnicsim/telemetry/collector.hpp"

namespace rnicsim {

inline constexpr const char* kTelemetryCsvHeader =
    "t_us,container,goodput_bps,avg_latency_us,mtt_miss_rate,icm_miss_rate,wqe_miss_rate,"
    "pause_delta,qp_count,qp_create_rate,cq_create_rate,tx_occ,rx_occ,rcv_bytes";

// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_number(double v);

std::string telemetry_csv(const std::vector<TelemetrySnapshot>& rows);
std::string amplification_csv(const AmplificationReport& report);
std::string summary_csv(const TelemetryCollector& collector);

// Writes telemetry.csv, amplification.csv and summary.csv into `dir`.
// Throws std::runtime_error naming the path on I/O failure.
void export_csv(const TelemetryCollector& collector, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace rnicsim
