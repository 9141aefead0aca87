#include "rnicsim/telemetry/csv_export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rnicsim {

std::string format_number(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? "0" : (std::isnan(v) ? "nan" : "inf");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string telemetry_csv(const std::vector<TelemetrySnapshot>& rows) {
  std::string out = kTelemetryCsvHeader;
  out += '\n';
  for (const auto& s : rows) {
    out += std::to_string(s.t.ticks);
    out += ',' + std::to_string(s.container);
    for (double v : {s.goodput_bps, s.avg_latency_us, s.mtt_miss_rate, s.icm_miss_rate,
                     s.wqe_miss_rate}) {
      out += ',' + format_number(v);
    }
    out += ',' + std::to_string(s.pause_frames_delta);
    out += ',' + std::to_string(s.qp_count);
    for (double v : {s.qp_create_rate, s.cq_create_rate, s.tx_occupancy, s.rx_occupancy,
                     s.rcv_bytes}) {
      out += ',' + format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string amplification_csv(const AmplificationReport& report) {
  std::string out = "verb,mode,received_bytes,payload_bytes,count,ar_byte\n";
  for (const auto& e : report.entries) {
    out += std::string(to_string(e.verb)) + ',' + std::string(to_string(e.mode)) + ',' +
           format_number(e.received_bytes) + ',' + format_number(e.payload_bytes) + ',' +
           std::to_string(e.count) + ',';
    if (auto r = e.ratio()) out += format_number(*r);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const TelemetryCollector& collector) {
  std::string out =
      "container,intervals,payload_bytes,mean_goodput_bps,mean_latency_us,pause_frames,"
      "qp_exhausted_events\n";
  for (ContainerId id : collector.containers()) {
    std::size_t n = 0;
    double goodput = 0.0;
    double lat_sum = 0.0;
    double verbs = 0.0;
    for (const auto& s : collector.history()) {
      if (s.container != id) continue;
      ++n;
      goodput += s.goodput_bps;
      lat_sum += s.avg_latency_us * static_cast<double>(s.completed_verbs);
      verbs += static_cast<double>(s.completed_verbs);
    }
    out += std::to_string(id) + ',' + std::to_string(n) + ',' +
           format_number(collector.total_payload_bytes(id)) + ',' +
           format_number(n ? goodput / static_cast<double>(n) : 0.0) + ',' +
           format_number(verbs > 0 ? lat_sum / verbs : 0.0) + ',' +
           std::to_string(collector.pause_frames_of(id)) + ',' +
           std::to_string(collector.qp_exhausted_events(id)) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void export_csv(const TelemetryCollector& collector, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "telemetry.csv", telemetry_csv(collector.history()));
  write_text_file(dir / "amplification.csv", amplification_csv(collector.amplification_report()));
  write_text_file(dir / "summary.csv", summary_csv(collector));
}

}  // namespace rnicsim
