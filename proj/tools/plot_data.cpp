#include "plot_data.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rnicsim/telemetry/csv_export.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// Column name -> values, one map per row.
std::vector<std::map<std::string, std::string>> read_csv(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::string line;
  std::vector<std::map<std::string, std::string>> rows;
  if (!std::getline(in, line)) return rows;
  const auto header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Writer {
  std::ostringstream os;
  std::size_t rows = 0;

  void row(const std::string& series, const std::string& run, const std::string& container,
           const std::string& x, const std::string& y) {
    os << series << ',' << run << ',' << container << ',' << x << ',' << y << '\n';
    ++rows;
  }
};

}  // namespace

std::size_t write_plot_data(const fs::path& report, const fs::path& dest) {
  const auto j = nlohmann::json::parse(read_file(report));
  const fs::path base = report.parent_path();
  Writer w;
  w.os << "series,run,container,x,y\n";

  for (const auto& run : j.at("runs")) {
    const std::string label = run.at("label").get<std::string>();
    const std::string tag = label.empty() ? "main" : label;
    const fs::path dir = base / run.at("dir").get<std::string>();

    for (const auto& r : read_csv(dir / "telemetry.csv")) {
      const double t_s = std::stod(r.at("t_us")) / 1e6;
      const std::string x = rnicsim::format_number(t_s);
      const std::string& c = r.at("container");
      w.row("goodput_gbps", tag, c, x, rnicsim::format_number(std::stod(r.at("goodput_bps")) / 1e9));
      w.row("latency_us", tag, c, x, r.at("avg_latency_us"));
      w.row("mtt_miss_rate", tag, c, x, r.at("mtt_miss_rate"));
      w.row("pause_delta", tag, c, x, r.at("pause_delta"));
    }

    if (run.contains("variant")) {
      const auto& v = run.at("variant");
      const std::string qps = std::to_string(v.at("qps").get<std::uint64_t>());
      const std::string curve = v.at("mode").get<std::string>() + "_" + v.at("verb").get<std::string>();
      for (const auto& c : run.at("containers")) {
        w.row("sweep_goodput_gbps", curve, std::to_string(c.at("id").get<std::uint64_t>()), qps,
              c.at("mean_goodput_bps").is_null()
                  ? "nan"
                  : rnicsim::format_number(c.at("mean_goodput_bps").get<double>() / 1e9));
      }
      w.row("sweep_pause_frames", curve, std::to_string(v.at("container").get<std::uint64_t>()),
            qps, std::to_string(run.at("total_pause_frames").get<std::uint64_t>()));
    }

    for (const auto& a : run.at("amplification")) {
      if (a.at("ratio").is_null()) continue;
      w.row("amplification", tag, "", a.at("mode").get<std::string>() + "_" + a.at("verb").get<std::string>(),
            rnicsim::format_number(a.at("ratio").get<double>()));
    }
  }

  rnicsim::write_text_file(dest, w.os.str());
  return w.rows;
}
