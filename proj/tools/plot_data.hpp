#pragma once

#include <cstddef>
#include <filesystem>

// Reads report.json and the run CSVs beside it and writes one long-format
// table: series,run,container,x,y. Returns the number of data rows.
std::size_t write_plot_data(const std::filesystem::path& report, const std::filesystem::path& dest);
