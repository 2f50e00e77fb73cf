#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace projave::harness {

inline constexpr const char* kVersion = "0.1.0";

/// One verification case. Frozen CSV column order:
/// row,command,case,n,p,i,j,estimate,std_error,reference,margin,pass,message
/// JSON rows use the same names as keys. Integer fields that do not apply
/// are 0; a missing reference is NaN ("nan" in CSV, null in JSON).
struct ReportRow {
  int row = 0;
  std::string command;
  std::string case_name;
  int n = 0;
  double p = 0.0;
  int i = 0;
  int j = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;
  double margin = 0.0;  // pass iff margin >= 0
  bool pass = false;
  std::string message;
};

/// Everything needed to re-run a report. `config` is the effective
/// configuration (seed override applied, fixture paths resolved against
/// `base_dir`). The wall-clock stamp is informational only.
struct ReportHeader {
  std::string version = kVersion;
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::string base_dir;
  std::string wall_clock;
};

struct Report {
  ReportHeader header;
  std::vector<ReportRow> rows;

  bool all_pass() const;
};

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// CSV output starts with one comment line "# projave-report <header json>"
/// followed by the column line and the rows. Reals use %.17g.
std::string to_csv(const Report& report);
nlohmann::json to_json(const Report& report);
std::string render(const Report& report, Format format);

/// Reads either format (detected from the first character).
Report parse_report(const std::string& text);
Report read_report(const std::filesystem::path& path);

/// The CSV line of a row without the trailing newline; used for bitwise
/// comparison of re-runs.
std::string csv_line(const ReportRow& row);

}  // namespace projave::harness
