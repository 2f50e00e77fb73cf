#include "projave/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "projave/errors.hpp"

namespace projave::harness {

namespace {

constexpr const char* kColumns =
    "row,command,case,n,p,i,j,estimate,std_error,reference,margin,pass,message";
constexpr const char* kMagic = "# projave-report ";

std::string format_real(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s) {
  if (s == "nan") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (s == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw ConfigError("report: malformed number '" + s + "'");
  }
  return v;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          fields.back() += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

nlohmann::json header_json(const ReportHeader& h) {
  return {{"version", h.version},   {"command", h.command},   {"seed", h.seed},
          {"config", h.config},     {"base_dir", h.base_dir}, {"wall_clock", h.wall_clock}};
}

ReportHeader header_from_json(const nlohmann::json& j) {
  ReportHeader h;
  h.version = j.at("version").get<std::string>();
  h.command = j.at("command").get<std::string>();
  h.seed = j.at("seed").get<std::uint64_t>();
  h.config = j.at("config");
  h.base_dir = j.value("base_dir", "");
  h.wall_clock = j.value("wall_clock", "");
  return h;
}

nlohmann::json real_json(double x) {
  if (!std::isfinite(x)) {
    return format_real(x);  // JSON has no NaN/inf literals
  }
  return x;
}

double real_from_json(const nlohmann::json& j) {
  if (j.is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (j.is_string()) {
    return parse_real(j.get<std::string>());
  }
  return j.get<double>();
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) {
      return false;
    }
  }
  return true;
}

Format parse_format(const std::string& name) {
  if (name == "csv") {
    return Format::csv;
  }
  if (name == "json") {
    return Format::json;
  }
  throw ConfigError("unknown report format '" + name + "' (expected csv or json)");
}

std::string csv_line(const ReportRow& r) {
  std::ostringstream out;
  out << r.row << ',' << quote(r.command) << ',' << quote(r.case_name) << ',' << r.n << ','
      << format_real(r.p) << ',' << r.i << ',' << r.j << ',' << format_real(r.estimate) << ','
      << format_real(r.std_error) << ',' << format_real(r.reference) << ','
      << format_real(r.margin) << ',' << (r.pass ? "true" : "false") << ',' << quote(r.message);
  return out.str();
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << kMagic << header_json(report.header).dump() << '\n' << kColumns << '\n';
  for (const auto& r : report.rows) {
    out << csv_line(r) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"row", r.row},
                    {"command", r.command},
                    {"case", r.case_name},
                    {"n", r.n},
                    {"p", real_json(r.p)},
                    {"i", r.i},
                    {"j", r.j},
                    {"estimate", real_json(r.estimate)},
                    {"std_error", real_json(r.std_error)},
                    {"reference", real_json(r.reference)},
                    {"margin", real_json(r.margin)},
                    {"pass", r.pass},
                    {"message", r.message}});
  }
  return {{"header", header_json(report.header)}, {"rows", rows}};
}

std::string render(const Report& report, Format format) {
  return format == Format::csv ? to_csv(report) : to_json(report).dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  Report report;
  try {
    if (!text.empty() && text.front() == '{') {
      const auto j = nlohmann::json::parse(text);
      report.header = header_from_json(j.at("header"));
      for (const auto& r : j.at("rows")) {
        ReportRow row;
        row.row = r.at("row").get<int>();
        row.command = r.at("command").get<std::string>();
        row.case_name = r.at("case").get<std::string>();
        row.n = r.at("n").get<int>();
        row.p = real_from_json(r.at("p"));
        row.i = r.at("i").get<int>();
        row.j = r.at("j").get<int>();
        row.estimate = real_from_json(r.at("estimate"));
        row.std_error = real_from_json(r.at("std_error"));
        row.reference = real_from_json(r.at("reference"));
        row.margin = real_from_json(r.at("margin"));
        row.pass = r.at("pass").get<bool>();
        row.message = r.at("message").get<std::string>();
        report.rows.push_back(std::move(row));
      }
      return report;
    }
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0) {
      throw ConfigError("report: missing '# projave-report' header line");
    }
    report.header = header_from_json(nlohmann::json::parse(line.substr(std::string(kMagic).size())));
    if (!std::getline(in, line) || line != kColumns) {
      throw ConfigError("report: unexpected column line");
    }
    while (std::getline(in, line)) {
      if (line.empty()) {
        continue;
      }
      const auto f = split_csv(line);
      if (f.size() != 13) {
        throw ConfigError("report: row has " + std::to_string(f.size()) + " fields, expected 13");
      }
      ReportRow row;
      row.row = std::stoi(f[0]);
      row.command = f[1];
      row.case_name = f[2];
      row.n = std::stoi(f[3]);
      row.p = parse_real(f[4]);
      row.i = std::stoi(f[5]);
      row.j = std::stoi(f[6]);
      row.estimate = parse_real(f[7]);
      row.std_error = parse_real(f[8]);
      row.reference = parse_real(f[9]);
      row.margin = parse_real(f[10]);
      row.pass = f[11] == "true";
      row.message = f[12];
      report.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("report: malformed field (") + e.what() + ")");
  }
  return report;
}

Report read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open report " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

}  // namespace projave::harness
