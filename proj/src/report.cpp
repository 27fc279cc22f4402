#include "pathlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathlab::report {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string path_csv(const SamplePath& path) {
  path.validate();
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += fmt(path.grid[i]);
    out += ',';
    out += fmt(path.values[i]);
    out += '\n';
  }
  return out;
}

std::string field_csv(const SampleField& field) {
  field.validate();
  if (field.dims() != 2) {
    throw std::invalid_argument("field_csv: only 2-d fields serialize to CSV");
  }
  std::string out = "t1,t2,value\n";
  std::size_t flat = 0;
  for (std::size_t i = 0; i < field.shape[0]; ++i) {
    for (std::size_t j = 0; j < field.shape[1]; ++j, ++flat) {
      out += fmt(field.coord(0, i));
      out += ',';
      out += fmt(field.coord(1, j));
      out += ',';
      out += fmt(field.values[flat]);
      out += '\n';
    }
  }
  return out;
}

std::string table_csv(std::span<const std::string> header,
                      std::span<const std::vector<std::string>> rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("table_csv: row width mismatch");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string key_value_record(
    std::span<const std::pair<std::string, std::string>> entries) {
  std::string out;
  for (const auto& [key, value] : entries) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

SamplePath parse_path_csv(const std::string& body) {
  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line) || line != "t,value") {
    throw std::invalid_argument("path CSV must start with header 't,value'");
  }
  SamplePath path;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("path CSV: malformed row '" + line + "'");
    }
    std::size_t used = 0;
    const double t = std::stod(line.substr(0, comma), &used);
    const double v = std::stod(line.substr(comma + 1), &used);
    path.grid.push_back(t);
    path.values.push_back(v);
  }
  path.validate();
  return path;
}

void write_text_file(const std::string& file_path, const std::string& content) {
  std::ofstream out(file_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::invalid_argument("cannot open for writing: " + file_path);
  }
  out << content;
  if (!out.flush()) {
    throw NumericalError("short write: " + file_path);
  }
}

std::string read_text_file(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open: " + file_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SamplePath read_path_csv(const std::string& file_path) {
  return parse_path_csv(read_text_file(file_path));
}

}  // namespace pathlab::report
