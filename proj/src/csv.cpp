#include "kdv/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kdv/config.hpp"

namespace kdv::cli {

namespace {

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("CSV line " + std::to_string(line) + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_csv_value(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
  return std::string(buf.data(), ptr);
}

std::string field_csv(const WaveField& field) {
  std::string out = "x,u\n";
  out.reserve(field.size() * 48);
  for (std::size_t i = 0; i < field.size(); ++i) {
    out += format_csv_value(field.grid().x(i));
    out += ',';
    out += format_csv_value(field[i]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw Error("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::pair<double, double>> parse_xu_csv(std::string_view text) {
  std::vector<std::pair<double, double>> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "x,u") throw Error("CSV line 1: expected header 'x,u'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error("CSV line " + std::to_string(line_no) + ": expected two columns");
    }
    rows.emplace_back(parse_double(line.substr(0, comma), line_no),
                      parse_double(line.substr(comma + 1), line_no));
  }
  if (!header_seen) throw Error("CSV: missing header 'x,u'");
  return rows;
}

WaveField read_field_csv(const std::filesystem::path& path, const Grid1D& grid, double time) {
  const auto rows = parse_xu_csv(read_text_file(path));
  if (rows.size() != grid.nx()) {
    throw Error("'" + path.string() + "': " + std::to_string(rows.size()) +
                " rows but the grid has nx = " + std::to_string(grid.nx()));
  }
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i].first - grid.x(i)) > 1e-6 * grid.dx()) {
      throw Error("'" + path.string() + "': row " + std::to_string(i + 1) + " has x = " +
                  format_number(rows[i].first) + ", grid expects " + format_number(grid.x(i)));
    }
    values[i] = rows[i].second;
  }
  return WaveField(grid, time, std::move(values));
}

}  // namespace kdv::cli
