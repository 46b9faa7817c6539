#include "ivb/law_io.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ivb {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::int64_t parse_int(const std::string& field, const char* what, int line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what +
                                " must be an integer, got '" + field + "'");
  return v;
}

}  // namespace

std::vector<CountRow> parse_counts_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<CountRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() != 4 || fields[0] != "z" || fields[1] != "x" || fields[2] != "y" ||
          fields[3] != "count")
        throw std::invalid_argument("counts CSV must start with header 'z,x,y,count'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 4 fields 'z,x,y,count'");
    CountRow row;
    row.z_label = fields[0];
    if (row.z_label.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": empty arm label");
    row.x = static_cast<int>(parse_int(fields[1], "x", line_no));
    row.y = static_cast<int>(parse_int(fields[2], "y", line_no));
    row.count = parse_int(fields[3], "count", line_no);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("counts CSV must start with header 'z,x,y,count'");
  return rows;
}

}  // namespace ivb
