#include "tsv.hpp"

#include <fstream>
#include <sstream>

#include "kawin/error.hpp"

namespace kawin::tsv {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string strip(std::string_view text) {
  const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_ws(text[begin])) ++begin;
  while (end > begin && is_ws(text[end - 1])) --end;
  return std::string(text.substr(begin, end - begin));
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::string::npos;
}

std::size_t Table::require_column(std::string_view name) const {
  const std::size_t i = column(name);
  if (i == std::string::npos) {
    throw LoadError(source + ": missing column '" + std::string(name) + "'");
  }
  return i;
}

Table parse(std::string_view text, std::string source) {
  Table table;
  table.source = std::move(source);
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool have_header = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (strip(line).empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto cells = split(line, '\t');
    for (auto& c : cells) c = strip(c);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      table.rows.push_back(Row{line_no, std::move(cells)});
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw LoadError(table.source + ": no header row");
  return table;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LoadError("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Table read(const std::filesystem::path& file) {
  return parse(read_file(file), file.string());
}

}  // namespace kawin::tsv
