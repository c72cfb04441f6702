#pragma once

// Minimal reader for the tab-separated data files: `#` comments, blank
// lines skipped, first remaining row is the header.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kawin::tsv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;

  const std::string& cell(std::size_t i) const {
    static const std::string empty;
    return i < cells.size() ? cells[i] : empty;
  }
};

struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Index of a header column, or npos.
  std::size_t column(std::string_view name) const;
  /// Index of a header column; throws LoadError when missing.
  std::size_t require_column(std::string_view name) const;
};

Table parse(std::string_view text, std::string source);
Table read(const std::filesystem::path& file);
std::string read_file(const std::filesystem::path& file);

std::vector<std::string> split(std::string_view text, char sep);
std::string strip(std::string_view text);

}  // namespace kawin::tsv
