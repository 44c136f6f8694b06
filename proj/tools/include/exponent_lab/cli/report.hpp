#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace exponent_lab::cli {

enum class Format { Csv, Json, Markdown };

Format parse_format(std::string_view text);

// A cell keeps its rendered text; the kind decides how JSON sees it.
struct Cell {
  enum class Kind { Text, Number, Bool, Null, NumberList };
  Kind kind = Kind::Null;
  std::string text;                // Text, Number (valid JSON number text), Bool ("true"/"false")
  std::vector<std::string> items;  // NumberList

  static Cell text_cell(std::string s) { return {Kind::Text, std::move(s), {}}; }
  static Cell number(std::string s) { return {Kind::Number, std::move(s), {}}; }
  static Cell boolean(bool b) { return {Kind::Bool, b ? "true" : "false", {}}; }
  static Cell null() { return {}; }
  static Cell number_list(std::vector<std::string> v) { return {Kind::NumberList, {}, std::move(v)}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// CSV: header row, comma separated, lists joined with ';', null as empty.
// JSON: one object per row per line, keys in column order.
// Markdown: a pipe table.
void write_table(std::ostream& out, const Table& table, Format format);

}  // namespace exponent_lab::cli
