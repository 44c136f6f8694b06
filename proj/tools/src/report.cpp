#include "exponent_lab/cli/report.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>

namespace exponent_lab::cli {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string flat(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Null:
      return "";
    case Cell::Kind::NumberList:
      return join(c.items, ";");
    default:
      return c.text;
  }
}

std::string json_value(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Text:
      return nlohmann::json(c.text).dump();
    case Cell::Kind::Number:
    case Cell::Kind::Bool:
      return c.text;
    case Cell::Kind::Null:
      return "null";
    case Cell::Kind::NumberList:
      return "[" + join(c.items, ",") + "]";
  }
  return "null";
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "markdown" || text == "md") return Format::Markdown;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (csv, json, markdown)");
}

void write_table(std::ostream& out, const Table& table, Format format) {
  const auto& cols = table.columns;
  switch (format) {
    case Format::Csv: {
      out << join(cols, ",") << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << flat(row[i]);
        out << '\n';
      }
      break;
    }
    case Format::Json: {
      for (const auto& row : table.rows) {
        out << '{';
        for (std::size_t i = 0; i < row.size(); ++i) {
          out << (i ? "," : "") << nlohmann::json(cols[i]).dump() << ':' << json_value(row[i]);
        }
        out << "}\n";
      }
      break;
    }
    case Format::Markdown: {
      out << "| " << join(cols, " | ") << " |\n|";
      for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
      out << '\n';
      for (const auto& row : table.rows) {
        out << '|';
        for (const auto& c : row) out << ' ' << flat(c) << " |";
        out << '\n';
      }
      break;
    }
  }
}

}  // namespace exponent_lab::cli
