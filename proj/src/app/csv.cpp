#include "csv.hpp"

#include <stdexcept>

#include "config_io.hpp"

namespace specshare::app {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable::Row CsvTable::row() {
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
  return Row(rows_.back());
}

CsvTable::Row& CsvTable::Row::add(double value) {
  cells_.push_back(format_number(value));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(std::uint64_t value) {
  cells_.push_back(std::to_string(value));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(std::string_view value) {
  cells_.push_back(csv_escape(value));
  return *this;
}

void CsvTable::write(std::ostream& out, std::string_view comment) const {
  auto line = [&](const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << "\r\n";
  };
  if (!comment.empty()) out << "# " << comment << "\r\n";
  std::vector<std::string> header;
  for (const auto& c : columns_) header.push_back(csv_escape(c));
  line(header);
  for (const auto& r : rows_) line(r);
}

}  // namespace specshare::app
