#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace specshare::app {

// RFC 4180 table: CRLF line ends, fields quoted only when needed.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  class Row {
   public:
    Row& add(double value);
    Row& add(std::uint64_t value);
    Row& add(int value) { return add(static_cast<std::uint64_t>(value)); }
    Row& add(std::string_view value);
    Row& add(const char* value) { return add(std::string_view(value)); }

   private:
    friend class CsvTable;
    explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
    std::vector<std::string>& cells_;
  };

  Row row();

  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

  // `comment` is written first as a `# ...` line when non-empty.
  void write(std::ostream& out, std::string_view comment = {}) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(std::string_view field);

}  // namespace specshare::app
