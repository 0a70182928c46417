#pragma once

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace growwalk {

/// Comma-separated output with a leading `# config ...` comment row and a
/// header. Doubles are written with %.17g so values round-trip; lines end in LF.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view config, const std::vector<std::string>& columns);

  CsvWriter& cell(double value);
  CsvWriter& cell(bool value) { return integer(value ? 1 : 0); }
  template <std::integral T>
  CsvWriter& cell(T value) {
    if constexpr (std::is_signed_v<T>) {
      return integer(static_cast<std::int64_t>(value));
    } else {
      return unsigned_integer(static_cast<std::uint64_t>(value));
    }
  }
  CsvWriter& cell(std::string_view value);
  CsvWriter& cell(const char* value) { return cell(std::string_view(value)); }
  void end_row();

  std::size_t columns() const noexcept { return columns_; }

 private:
  void separator();
  CsvWriter& integer(std::int64_t value);
  CsvWriter& unsigned_integer(std::uint64_t value);

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// %.17g, with nan / inf / -inf spelled out.
std::string format_double(double value);

/// Quotes a field when it holds a comma, quote or line break.
std::string quote_field(std::string_view field);

}  // namespace growwalk
