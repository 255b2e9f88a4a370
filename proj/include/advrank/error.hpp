#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace advrank {

enum class ErrorKind {
  kDegenerateLogits,
  kNonFiniteValue,
  kLengthMismatch,
  kCategoryOutOfRange,
  kEmptyGroup,
  kParseError,
  kValidationError,
  kInconsistentLabelSpace,
  kInvalidSpec,
  kIoError,
};

inline std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateLogits: return "DegenerateLogits";
    case ErrorKind::kNonFiniteValue: return "NonFiniteValue";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kCategoryOutOfRange: return "CategoryOutOfRange";
    case ErrorKind::kEmptyGroup: return "EmptyGroup";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kValidationError: return "ValidationError";
    case ErrorKind::kInconsistentLabelSpace: return "InconsistentLabelSpace";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

// Single exception type for the library. `kind()` is the stable thing to
// branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail, std::string field = {},
        std::string record_id = {}, std::size_t line = 0)
      : std::runtime_error(Format(kind, detail, field, record_id, line)),
        kind_(kind),
        detail_(std::move(detail)),
        field_(std::move(field)),
        record_id_(std::move(record_id)),
        line_(line) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  const std::string& field() const { return field_; }
  const std::string& record_id() const { return record_id_; }
  // 1-based input line, 0 when the error did not come from a file.
  std::size_t line() const { return line_; }

 private:
  static std::string Format(ErrorKind kind, const std::string& detail,
                            const std::string& field,
                            const std::string& record_id, std::size_t line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    out += ErrorKindName(kind);
    if (!field.empty()) out += " in field '" + field + "'";
    if (!record_id.empty()) out += " of record '" + record_id + "'";
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  std::string field_;
  std::string record_id_;
  std::size_t line_;
};

}  // namespace advrank
