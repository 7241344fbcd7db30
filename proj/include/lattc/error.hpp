#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lattc {

/// Byte range into a source file.
struct SourceSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

/// Base for every diagnostic raised by the checker pipeline.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(message), kind_(std::move(kind)), span_(span) {}

  const std::string& kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  std::string kind_;
  std::optional<SourceSpan> span_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::optional<SourceSpan> span = std::nullopt)
      : Error("ParseError", message, span) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("ConfigError", message) {}
};

/// IllegalLevel or UnknownExtension.
class LevelError : public Error {
 public:
  LevelError(std::string kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt)
      : Error(std::move(kind), message, span) {}
};

}  // namespace lattc
