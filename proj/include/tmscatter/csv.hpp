#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmscatter {

/// Fixed 17-significant-digit formatting, locale independent.
std::string fmt17(double v);

/// FNV-1a 64-bit digest, hex encoded; used as the config hash echoed into
/// output headers.
std::string fnv1a_hex(const std::string& data);

/// CSV with '#'-prefixed header comments; content is staged and written
/// via a temp file + rename so readers never observe partial output.
class CsvWriter {
 public:
  void comment(const std::string& key, const std::string& value);
  void comment_num(const std::string& key, double value);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  const std::string& text() const { return body_; }
  void write_atomic(const std::string& path) const;

 private:
  std::string body_;
};

}  // namespace tmscatter
