#include "tmscatter/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace tmscatter {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  body_ += "# " + key + " = " + value + "\n";
}

void CsvWriter::comment_num(const std::string& key, double value) {
  comment(key, fmt17(value));
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (size_t i = 0; i < names.size(); ++i)
    body_ += (i ? "," : "") + names[i];
  body_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    body_ += (i ? "," : "") + fmt17(values[i]);
  body_ += "\n";
}

void CsvWriter::write_atomic(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw std::runtime_error("CsvWriter: cannot open " + tmp);
  if (std::fwrite(body_.data(), 1, body_.size(), f) != body_.size()) {
    std::fclose(f);
    std::remove(tmp.c_str());
    throw std::runtime_error("CsvWriter: short write to " + tmp);
  }
  std::fclose(f);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("CsvWriter: rename failed for " + path);
  }
}

}  // namespace tmscatter
