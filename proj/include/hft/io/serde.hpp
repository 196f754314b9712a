#pragma once

#include "hft/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hft {

// Round-trip-safe decimal formatting (shortest form up to 17 significant digits).
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

// FNV-1a 64-bit, as a 16-char hex string. Used for artifact/config hashes.
std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::string& path);
std::string hash_json(const nlohmann::json& j);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Little-endian binary scratch buffer for checkpoint formats.
struct BinaryWriter {
  std::string buf;
  void magic(const char tag[8]);
  void u64(std::uint64_t v);
  void f64(double v);
  void f64_array(const double* data, std::size_t count);
  void to_file(const std::string& path) const;
};

struct BinaryReader {
  std::string buf;
  std::size_t pos = 0;
  explicit BinaryReader(std::string bytes) : buf(std::move(bytes)) {}
  static BinaryReader from_file(const std::string& path);
  void expect_magic(const char tag[8]);
  std::uint64_t u64();
  double f64();
  void f64_array(double* out, std::size_t count);
};

}  // namespace hft
