#include "hft/io/serde.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hft {

std::string format_double(double v) {
  char buf[32];
  // Shortest representation that round-trips.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArtifactError("cannot write file: " + path);
  out << content;
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::string& path) { return fnv1a_hex(read_file(path)); }

std::string hash_json(const nlohmann::json& j) { return fnv1a_hex(j.dump()); }

void write_json(const std::string& path, const nlohmann::json& j) {
  write_file(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

void BinaryWriter::magic(const char tag[8]) { buf.append(tag, 8); }

void BinaryWriter::u64(std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  buf.append(b, 8);
}

void BinaryWriter::f64(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  u64(u);
}

void BinaryWriter::f64_array(const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) f64(data[i]);
}

void BinaryWriter::to_file(const std::string& path) const { write_file(path, buf); }

BinaryReader BinaryReader::from_file(const std::string& path) {
  return BinaryReader(read_file(path));
}

void BinaryReader::expect_magic(const char tag[8]) {
  if (pos + 8 > buf.size() || std::memcmp(buf.data() + pos, tag, 8) != 0) {
    throw ArtifactError(std::string("bad file magic, expected ") + std::string(tag, 8));
  }
  pos += 8;
}

std::uint64_t BinaryReader::u64() {
  if (pos + 8 > buf.size()) throw ArtifactError("truncated binary file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  }
  pos += 8;
  return v;
}

double BinaryReader::f64() {
  std::uint64_t u = u64();
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

void BinaryReader::f64_array(double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = f64();
}

}  // namespace hft
