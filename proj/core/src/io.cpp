#include "ttr/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ttr {

static_assert(std::endian::native == std::endian::little,
              "T3B reader/writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'T', '3', 'B', '1'};
constexpr std::uint64_t kMaxElements = 1ull << 28;

}  // namespace

void write_t3b(const std::string& path, const Tensor3& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("write_t3b: cannot open " + path);
  out.write(kMagic, 4);
  const std::uint32_t dims[3] = {static_cast<std::uint32_t>(t.n1()),
                                 static_cast<std::uint32_t>(t.n2()),
                                 static_cast<std::uint32_t>(t.n3())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!out) throw ValidationError("write_t3b: write failed for " + path);
}

Tensor3 read_t3b(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("read_t3b: cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) {
    throw BadMagic("read_t3b: " + path + " is not a T3B file");
  }
  std::uint32_t dims[3] = {};
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (in.gcount() != sizeof(dims)) {
    throw Truncated("read_t3b: " + path + " ends inside the header");
  }
  const std::uint64_t count =
      std::uint64_t(dims[0]) * dims[1] * dims[2];
  if (count > kMaxElements) {
    throw ValidationError("read_t3b: " + path + " declares an implausible "
                          "element count");
  }
  Tensor3 t(dims[0], dims[1], dims[2]);
  in.read(reinterpret_cast<char*>(t.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::uint64_t>(in.gcount()) != count * sizeof(double)) {
    throw Truncated("read_t3b: " + path + " ends before the declared " +
                    std::to_string(count) + " values");
  }
  return t;
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabelMismatch("read_labels: cannot open " + path);
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Trim trailing CR from files written on other platforms.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ss(line);
    long value = 0;
    std::string rest;
    if (!(ss >> value) || (ss >> rest)) {
      throw LabelMismatch("read_labels: " + path + " line " +
                          std::to_string(lineno) + " is not an integer");
    }
    if (value < 1 || value > 1'000'000) {
      throw LabelMismatch("read_labels: " + path + " line " +
                          std::to_string(lineno) +
                          " is outside the 1-based class range");
    }
    labels.push_back(static_cast<int>(value));
  }
  return labels;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("write_labels: cannot open " + path);
  for (int l : labels) out << l << '\n';
  if (!out) throw ValidationError("write_labels: write failed for " + path);
}

}  // namespace ttr
