#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "test_util.hpp"
#include "ttr/io.hpp"
#include "ttr/tensor3.hpp"

using namespace ttr;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("T3B files round-trip bit for bit") {
  const auto path = temp_file("ttr_roundtrip.t3b");
  Tensor3 a = gaussian_tensor(4, 3, 5, 2024);
  write_t3b(path.string(), a);
  Tensor3 b = read_t3b(path.string());
  REQUIRE(b.n1() == 4);
  REQUIRE(b.n2() == 3);
  REQUIRE(b.n3() == 5);
  CHECK(ttr_test::max_abs_diff(a, b) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("T3B reader rejects foreign and damaged files") {
  const auto bad_magic = temp_file("ttr_badmagic.t3b");
  {
    std::ofstream out(bad_magic, std::ios::binary);
    out << "NOPE" << std::string(64, '\0');
  }
  CHECK_THROWS_AS(read_t3b(bad_magic.string()), BadMagic);
  std::filesystem::remove(bad_magic);

  const auto truncated = temp_file("ttr_truncated.t3b");
  {
    Tensor3 a = gaussian_tensor(4, 4, 4, 7);
    write_t3b(truncated.string(), a);
    std::filesystem::resize_file(truncated,
                                 std::filesystem::file_size(truncated) - 9);
  }
  CHECK_THROWS_AS(read_t3b(truncated.string()), Truncated);
  std::filesystem::remove(truncated);

  const auto header_only = temp_file("ttr_header.t3b");
  {
    std::ofstream out(header_only, std::ios::binary);
    out << "T3B1";
  }
  CHECK_THROWS_AS(read_t3b(header_only.string()), Truncated);
  std::filesystem::remove(header_only);

  CHECK_THROWS_AS(read_t3b("/nonexistent/nowhere.t3b"), ValidationError);
}

TEST_CASE("label files round-trip and reject junk") {
  const auto path = temp_file("ttr_labels.txt");
  write_labels(path.string(), {1, 1, 2, 3, 2});
  CHECK(read_labels(path.string()) == std::vector<int>{1, 1, 2, 3, 2});

  {
    std::ofstream out(path);
    out << "1\n\n  \n2\r\n3\n";  // blanks and CRLF are tolerated
  }
  CHECK(read_labels(path.string()) == std::vector<int>{1, 2, 3});

  {
    std::ofstream out(path);
    out << "1\ntwo\n";
  }
  CHECK_THROWS_AS(read_labels(path.string()), LabelMismatch);

  {
    std::ofstream out(path);
    out << "0\n";  // class ids are 1-based
  }
  CHECK_THROWS_AS(read_labels(path.string()), LabelMismatch);

  {
    std::ofstream out(path);
    out << "1 2\n";
  }
  CHECK_THROWS_AS(read_labels(path.string()), LabelMismatch);
  std::filesystem::remove(path);
}
