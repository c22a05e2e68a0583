#include <doctest.h>

#include <filesystem>

#include "ssnmf/csv.hpp"
#include "ssnmf/errors.hpp"

using namespace ssnmf;

TEST_CASE("csv round trip is exact") {
  const DenseMatrix m{{0.1, 1.0 / 3.0, 2.0}, {1e-300, 12345.678, 0.0}};
  CHECK(parse_csv_matrix(format_csv_matrix(m)) == m);
}

TEST_CASE("csv parsing") {
  CHECK(parse_csv_matrix("1,2\n3,4\n") == DenseMatrix{{1, 2}, {3, 4}});
  CHECK(parse_csv_matrix("1, 2\r\n3 ,4") == DenseMatrix{{1, 2}, {3, 4}});
  CHECK_THROWS_AS(parse_csv_matrix("1,2\n3\n"), IoError);
  CHECK_THROWS_AS(parse_csv_matrix("1,x\n"), IoError);
  CHECK_THROWS_AS(parse_csv_matrix(""), IoError);
}

TEST_CASE("missing file names the path") {
  try {
    read_csv_matrix("/nonexistent/dir/m.csv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/m.csv") != std::string::npos);
  }
}

TEST_CASE("csv files") {
  const auto path = std::filesystem::temp_directory_path() / "ssnmf_csv_test.csv";
  write_csv_matrix(path, DenseMatrix{{1.5, 2}, {3, 4}});
  CHECK(read_csv_matrix(path) == DenseMatrix{{1.5, 2}, {3, 4}});
  std::filesystem::remove(path);
}
