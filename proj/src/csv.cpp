#include "ssnmf/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace ssnmf {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

} // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

DenseMatrix parse_csv_matrix(std::string_view text, std::string_view source) {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;

    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      std::string_view field =
          trim(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                   : comma - start));
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError(std::string(source) + ":" + std::to_string(line_no) +
                      ": cannot parse '" + std::string(field) + "' as a number");
      }
      data.push_back(value);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw IoError(std::string(source) + ":" + std::to_string(line_no) +
                    ": ragged row with " + std::to_string(count) +
                    " fields, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw IoError(std::string(source) + ": empty matrix file");
  return DenseMatrix(rows, cols, std::move(data));
}

std::string format_csv_matrix(const DenseMatrix& m) {
  std::string out;
  out.reserve(m.size() * 12);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

DenseMatrix read_csv_matrix(const std::filesystem::path& path) {
  return parse_csv_matrix(read_text_file(path), path.string());
}

void write_csv_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  write_text_file(path, format_csv_matrix(m));
}

} // namespace ssnmf
