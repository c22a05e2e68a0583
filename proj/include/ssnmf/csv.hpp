#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ssnmf/matrix.hpp"

namespace ssnmf {

// Matrix CSV: one row per line, comma-separated reals, no header. Values are
// written in shortest round-trip form so a write/read cycle is lossless.

DenseMatrix parse_csv_matrix(std::string_view text, std::string_view source = "<string>");
std::string format_csv_matrix(const DenseMatrix& m);

/// Throws IoError naming the path if it cannot be opened or parsed.
DenseMatrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const DenseMatrix& m);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

} // namespace ssnmf
