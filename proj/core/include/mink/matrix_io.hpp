#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mink/types.hpp"

// Canonical matrix file: {"rows": int, "cols": int, "data": [[re, im], ...]}
// with data in row-major order. Parse failures throw ErrorCode::Parse, file
// system failures ErrorCode::Io.
namespace mink {

Matrix parse_matrix_json(std::string_view text);
std::string to_matrix_json(const Matrix& a);

Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& a);

}  // namespace mink
