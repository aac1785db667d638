#pragma once

#include <filesystem>

#include "json.hpp"
#include "qproxy/linalg/matrix.hpp"

namespace qproxy {

// Interchange format: {"dim": n, "entries": [[re, im], ...]} row-major.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws FormatError describing the first problem found.
ComplexMatrix matrix_from_json(const nlohmann::json& doc);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace qproxy
