#include "qproxy/linalg/matrix_io.hpp"

#include <fstream>
#include <string>

#include "qproxy/error.hpp"

namespace qproxy {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("matrix: expected a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw FormatError("matrix: \"dim\" must be a positive integer");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw FormatError("matrix: \"entries\" must be an array");
  const auto dim = doc["dim"].get<std::size_t>();
  const auto& entries = doc["entries"];
  if (entries.size() != dim * dim) {
    throw FormatError("matrix: expected " + std::to_string(dim * dim) + " entries, found " +
                      std::to_string(entries.size()));
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("matrix: entry " + std::to_string(i) + " is not a [re, im] pair");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(dim, std::move(values));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open matrix file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
    return matrix_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("matrix file " + path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError("matrix file " + path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file " + path.string());
  out << matrix_to_json(m).dump() << '\n';
}

}  // namespace qproxy
