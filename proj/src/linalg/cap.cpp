#include "qproxy/linalg/cap.hpp"

#include <cstdlib>
#include <string>

#include "qproxy/error.hpp"

namespace qproxy {

std::size_t dense_cap() {
  const char* env = std::getenv("QPROXY_DENSE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDenseCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefaultDenseCap;
  return static_cast<std::size_t>(value);
}

void require_within_cap(std::size_t dim, std::string_view what) {
  const std::size_t cap = dense_cap();
  if (dim > cap) {
    throw CapError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds dense cap " +
                   std::to_string(cap) + " (set QPROXY_DENSE_CAP to raise it)");
  }
}

std::size_t max_qubits() {
  const std::size_t cap = dense_cap();
  std::size_t n = 0;
  while (n < 62 && (std::size_t{1} << (n + 1)) <= cap) ++n;
  return n;
}

}  // namespace qproxy
