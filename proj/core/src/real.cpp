#include "pgamma/real.hpp"

#include <cstdio>

#include "pgamma/error.hpp"

namespace pgamma {

std::string format_real(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_real(Quad x, int digits) {
  char buf[96];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
  return buf;
}

Quad parse_quad(const std::string& text) {
  char* end = nullptr;
  const Quad v = strtoflt128(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw Error(ErrorCode::DomainError, "not a number: '" + text + "'");
  }
  return v;
}

}  // namespace pgamma
