#include "monge/format.hpp"

#include <charconv>
#include <cstdio>

namespace monge {

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string csv_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
  return std::string(buf, res.ptr);
}

}  // namespace monge
