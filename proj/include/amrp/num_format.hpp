#pragma once

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <system_error>

#include "amrp/common.hpp"

namespace amrp {

// Shortest round-trip decimal form; canonical format for sample data so that
// write(load(f)) == f byte-for-byte on files the toolkit produced.
inline std::string format_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fixed 9-significant-digit form used in machine-readable JSON outputs.
inline std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

inline double parse_double(const std::string& s, bool& ok) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b != e && (*b == ' ' || *b == '\t')) ++b;
  while (e != b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
  double v = 0.0;
  auto res = std::from_chars(b, e, v);
  ok = (res.ec == std::errc() && res.ptr == e && b != e);
  return v;
}

inline long parse_long(const std::string& s, bool& ok) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b != e && (*b == ' ' || *b == '\t')) ++b;
  while (e != b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
  long v = 0;
  auto res = std::from_chars(b, e, v);
  ok = (res.ec == std::errc() && res.ptr == e && b != e);
  return v;
}

}  // namespace amrp
