// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace opmod::json {

/// 17 significant digits; enough to round-trip any double, stable across runs.
inline std::string fmt_double(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt_complex(std::complex<double> c) {
  return "[" + fmt_double(c.real()) + "," + fmt_double(c.imag()) + "]";
}

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

inline std::string quote(std::string_view s) { return "\"" + escape(s) + "\""; }

inline std::string fmt_complex_list(const std::vector<std::complex<double>>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_complex(v[i]);
  }
  return out + "]";
}

}  // namespace opmod::json
