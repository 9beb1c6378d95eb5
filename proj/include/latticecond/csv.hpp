#ifndef LATTICECOND_CSV_HPP
#define LATTICECOND_CSV_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "latticecond/errors.hpp"

namespace latticecond {

/// 17 significant digits: round-trip exact for 64-bit floats, so regression
/// diffs are byte-for-byte meaningful.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes via a temp file in the same directory, then renames into place.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw ResourceError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace latticecond

#endif
