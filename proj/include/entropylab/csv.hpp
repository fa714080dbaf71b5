#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "entropylab/nerode.hpp"

namespace entropylab {

inline constexpr const char* kEntropyCsvHeader = "n,index,certified,h_n";

inline std::string format_row(const EntropyRow& row) {
  char h[64];
  std::snprintf(h, sizeof h, "%.6f", row.h);
  std::ostringstream out;
  out << row.n << ',' << row.index << ',' << (row.certified ? "true" : "false") << ',' << h;
  return out.str();
}

inline std::string format_csv(const std::vector<EntropyRow>& rows) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "no rows to write");
  std::string out = std::string(kEntropyCsvHeader) + "\n";
  for (const auto& r : rows) out += format_row(r) + "\n";
  return out;
}

/// Writes `content` to a sibling temp file, then renames it over `path`.
inline void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::BadFile, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::BadFile, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::BadFile, "cannot rename onto '" + path + "'");
  }
}

inline void emit_csv(const std::vector<EntropyRow>& rows, const std::string& path) {
  write_atomically(path, format_csv(rows));
}

}  // namespace entropylab
