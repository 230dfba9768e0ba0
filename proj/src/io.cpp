#include "slowdiff/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace slowdiff {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  const fs::path tmp = dir / (".tmp-" + path.filename().string() + "-" +
                              std::to_string(std::random_device{}()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      fs::remove(tmp);
      throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CsvWriter: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
  std::string out;
  auto append = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append(header_);
  for (const auto& r : rows_) append(r);
  return out;
}

}  // namespace slowdiff
