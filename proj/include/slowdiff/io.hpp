#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace slowdiff {

/// Shortest representation that round-trips a double (17 significant digits).
std::string fmt_g17(double v);

/// Write-to-temp-then-rename in the destination directory: the target is
/// either complete or absent.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Comma-separated, dot decimal, LF line endings, header row first.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace slowdiff
