#pragma once

#include <cstdio>
#include <filesystem>
#include <string_view>

namespace credrisk {

// Line-oriented append-only file. Every append is flushed; with `sync` it
// is also fsync'ed before returning.
class AppendFile {
 public:
  AppendFile() = default;
  AppendFile(const std::filesystem::path& path, bool sync);
  ~AppendFile();

  AppendFile(AppendFile&& o) noexcept;
  AppendFile& operator=(AppendFile&& o) noexcept;
  AppendFile(const AppendFile&) = delete;
  AppendFile& operator=(const AppendFile&) = delete;

  bool is_open() const { return file_ != nullptr; }
  // Writes `line` plus '\n'; throws Error(storage) on failure.
  void append_line(std::string_view line);
  // Truncates to zero length and keeps appending.
  void truncate();

 private:
  void close();

  std::FILE* file_ = nullptr;
  std::filesystem::path path_;
  bool sync_ = false;
};

// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents, bool sync);

}  // namespace credrisk
