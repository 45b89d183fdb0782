#include "credrisk/store/append_file.hpp"

#include <unistd.h>

#include <utility>

#include "credrisk/error.hpp"

namespace credrisk {

AppendFile::AppendFile(const std::filesystem::path& path, bool sync) : path_(path), sync_(sync) {
  file_ = std::fopen(path.c_str(), "ab");
  if (!file_) throw Error(ErrorCode::storage, "cannot open " + path.string() + " for append");
}

AppendFile::~AppendFile() { close(); }

AppendFile::AppendFile(AppendFile&& o) noexcept
    : file_(std::exchange(o.file_, nullptr)), path_(std::move(o.path_)), sync_(o.sync_) {}

AppendFile& AppendFile::operator=(AppendFile&& o) noexcept {
  if (this != &o) {
    close();
    file_ = std::exchange(o.file_, nullptr);
    path_ = std::move(o.path_);
    sync_ = o.sync_;
  }
  return *this;
}

void AppendFile::close() {
  if (file_) std::fclose(file_);
  file_ = nullptr;
}

void AppendFile::append_line(std::string_view line) {
  if (!file_) throw Error(ErrorCode::storage, "append to closed file " + path_.string());
  bool ok = std::fwrite(line.data(), 1, line.size(), file_) == line.size() &&
            std::fputc('\n', file_) != EOF && std::fflush(file_) == 0;
  if (ok && sync_) ok = ::fsync(::fileno(file_)) == 0;
  if (!ok) throw Error(ErrorCode::storage, "write failed on " + path_.string());
}

void AppendFile::truncate() {
  close();
  file_ = std::fopen(path_.c_str(), "wb");
  if (!file_) throw Error(ErrorCode::storage, "cannot truncate " + path_.string());
  if (sync_) ::fsync(::fileno(file_));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents, bool sync) {
  auto tmp = path;
  tmp += ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw Error(ErrorCode::storage, "cannot create " + tmp.string());
  bool ok = std::fwrite(contents.data(), 1, contents.size(), f) == contents.size() &&
            std::fflush(f) == 0;
  if (ok && sync) ok = ::fsync(::fileno(f)) == 0;
  ok = std::fclose(f) == 0 && ok;
  if (!ok) throw Error(ErrorCode::storage, "write failed on " + tmp.string());
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::storage, "rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace credrisk
