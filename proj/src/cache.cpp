#include "hyperlab/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace hyperlab::cache {

namespace {

constexpr char kMagic[4] = {'H', 'P', 'L', '1'};
constexpr unsigned char kVersion = 1;

void put_u64(std::string& buf, u64 v) {
  for (int i = 0; i < 8; ++i) buf.push_back((char)((v >> (8 * i)) & 0xff));
}

u64 get_u64(const unsigned char* p) {
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= (u64)p[i] << (8 * i);
  return v;
}

}  // namespace

std::optional<std::string> env_cache_dir() {
  const char* d = std::getenv("HYPERLAB_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return std::string(d);
}

bool save_triples(const std::string& dir, const std::string& name,
                  const std::vector<std::array<i64, 3>>& rows) {
  if (dir.empty()) return false;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string buf;
  buf.append(kMagic, 4);
  buf.push_back((char)kVersion);
  put_u64(buf, rows.size());
  for (const auto& r : rows)
    for (i64 v : r) put_u64(buf, (u64)v);

  std::filesystem::path final_path = std::filesystem::path(dir) / (name + ".hpl");
  std::filesystem::path tmp_path = final_path;
  tmp_path += ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(buf.data(), (std::streamsize)buf.size());
    if (!out) return false;
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  return !ec;
}

std::optional<std::vector<std::array<i64, 3>>> load_triples(const std::string& dir,
                                                            const std::string& name) {
  if (dir.empty()) return std::nullopt;
  std::filesystem::path path = std::filesystem::path(dir) / (name + ".hpl");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 13) return std::nullopt;
  if (std::memcmp(buf.data(), kMagic, 4) != 0) return std::nullopt;
  if ((unsigned char)buf[4] != kVersion) return std::nullopt;
  const auto* p = (const unsigned char*)buf.data();
  u64 count = get_u64(p + 5);
  if (buf.size() != 13 + 24 * count) return std::nullopt;
  std::vector<std::array<i64, 3>> rows;
  rows.reserve(count);
  for (u64 i = 0; i < count; ++i) {
    const unsigned char* rec = p + 13 + 24 * i;
    rows.push_back({(i64)get_u64(rec), (i64)get_u64(rec + 8), (i64)get_u64(rec + 16)});
  }
  return rows;
}

}  // namespace hyperlab::cache
