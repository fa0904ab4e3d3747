#include "galois/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace galois {

namespace {

constexpr char kMagic[4] = {'F', 'P', 'C', '1'};

void put_u32(std::vector<char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
  const std::vector<char>& buf;
  std::size_t pos = 0;

  bool u32(std::uint32_t& v) {
    if (pos + 4 > buf.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<unsigned char>(buf[pos + i])} << (8 * i);
    pos += 4;
    return true;
  }
};

std::vector<std::uint32_t> header_words(const CacheKey& key, std::size_t length, std::size_t dim) {
  std::vector<std::uint32_t> w = {key.p, key.h};
  w.insert(w.end(), key.modulus.begin(), key.modulus.end());
  w.push_back(static_cast<std::uint32_t>(key.n));
  w.push_back(static_cast<std::uint32_t>(key.j));
  w.push_back(static_cast<std::uint32_t>(key.k));
  w.push_back(static_cast<std::uint32_t>(length));
  w.push_back(static_cast<std::uint32_t>(dim));
  return w;
}

std::size_t payload_size(std::uint32_t p, std::size_t length, std::size_t dim) {
  const std::size_t entries = length * dim;
  return p == 2 ? (entries + 7) / 8 : entries;
}

}  // namespace

CacheKey CacheKey::of(const ProjectiveSpace& space, int j, int k) {
  const Field& f = space.field();
  return {f.p(), f.h(), f.modulus(), space.n(), j, k};
}

std::string CacheKey::file_name() const {
  std::ostringstream s;
  s << "code_p" << p << "_h" << h << "_m";
  for (std::size_t i = 0; i < modulus.size(); ++i) s << (i ? "-" : "") << modulus[i];
  s << "_n" << n << "_j" << j << "_k" << k << ".fpc";
  return s.str();
}

void write_basis(const std::filesystem::path& path, const CacheKey& key, const RowEchelon& basis) {
  std::vector<char> out(kMagic, kMagic + 4);
  for (auto w : header_words(key, basis.length(), basis.rank())) put_u32(out, w);
  const std::size_t header = out.size();
  out.resize(header + payload_size(key.p, basis.length(), basis.rank()), 0);
  std::size_t bit = 0;
  for (std::size_t r = 0; r < basis.rank(); ++r) {
    const auto row = basis.row(r);
    for (std::size_t c = 0; c < row.size(); ++c, ++bit) {
      if (key.p == 2) {
        if (row[c]) out[header + bit / 8] = static_cast<char>(out[header + bit / 8] | (1 << (bit % 8)));
      } else {
        out[header + bit] = static_cast<char>(row[c]);
      }
    }
  }
  // write next to the target and rename, so readers never see a partial file
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write cache file " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("short write to cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move cache file into place: " + path.string());
  }
}

std::optional<RowEchelon> read_basis(const std::filesystem::path& path, const CacheKey& key, std::size_t length) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::vector<char> buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < 4 || !std::equal(kMagic, kMagic + 4, buf.begin())) return std::nullopt;
  Reader rd{buf, 4};
  const auto expect = header_words(key, length, 0);
  std::uint32_t v = 0;
  for (std::size_t i = 0; i + 1 < expect.size(); ++i)
    if (!rd.u32(v) || v != expect[i]) return std::nullopt;
  std::uint32_t dim = 0;
  if (!rd.u32(dim) || dim > length) return std::nullopt;
  if (buf.size() - rd.pos != payload_size(key.p, length, dim)) return std::nullopt;

  std::vector<std::vector<std::uint8_t>> rows(dim, std::vector<std::uint8_t>(length));
  std::size_t bit = 0;
  for (auto& row : rows)
    for (std::size_t c = 0; c < length; ++c, ++bit) {
      const auto byte = static_cast<unsigned char>(buf[rd.pos + (key.p == 2 ? bit / 8 : bit)]);
      row[c] = static_cast<std::uint8_t>(key.p == 2 ? (byte >> (bit % 8)) & 1 : byte);
      if (row[c] >= key.p) return std::nullopt;
    }
  try {
    return RowEchelon::from_rows(key.p, length, rows);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("GALOIS_CACHE_DIR"); env && *env) return env;
  return ".cache";
}

CodeCache::CodeCache(std::filesystem::path dir, unsigned threads) : dir_(std::move(dir)), threads_(threads) {}

LinearCode CodeCache::get(const ProjectiveSpacePtr& space, int j, int k, bool* hit) {
  const CacheKey key = CacheKey::of(*space, j, k);
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mu_);
    auto& s = slots_[key];
    if (!s) s = std::make_shared<Slot>();
    slot = s;
  }
  bool built_here = false;
  std::call_once(slot->once, [&] {
    const std::size_t length = space->count(j);
    if (!dir_.empty()) {
      if (auto basis = read_basis(dir_ / key.file_name(), key, length)) {
        slot->code.emplace(space, CodeParams{space->n(), j, k, false}, std::move(*basis));
        return;
      }
    }
    built_here = true;
    slot->code.emplace(build_code(space, j, k, threads_));
    ++builds_;
    if (!dir_.empty()) {
      std::filesystem::create_directories(dir_);
      write_basis(dir_ / key.file_name(), key, slot->code->basis());
    }
  });
  if (!built_here) ++hits_;
  if (hit) *hit = !built_here;
  return *slot->code;
}

}  // namespace galois
