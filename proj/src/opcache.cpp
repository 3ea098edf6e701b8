#include "fracspec/opcache.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "fracspec/errors.hpp"
#include "fracspec/util.hpp"

static_assert(std::endian::native == std::endian::little,
              "cache format assumes a little-endian host");

namespace fracspec {

namespace {

constexpr char kMagic[8] = {'F', 'R', 'S', 'P', 'E', 'C', '0', '1'};
constexpr std::uint32_t kKindMatrix = 0;
constexpr std::uint32_t kKindCoefficients = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("cache: truncated file");
  return value;
}

struct Header {
  std::uint32_t kind = 0;
  double alpha = 0.0;
  std::uint32_t n = 0;
  std::vector<int> levels;
  std::uint64_t count = 0;
  std::uint64_t checksum = 0;
};

void write_payload(const std::filesystem::path& file, const Header& h,
                   std::span<const std::complex<double>> payload) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cache: cannot write " + tmp);
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, h.kind);
    write_pod(out, h.alpha);
    write_pod(out, h.n);
    write_pod(out, static_cast<std::uint32_t>(h.levels.size()));
    for (int m : h.levels) write_pod(out, static_cast<std::uint32_t>(m));
    write_pod(out, h.count);
    const auto bytes = std::as_bytes(payload);
    write_pod(out, fnv1a64(bytes));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cache: short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw IoError("cache: rename failed for " + file.string() + ": " + ec.message());
}

Header read_header(std::istream& in, const std::filesystem::path& file) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("cache: bad magic or format version in " + file.string());
  }
  Header h;
  h.kind = read_pod<std::uint32_t>(in);
  h.alpha = read_pod<double>(in);
  h.n = read_pod<std::uint32_t>(in);
  const auto m_count = read_pod<std::uint32_t>(in);
  if (m_count > 64) throw IoError("cache: implausible m-set in " + file.string());
  for (std::uint32_t i = 0; i < m_count; ++i) {
    h.levels.push_back(static_cast<int>(read_pod<std::uint32_t>(in)));
  }
  h.count = read_pod<std::uint64_t>(in);
  h.checksum = read_pod<std::uint64_t>(in);
  return h;
}

std::vector<std::complex<double>> read_payload(std::istream& in, const Header& h,
                                               const std::filesystem::path& file) {
  std::vector<std::complex<double>> payload(h.count);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(h.count * sizeof(std::complex<double>)));
  if (!in) throw IoError("cache: truncated payload in " + file.string());
  if (fnv1a64(std::as_bytes(std::span(payload))) != h.checksum) {
    throw IoError("cache: checksum mismatch in " + file.string());
  }
  return payload;
}

bool same_alpha(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::string alpha_token(double alpha) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", alpha);
  return buf;
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const CacheKey& key) {
  std::string name = "op_a" + alpha_token(key.alpha) + "_n" + std::to_string(key.n) + "_m";
  for (std::size_t i = 0; i < key.levels.size(); ++i) {
    if (i > 0) name += "-";
    name += std::to_string(key.levels[i]);
  }
  name += ".fsop";
  return dir / name;
}

void cache_store(const std::filesystem::path& dir, const FracOpMatrix& matrix) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  Header h;
  h.kind = kKindMatrix;
  h.alpha = matrix.alpha;
  h.n = static_cast<std::uint32_t>(matrix.n);
  h.levels = matrix.levels;
  h.count = matrix.entries.size();
  write_payload(cache_path(dir, {matrix.alpha, matrix.n, matrix.levels}), h,
                matrix.entries);
}

FracOpMatrix cache_load(const std::filesystem::path& dir, const CacheKey& key) {
  const auto file = cache_path(dir, key);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cache: missing entry " + file.string());
  const Header h = read_header(in, file);
  if (h.kind != kKindMatrix) throw IoError("cache: entry is not an operator matrix");
  if (!same_alpha(h.alpha, key.alpha) || static_cast<int>(h.n) != key.n ||
      h.levels != key.levels) {
    throw IoError("cache: key mismatch in " + file.string());
  }
  const std::uint64_t expected =
      4ull * static_cast<std::uint64_t>(key.n) * static_cast<std::uint64_t>(key.n);
  if (h.count != expected) throw IoError("cache: wrong payload size in " + file.string());
  FracOpMatrix m;
  m.alpha = key.alpha;
  m.n = key.n;
  m.levels = key.levels;
  m.entries = read_payload(in, h, file);
  return m;
}

std::vector<CacheEntry> cache_list(const std::filesystem::path& dir) {
  std::vector<CacheEntry> entries;
  std::error_code ec;
  if (!std::filesystem::exists(dir, ec)) return entries;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (!item.is_regular_file() || item.path().extension() != ".fsop") continue;
    std::ifstream in(item.path(), std::ios::binary);
    if (!in) continue;
    try {
      const Header h = read_header(in, item.path());
      if (h.kind != kKindMatrix) continue;
      CacheEntry e;
      e.key = {h.alpha, static_cast<int>(h.n), h.levels};
      e.checksum = h.checksum;
      e.file_bytes = item.file_size();
      e.filename = item.path().filename().string();
      entries.push_back(std::move(e));
    } catch (const IoError&) {
      continue;  // foreign or damaged files are not listed
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const CacheEntry& a, const CacheEntry& b) { return a.filename < b.filename; });
  return entries;
}

std::size_t cache_purge(const std::filesystem::path& dir,
                        const std::optional<CacheKey>& key) {
  std::size_t removed = 0;
  std::error_code ec;
  if (key.has_value()) {
    removed = std::filesystem::remove(cache_path(dir, *key), ec) ? 1 : 0;
    return removed;
  }
  if (!std::filesystem::exists(dir, ec)) return 0;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".fsop") {
      if (std::filesystem::remove(item.path(), ec)) ++removed;
    }
  }
  return removed;
}

FracOpMatrix load_or_assemble(const std::optional<std::filesystem::path>& dir,
                              double alpha, int n, std::span<const int> m_set,
                              const AssemblyOptions& opts) {
  const CacheKey key{alpha, n, std::vector<int>(m_set.begin(), m_set.end())};
  if (dir.has_value()) {
    const auto file = cache_path(*dir, key);
    if (std::filesystem::exists(file)) return cache_load(*dir, key);
  }
  FracOpMatrix m = assemble_ladder(alpha, n, m_set, opts);
  if (dir.has_value()) cache_store(*dir, m);
  return m;
}

void store_coefficients(const std::filesystem::path& file,
                        const FourierField& field, double alpha,
                        std::span<const int> m_set) {
  Header h;
  h.kind = kKindCoefficients;
  h.alpha = alpha;
  h.n = static_cast<std::uint32_t>(field.n);
  h.levels.assign(m_set.begin(), m_set.end());
  h.count = field.coeffs.size();
  write_payload(file, h, field.coeffs);
}

FourierField load_coefficients(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cache: missing coefficient dump " + file.string());
  const Header h = read_header(in, file);
  if (h.kind != kKindCoefficients) throw IoError("cache: entry is not a coefficient dump");
  FourierField f;
  f.n = static_cast<int>(h.n);
  f.coeffs = read_payload(in, h, file);
  if (f.coeffs.size() != 2 * static_cast<std::size_t>(f.n)) {
    throw IoError("cache: wrong coefficient count in " + file.string());
  }
  f.is_real = true;  // dumps come from the real evolution path
  return f;
}

}  // namespace fracspec
