#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracspec/fourier.hpp"
#include "fracspec/fracop.hpp"

namespace fracspec {

// Operator matrices are keyed by (alpha, N, m-set); L is excluded because
// matrices are always built at L = 1 and rescaled at application time.
struct CacheKey {
  double alpha = 0.0;
  int n = 0;
  std::vector<int> levels;
};

struct CacheEntry {
  CacheKey key;
  std::uint64_t checksum = 0;
  std::uintmax_t file_bytes = 0;
  std::string filename;
};

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const CacheKey& key);

// Binary round trip is bit-exact: header (magic, kind, alpha, N, m-set,
// payload count, checksum) followed by row-major little-endian complex
// doubles.
void cache_store(const std::filesystem::path& dir, const FracOpMatrix& matrix);
FracOpMatrix cache_load(const std::filesystem::path& dir, const CacheKey& key);

std::vector<CacheEntry> cache_list(const std::filesystem::path& dir);

// Removes one entry (or every entry when key is empty); returns the number
// of files deleted.
std::size_t cache_purge(const std::filesystem::path& dir,
                        const std::optional<CacheKey>& key);

// Loads the ladder matrix when cached, otherwise assembles and (when a
// directory is given) stores it.
FracOpMatrix load_or_assemble(const std::optional<std::filesystem::path>& dir,
                              double alpha, int n, std::span<const int> m_set,
                              const AssemblyOptions& opts = {});

// Coefficient dumps reuse the same envelope (kind 1, payload 2N entries).
void store_coefficients(const std::filesystem::path& file,
                        const FourierField& field, double alpha,
                        std::span<const int> m_set);
FourierField load_coefficients(const std::filesystem::path& file);

}  // namespace fracspec
