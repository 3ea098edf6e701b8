#pragma once

#include <charconv>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace fracspec {

// Runs fn(begin, end) over a partition of [0, count) on `threads` workers.
// Partitions are contiguous and depend only on (count, threads), so callers
// that write to disjoint index ranges stay deterministic.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// FNV-1a 64-bit over a byte span; used for cache-file checksums.
std::uint64_t fnv1a64(std::span<const std::byte> bytes);

}  // namespace fracspec
