#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hitforge/bitmatrix.hpp"

namespace hitforge::cache {

// On-disk layout of one reduced hit matrix, all integers little-endian:
//   "HITF2" | version u32 | k u8 | n u32 | column order id u32 | rows u64 |
//   rows * ceil(cols / 64) words u64
inline constexpr char kMagic[5] = {'H', 'I', 'T', 'F', '2'};
inline constexpr std::uint32_t kFormatVersion = 1;
/// Columns sorted descending by omega, then sigma, left-lex ("omega-sigma-left-lex-v1").
inline constexpr std::uint32_t kColumnOrderId = 1;
inline constexpr const char* kColumnOrderName = "omega-sigma-left-lex-v1";

/// `dir/k{K}/n{N}.hitf2`
std::filesystem::path entry_path(const std::filesystem::path& dir, std::size_t k, std::uint64_t n);

void write_matrix(std::ostream& out, const BitMatrix& reduced);

/// Reads a matrix over `basis`. Returns nullopt and fills `problem` when the
/// stream is truncated, has the wrong header, or is not in reduced form.
std::optional<BitMatrix> read_matrix(std::istream& in, ColumnBasisPtr basis, std::string* problem);

/// Writes through a temporary file and renames it into place, holding an
/// exclusive advisory lock on the entry's lock file.
void store(const std::filesystem::path& dir, const BitMatrix& reduced);

/// Loads an entry under a shared advisory lock. Missing entries return
/// nullopt silently; unreadable ones return nullopt with `problem` set.
std::optional<BitMatrix> load(const std::filesystem::path& dir, ColumnBasisPtr basis, std::string* problem);

}  // namespace hitforge::cache
