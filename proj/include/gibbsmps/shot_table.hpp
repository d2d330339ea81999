#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace gibbsmps {

/// Projective measurement outcomes in a fixed per-site basis.
///
/// `basis` holds one character per measured site, 'Z' or 'X'. Bitstring keys
/// use site order: character k of the key is the outcome of site k.
struct ShotTable {
  std::string basis;
  std::size_t n_shots = 0;
  std::map<std::string, std::uint64_t> outcomes;
  std::uint64_t seed = 0;

  std::size_t n_sites() const { return basis.size(); }

  /// Keeps only the first `n` sites, merging counts of identical prefixes.
  ShotTable marginal_prefix(std::size_t n) const;

  /// File format: three header lines (`basis`, `shots`, `seed`) followed by
  /// one `bitstring count` line per outcome, bitstrings sorted.
  void save(std::ostream& os) const;
  static ShotTable load(std::istream& is);
};

bool operator==(const ShotTable& a, const ShotTable& b);

}  // namespace gibbsmps
