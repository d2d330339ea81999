#include "gibbsmps/shot_table.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "gibbsmps/tensor.hpp"

namespace gibbsmps {

ShotTable ShotTable::marginal_prefix(std::size_t n) const {
  require(n >= 1 && n <= n_sites(), "ShotTable::marginal_prefix: bad prefix length");
  ShotTable out;
  out.basis = basis.substr(0, n);
  out.n_shots = n_shots;
  out.seed = seed;
  for (const auto& [bits, count] : outcomes) out.outcomes[bits.substr(0, n)] += count;
  return out;
}

void ShotTable::save(std::ostream& os) const {
  os << "basis " << basis << "\n";
  os << "shots " << n_shots << "\n";
  os << "seed " << seed << "\n";
  for (const auto& [bits, count] : outcomes) os << bits << ' ' << count << "\n";
}

ShotTable ShotTable::load(std::istream& is) {
  ShotTable t;
  std::string key;
  require(static_cast<bool>(is >> key) && key == "basis", "ShotTable::load: expected basis line");
  is >> t.basis;
  require(static_cast<bool>(is >> key) && key == "shots", "ShotTable::load: expected shots line");
  is >> t.n_shots;
  require(static_cast<bool>(is >> key) && key == "seed", "ShotTable::load: expected seed line");
  is >> t.seed;
  std::string bits;
  std::uint64_t count;
  std::uint64_t total = 0;
  while (is >> bits >> count) {
    require(bits.size() == t.basis.size(), "ShotTable::load: bitstring length mismatch");
    t.outcomes[bits] += count;
    total += count;
  }
  require(total == t.n_shots, "ShotTable::load: counts do not sum to n_shots");
  return t;
}

bool operator==(const ShotTable& a, const ShotTable& b) {
  return a.basis == b.basis && a.n_shots == b.n_shots && a.seed == b.seed &&
         a.outcomes == b.outcomes;
}

}  // namespace gibbsmps
