#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "datum.hpp"
#include "error.hpp"

namespace hurwitz {

using uint128 = unsigned __int128;
std::string uint128_to_string(uint128 value);

// Permutation of {1..d}. Points are 0-based in memory and 1-based in text.
// Image arrays are packed one-byte points; degrees up to 32 stay inline,
// larger ones spill to the heap.
class Perm {
public:
  static constexpr int packed_capacity = 32;
  static constexpr int max_degree = 255;

  Perm() = default;
  static Perm identity(int degree);
  // validated bijection check; images are 0-based
  static Perm from_images(std::span<const int> images);
  static Perm from_bytes(const std::uint8_t* images, int degree);

  int degree() const { return degree_; }
  int apply(int x) const { return data()[x]; }
  const std::uint8_t* data() const {
    return degree_ > packed_capacity ? big_.data() : small_.data();
  }

  Partition cycle_type() const;
  int cycle_count() const;
  int length() const { return cycle_count(); }
  // v(alpha) = d - #cycles, the transposition distance from the identity
  int defect() const { return degree_ - cycle_count(); }
  int sign() const { return defect() % 2 == 0 ? 1 : -1; }
  bool is_identity() const;

  // disjoint cycle notation, fixed points omitted, identity printed "()"
  std::string to_cycles() const;

  bool operator==(const Perm& other) const;

private:
  friend Perm compose(const Perm&, const Perm&);
  friend Perm inverse(const Perm&);
  std::uint8_t* mutable_data() {
    return degree_ > packed_capacity ? big_.data() : small_.data();
  }
  static Perm uninitialized(int degree);

  int degree_ = 0;
  std::array<std::uint8_t, packed_capacity> small_{};
  std::vector<std::uint8_t> big_;
};

// left-to-right convention: compose(a, b) applies a first, then b
Perm compose(const Perm& first, const Perm& then);
Perm inverse(const Perm& p);
// g^-1 * p * g under the same convention
Perm conjugate(const Perm& p, const Perm& g);

Perm parse_cycles(std::string_view text, int degree);

// cycles are consecutive blocks (1..c1)(c1+1..c1+c2)... for entries descending
Perm canonical_rep(const Partition& cycle_type);

bool is_transitive(std::span<const Perm> generators);
int orbit_count(std::span<const Perm> generators);
Partition orbit_lengths(std::span<const Perm> generators);

// d! / prod(i^{m_i} * m_i!) with m_i the multiplicity of cycle length i
uint128 class_size(const Partition& cycle_type);

// kernels on raw image buffers (0-based points, degree <= 32)
namespace pk {

inline void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, int d) {
  for (int i = 0; i < d; ++i) out[i] = b[a[i]];
}

inline int cycle_count(const std::uint8_t* p, int d) {
  std::uint64_t seen = 0;
  int cycles = 0;
  for (int i = 0; i < d; ++i) {
    if (seen >> i & 1) continue;
    ++cycles;
    for (int j = i; !(seen >> j & 1); j = p[j]) seen |= std::uint64_t(1) << j;
  }
  return cycles;
}

// want[len] holds the multiplicity of each cycle length; scratch needs d+1 bytes
inline bool type_matches(const std::uint8_t* p, int d, const std::uint8_t* want,
                         std::uint8_t* scratch) {
  for (int i = 0; i <= d; ++i) scratch[i] = want[i];
  std::uint64_t seen = 0;
  for (int i = 0; i < d; ++i) {
    if (seen >> i & 1) continue;
    int len = 0;
    for (int j = i; !(seen >> j & 1); j = p[j]) {
      seen |= std::uint64_t(1) << j;
      ++len;
    }
    if (scratch[len] == 0) return false;
    --scratch[len];
  }
  return true;
}

}  // namespace pk

// Enumerates every permutation of a given cycle type exactly once, in
// lexicographic order of the image arrays. Assignments are built point by
// point; a partial assignment survives only if its open chains can still be
// assembled into the remaining cycle lengths (exact test, memoized).
class ClassIterator {
public:
  explicit ClassIterator(const Partition& cycle_type);

  int degree() const { return d_; }
  // image array of the next element, or nullptr when exhausted;
  // the pointer stays valid until the next call
  const std::uint8_t* next();
  // 0-based index of the element most recently produced
  std::uint64_t index() const { return index_; }
  // copy out up to max_count consecutive elements (d bytes each); the blocks
  // handed out by repeated calls are the disjoint sub-ranges used for sharding
  std::size_t fill(std::uint8_t* dst, std::size_t max_count);
  // rewind to the beginning, keeping the feasibility cache
  void reset();

private:
  static constexpr std::uint8_t kUnset = 0xFF;

  struct FeasKey {
    std::array<std::uint8_t, 64> bytes{};
    bool operator==(const FeasKey&) const = default;
  };
  struct FeasKeyHash {
    std::size_t operator()(const FeasKey& k) const;
  };
  struct UndoRec {
    bool closed;
    std::uint8_t y;
    std::uint8_t chain_start;
    std::uint8_t size_before;
  };

  bool assign(int pos, int y);
  void unassign(int pos);
  bool feasible();
  bool feasible_now(std::uint8_t* chains, std::uint8_t* cycles);
  bool solve(std::uint8_t* chains, std::uint8_t* cycles);
  bool fill_cycle(std::uint8_t* chains, std::uint8_t* cycles, int rem, int cap);
  int max_open_len() const;

  int d_ = 0;
  std::uint64_t index_ = 0;
  bool exhausted_ = false;
  bool primed_ = false;
  int pos_ = 0;
  std::array<std::uint8_t, 33> full_want_{};
  std::array<std::uint8_t, 33> want_{};
  int want_total_ = 0;
  std::array<std::uint8_t, 32> img_{};
  std::array<bool, 32> used_{};
  std::array<std::uint8_t, 32> chain_start_{};
  std::array<std::uint8_t, 32> chain_size_{};
  std::array<std::uint8_t, 33> chain_cnt_{};
  int chains_total_ = 0;
  std::array<std::int16_t, 33> try_{};
  std::array<UndoRec, 32> undo_{};
  std::unordered_map<FeasKey, bool, FeasKeyHash> memo_;
};

}  // namespace hurwitz
