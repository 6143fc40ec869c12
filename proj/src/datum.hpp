#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace hurwitz {

// Partition of a positive integer: unordered multiset of entries >= 1,
// stored sorted descending. degree = sum, length = entry count,
// defect = degree - length.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> entries);
  static Partition constant(int entry, int count);
  static Partition trivial(int degree) { return constant(1, degree); }

  const std::vector<int>& entries() const { return entries_; }
  int degree() const { return degree_; }
  int length() const { return static_cast<int>(entries_.size()); }
  int defect() const { return degree_ - length(); }
  bool is_trivial() const { return degree_ == length(); }

  bool contains(int entry) const;
  int count(int entry) const;

  // eta * rho: juxtaposition, degrees add
  Partition juxtapose(const Partition& other) const;
  // one copy of `entry` removed; throws precondition if absent
  Partition without(int entry) const;
  // one copy of `entry` replaced by the given entries
  Partition replaced(int entry, const std::vector<int>& with) const;

  // entries ascending, comma separated, no spaces: "1,1,3"
  std::string to_string() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<int> entries_;
  int degree_ = 0;
};

// Canonical order on partitions of equal degree: longer first, then
// lexicographic on the descending entry vectors.
bool canonical_less(const Partition& a, const Partition& b);

// Closed orientable base surface; genus 0 is the sphere.
struct BaseSurface {
  int genus = 0;

  bool is_sphere() const { return genus == 0; }
  int euler_characteristic() const { return 2 - 2 * genus; }
  std::string to_string() const;  // "S", "T", "2T", ...

  bool operator==(const BaseSurface&) const = default;
};

// Candidate branch datum (cover genus, base, degree, partition list)
// satisfying the Riemann-Hurwitz condition. Partition positions are
// preserved as given; canonical order applies only when formatting or
// comparing.
class BranchDatum {
public:
  // Validating constructor. Trivial partitions are dropped (with n reduced);
  // the Riemann-Hurwitz condition is then checked on the normalized datum.
  // Throws: degree_mismatch, riemann_hurwitz, degenerate, bad_argument.
  static BranchDatum validate(int cover_genus, BaseSurface base, int degree,
                              std::vector<Partition> partitions);

  int cover_genus() const { return cover_genus_; }
  BaseSurface base() const { return base_; }
  int degree() const { return degree_; }
  int num_partitions() const { return static_cast<int>(partitions_.size()); }
  const std::vector<Partition>& partitions() const { return partitions_; }
  const Partition& partition(int i) const { return partitions_.at(i); }

  int total_defect() const;
  bool has_length(int len) const;

  std::vector<Partition> canonical_partitions() const;
  std::string to_line() const;
  // equality as candidate data (partitions up to reordering)
  bool same_candidate(const BranchDatum& other) const;

private:
  BranchDatum() = default;
  int cover_genus_ = 0;
  BaseSurface base_;
  int degree_ = 0;
  std::vector<Partition> partitions_;
};

// Sphere-base genus from Eq-(3)-style defect count:
// g = sum(defects)/2 - degree + 1. Throws parity / negative_genus.
int genus_from_partitions(int degree, const std::vector<Partition>& partitions);

// Canonical line format: `g<G>/<BASE> d=<D> <p1> <p2> ... <pn>` with BASE in
// {S, T, 2T, ...} and each <pi> comma-separated entries. `#` starts a comment.
BranchDatum parse_datum(std::string_view line);
std::string format_datum(const BranchDatum& datum);

}  // namespace hurwitz
