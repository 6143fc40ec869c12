#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "datum.hpp"
#include "oracle.hpp"

namespace hurwitz {

struct CensusQuery {
  int degree = 0;
  int branch_points = 0;
  bool require_length2 = false;
  int genus_min = -1;  // -1 = unbounded
  int genus_max = -1;
  SearchBudget per_datum;
  double total_seconds = 0;  // whole-run cap, 0 = off
  int jobs = 1;
};

// non-trivial partitions of `degree` in canonical order
std::vector<Partition> nontrivial_partitions(int degree);

// every sphere-base candidate datum for the query exactly once: multisets of
// n non-trivial partitions with even total defect and g = sum(v)/2 - d + 1
// >= 0, genus derived rather than enumerated, in canonical stream order
std::vector<BranchDatum> enumerate_candidates(const CensusQuery& query);

struct CensusResult {
  int degree = 0;
  int branch_points = 0;
  bool require_length2 = false;
  int genus_min = -1;
  int genus_max = -1;
  std::uint64_t candidates = 0;
  std::uint64_t realizable = 0;
  std::uint64_t exceptional = 0;
  std::uint64_t unknown = 0;
  std::vector<std::string> exceptional_lines;  // sorted canonical datum lines
  std::vector<std::string> mismatches;         // classifier/oracle disagreements

  std::string header() const;
  std::string to_text() const;  // header + exceptional lines
  std::string to_json() const;
};

using ClassifyFn = std::function<Verdict(const BranchDatum&)>;

// oracle verdict for every candidate; the exceptional list collects the No
// verdicts, and wherever the length-2 classifier is in scope its answer is
// compared against the oracle (the mismatch list must stay empty)
CensusResult exceptional_census(const CensusQuery& query, const ClassifyFn& classifier = {});

// classifier vs oracle over every length-2 datum of the query
std::vector<std::string> crosscheck(const CensusQuery& query, const ClassifyFn& classifier = {});

// true iff the census at prime degree finds no exceptional datum (and no
// budget gaps)
bool prime_degree_check(int degree, int branch_points, const SearchBudget& per_datum, int jobs);

}  // namespace hurwitz
