#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "datum.hpp"
#include "oracle.hpp"

namespace hurwitz {

// One exceptional family hit: substituting the parameters into the family
// template reproduces the matched datum exactly.
struct FamilyMatch {
  int id = 0;
  std::map<std::string, int> params;
  bool operator==(const FamilyMatch&) const = default;
};

// Build the family-`id` datum for the given parameters (keys among
// k, h, p, s, n). Throws bad_argument when the parameters are out of range.
BranchDatum family_instantiate(int id, const std::map<std::string, int>& params);

// All families containing the datum, ordered by id (overlaps are reported,
// not disambiguated). Empty means no family matches.
std::vector<FamilyMatch> match_families(const BranchDatum& datum);

enum class VerdictKind { realizable, exceptional, unknown };

enum class VerdictReason {
  eks_positive_genus_base,  // base genus >= 1
  length_one_partition,     // some partition is [d]
  main_theorem,             // length-2 classification, sphere base
  oracle_witness,           // fallback search found a witness
  oracle_exhaustive,        // fallback search exhausted without one
  out_of_scope,             // no theorem applies and no fallback requested
  budget_exceeded,
};

const char* reason_tag(VerdictReason reason);
const char* verdict_kind_tag(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::unknown;
  VerdictReason reason = VerdictReason::out_of_scope;
  std::vector<FamilyMatch> families;
  std::optional<Witness> witness;

  bool theorem_backed() const {
    return reason != VerdictReason::oracle_witness && reason != VerdictReason::oracle_exhaustive;
  }
};

// Decision pipeline: positive-genus base -> realizable; a length-1 partition
// -> realizable; a length-2 partition on sphere base -> the family matcher
// decides; anything else is Unknown unless a fallback budget lets the oracle
// answer (such verdicts are tagged with oracle provenance).
Verdict classify(const BranchDatum& datum,
                 const std::optional<SearchBudget>& oracle_fallback = std::nullopt, int jobs = 1);

std::string verdict_to_json(const BranchDatum& datum, const Verdict& verdict);
std::string verdict_to_text(const BranchDatum& datum, const Verdict& verdict);

}  // namespace hurwitz
