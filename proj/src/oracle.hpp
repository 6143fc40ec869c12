#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "datum.hpp"
#include "perm.hpp"

namespace hurwitz {

// 0 means unlimited. Node budgets give deterministic verdicts; wall-clock
// budgets trade that for a hard stop.
struct SearchBudget {
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;

  bool unlimited() const { return max_nodes == 0 && max_seconds == 0; }
};

// theta_1 ... theta_n with prescribed cycle types, product the identity and
// transitive joint action: the monodromy certificate of realizability.
struct Witness {
  std::vector<Perm> theta;

  int degree() const { return theta.empty() ? 0 : theta.front().degree(); }
  std::string to_text() const;
  std::string to_json() const;
  // accepts the theta<j>=<cycles> lines, optional d=<D> line and # comments;
  // without a degree hint the degree is the largest mentioned point
  static Witness from_text(std::string_view text, int degree_hint = 0);
  static Witness from_json(std::string_view json);
};

bool verify_witness(const BranchDatum& datum, const Witness& witness);

enum class Realizability { found, not_realizable, budget_exceeded };
enum class ThreeValued { yes, no, unknown };

struct RealizeOutcome {
  Realizability kind = Realizability::budget_exceeded;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
};

// Exhaustive monodromy search over conjugacy classes. The partition with the
// largest class is never enumerated (the last factor is forced and checked by
// cycle type), the largest remaining class is pinned to its canonical
// representative, and the rest are enumerated in canonical order with defect
// and parity pruning. NotRealizable therefore certifies exhaustion; budget
// interruptions degrade to BudgetExceeded.
RealizeOutcome realize(const BranchDatum& datum, const SearchBudget& budget, int jobs = 1);

ThreeValued is_realizable(const BranchDatum& datum, const SearchBudget& budget, int jobs = 1);

}  // namespace hurwitz
