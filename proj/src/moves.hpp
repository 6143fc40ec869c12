#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "datum.hpp"
#include "oracle.hpp"
#include "perm.hpp"

namespace hurwitz {

enum class MoveId { T1, T2, T3, T4, A1, A2 };

const char* move_name(MoveId id);

// One executed reduction move: realizability of `target` implies that of
// `source`. Indices in `parameters` are 1-based, matching the CLI descriptor.
struct MoveApplication {
  MoveId move = MoveId::T1;
  BranchDatum source;
  BranchDatum target;
  std::vector<std::pair<std::string, int>> parameters;
  std::optional<std::pair<Perm, Perm>> witness_fragment;
};

// Topological moves; all take 1-based partition indices, require n = 3,
// sphere base and cover genus >= 1, and need a length-2 partition in the
// remaining slot. When an entry must be chosen inside a partition, the
// smallest qualifying entry is taken.
MoveApplication apply_T1(const BranchDatum& datum, int i);
MoveApplication apply_T2(const BranchDatum& datum, int i, int j, int x_entry, int x1);
MoveApplication apply_T3(const BranchDatum& datum, int i, int j);
MoveApplication apply_T4(const BranchDatum& datum, int i, int j);

// theta pair with the prescribed cycle types and minimal product defect
// v(theta1*theta2) = v(pi1) + v(pi2); the joint action then has exactly
// d - v(pi1) - v(pi2) orbits whose lengths are the product's cycle type.
// `requested` restricts the product to one specific cycle type of that defect.
std::pair<Perm, Perm> construct_min_defect_product(
    const Partition& pi1, const Partition& pi2,
    const std::optional<Partition>& requested = std::nullopt);

// theta pair whose product is a d-cycle when v(pi1)+v(pi2) = d-1 (mod 2),
// and otherwise [d/2,d/2] for pi1 = pi2 = [2..2] or [d-1,1].
std::pair<Perm, Perm> construct_extreme_product(const Partition& pi1, const Partition& pi2);

// Algebraic moves: merge partitions i and j (1-based) into the product type,
// dropping n by one. A1 keeps the genus, A2 recomputes it from the defect sum.
MoveApplication apply_A1(const BranchDatum& datum, int i, int j,
                         const std::optional<Partition>& requested = std::nullopt);
MoveApplication apply_A2(const BranchDatum& datum, int i, int j);

struct MoveReport {
  bool target_validates = false;
  ThreeValued source_verdict = ThreeValued::unknown;
  ThreeValued target_verdict = ThreeValued::unknown;
  bool implication_ok = true;  // false only on an established violation
  bool conclusive = false;
};

// target must validate, and oracle(target) = yes must force
// oracle(source) = yes
MoveReport verify_move(const MoveApplication& app, const SearchBudget& budget, int jobs = 1);

// CLI descriptor, e.g. "T2 i=1 j=2 x=6 x1=2" or "A1 i=1 j=2 pi=6,2"
MoveApplication apply_move_spec(const BranchDatum& datum, std::string_view spec);

}  // namespace hurwitz
