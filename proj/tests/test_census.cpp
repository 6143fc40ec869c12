#include <doctest.h>

#include <algorithm>
#include <set>

#include "brute.hpp"
#include "census.hpp"

using namespace hurwitz;

TEST_CASE("partition table sizes") {
  CHECK(nontrivial_partitions(4).size() == 4);    // p(4)=5 minus the trivial one
  CHECK(nontrivial_partitions(6).size() == 10);   // p(6)=11
  CHECK(nontrivial_partitions(8).size() == 21);   // p(8)=22
  // canonical order is strict
  auto parts = nontrivial_partitions(7);
  for (size_t i = 1; i < parts.size(); ++i) CHECK(canonical_less(parts[i - 1], parts[i]));
}

// independent generator: all n-multisets over a separately computed partition
// list, filtered by the defect formula directly
namespace {

std::set<std::string> reference_candidates(int d, int n, bool len2) {
  std::vector<Partition> parts;
  for (const auto& raw : brute::partitions_ascending(d)) {
    Partition p(raw);
    if (!p.is_trivial()) parts.push_back(p);
  }
  std::set<std::string> lines;
  std::vector<int> pick(n, 0);
  auto rec = [&](auto&& self, int slot, int first) -> void {
    if (slot == n) {
      std::vector<Partition> tuple;
      int defect = 0;
      bool has2 = false;
      for (int idx : pick) {
        tuple.push_back(parts[idx]);
        defect += parts[idx].defect();
        has2 |= parts[idx].length() == 2;
      }
      if (len2 && !has2) return;
      if (defect % 2 != 0) return;
      int genus = defect / 2 - d + 1;
      if (genus < 0) return;
      lines.insert(BranchDatum::validate(genus, BaseSurface{0}, d, tuple).to_line());
      return;
    }
    for (int idx = first; idx < int(parts.size()); ++idx) {
      pick[slot] = idx;
      self(self, slot + 1, idx);
    }
  };
  rec(rec, 0, 0);
  return lines;
}

}  // namespace

TEST_CASE("candidate enumeration matches an independent generator (d <= 8)") {
  for (int d = 2; d <= 8; ++d) {
    for (int n : {3, 4}) {
      for (bool len2 : {false, true}) {
        CensusQuery query;
        query.degree = d;
        query.branch_points = n;
        query.require_length2 = len2;
        std::set<std::string> got;
        for (const BranchDatum& datum : enumerate_candidates(query)) {
          CHECK(datum.num_partitions() == n);
          CHECK(datum.base().is_sphere());
          got.insert(datum.to_line());
        }
        auto want = reference_candidates(d, n, len2);
        CHECK(got == want);
        // each datum exactly once
        CHECK(got.size() == enumerate_candidates(query).size());
      }
    }
  }
}

TEST_CASE("the degree-4 census contains the expected data") {
  CensusQuery query;
  query.degree = 4;
  query.branch_points = 3;
  query.require_length2 = true;
  std::set<std::string> lines;
  for (const BranchDatum& datum : enumerate_candidates(query)) lines.insert(datum.to_line());
  CHECK(lines.count("g0/S d=4 2,2 2,2 1,3") == 1);
  // genus is derived from the defect sum, so the all-twos datum sits at g = 0
  CHECK(lines.count("g0/S d=4 2,2 2,2 2,2") == 1);
}

TEST_CASE("genus filters post-select") {
  CensusQuery query;
  query.degree = 6;
  query.branch_points = 3;
  query.genus_min = 1;
  query.genus_max = 1;
  for (const BranchDatum& datum : enumerate_candidates(query)) {
    CHECK(datum.cover_genus() == 1);
  }
}

TEST_CASE("degree-6 exceptional census against the classification") {
  CensusQuery query;
  query.degree = 6;
  query.branch_points = 3;
  query.require_length2 = true;
  query.jobs = 2;
  CensusResult result = exceptional_census(query);
  CHECK(result.mismatches.empty());
  CHECK(result.unknown == 0);
  CHECK(result.candidates == result.realizable + result.exceptional);
  std::set<std::string> lines(result.exceptional_lines.begin(), result.exceptional_lines.end());
  CHECK(lines.count("g1/S d=6 3,3 3,3 2,4") == 1);        // the sporadic genus-1 case
  CHECK(lines.count("g0/S d=6 2,2,2 2,2,2 1,5") == 1);    // k=3, s=1
  CHECK(lines.count("g0/S d=6 2,2,2 2,2,2 2,4") == 1);    // k=3, s=2
  CHECK(lines.count("g0/S d=6 2,2,2 1,2,3 3,3") == 1);    // k=3 / k=1 of the staircases
  CHECK(lines.count("g0/S d=6 2,2,2 2,2,2 3,3") == 0);    // s = k is realizable
  CHECK(result.header() == "# census d=6 n=3 constraint=len2");
  CHECK(result.to_text().substr(0, result.header().size()) == result.header());
}

TEST_CASE("census output is deterministic across worker counts") {
  CensusQuery query;
  query.degree = 6;
  query.branch_points = 3;
  query.require_length2 = true;
  query.jobs = 1;
  std::string first = exceptional_census(query).to_text();
  query.jobs = 3;
  std::string second = exceptional_census(query).to_text();
  CHECK(first == second);
}

TEST_CASE("an injected classifier fault shows up as a mismatch") {
  CensusQuery query;
  query.degree = 4;
  query.branch_points = 3;
  const std::string victim = "g0/S d=4 2,2 2,2 1,3";
  auto broken = [&](const BranchDatum& datum) {
    Verdict v = classify(datum);
    if (datum.to_line() == victim) {
      v.kind = v.kind == VerdictKind::realizable ? VerdictKind::exceptional
                                                 : VerdictKind::realizable;
    }
    return v;
  };
  CHECK(crosscheck(query).empty());
  std::vector<std::string> report = crosscheck(query, broken);
  REQUIRE(report.size() == 1);
  CHECK(report[0].substr(0, victim.size()) == victim);
}

TEST_CASE("budget starvation is reported as unknown, not silence") {
  CensusQuery query;
  query.degree = 6;
  query.branch_points = 3;
  query.require_length2 = true;
  query.total_seconds = 1e-300;
  CensusResult result = exceptional_census(query);
  CHECK(result.unknown == result.candidates);
  CHECK(result.exceptional_lines.empty());
}

TEST_CASE("prime degrees are exceptional-free") {
  SearchBudget budget{100000000, 0};
  CHECK(prime_degree_check(5, 3, budget, 2));
  CHECK(prime_degree_check(7, 3, budget, 2));
  CHECK_THROWS_AS(prime_degree_check(6, 3, budget, 1), error);
  CHECK_THROWS_AS(prime_degree_check(1, 3, budget, 1), error);
}

TEST_CASE("census json summary carries the counts") {
  CensusQuery query;
  query.degree = 4;
  query.branch_points = 3;
  query.require_length2 = true;
  CensusResult result = exceptional_census(query);
  std::string json = result.to_json();
  CHECK(json.find("\"candidates\"") != std::string::npos);
  CHECK(json.find("\"exceptional\"") != std::string::npos);
  CHECK(json.find("\"mismatches\":[]") != std::string::npos);
}
