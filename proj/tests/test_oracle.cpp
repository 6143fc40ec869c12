#include <doctest.h>

#include <algorithm>
#include <random>

#include "brute.hpp"
#include "census.hpp"
#include "oracle.hpp"

using namespace hurwitz;

namespace {

Perm random_perm(int d, std::mt19937& rng) {
  std::vector<int> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm::from_images(img);
}

}  // namespace

TEST_CASE("Klein-subgroup obstruction at degree 4") {
  BranchDatum datum = parse_datum("g0/S d=4 2,2 2,2 1,3");
  RealizeOutcome outcome = realize(datum, {});
  CHECK(outcome.kind == Realizability::not_realizable);
}

TEST_CASE("two transpositions compose to a 3-cycle") {
  BranchDatum datum = parse_datum("g0/S d=3 1,2 1,2 3");
  RealizeOutcome outcome = realize(datum, {});
  REQUIRE(outcome.kind == Realizability::found);
  CHECK(verify_witness(datum, *outcome.witness));
}

TEST_CASE("the sporadic genus-1 degree-6 datum is exceptional") {
  BranchDatum datum = parse_datum("g1/S d=6 3,3 3,3 2,4");
  CHECK(realize(datum, {}).kind == Realizability::not_realizable);
}

TEST_CASE("the four-branch-point genus-2 datum is exceptional") {
  BranchDatum datum = parse_datum("g2/S d=8 2,2,2,2 2,2,2,2 2,2,2,2 3,5");
  CHECK(is_realizable(datum, {}) == ThreeValued::no);
}

TEST_CASE("degree-12 genus-2 all-threes datum is realizable") {
  BranchDatum datum = parse_datum("g2/S d=12 3,3,3,3 3,3,3,3 6,6");
  CHECK(is_realizable(datum, {}) == ThreeValued::yes);
}

TEST_CASE("witness generators act with a single orbit") {
  BranchDatum datum = parse_datum("g1/S d=6 3,3 3,3 3,3");
  Witness witness = *realize(datum, {}).witness;
  CHECK(orbit_count(witness.theta) == 1);
  CHECK(orbit_lengths(witness.theta) == Partition({6}));
}

TEST_CASE("a full-degree partition forces realizability (d <= 8)") {
  // every valid datum containing [d] must come back Found
  for (int d = 2; d <= 8; ++d) {
    CensusQuery query;
    query.degree = d;
    query.branch_points = 3;
    for (const BranchDatum& datum : enumerate_candidates(query)) {
      if (!datum.has_length(1)) continue;
      CHECK(is_realizable(datum, {}) == ThreeValued::yes);
    }
  }
  // the minimal such datum: two full cycles, no further branching
  BranchDatum two_cycles = BranchDatum::validate(
      0, BaseSurface{0}, 5, {Partition({5}), Partition({5})});
  CHECK(is_realizable(two_cycles, {}) == ThreeValued::yes);
}

TEST_CASE("verify_witness checks all three conditions") {
  BranchDatum datum = parse_datum("g0/S d=3 1,2 1,2 3");
  Witness witness = *realize(datum, {}).witness;
  CHECK(verify_witness(datum, witness));

  Witness broken = witness;
  broken.theta[0] = Perm::identity(3);
  CHECK(!verify_witness(datum, broken));

  Witness short_tuple = witness;
  short_tuple.theta.pop_back();
  CHECK(!verify_witness(datum, short_tuple));

  // product must be the identity, not merely type-correct
  Witness scrambled = witness;
  std::swap(scrambled.theta[0], scrambled.theta[2]);
  bool still_valid = scrambled.theta[0].cycle_type() == datum.partition(0) &&
                     verify_witness(datum, scrambled);
  CHECK(!still_valid);
}

TEST_CASE("witnesses are closed under simultaneous conjugation") {
  BranchDatum datum = parse_datum("g1/S d=6 3,3 3,3 3,3");
  Witness witness = *realize(datum, {}).witness;
  std::mt19937 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    Perm g = random_perm(6, rng);
    Witness conjugated;
    for (const Perm& t : witness.theta) conjugated.theta.push_back(conjugate(t, g));
    CHECK(verify_witness(datum, conjugated));
  }
}

TEST_CASE("verdicts ignore the order partitions arrive in") {
  std::mt19937 rng(41);
  const char* lines[] = {
      "g1/S d=6 3,3 3,3 2,4",       // exceptional
      "g0/S d=6 2,2,2 1,2,3 5,1",   // realizable
      "g1/S d=8 2,2,2,2 4,4 3,5",   // exceptional
      "g0/S d=8 2,2,2,2 1,1,3,3 7,1",
  };
  for (const char* line : lines) {
    BranchDatum datum = parse_datum(line);
    ThreeValued expected = is_realizable(datum, {});
    std::vector<Partition> parts = datum.partitions();
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      std::shuffle(parts.begin(), parts.end(), rng);
      BranchDatum reordered =
          BranchDatum::validate(datum.cover_genus(), datum.base(), datum.degree(), parts);
      CHECK(is_realizable(reordered, {}) == expected);
      RealizeOutcome outcome = realize(reordered, {});
      if (outcome.kind == Realizability::found) {
        CHECK(verify_witness(reordered, *outcome.witness));
      }
    }
  }
}

TEST_CASE("deterministic across runs and worker counts") {
  BranchDatum datum = parse_datum("g2/S d=12 3,3,3,3 3,3,3,3 4,8");
  RealizeOutcome first = realize(datum, {});
  for (int jobs : {1, 2, 3}) {
    RealizeOutcome again = realize(datum, {}, jobs);
    REQUIRE(again.kind == first.kind);
    REQUIRE(again.witness.has_value());
    for (size_t j = 0; j < first.witness->theta.size(); ++j) {
      CHECK(again.witness->theta[j] == first.witness->theta[j]);
    }
  }
}

TEST_CASE("node budgets degrade to unknown, never to a wrong verdict") {
  BranchDatum datum = parse_datum("g1/S d=12 2,2,2,2,2,2 3,3,3,3 5,7");
  SearchBudget tiny{16, 0};
  CHECK(is_realizable(datum, tiny) == ThreeValued::unknown);
  SearchBudget ample{100000000, 0};
  CHECK(is_realizable(datum, ample) == ThreeValued::no);
}

TEST_CASE("budgets follow sequential node accounting exactly, at any job count") {
  // the witness position is well past the first parallel block
  BranchDatum datum = parse_datum("g2/S d=12 3,3,3,3 3,3,3,3 4,8");
  RealizeOutcome reference = realize(datum, {});
  REQUIRE(reference.kind == Realizability::found);
  REQUIRE(reference.nodes > 1024);
  for (int jobs : {1, 2, 3}) {
    SearchBudget exact{reference.nodes, 0};
    RealizeOutcome at = realize(datum, exact, jobs);
    CHECK(at.kind == Realizability::found);
    CHECK(at.nodes == reference.nodes);
    SearchBudget short_by_one{reference.nodes - 1, 0};
    CHECK(realize(datum, short_by_one, jobs).kind == Realizability::budget_exceeded);
  }
}

TEST_CASE("found witnesses satisfy the sphere defect identity") {
  // sum of defects = 2(d + g - 1) on every witness
  const char* lines[] = {
      "g0/S d=6 2,2,2 1,2,3 5,1",
      "g1/S d=6 3,3 3,3 3,3",
      "g2/S d=12 3,3,3,3 3,3,3,3 1,11",
  };
  for (const char* line : lines) {
    BranchDatum datum = parse_datum(line);
    Witness witness = *realize(datum, {}).witness;
    int defect_sum = 0;
    for (const Perm& t : witness.theta) defect_sum += t.defect();
    CHECK(defect_sum == 2 * (datum.degree() + datum.cover_genus() - 1));
  }
}

TEST_CASE("positive-genus bases are refused") {
  BranchDatum datum = parse_datum("g5/T d=4 2,2 2,2 2,2 2,2");
  CHECK_THROWS_AS(realize(datum, {}), error);
  try {
    realize(datum, {});
  } catch (const error& e) {
    CHECK(e.code() == errc::unsupported_base);
  }
}

TEST_CASE("witness text and JSON round trip") {
  BranchDatum datum = parse_datum("g1/S d=6 3,3 3,3 3,3");
  Witness witness = *realize(datum, {}).witness;
  Witness reparsed = Witness::from_text(witness.to_text(), 6);
  CHECK(verify_witness(datum, reparsed));
  Witness from_json = Witness::from_json(witness.to_json());
  CHECK(verify_witness(datum, from_json));
  // degree inference from the largest mentioned point
  Witness inferred = Witness::from_text("theta1=(1 2 3)(4 5 6)\ntheta2=(1 4)(2 5)(3 6)\n");
  CHECK(inferred.degree() == 6);
}

// ground truth: full cartesian search over whole classes, no symmetry
// reduction -- must agree with the oracle verdict everywhere it is feasible
TEST_CASE("oracle agrees with the naive tuple search") {
  for (int d = 2; d <= 5; ++d) {
    CensusQuery query;
    query.degree = d;
    query.branch_points = 3;
    for (const BranchDatum& datum : enumerate_candidates(query)) {
      CHECK((is_realizable(datum, {}) == ThreeValued::yes) == brute::realizable(datum));
    }
  }
  // degree 6, length-2 slice (covers the sporadic exceptional case)
  CensusQuery query6;
  query6.degree = 6;
  query6.branch_points = 3;
  query6.require_length2 = true;
  for (const BranchDatum& datum : enumerate_candidates(query6)) {
    CHECK((is_realizable(datum, {}) == ThreeValued::yes) == brute::realizable(datum));
  }
  // four branch points at degrees 4 and 5
  for (int d : {4, 5}) {
    CensusQuery query4;
    query4.degree = d;
    query4.branch_points = 4;
    for (const BranchDatum& datum : enumerate_candidates(query4)) {
      CHECK((is_realizable(datum, {}) == ThreeValued::yes) == brute::realizable(datum));
    }
  }
  // five branch points at degree 4 (three enumerated levels in the search)
  CensusQuery query5;
  query5.degree = 4;
  query5.branch_points = 5;
  for (const BranchDatum& datum : enumerate_candidates(query5)) {
    CHECK((is_realizable(datum, {}) == ThreeValued::yes) == brute::realizable(datum));
  }
}
