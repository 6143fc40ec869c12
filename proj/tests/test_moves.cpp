#include <doctest.h>

#include "brute.hpp"
#include "moves.hpp"

using namespace hurwitz;

namespace {

bool fails_with(errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("T1 trades a 3 for three 1s and drops the genus") {
  BranchDatum source = parse_datum("g1/S d=8 1,1,3,3 4,4 2,6");
  MoveApplication app = apply_T1(source, 1);
  CHECK(app.target.to_line() == "g0/S d=8 1,1,1,1,1,3 4,4 2,6");
  CHECK(verify_move(app, {}).target_validates);

  // genus 0 blocks the move
  CHECK(fails_with(errc::precondition, [&] { apply_T1(app.target, 1); }));
  // without [1,1,3] in the chosen slot
  CHECK(fails_with(errc::precondition, [&] { apply_T1(source, 2); }));
}

TEST_CASE("T1 on the inductive degree-18 configuration") {
  BranchDatum source = parse_datum("g1/S d=18 8,10 1,1,1,1,1,1,1,1,1,1,1,1,3,3 9,9");
  MoveApplication app = apply_T1(source, 2);
  CHECK(app.target.to_line() ==
        parse_datum("g0/S d=18 8,10 3,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1 9,9").to_line());
}

TEST_CASE("T2 splits an entry, eats a 2 and shrinks the length-2 slot") {
  // degree 2k+2 staircase, k = 4
  BranchDatum source = parse_datum("g1/S d=10 2,2,6 2,2,2,2,2 5,5");
  MoveApplication app = apply_T2(source, 1, 2, 6, 2);
  CHECK(app.target.to_line() == "g0/S d=8 2,2,2,2 2,2,2,2 4,4");
  CHECK(!app.witness_fragment.has_value());

  CHECK(fails_with(errc::precondition, [&] { apply_T2(source, 1, 2, 6, 4); }));  // x2 = 0
  CHECK(fails_with(errc::precondition, [&] { apply_T2(source, 1, 2, 2, 1); }));  // x < 4
  BranchDatum s1 = parse_datum("g1/S d=10 2,2,6 2,2,2,2,2 1,9");
  CHECK(fails_with(errc::precondition, [&] { apply_T2(s1, 1, 2, 6, 2); }));  // s = 1
}

TEST_CASE("T3 removes [x,y] against [2,2]") {
  BranchDatum source = parse_datum("g1/S d=12 3,3,3,3 2,2,2,2,2,2 6,6");
  MoveApplication app = apply_T3(source, 1, 2);
  CHECK(app.target.same_candidate(parse_datum("g0/S d=8 1,1,3,3 2,2,2,2 4,4")));
  // x = y = 3 leaves entries 1,1 in the target
  auto x_param = app.parameters[2];
  CHECK(x_param.first == "x");
  CHECK(x_param.second == 3);

  BranchDatum shallow = parse_datum("g1/S d=12 3,3,3,3 2,2,2,2,2,2 2,10");
  CHECK(fails_with(errc::precondition, [&] { apply_T3(shallow, 1, 2); }));  // s = 2 < 3
}

TEST_CASE("T4 on the two-partition configuration of the genus-1 induction") {
  // kh + 2 with k = 2, h = 3
  BranchDatum source = parse_datum("g1/S d=8 1,1,1,5 3,5 4,4");
  MoveApplication app = apply_T4(source, 1, 2);
  // y picks the smallest entry >= 3, here 3, matching the published reduction
  CHECK(app.target.same_candidate(parse_datum("g0/S d=6 1,1,1,3 1,5 3,3")));
  CHECK(app.parameters[2] == std::pair<std::string, int>{"x", 5});
  CHECK(app.parameters[3] == std::pair<std::string, int>{"y", 3});
}

TEST_CASE("T4 preconditions") {
  BranchDatum source = parse_datum("g1/S d=8 4,4 1,1,3,3 2,6");
  // partition 2 has no entry >= 4
  CHECK(fails_with(errc::precondition, [&] { apply_T4(source, 2, 1); }));
  MoveApplication app = apply_T4(source, 1, 2);
  CHECK(app.target.same_candidate(parse_datum("g0/S d=6 2,4 1,1,1,3 1,5")));
  CHECK(app.target.cover_genus() == 0);
}

TEST_CASE("minimal-defect products match the brute-force optimum (d <= 7)") {
  for (int d = 2; d <= 7; ++d) {
    std::vector<Partition> types;
    for (const auto& raw : brute::partitions_ascending(d)) types.push_back(Partition(raw));
    for (const Partition& p1 : types) {
      for (const Partition& p2 : types) {
        int v = p1.defect() + p2.defect();
        if (v > d - 1) {
          CHECK(fails_with(errc::precondition, [&] { construct_min_defect_product(p1, p2); }));
          continue;
        }
        auto [t1, t2] = construct_min_defect_product(p1, p2);
        CHECK(t1.cycle_type() == p1);
        CHECK(t2.cycle_type() == p2);
        Perm product = compose(t1, t2);
        CHECK(product.defect() == v);
        std::vector<Perm> gens{t1, t2};
        CHECK(orbit_count(gens) == d - v);
        CHECK(orbit_lengths(gens) == product.cycle_type());

        // brute force: v(pi1) + v(pi2) is the largest product defect the
        // class pair can reach, and it is reached
        int best = 0;
        for (const Perm& a : brute::whole_class(p1)) {
          for (const Perm& b : brute::whole_class(p2)) {
            best = std::max(best, compose(a, b).defect());
          }
        }
        CHECK(best == v);
      }
    }
  }
}

TEST_CASE("extreme products hit the mandated target type (d <= 7)") {
  for (int d = 2; d <= 7; ++d) {
    std::vector<Partition> types;
    for (const auto& raw : brute::partitions_ascending(d)) types.push_back(Partition(raw));
    for (const Partition& p1 : types) {
      for (const Partition& p2 : types) {
        int v = p1.defect() + p2.defect();
        if (v < d - 1) {
          CHECK(fails_with(errc::precondition, [&] { construct_extreme_product(p1, p2); }));
          continue;
        }
        auto [t1, t2] = construct_extreme_product(p1, p2);
        CHECK(t1.cycle_type() == p1);
        CHECK(t2.cycle_type() == p2);
        Partition got = compose(t1, t2).cycle_type();
        if ((v - (d - 1)) % 2 == 0) {
          CHECK(got == Partition({d}));
        } else if (p1 == p2 && p1 == Partition::constant(2, d / 2)) {
          CHECK(got == Partition({d / 2, d / 2}));
        } else {
          CHECK(got == Partition({d - 1, 1}));
        }
      }
    }
  }
}

TEST_CASE("spec'd product examples") {
  // [2,1,1] twice in degree 4: defect-2 product spanning exactly 2 orbits
  auto [a, b] = construct_min_defect_product(Partition({2, 1, 1}), Partition({2, 1, 1}));
  Perm product = compose(a, b);
  CHECK(product.defect() == 2);
  std::vector<Perm> gens{a, b};
  CHECK(orbit_count(gens) == 2);
  CHECK(orbit_lengths(gens) == product.cycle_type());

  // a specific defect-2 type can be requested, e.g. [3,1]
  auto [ra, rb] =
      construct_min_defect_product(Partition({2, 1, 1}), Partition({2, 1, 1}), Partition({3, 1}));
  CHECK(compose(ra, rb).cycle_type() == Partition({3, 1}));

  CHECK(fails_with(errc::precondition, [&] {
    construct_min_defect_product(Partition({2, 2}), Partition({2, 2}));
  }));
  CHECK(compose(construct_extreme_product(Partition({2, 2}), Partition({2, 2})).first,
                construct_extreme_product(Partition({2, 2}), Partition({2, 2})).second)
            .cycle_type() == Partition({2, 2}));
  auto [e1, e2] = construct_extreme_product(Partition({3, 1}), Partition({2, 2}));
  CHECK(compose(e1, e2).cycle_type() == Partition({3, 1}));
  auto [f1, f2] = construct_extreme_product(Partition({4}), Partition({2, 1, 1}));
  CHECK(compose(f1, f2).cycle_type() == Partition({3, 1}));
}

TEST_CASE("A1 merges two small-defect partitions at constant genus") {
  BranchDatum source = parse_datum("g0/S d=8 1,1,1,1,1,3 2,2,2,2 2,2,2,2 2,2,2,2");
  MoveApplication app = apply_A1(source, 1, 2, Partition({6, 2}));
  CHECK(app.target.to_line() == "g0/S d=8 2,2,2,2 2,2,2,2 2,6");
  REQUIRE(app.witness_fragment.has_value());
  CHECK(app.witness_fragment->first.cycle_type() == Partition({1, 1, 1, 1, 1, 3}));
  CHECK(app.witness_fragment->second.cycle_type() == Partition({2, 2, 2, 2}));
  CHECK(compose(app.witness_fragment->first, app.witness_fragment->second).cycle_type() ==
        Partition({6, 2}));

  // default choice: first pair in canonical order, merged type [6,2] again
  // or another defect-6 type; the postcondition pins only the defect
  MoveApplication free_choice = apply_A1(source, 1, 2);
  CHECK(free_choice.target.num_partitions() == 3);
  CHECK(free_choice.target.cover_genus() == 0);

  BranchDatum small = parse_datum("g0/S d=4 1,1,2 1,1,2 1,3 1,3");
  MoveApplication merged = apply_A1(small, 1, 2);
  CHECK(merged.target.num_partitions() == 3);
  CHECK(merged.target.partition(0).defect() == 2);

  BranchDatum blocked = parse_datum("g1/S d=4 2,2 2,2 2,2 2,2");
  CHECK(fails_with(errc::precondition, [&] { apply_A1(blocked, 1, 2); }));
}

TEST_CASE("A2 merges two large-defect partitions, recomputing the genus") {
  BranchDatum source = parse_datum("g2/S d=8 2,2,2,2 2,2,2,2 2,2,2,2 3,5");
  MoveApplication app = apply_A2(source, 1, 2);
  CHECK(app.target.to_line() == "g1/S d=8 2,2,2,2 4,4 3,5");
  CHECK(app.target.cover_genus() == 1);
  REQUIRE(app.witness_fragment.has_value());
  CHECK(compose(app.witness_fragment->first, app.witness_fragment->second).cycle_type() ==
        Partition({4, 4}));

  BranchDatum tiny = BranchDatum::validate(1, BaseSurface{0}, 2,
                                           {Partition({2}), Partition({2}), Partition({2}),
                                            Partition({2})});
  CHECK(fails_with(errc::precondition, [&] { apply_A2(tiny, 1, 2); }));  // d < 3

  // remaining defect too small
  BranchDatum thin = parse_datum("g1/S d=6 6 6 2,2,1,1");
  CHECK(fails_with(errc::precondition, [&] { apply_A2(thin, 1, 2); }));
}

TEST_CASE("verify_move accepts genuine applications and flags corrupted ones") {
  BranchDatum source = parse_datum("g1/S d=8 1,1,3,3 4,4 2,6");
  MoveApplication app = apply_T1(source, 1);
  MoveReport report = verify_move(app, {});
  CHECK(report.target_validates);
  CHECK(report.implication_ok);
  if (report.target_verdict == ThreeValued::yes) {
    CHECK(report.source_verdict == ThreeValued::yes);
  }

  MoveApplication corrupted = app;
  corrupted.target = parse_datum("g0/S d=8 1,1,1,1,1,3 4,4 4,4");
  MoveReport bad = verify_move(corrupted, {});
  CHECK(!bad.target_validates);
}

TEST_CASE("move descriptors drive the same operations") {
  BranchDatum source = parse_datum("g1/S d=10 2,2,6 2,2,2,2,2 5,5");
  MoveApplication app = apply_move_spec(source, "T2 i=1 j=2 x=6 x1=2");
  CHECK(app.target.to_line() == "g0/S d=8 2,2,2,2 2,2,2,2 4,4");

  BranchDatum merged_source = parse_datum("g0/S d=8 1,1,1,1,1,3 2,2,2,2 2,2,2,2 2,2,2,2");
  MoveApplication a1 = apply_move_spec(merged_source, "A1 i=1 j=2 pi=6,2");
  CHECK(a1.target.partition(0) == Partition({6, 2}));

  CHECK_THROWS_AS(apply_move_spec(source, "T9 i=1"), error);
  CHECK_THROWS_AS(apply_move_spec(source, "T2 i=1"), error);
}
