#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "brute.hpp"
#include "perm.hpp"

using namespace hurwitz;

namespace {

Perm random_perm(int d, std::mt19937& rng) {
  std::vector<int> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm::from_images(img);
}

std::vector<Partition> partitions_of(int d) {
  std::vector<Partition> out;
  for (const auto& raw : brute::partitions_ascending(d)) out.push_back(Partition(raw));
  return out;
}

}  // namespace

TEST_CASE("cycle types") {
  CHECK(Perm::identity(5).cycle_type() == Partition::trivial(5));
  CHECK(parse_cycles("(1 2)(3 4)", 4).cycle_type() == Partition({2, 2}));
  CHECK(parse_cycles("(1 2 3)", 4).cycle_type() == Partition({3, 1}));
  CHECK(Perm::identity(5).defect() == 0);
  CHECK(parse_cycles("(1 2 3 4 5)", 5).defect() == 4);
}

TEST_CASE("composition is left-to-right; conjugation preserves cycle type") {
  Perm a = parse_cycles("(1 2)", 3);
  Perm b = parse_cycles("(2 3)", 3);
  Perm ab = compose(a, b);
  CHECK(ab.cycle_type() == Partition({3}));
  CHECK(ab.apply(0) == 2);  // 1 -> 2 -> 3 in 1-based points
  CHECK(ab.to_cycles() == "(1 3 2)");

  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 2 + int(rng() % 9);
    Perm alpha = random_perm(d, rng);
    Perm g = random_perm(d, rng);
    CHECK(conjugate(alpha, g).cycle_type() == alpha.cycle_type());
    CHECK(compose(alpha, inverse(alpha)).is_identity());
    // conjugation is a homomorphism under the fixed convention
    Perm beta = random_perm(d, rng);
    CHECK(conjugate(compose(alpha, beta), g) ==
          compose(conjugate(alpha, g), conjugate(beta, g)));
  }
}

TEST_CASE("transitivity and orbits") {
  std::vector<Perm> klein{parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)};
  CHECK(is_transitive(klein));
  std::vector<Perm> only_id{Perm::identity(3)};
  CHECK(!is_transitive(only_id));
  CHECK(orbit_count(only_id) == 3);
  std::vector<Perm> swap12{parse_cycles("(1 2)", 3)};
  CHECK(!is_transitive(swap12));

  std::vector<Perm> idd{Perm::identity(4)};
  CHECK(orbit_count(idd) == 4);
  CHECK(orbit_lengths(idd) == Partition::trivial(4));
  std::vector<Perm> pairs{parse_cycles("(1 2)(3 4)", 4)};
  CHECK(orbit_count(pairs) == 2);
  CHECK(orbit_lengths(pairs) == Partition({2, 2}));
}

TEST_CASE("canonical representative") {
  CHECK(canonical_rep(Partition({2, 2})).to_cycles() == "(1 2)(3 4)");
  CHECK(canonical_rep(Partition({3, 1})).to_cycles() == "(1 2 3)");
  for (int d = 1; d <= 12; ++d) {
    for (const Partition& p : partitions_of(d)) {
      CHECK(canonical_rep(p).cycle_type() == p);
    }
  }
}

TEST_CASE("class sizes") {
  CHECK(class_size(Partition({2, 2})) == 3);
  CHECK(class_size(Partition::trivial(9)) == 1);
  CHECK(class_size(Partition({3, 3, 3, 3})) == 246400);
  // iterator agrees on the degree-12 count
  ClassIterator it(Partition({3, 3, 3, 3}));
  std::uint64_t count = 0;
  while (it.next() != nullptr) ++count;
  CHECK(count == 246400);
}

TEST_CASE("class enumeration: exact count, lex order, matching type (d <= 8)") {
  for (int d = 1; d <= 8; ++d) {
    for (const Partition& p : partitions_of(d)) {
      ClassIterator it(p);
      std::uint64_t count = 0;
      std::vector<std::uint8_t> prev;
      while (const std::uint8_t* img = it.next()) {
        std::vector<std::uint8_t> cur(img, img + d);
        if (!prev.empty()) CHECK(prev < cur);
        prev = std::move(cur);
        ++count;
        if (count <= 5 || count % 97 == 0) {
          CHECK(Perm::from_bytes(img, d).cycle_type() == p);
        }
      }
      CHECK(uint128(count) == class_size(p));
    }
  }
}

TEST_CASE("fill hands out disjoint consecutive blocks") {
  Partition type({3, 2, 1, 1});
  ClassIterator sequential(type);
  std::vector<std::vector<std::uint8_t>> expected;
  while (const std::uint8_t* img = sequential.next()) {
    expected.emplace_back(img, img + 7);
  }
  ClassIterator blocked(type);
  std::vector<std::vector<std::uint8_t>> collected;
  std::vector<std::uint8_t> buffer(64 * 7);
  for (;;) {
    std::size_t got = blocked.fill(buffer.data(), 64);
    for (std::size_t i = 0; i < got; ++i) {
      collected.emplace_back(buffer.begin() + i * 7, buffer.begin() + (i + 1) * 7);
    }
    if (got < 64) break;
  }
  CHECK(collected == expected);
}

TEST_CASE("reset rewinds and keeps producing the same stream") {
  ClassIterator it(Partition({2, 2, 1}));
  std::vector<std::vector<std::uint8_t>> first;
  while (const std::uint8_t* img = it.next()) first.emplace_back(img, img + 5);
  it.reset();
  std::vector<std::vector<std::uint8_t>> second;
  while (const std::uint8_t* img = it.next()) second.emplace_back(img, img + 5);
  CHECK(first == second);
  CHECK(first.size() == std::size_t(class_size(Partition({2, 2, 1}))));
}

// defect = transposition distance: subadditive under products, symmetric
// under inversion, sign-multiplicative
TEST_CASE("defect triangle inequality, exhaustive for d <= 6") {
  for (int d = 2; d <= 6; ++d) {
    std::vector<Perm> group = brute::symmetric_group(d);
    for (const Perm& a : group) {
      CHECK(a.defect() == inverse(a).defect());
      for (const Perm& b : group) {
        Perm ab = compose(a, b);
        CHECK(ab.defect() <= a.defect() + b.defect());
        CHECK(ab.defect() >= std::abs(a.defect() - b.defect()));
        CHECK(ab.sign() == a.sign() * b.sign());
      }
    }
  }
}

TEST_CASE("cycle notation round trip") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    int d = 1 + int(rng() % 12);
    Perm p = random_perm(d, rng);
    CHECK(parse_cycles(p.to_cycles(), d) == p);
  }
  CHECK(Perm::identity(6).to_cycles() == "()");
  CHECK(parse_cycles("()", 6) == Perm::identity(6));
  CHECK_THROWS_AS(parse_cycles("(1 2", 4), error);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 4), error);
  CHECK_THROWS_AS(parse_cycles("(0 1)", 4), error);
  CHECK_THROWS_AS(parse_cycles("(1 9)", 4), error);
}

TEST_CASE("degree limits") {
  CHECK_THROWS_AS(Perm::identity(0), error);
  CHECK(Perm::identity(255).is_identity());
  CHECK_THROWS_AS(Perm::identity(700), error);
  // degrees beyond the packed 32 points still compose correctly
  std::mt19937 rng(5);
  Perm big_a = random_perm(40, rng);
  Perm big_b = random_perm(40, rng);
  CHECK(compose(big_a, inverse(big_a)).is_identity());
  CHECK(conjugate(big_a, big_b).cycle_type() == big_a.cycle_type());
  CHECK_THROWS_AS(ClassIterator(Partition::constant(1, 40)), error);
}
