#include "moves.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace hurwitz {

const char* move_name(MoveId id) {
  switch (id) {
    case MoveId::T1: return "T1";
    case MoveId::T2: return "T2";
    case MoveId::T3: return "T3";
    case MoveId::T4: return "T4";
    case MoveId::A1: return "A1";
    case MoveId::A2: return "A2";
  }
  return "?";
}

namespace {

int to_index(const BranchDatum& datum, int one_based, const char* name) {
  if (one_based < 1 || one_based > datum.num_partitions()) {
    fail(errc::precondition, std::string(name) + "=" + std::to_string(one_based) +
                                 " is not a valid partition index");
  }
  return one_based - 1;
}

void require_t_shape(const BranchDatum& datum) {
  if (datum.num_partitions() != 3) fail(errc::precondition, "T-moves need n = 3");
  if (!datum.base().is_sphere()) fail(errc::precondition, "T-moves need sphere base");
  if (datum.cover_genus() < 1) fail(errc::precondition, "T-moves need cover genus >= 1");
}

// the slot not used by the move must be a length-2 partition [s, d-s]
int len2_small_entry(const BranchDatum& datum, int slot, int min_side) {
  const Partition& p = datum.partition(slot);
  if (p.length() != 2) fail(errc::precondition, "remaining slot must have length 2");
  int s = p.entries()[1];
  if (s < min_side) {
    fail(errc::precondition, "length-2 partition needs both sides >= " + std::to_string(min_side));
  }
  return s;
}

// smallest entry >= bound, or 0
int smallest_at_least(const Partition& p, int bound) {
  const auto& e = p.entries();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it >= bound) return *it;
  }
  return 0;
}

bool all_twos(const Partition& p) {
  return std::all_of(p.entries().begin(), p.entries().end(), [](int e) { return e == 2; });
}

}  // namespace

MoveApplication apply_T1(const BranchDatum& datum, int i) {
  require_t_shape(datum);
  int idx = to_index(datum, i, "i");
  const Partition& pi = datum.partition(idx);
  if (pi.count(1) < 2 || !pi.contains(3)) {
    fail(errc::precondition, "partition i must contain [1,1,3]");
  }
  bool has_len2 = false;
  for (int k = 0; k < 3; ++k) {
    if (k != idx && datum.partition(k).length() == 2) has_len2 = true;
  }
  if (!has_len2) fail(errc::precondition, "another slot must have length 2");

  std::vector<Partition> parts = datum.partitions();
  parts[idx] = parts[idx].replaced(3, {1, 1, 1});
  BranchDatum target = BranchDatum::validate(datum.cover_genus() - 1, datum.base(),
                                             datum.degree(), std::move(parts));
  return MoveApplication{MoveId::T1, datum, std::move(target), {{"i", i}}, std::nullopt};
}

MoveApplication apply_T2(const BranchDatum& datum, int i, int j, int x_entry, int x1) {
  require_t_shape(datum);
  int ii = to_index(datum, i, "i");
  int jj = to_index(datum, j, "j");
  if (ii == jj) fail(errc::precondition, "i and j must differ");
  int kk = 3 - ii - jj;
  int d = datum.degree();
  int s = len2_small_entry(datum, kk, 2);
  if (x_entry < 4) fail(errc::precondition, "x must be >= 4");
  if (!datum.partition(ii).contains(x_entry)) {
    fail(errc::precondition, "partition i has no entry " + std::to_string(x_entry));
  }
  if (!datum.partition(jj).contains(2)) fail(errc::precondition, "partition j must contain a 2");
  int x2 = x_entry - 2 - x1;
  if (x1 < 1 || x2 < 1) fail(errc::precondition, "need x1, x2 >= 1 with x1 + x2 = x - 2");

  std::vector<Partition> parts = datum.partitions();
  parts[ii] = parts[ii].replaced(x_entry, {x1, x2});
  parts[jj] = parts[jj].without(2);
  parts[kk] = Partition({s - 1, d - s - 1});
  BranchDatum target =
      BranchDatum::validate(datum.cover_genus() - 1, datum.base(), d - 2, std::move(parts));
  return MoveApplication{MoveId::T2,
                         datum,
                         std::move(target),
                         {{"i", i}, {"j", j}, {"x", x_entry}, {"x1", x1}},
                         std::nullopt};
}

MoveApplication apply_T3(const BranchDatum& datum, int i, int j) {
  require_t_shape(datum);
  int ii = to_index(datum, i, "i");
  int jj = to_index(datum, j, "j");
  if (ii == jj) fail(errc::precondition, "i and j must differ");
  int kk = 3 - ii - jj;
  int d = datum.degree();
  int s = len2_small_entry(datum, kk, 3);

  // x <= y: the two smallest entries >= 3 of partition i
  std::vector<int> big;
  for (auto it = datum.partition(ii).entries().rbegin();
       it != datum.partition(ii).entries().rend(); ++it) {
    if (*it >= 3 && big.size() < 2) big.push_back(*it);
  }
  if (big.size() < 2) fail(errc::precondition, "partition i needs two entries >= 3");
  int x = big[0], y = big[1];
  if (datum.partition(jj).count(2) < 2) {
    fail(errc::precondition, "partition j must contain [2,2]");
  }

  std::vector<Partition> parts = datum.partitions();
  parts[ii] = parts[ii].replaced(x, {x - 2}).replaced(y, {y - 2});
  parts[jj] = parts[jj].without(2).without(2);
  parts[kk] = Partition({s - 2, d - s - 2});
  BranchDatum target =
      BranchDatum::validate(datum.cover_genus() - 1, datum.base(), d - 4, std::move(parts));
  return MoveApplication{MoveId::T3,
                         datum,
                         std::move(target),
                         {{"i", i}, {"j", j}, {"x", x}, {"y", y}},
                         std::nullopt};
}

MoveApplication apply_T4(const BranchDatum& datum, int i, int j) {
  require_t_shape(datum);
  int ii = to_index(datum, i, "i");
  int jj = to_index(datum, j, "j");
  if (ii == jj) fail(errc::precondition, "i and j must differ");
  int kk = 3 - ii - jj;
  int d = datum.degree();
  int s = len2_small_entry(datum, kk, 2);
  int x = smallest_at_least(datum.partition(ii), 4);
  if (x == 0) fail(errc::precondition, "partition i needs an entry >= 4");
  int y = smallest_at_least(datum.partition(jj), 3);
  if (y == 0) fail(errc::precondition, "partition j needs an entry >= 3");

  std::vector<Partition> parts = datum.partitions();
  parts[ii] = parts[ii].replaced(x, {x - 2});
  parts[jj] = parts[jj].replaced(y, {y - 2});
  parts[kk] = Partition({s - 1, d - s - 1});
  BranchDatum target =
      BranchDatum::validate(datum.cover_genus() - 1, datum.base(), d - 2, std::move(parts));
  return MoveApplication{MoveId::T4,
                         datum,
                         std::move(target),
                         {{"i", i}, {"j", j}, {"x", x}, {"y", y}},
                         std::nullopt};
}

namespace {

std::pair<Perm, Perm> search_product_with(const Partition& pi1, const Partition& pi2,
                                          const std::optional<Partition>& exact_type,
                                          int target_defect) {
  int d = pi1.degree();
  Perm theta1 = canonical_rep(pi1);
  std::array<std::uint8_t, 32> prod;
  std::array<std::uint8_t, 33> want{};
  std::array<std::uint8_t, 33> scratch;
  if (exact_type) {
    for (int len : exact_type->entries()) ++want[len];
  }
  ClassIterator it(pi2);
  for (const std::uint8_t* e = it.next(); e != nullptr; e = it.next()) {
    pk::compose(theta1.data(), e, prod.data(), d);
    if (exact_type) {
      if (!pk::type_matches(prod.data(), d, want.data(), scratch.data())) continue;
    } else if (d - pk::cycle_count(prod.data(), d) != target_defect) {
      continue;
    }
    return {theta1, Perm::from_bytes(e, d)};
  }
  if (exact_type) {
    fail(errc::precondition, "no product of type " + exact_type->to_string() + " attainable");
  }
  fail(errc::internal, "minimal-defect product search exhausted");
}

}  // namespace

std::pair<Perm, Perm> construct_min_defect_product(const Partition& pi1, const Partition& pi2,
                                                   const std::optional<Partition>& requested) {
  if (pi1.degree() != pi2.degree()) fail(errc::degree_mismatch, "partition degrees differ");
  int d = pi1.degree();
  int v = pi1.defect() + pi2.defect();
  if (v > d - 1) fail(errc::precondition, "need v(pi1) + v(pi2) <= d - 1");
  if (requested && (requested->degree() != d || requested->defect() != v)) {
    fail(errc::precondition, "requested type must have defect v(pi1) + v(pi2)");
  }
  auto pair = search_product_with(pi1, pi2, requested, v);
  // the minimal-defect pair has exactly d - v orbits, one product cycle each
  std::array<Perm, 2> gens{pair.first, pair.second};
  Perm product = compose(pair.first, pair.second);
  if (orbit_count(gens) != d - v || orbit_lengths(gens) != product.cycle_type()) {
    fail(errc::internal, "minimal-defect product violates the orbit postcondition");
  }
  return pair;
}

std::pair<Perm, Perm> construct_extreme_product(const Partition& pi1, const Partition& pi2) {
  if (pi1.degree() != pi2.degree()) fail(errc::degree_mismatch, "partition degrees differ");
  int d = pi1.degree();
  int v = pi1.defect() + pi2.defect();
  if (v < d - 1) fail(errc::precondition, "need v(pi1) + v(pi2) >= d - 1");
  Partition target = (v - (d - 1)) % 2 == 0
                         ? Partition({d})
                         : (pi1 == pi2 && all_twos(pi1) ? Partition({d / 2, d / 2})
                                                        : Partition({d - 1, 1}));
  return search_product_with(pi1, pi2, target, target.defect());
}

namespace {

std::vector<Partition> merged_partitions(const BranchDatum& datum, int ii, int jj,
                                         const Partition& merged) {
  std::vector<Partition> parts{merged};
  for (int m = 0; m < datum.num_partitions(); ++m) {
    if (m != ii && m != jj) parts.push_back(datum.partition(m));
  }
  return parts;
}

}  // namespace

MoveApplication apply_A1(const BranchDatum& datum, int i, int j,
                         const std::optional<Partition>& requested) {
  int ii = to_index(datum, i, "i");
  int jj = to_index(datum, j, "j");
  if (ii == jj) fail(errc::precondition, "i and j must differ");
  int d = datum.degree();
  if (datum.partition(ii).defect() + datum.partition(jj).defect() > d - 1) {
    fail(errc::precondition, "need v(pi_i) + v(pi_j) <= d - 1");
  }
  auto fragment = construct_min_defect_product(datum.partition(ii), datum.partition(jj), requested);
  Partition merged = compose(fragment.first, fragment.second).cycle_type();

  BranchDatum target = BranchDatum::validate(datum.cover_genus(), datum.base(), d,
                                             merged_partitions(datum, ii, jj, merged));
  return MoveApplication{MoveId::A1, datum, std::move(target), {{"i", i}, {"j", j}},
                         std::move(fragment)};
}

MoveApplication apply_A2(const BranchDatum& datum, int i, int j) {
  int ii = to_index(datum, i, "i");
  int jj = to_index(datum, j, "j");
  if (ii == jj) fail(errc::precondition, "i and j must differ");
  int d = datum.degree();
  if (d < 3) fail(errc::precondition, "A2 needs d >= 3");
  if (datum.partition(ii).defect() + datum.partition(jj).defect() < d - 1) {
    fail(errc::precondition, "need v(pi_i) + v(pi_j) >= d - 1");
  }
  int rest_defect = 0;
  for (int m = 0; m < datum.num_partitions(); ++m) {
    if (m != ii && m != jj) rest_defect += datum.partition(m).defect();
  }
  if (rest_defect < d - 1) {
    fail(errc::precondition, "need the remaining defects to sum to >= d - 1");
  }
  auto fragment = construct_extreme_product(datum.partition(ii), datum.partition(jj));
  Partition merged = compose(fragment.first, fragment.second).cycle_type();

  std::vector<Partition> parts = merged_partitions(datum, ii, jj, merged);
  int new_genus = genus_from_partitions(d, parts);
  BranchDatum target = BranchDatum::validate(new_genus, datum.base(), d, std::move(parts));
  return MoveApplication{MoveId::A2, datum, std::move(target), {{"i", i}, {"j", j}},
                         std::move(fragment)};
}

namespace {

// replay the move from its recorded source and parameters
MoveApplication rederive(const MoveApplication& app) {
  auto param = [&](const char* key) {
    for (const auto& [name, value] : app.parameters) {
      if (name == key) return value;
    }
    fail(errc::precondition, std::string("application lacks parameter ") + key);
  };
  switch (app.move) {
    case MoveId::T1: return apply_T1(app.source, param("i"));
    case MoveId::T2:
      return apply_T2(app.source, param("i"), param("j"), param("x"), param("x1"));
    case MoveId::T3: return apply_T3(app.source, param("i"), param("j"));
    case MoveId::T4: return apply_T4(app.source, param("i"), param("j"));
    case MoveId::A1: {
      std::optional<Partition> requested;
      if (app.witness_fragment) {
        requested =
            compose(app.witness_fragment->first, app.witness_fragment->second).cycle_type();
      }
      return apply_A1(app.source, param("i"), param("j"), requested);
    }
    case MoveId::A2: return apply_A2(app.source, param("i"), param("j"));
  }
  fail(errc::internal, "unreachable move id");
}

}  // namespace

MoveReport verify_move(const MoveApplication& app, const SearchBudget& budget, int jobs) {
  MoveReport report;
  try {
    report.target_validates = rederive(app).target.same_candidate(app.target);
  } catch (const error&) {
    report.target_validates = false;
  }
  if (!report.target_validates) return report;
  report.target_verdict = is_realizable(app.target, budget, jobs);
  if (report.target_verdict == ThreeValued::yes) {
    report.source_verdict = is_realizable(app.source, budget, jobs);
    report.implication_ok = report.source_verdict != ThreeValued::no;
    report.conclusive = report.source_verdict != ThreeValued::unknown;
  } else {
    report.conclusive = report.target_verdict == ThreeValued::no;
  }
  return report;
}

MoveApplication apply_move_spec(const BranchDatum& datum, std::string_view spec) {
  std::vector<std::string_view> tokens;
  size_t pos = 0;
  while (pos < spec.size()) {
    while (pos < spec.size() && spec[pos] == ' ') ++pos;
    size_t start = pos;
    while (pos < spec.size() && spec[pos] != ' ') ++pos;
    if (pos > start) tokens.push_back(spec.substr(start, pos - start));
  }
  if (tokens.empty()) fail(errc::syntax, "empty move descriptor");

  std::map<std::string, int, std::less<>> args;
  std::optional<Partition> requested;
  for (size_t t = 1; t < tokens.size(); ++t) {
    auto eq = tokens[t].find('=');
    if (eq == std::string_view::npos) fail(errc::syntax, "move arguments look like key=value");
    std::string_view key = tokens[t].substr(0, eq);
    std::string_view value = tokens[t].substr(eq + 1);
    if (key == "pi") {
      std::vector<int> entries;
      size_t at = 0;
      while (at <= value.size()) {
        size_t comma = value.find(',', at);
        size_t end = comma == std::string_view::npos ? value.size() : comma;
        int e = 0;
        auto [ptr, ec] = std::from_chars(value.data() + at, value.data() + end, e);
        if (ec != std::errc() || ptr != value.data() + end) fail(errc::syntax, "bad pi= entries");
        entries.push_back(e);
        if (comma == std::string_view::npos) break;
        at = comma + 1;
      }
      requested = Partition(entries);
      continue;
    }
    int parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      fail(errc::syntax, "bad integer for " + std::string(key));
    }
    args[std::string(key)] = parsed;
  }
  auto get = [&](const char* key) {
    auto it = args.find(key);
    if (it == args.end()) fail(errc::syntax, std::string("move needs ") + key + "=");
    return it->second;
  };

  std::string_view name = tokens[0];
  if (name == "T1") return apply_T1(datum, get("i"));
  if (name == "T2") return apply_T2(datum, get("i"), get("j"), get("x"), get("x1"));
  if (name == "T3") return apply_T3(datum, get("i"), get("j"));
  if (name == "T4") return apply_T4(datum, get("i"), get("j"));
  if (name == "A1") return apply_A1(datum, get("i"), get("j"), requested);
  if (name == "A2") return apply_A2(datum, get("i"), get("j"));
  fail(errc::syntax, "unknown move " + std::string(name));
}

}  // namespace hurwitz
