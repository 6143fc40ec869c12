#include "classifier.hpp"

#include <json.hpp>

namespace hurwitz {

namespace {

int need(const std::map<std::string, int>& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) fail(errc::bad_argument, std::string("missing parameter ") + key);
  return it->second;
}

void require(bool ok, const char* what) {
  if (!ok) fail(errc::bad_argument, std::string("parameter out of range: ") + what);
}

std::vector<int> ones(int count) { return std::vector<int>(count, 1); }

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

BranchDatum sphere_datum(int genus, int degree, std::vector<Partition> partitions) {
  return BranchDatum::validate(genus, BaseSurface{0}, degree, std::move(partitions));
}

}  // namespace

BranchDatum family_instantiate(int id, const std::map<std::string, int>& params) {
  switch (id) {
    case 1:
      return sphere_datum(0, 12,
                          {Partition::constant(2, 6), Partition({1, 1, 1, 3, 3, 3}),
                           Partition({6, 6})});
    case 2: {
      int k = need(params, "k"), s = need(params, "s");
      require(k >= 2 && s > 0 && s < 2 * k && s != k, "item 2 needs k >= 2, 0 < s < 2k, s != k");
      return sphere_datum(0, 2 * k,
                          {Partition::constant(2, k), Partition::constant(2, k),
                           Partition({s, 2 * k - s})});
    }
    case 3: {
      int k = need(params, "k");
      require(k >= 2, "item 3 needs k >= 2");
      return sphere_datum(0, 2 * k,
                          {Partition::constant(2, k),
                           Partition(cat({1, 3}, std::vector<int>(k - 2, 2))),
                           Partition({k, k})});
    }
    case 4: {
      int k = need(params, "k");
      require(k >= 1, "item 4 needs k >= 1");
      return sphere_datum(0, 4 * k + 2,
                          {Partition::constant(2, 2 * k + 1),
                           Partition(cat(ones(2 * k - 1), {k + 1, k + 2})),
                           Partition({2 * k + 1, 2 * k + 1})});
    }
    case 5: {
      int k = need(params, "k");
      require(k >= 2, "item 5 needs k >= 2");
      return sphere_datum(0, 4 * k,
                          {Partition::constant(2, 2 * k),
                           Partition(cat(ones(2 * k - 2), {k + 1, k + 1})),
                           Partition({2 * k - 1, 2 * k + 1})});
    }
    case 6: {
      int h = need(params, "h"), k = need(params, "k"), p = need(params, "p");
      require(h >= 2 && k >= 2 && p > 0 && p < k, "item 6 needs h,k >= 2 and 0 < p < k");
      return sphere_datum(0, k * h,
                          {Partition::constant(h, k),
                           Partition(cat(ones(k * h - k - 1), {k + 1})),
                           Partition({p * h, (k - p) * h})});
    }
    case 7:
      return sphere_datum(1, 6, {Partition({3, 3}), Partition({3, 3}), Partition({2, 4})});
    case 8:
      return sphere_datum(1, 8,
                          {Partition::constant(2, 4), Partition({4, 4}), Partition({3, 5})});
    case 9:
      return sphere_datum(1, 12,
                          {Partition::constant(2, 6), Partition({3, 3, 3, 3}),
                           Partition({5, 7})});
    case 10:
      return sphere_datum(1, 16,
                          {Partition::constant(2, 8), Partition({1, 3, 3, 3, 3, 3}),
                           Partition({8, 8})});
    case 11: {
      int k = need(params, "k");
      require(k >= 5, "item 11 needs k >= 5");
      return sphere_datum(1, 2 * k,
                          {Partition::constant(2, k),
                           Partition(cat({3, 5}, std::vector<int>(k - 4, 2))),
                           Partition({k, k})});
    }
    case 12: {
      std::vector<Partition> parts(3, Partition::constant(2, 4));
      parts.push_back(Partition({3, 5}));
      return sphere_datum(2, 8, std::move(parts));
    }
    case 13: {
      int n = need(params, "n");
      require(n >= 3, "item 13 needs n >= 3");
      std::vector<Partition> parts(n - 1, Partition({2, 2}));
      parts.push_back(Partition({1, 3}));
      return sphere_datum(n - 3, 4, std::move(parts));
    }
    default:
      fail(errc::bad_argument, "family id must be 1..13");
  }
}

std::vector<FamilyMatch> match_families(const BranchDatum& datum) {
  std::vector<FamilyMatch> out;
  if (!datum.base().is_sphere()) return out;
  int d = datum.degree();
  int n = datum.num_partitions();
  int g = datum.cover_genus();

  auto try_match = [&](int id, std::map<std::string, int> params) {
    try {
      if (family_instantiate(id, params).same_candidate(datum)) {
        out.push_back({id, std::move(params)});
      }
    } catch (const error&) {
    }
  };

  if (n == 3 && g == 0) {
    try_match(1, {});
    if (d % 2 == 0) {
      int k = d / 2;
      for (int s = 1; s < k; ++s) try_match(2, {{"k", k}, {"s", s}});
      try_match(3, {{"k", k}});
    }
    if (d % 4 == 2) try_match(4, {{"k", (d - 2) / 4}});
    if (d % 4 == 0) try_match(5, {{"k", d / 4}});
    for (int h = 2; h * 2 <= d; ++h) {
      if (d % h != 0) continue;
      int k = d / h;
      for (int p = 1; 2 * p <= k; ++p) try_match(6, {{"h", h}, {"k", k}, {"p", p}});
    }
  }
  if (n == 3 && g == 1) {
    try_match(7, {});
    try_match(8, {});
    try_match(9, {});
    try_match(10, {});
    if (d % 2 == 0) try_match(11, {{"k", d / 2}});
  }
  if (n == 4 && g == 2) try_match(12, {});
  if (g == n - 3) try_match(13, {{"n", n}, {"g", g}});

  return out;
}

Verdict classify(const BranchDatum& datum, const std::optional<SearchBudget>& oracle_fallback,
                 int jobs) {
  Verdict v;
  if (datum.base().genus >= 1) {
    v.kind = VerdictKind::realizable;
    v.reason = VerdictReason::eks_positive_genus_base;
    return v;
  }
  if (datum.has_length(1)) {
    v.kind = VerdictKind::realizable;
    v.reason = VerdictReason::length_one_partition;
    return v;
  }
  if (datum.has_length(2)) {
    v.families = match_families(datum);
    v.kind = v.families.empty() ? VerdictKind::realizable : VerdictKind::exceptional;
    v.reason = VerdictReason::main_theorem;
    return v;
  }
  if (!oracle_fallback) {
    v.kind = VerdictKind::unknown;
    v.reason = VerdictReason::out_of_scope;
    return v;
  }
  RealizeOutcome outcome = realize(datum, *oracle_fallback, jobs);
  switch (outcome.kind) {
    case Realizability::found:
      v.kind = VerdictKind::realizable;
      v.reason = VerdictReason::oracle_witness;
      v.witness = std::move(outcome.witness);
      break;
    case Realizability::not_realizable:
      v.kind = VerdictKind::exceptional;
      v.reason = VerdictReason::oracle_exhaustive;
      break;
    case Realizability::budget_exceeded:
      v.kind = VerdictKind::unknown;
      v.reason = VerdictReason::budget_exceeded;
      break;
  }
  return v;
}

const char* reason_tag(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::eks_positive_genus_base: return "eks-positive-genus-base";
    case VerdictReason::length_one_partition: return "length-1-partition";
    case VerdictReason::main_theorem: return "main-theorem";
    case VerdictReason::oracle_witness: return "oracle-witness";
    case VerdictReason::oracle_exhaustive: return "oracle-exhaustive";
    case VerdictReason::out_of_scope: return "out-of-scope";
    case VerdictReason::budget_exceeded: return "budget-exceeded";
  }
  return "unknown";
}

const char* verdict_kind_tag(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::realizable: return "realizable";
    case VerdictKind::exceptional: return "exceptional";
    case VerdictKind::unknown: return "unknown";
  }
  return "unknown";
}

std::string verdict_to_json(const BranchDatum& datum, const Verdict& verdict) {
  nlohmann::json families = nlohmann::json::array();
  for (const FamilyMatch& m : verdict.families) {
    families.push_back({{"id", m.id}, {"params", m.params}});
  }
  nlohmann::json witness;
  if (verdict.witness) {
    witness = nlohmann::json::array();
    for (const Perm& t : verdict.witness->theta) witness.push_back(t.to_cycles());
  }
  return nlohmann::json{{"datum", datum.to_line()},
                        {"verdict", verdict_kind_tag(verdict.kind)},
                        {"reason", reason_tag(verdict.reason)},
                        {"families", families},
                        {"witness", witness}}
      .dump();
}

std::string verdict_to_text(const BranchDatum& datum, const Verdict& verdict) {
  std::string out = datum.to_line() + "\nverdict: " + verdict_kind_tag(verdict.kind) +
                    "\nreason: " + reason_tag(verdict.reason) + "\n";
  for (const FamilyMatch& m : verdict.families) {
    out += "family: " + std::to_string(m.id);
    for (const auto& [key, value] : m.params) out += " " + key + "=" + std::to_string(value);
    out += "\n";
  }
  if (verdict.witness) out += verdict.witness->to_text();
  return out;
}

}  // namespace hurwitz
