#include "census.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "parallel.hpp"

namespace hurwitz {

std::vector<Partition> nontrivial_partitions(int degree) {
  std::vector<Partition> out;
  std::vector<int> current;
  auto descend = [&](auto&& self, int remaining, int max_entry) -> void {
    if (remaining == 0) {
      Partition p{current};
      if (!p.is_trivial()) out.push_back(std::move(p));
      return;
    }
    for (int e = std::min(remaining, max_entry); e >= 1; --e) {
      current.push_back(e);
      self(self, remaining - e, e);
      current.pop_back();
    }
  };
  descend(descend, degree, degree);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<BranchDatum> enumerate_candidates(const CensusQuery& query) {
  if (query.degree < 2 || query.branch_points < 3) {
    fail(errc::bad_argument, "census needs d >= 2 and n >= 3");
  }
  std::vector<Partition> parts = nontrivial_partitions(query.degree);
  std::vector<BranchDatum> out;
  std::vector<int> chosen;
  int n = query.branch_points;

  auto emit = [&] {
    std::vector<Partition> list;
    int defect_sum = 0;
    bool has_len2 = false;
    for (int idx : chosen) {
      list.push_back(parts[idx]);
      defect_sum += parts[idx].defect();
      has_len2 |= parts[idx].length() == 2;
    }
    if (query.require_length2 && !has_len2) return;
    if (defect_sum % 2 != 0) return;
    int genus = defect_sum / 2 - query.degree + 1;
    if (genus < 0) return;
    if (query.genus_min >= 0 && genus < query.genus_min) return;
    if (query.genus_max >= 0 && genus > query.genus_max) return;
    out.push_back(BranchDatum::validate(genus, BaseSurface{0}, query.degree, std::move(list)));
  };
  auto descend = [&](auto&& self, int slot, int first) -> void {
    if (slot == n) {
      emit();
      return;
    }
    for (int idx = first; idx < static_cast<int>(parts.size()); ++idx) {
      chosen.push_back(idx);
      self(self, slot + 1, idx);
      chosen.pop_back();
    }
  };
  descend(descend, 0, 0);
  return out;
}

std::string CensusResult::header() const {
  std::string out = "# census d=" + std::to_string(degree) + " n=" +
                    std::to_string(branch_points) +
                    " constraint=" + (require_length2 ? "len2" : "none");
  if (genus_min >= 0 && genus_min == genus_max) {
    out += " genus=" + std::to_string(genus_min);
  } else {
    if (genus_min >= 0) out += " genus>=" + std::to_string(genus_min);
    if (genus_max >= 0) out += " genus<=" + std::to_string(genus_max);
  }
  return out;
}

std::string CensusResult::to_text() const {
  std::string out = header() + "\n";
  for (const std::string& line : exceptional_lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string CensusResult::to_json() const {
  return nlohmann::json{
      {"query",
       {{"d", degree},
        {"n", branch_points},
        {"constraint", require_length2 ? "len2" : "none"},
        {"genus_min", genus_min},
        {"genus_max", genus_max}}},
      {"counts",
       {{"candidates", candidates},
        {"realizable", realizable},
        {"exceptional", exceptional},
        {"unknown", unknown}}},
      {"exceptional", exceptional_lines},
      {"mismatches", mismatches}}
      .dump();
}

CensusResult exceptional_census(const CensusQuery& query, const ClassifyFn& classifier) {
  std::vector<BranchDatum> data = enumerate_candidates(query);
  std::vector<ThreeValued> verdicts(data.size(), ThreeValued::unknown);

  auto started = std::chrono::steady_clock::now();
  parallel_for(query.jobs, data.size(), [&](std::size_t i) {
    if (query.total_seconds > 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
      if (elapsed.count() >= query.total_seconds) return;  // stays unknown
    }
    verdicts[i] = is_realizable(data[i], query.per_datum, 1);
  });

  CensusResult result;
  result.degree = query.degree;
  result.branch_points = query.branch_points;
  result.require_length2 = query.require_length2;
  result.genus_min = query.genus_min;
  result.genus_max = query.genus_max;
  result.candidates = data.size();
  for (std::size_t i = 0; i < data.size(); ++i) {
    switch (verdicts[i]) {
      case ThreeValued::yes: ++result.realizable; break;
      case ThreeValued::no:
        ++result.exceptional;
        result.exceptional_lines.push_back(data[i].to_line());
        break;
      case ThreeValued::unknown: ++result.unknown; break;
    }
    if (data[i].has_length(2) && verdicts[i] != ThreeValued::unknown) {
      Verdict v = classifier ? classifier(data[i]) : classify(data[i]);
      bool oracle_yes = verdicts[i] == ThreeValued::yes;
      bool classifier_yes = v.kind == VerdictKind::realizable;
      if (v.kind == VerdictKind::unknown || oracle_yes != classifier_yes) {
        result.mismatches.push_back(data[i].to_line() +
                                    " classifier=" + verdict_kind_tag(v.kind) +
                                    " oracle=" + (oracle_yes ? "yes" : "no"));
      }
    }
  }
  std::sort(result.exceptional_lines.begin(), result.exceptional_lines.end());
  return result;
}

std::vector<std::string> crosscheck(const CensusQuery& query, const ClassifyFn& classifier) {
  CensusQuery len2_query = query;
  len2_query.require_length2 = true;
  return exceptional_census(len2_query, classifier).mismatches;
}

bool prime_degree_check(int degree, int branch_points, const SearchBudget& per_datum, int jobs) {
  bool prime = degree >= 2;
  for (int f = 2; f * f <= degree; ++f) {
    if (degree % f == 0) prime = false;
  }
  if (!prime) fail(errc::bad_argument, std::to_string(degree) + " is not prime");
  CensusQuery query;
  query.degree = degree;
  query.branch_points = branch_points;
  query.per_datum = per_datum;
  query.jobs = jobs;
  CensusResult result = exceptional_census(query);
  return result.exceptional == 0 && result.unknown == 0;
}

}  // namespace hurwitz
