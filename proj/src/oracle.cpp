#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace hurwitz {

std::string Witness::to_text() const {
  std::string out;
  for (size_t j = 0; j < theta.size(); ++j) {
    out += "theta" + std::to_string(j + 1) + "=" + theta[j].to_cycles() + "\n";
  }
  return out;
}

std::string Witness::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Perm& t : theta) {
    nlohmann::json images = nlohmann::json::array();
    for (int i = 0; i < t.degree(); ++i) images.push_back(t.apply(i) + 1);
    arr.push_back(images);
  }
  return nlohmann::json{{"degree", degree()}, {"theta", arr}}.dump();
}

Witness Witness::from_text(std::string_view text, int degree_hint) {
  std::vector<std::pair<int, std::string>> lines;
  int degree = degree_hint;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.substr(0, 2) == "d=") {
      degree = std::stoi(std::string(line.substr(2)));
      continue;
    }
    if (line.substr(0, 5) != "theta") fail(errc::syntax, "expected theta<j>= line");
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(errc::syntax, "expected '=' in theta line");
    int index = std::stoi(std::string(line.substr(5, eq - 5)));
    lines.emplace_back(index, std::string(line.substr(eq + 1)));
  }
  if (lines.empty()) fail(errc::syntax, "no theta lines");
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t j = 0; j < lines.size(); ++j) {
    if (lines[j].first != static_cast<int>(j) + 1) fail(errc::syntax, "theta indices must be 1..n");
  }
  if (degree <= 0) {
    for (const auto& [idx, cycles] : lines) {
      int value = 0;
      for (char c : cycles) {
        if (c >= '0' && c <= '9') {
          value = value * 10 + (c - '0');
        } else {
          degree = std::max(degree, value);
          value = 0;
        }
      }
      degree = std::max(degree, value);
    }
    if (degree <= 0) fail(errc::syntax, "cannot infer witness degree");
  }
  Witness w;
  for (const auto& [idx, cycles] : lines) w.theta.push_back(parse_cycles(cycles, degree));
  return w;
}

Witness Witness::from_json(std::string_view json) {
  nlohmann::json parsed = nlohmann::json::parse(json, nullptr, false);
  if (parsed.is_discarded() || !parsed.contains("theta")) fail(errc::syntax, "bad witness JSON");
  Witness w;
  for (const auto& images : parsed.at("theta")) {
    std::vector<int> img;
    for (const auto& v : images) img.push_back(v.get<int>() - 1);
    w.theta.push_back(Perm::from_images(img));
  }
  return w;
}

bool verify_witness(const BranchDatum& datum, const Witness& witness) {
  int n = datum.num_partitions();
  int d = datum.degree();
  if (static_cast<int>(witness.theta.size()) != n) return false;
  for (const Perm& t : witness.theta) {
    if (t.degree() != d) return false;
  }
  for (int j = 0; j < n; ++j) {
    if (witness.theta[j].cycle_type() != datum.partition(j)) return false;
  }
  Perm product = witness.theta[0];
  for (int j = 1; j < n; ++j) product = compose(product, witness.theta[j]);
  if (!product.is_identity()) return false;
  return is_transitive(witness.theta);
}

namespace {

constexpr std::size_t kBlockElems = 1024;
constexpr std::uint64_t kCheckMask = 8191;

// slot order of the search: [fixed, enumerated..., forced]; the product in
// this order must be the identity. forced = largest class (computed, not
// enumerated), fixed = largest remaining (pinned to the canonical
// representative, valid since witnesses are closed under conjugation).
struct Plan {
  int n = 0;
  int d = 0;
  std::vector<int> slot_to_input;
  Partition fixed_type;
  std::vector<Partition> enum_types;
  Partition forced_type;
  std::vector<int> rem_defect;  // defects still to come after each enum level
  int forced_defect = 0;
};

Plan make_plan(const BranchDatum& datum) {
  int n = datum.num_partitions();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<uint128> sizes(n);
  for (int i = 0; i < n; ++i) sizes[i] = class_size(datum.partition(i));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    if (datum.partition(a) != datum.partition(b)) {
      return canonical_less(datum.partition(a), datum.partition(b));
    }
    return a < b;
  });

  Plan plan;
  plan.n = n;
  plan.d = datum.degree();
  plan.slot_to_input.push_back(order[1]);
  for (int k = 2; k < n; ++k) plan.slot_to_input.push_back(order[k]);
  plan.slot_to_input.push_back(order[0]);
  plan.fixed_type = datum.partition(order[1]);
  for (int k = 2; k < n; ++k) plan.enum_types.push_back(datum.partition(order[k]));
  plan.forced_type = datum.partition(order[0]);
  plan.forced_defect = plan.forced_type.defect();
  int levels = n - 2;
  plan.rem_defect.assign(std::max(levels, 1), 0);
  for (int k = levels - 2; k >= 0; --k) {
    plan.rem_defect[k] = plan.rem_defect[k + 1] + plan.enum_types[k + 1].defect();
  }
  return plan;
}

struct BlockOutcome {
  bool present = false;
  bool complete = false;
  std::uint64_t nodes = 0;
  bool found = false;
  std::uint64_t found_offset = 0;         // nodes consumed up to and including the hit
  std::vector<Perm> found_enum;           // enumerated elements, slot order
};

bool joint_action_transitive(const std::uint8_t* const* gens, int count, int d) {
  std::array<std::uint8_t, 32> parent;
  for (int i = 0; i < d; ++i) parent[i] = std::uint8_t(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int g = 0; g < count; ++g) {
    for (int i = 0; i < d; ++i) {
      int a = find(i), b = find(gens[g][i]);
      if (a != b) parent[a] = std::uint8_t(b);
    }
  }
  int root = find(0);
  for (int i = 1; i < d; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

class Search {
public:
  Search(const BranchDatum& datum, const SearchBudget& budget, int jobs)
      : datum_(datum),
        budget_(budget),
        jobs_(std::max(jobs, 1)),
        plan_(make_plan(datum)),
        fixed_(canonical_rep(plan_.fixed_type)),
        outer_(plan_.n >= 3 ? std::optional<ClassIterator>(ClassIterator(plan_.enum_types[0]))
                            : std::nullopt) {
    for (int len : plan_.forced_type.entries()) ++forced_counts_[len];
    if (budget_.max_seconds > 0) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget_.max_seconds));
    }
  }

  RealizeOutcome run();

private:
  struct Worker;

  bool issue_block(int* block_idx, std::vector<std::uint8_t>* buffer, std::size_t* count);
  void record_block(int block_idx, BlockOutcome outcome);
  bool should_stop() {
    if (stop_.load(std::memory_order_relaxed)) return true;
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
      std::scoped_lock lock(mutex_);
      timed_out_ = true;
      stop_.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
  RealizeOutcome reconcile();
  Witness assemble(const std::vector<Perm>& enumerated);

  const BranchDatum& datum_;
  SearchBudget budget_;
  int jobs_;
  Plan plan_;
  Perm fixed_;
  std::optional<ClassIterator> outer_;
  std::array<std::uint8_t, 33> forced_counts_{};
  std::optional<std::chrono::steady_clock::time_point> deadline_;

  std::mutex mutex_;
  std::vector<BlockOutcome> results_;
  int next_block_ = 0;
  int reconciled_prefix_ = 0;
  std::uint64_t prefix_nodes_ = 0;
  int first_found_block_ = -1;
  bool outer_exhausted_ = false;
  std::atomic<bool> stop_{false};
  bool timed_out_ = false;
};

// per-worker scratch: product buffers per level and the inner iterators
struct Search::Worker {
  Search& search;
  const Plan& plan;
  int d;
  int levels;
  std::vector<ClassIterator> inner;
  std::vector<std::array<std::uint8_t, 32>> prod;
  std::vector<const std::uint8_t*> elem;
  std::vector<const std::uint8_t*> gens;
  std::array<std::uint8_t, 33> scratch;
  std::uint64_t nodes = 0;
  bool aborted = false;

  explicit Worker(Search& s) : search(s), plan(s.plan_), d(s.plan_.d), levels(s.plan_.n - 2) {
    for (int k = 1; k < levels; ++k) inner.emplace_back(plan.enum_types[k]);
    prod.resize(levels);
    elem.resize(levels);
    gens.resize(levels + 1);
  }

  bool tick() {
    ++nodes;
    if ((nodes & kCheckMask) == 0 && search.should_stop()) {
      aborted = true;
      return false;
    }
    return true;
  }

  bool prune_ok(int level) const {
    int v = d - pk::cycle_count(prod[level].data(), d);
    int rem = plan.rem_defect[level];
    int vf = plan.forced_defect;
    if (vf > v + rem || vf < v - rem) return false;
    return ((v + rem - vf) & 1) == 0;
  }

  bool final_check(int level) {
    if (!pk::type_matches(prod[level].data(), d, search.forced_counts_.data(), scratch.data())) {
      return false;
    }
    gens[0] = search.fixed_.data();
    for (int k = 0; k <= level; ++k) gens[k + 1] = elem[k];
    return joint_action_transitive(gens.data(), level + 2, d);
  }

  bool descend(int level) {
    ClassIterator& it = inner[level - 1];
    it.reset();
    for (const std::uint8_t* e = it.next(); e != nullptr; e = it.next()) {
      if (!tick()) return false;
      elem[level] = e;
      pk::compose(prod[level - 1].data(), e, prod[level].data(), d);
      if (level == levels - 1) {
        if (prune_ok(level) && final_check(level)) return true;
      } else {
        if (prune_ok(level) && descend(level + 1)) return true;
        if (aborted) return false;
      }
    }
    return false;
  }

  // returns true when this outer element completes to a witness
  bool process_outer(const std::uint8_t* e0) {
    elem[0] = e0;
    pk::compose(search.fixed_.data(), e0, prod[0].data(), d);
    if (levels == 1) return prune_ok(0) && final_check(0);
    if (!prune_ok(0)) return false;
    return descend(1);
  }

  std::vector<Perm> snapshot_enum() const {
    std::vector<Perm> out;
    for (int k = 0; k < levels; ++k) out.push_back(Perm::from_bytes(elem[k], d));
    return out;
  }
};

bool Search::issue_block(int* block_idx, std::vector<std::uint8_t>* buffer, std::size_t* count) {
  std::scoped_lock lock(mutex_);
  if (stop_.load(std::memory_order_relaxed) || outer_exhausted_) return false;
  if (first_found_block_ >= 0 && next_block_ > first_found_block_) return false;
  buffer->resize(kBlockElems * plan_.d);
  *count = outer_->fill(buffer->data(), kBlockElems);
  if (*count == 0) {
    outer_exhausted_ = true;
    return false;
  }
  *block_idx = next_block_++;
  results_.resize(std::max<std::size_t>(results_.size(), next_block_));
  return true;
}

void Search::record_block(int block_idx, BlockOutcome outcome) {
  std::scoped_lock lock(mutex_);
  results_[block_idx] = std::move(outcome);
  results_[block_idx].present = true;
  if (results_[block_idx].found &&
      (first_found_block_ < 0 || block_idx < first_found_block_)) {
    first_found_block_ = block_idx;
  }
  while (reconciled_prefix_ < static_cast<int>(results_.size()) &&
         results_[reconciled_prefix_].present && results_[reconciled_prefix_].complete) {
    if (results_[reconciled_prefix_].found) {
      stop_.store(true, std::memory_order_relaxed);
      break;
    }
    prefix_nodes_ += results_[reconciled_prefix_].nodes;
    ++reconciled_prefix_;
  }
  if (budget_.max_nodes > 0 && first_found_block_ < 0 && prefix_nodes_ >= budget_.max_nodes) {
    stop_.store(true, std::memory_order_relaxed);
  }
}

Witness Search::assemble(const std::vector<Perm>& enumerated) {
  std::vector<std::pair<int, Perm>> seq;
  seq.emplace_back(plan_.slot_to_input[0], fixed_);
  Perm product = fixed_;
  for (size_t k = 0; k < enumerated.size(); ++k) {
    seq.emplace_back(plan_.slot_to_input[k + 1], enumerated[k]);
    product = compose(product, enumerated[k]);
  }
  seq.emplace_back(plan_.slot_to_input.back(), inverse(product));
  // order by input position; adjacent swaps conjugate to keep the product
  for (size_t i = 0; i < seq.size(); ++i) {
    for (size_t j = seq.size() - 1; j > i; --j) {
      if (seq[j - 1].first > seq[j].first) {
        auto [ia, a] = seq[j - 1];
        auto [ib, b] = seq[j];
        seq[j - 1] = {ib, b};
        seq[j] = {ia, conjugate(a, b)};
      }
    }
  }
  Witness w;
  for (auto& [idx, p] : seq) w.theta.push_back(std::move(p));
  if (!verify_witness(datum_, w)) fail(errc::internal, "search produced an invalid witness");
  return w;
}

RealizeOutcome Search::reconcile() {
  RealizeOutcome out;
  std::uint64_t cumulative = 0;
  for (const BlockOutcome& block : results_) {
    if (!block.present || (!block.complete && !block.found)) break;
    if (block.found) {
      std::uint64_t position = cumulative + block.found_offset;
      if (budget_.max_nodes == 0 || position <= budget_.max_nodes) {
        out.kind = Realizability::found;
        out.witness = assemble(block.found_enum);
        out.nodes = position;
        return out;
      }
      break;
    }
    cumulative += block.nodes;
    if (budget_.max_nodes > 0 && cumulative >= budget_.max_nodes) break;
  }
  out.nodes = cumulative;
  bool all_done = outer_exhausted_;
  for (const BlockOutcome& block : results_) {
    if (!block.present || !block.complete) all_done = false;
  }
  if (all_done && (budget_.max_nodes == 0 || cumulative < budget_.max_nodes) && !timed_out_) {
    out.kind = Realizability::not_realizable;
  } else {
    out.kind = Realizability::budget_exceeded;
  }
  return out;
}

RealizeOutcome Search::run() {
  // global parity / defect-triangle screen
  int total_defect = datum_.total_defect();
  if (total_defect % 2 != 0) return {Realizability::not_realizable, std::nullopt, 0};
  int max_defect = 0;
  for (const Partition& p : datum_.partitions()) max_defect = std::max(max_defect, p.defect());
  if (2 * max_defect > total_defect) return {Realizability::not_realizable, std::nullopt, 0};

  if (plan_.n == 2) {
    RealizeOutcome out;
    out.nodes = 1;
    std::array<std::uint8_t, 33> scratch;
    if (pk::type_matches(fixed_.data(), plan_.d, forced_counts_.data(), scratch.data())) {
      const std::uint8_t* gens[1] = {fixed_.data()};
      if (joint_action_transitive(gens, 1, plan_.d)) {
        out.kind = Realizability::found;
        out.witness = assemble({});
        return out;
      }
    }
    out.kind = Realizability::not_realizable;
    return out;
  }

  auto worker_loop = [this] {
    Worker worker(*this);
    std::vector<std::uint8_t> buffer;
    for (;;) {
      int block_idx = 0;
      std::size_t count = 0;
      if (!issue_block(&block_idx, &buffer, &count)) return;
      BlockOutcome outcome;
      worker.nodes = 0;
      worker.aborted = false;
      for (std::size_t e = 0; e < count; ++e) {
        if (!worker.tick()) break;
        const std::uint8_t* e0 = buffer.data() + e * plan_.d;
        if (worker.process_outer(e0)) {
          outcome.found = true;
          outcome.found_offset = worker.nodes;
          outcome.found_enum = worker.snapshot_enum();
          break;
        }
        if (worker.aborted) break;
      }
      outcome.nodes = worker.nodes;
      outcome.complete = !worker.aborted;
      record_block(block_idx, std::move(outcome));
    }
  };

  if (jobs_ <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs_; ++w) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }
  return reconcile();
}

}  // namespace

RealizeOutcome realize(const BranchDatum& datum, const SearchBudget& budget, int jobs) {
  if (!datum.base().is_sphere()) {
    fail(errc::unsupported_base,
         "oracle requires sphere base; positive-genus bases are settled by the classifier");
  }
  if (datum.num_partitions() < 2) fail(errc::internal, "validated datum with n < 2");
  Search search(datum, budget, jobs);
  return search.run();
}

ThreeValued is_realizable(const BranchDatum& datum, const SearchBudget& budget, int jobs) {
  switch (realize(datum, budget, jobs).kind) {
    case Realizability::found: return ThreeValued::yes;
    case Realizability::not_realizable: return ThreeValued::no;
    default: return ThreeValued::unknown;
  }
}

}  // namespace hurwitz
