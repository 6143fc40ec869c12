#include "datum.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

namespace hurwitz {

Partition::Partition(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(errc::bad_argument, "partition must have at least one entry");
  for (int e : entries_) {
    if (e < 1) fail(errc::bad_argument, "partition entries must be positive");
  }
  std::sort(entries_.begin(), entries_.end(), std::greater<int>());
  degree_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

Partition Partition::constant(int entry, int count) {
  return Partition(std::vector<int>(count, entry));
}

bool Partition::contains(int entry) const {
  return std::binary_search(entries_.begin(), entries_.end(), entry, std::greater<int>());
}

int Partition::count(int entry) const {
  return static_cast<int>(std::count(entries_.begin(), entries_.end(), entry));
}

Partition Partition::juxtapose(const Partition& other) const {
  std::vector<int> merged = entries_;
  merged.insert(merged.end(), other.entries_.begin(), other.entries_.end());
  return Partition(std::move(merged));
}

Partition Partition::without(int entry) const {
  std::vector<int> rest = entries_;
  auto it = std::find(rest.begin(), rest.end(), entry);
  if (it == rest.end()) fail(errc::precondition, "partition has no entry " + std::to_string(entry));
  rest.erase(it);
  if (rest.empty()) fail(errc::precondition, "removing the last entry of a partition");
  return Partition(std::move(rest));
}

Partition Partition::replaced(int entry, const std::vector<int>& with) const {
  std::vector<int> rest = entries_;
  auto it = std::find(rest.begin(), rest.end(), entry);
  if (it == rest.end()) fail(errc::precondition, "partition has no entry " + std::to_string(entry));
  rest.erase(it);
  rest.insert(rest.end(), with.begin(), with.end());
  return Partition(std::move(rest));
}

std::string Partition::to_string() const {
  std::string out;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (!out.empty()) out += ',';
    out += std::to_string(*it);
  }
  return out;
}

bool canonical_less(const Partition& a, const Partition& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  return a.entries() < b.entries();
}

std::string BaseSurface::to_string() const {
  if (genus == 0) return "S";
  if (genus == 1) return "T";
  return std::to_string(genus) + "T";
}

BranchDatum BranchDatum::validate(int cover_genus, BaseSurface base, int degree,
                                  std::vector<Partition> partitions) {
  if (cover_genus < 0) fail(errc::bad_argument, "cover genus must be non-negative");
  if (base.genus < 0) fail(errc::bad_argument, "base genus must be non-negative");
  if (degree < 1) fail(errc::bad_argument, "degree must be positive");
  if (degree == 1) fail(errc::degenerate, "degree 1 is degenerate");
  if (partitions.empty()) fail(errc::degenerate, "empty partition list");
  for (const Partition& p : partitions) {
    if (p.degree() != degree) {
      fail(errc::degree_mismatch, "partition " + p.to_string() + " sums to " +
                                      std::to_string(p.degree()) + ", expected " +
                                      std::to_string(degree));
    }
  }

  std::erase_if(partitions, [](const Partition& p) { return p.is_trivial(); });
  if (partitions.empty()) fail(errc::degenerate, "all partitions trivial");

  int n = static_cast<int>(partitions.size());
  long long length_sum = 0;
  for (const Partition& p : partitions) length_sum += p.length();
  long long lhs = (2 - 2 * static_cast<long long>(cover_genus)) - length_sum;
  long long rhs =
      static_cast<long long>(degree) * (base.euler_characteristic() - static_cast<long long>(n));
  if (lhs != rhs) {
    fail(errc::riemann_hurwitz, "Riemann-Hurwitz condition fails: " + std::to_string(lhs) +
                                    " != " + std::to_string(rhs));
  }

  if (n <= 2) {
    for (const Partition& p : partitions) {
      if (p.length() == 2) {
        fail(errc::degenerate, "length-2 partition with n <= 2");
      }
    }
  }

  BranchDatum d;
  d.cover_genus_ = cover_genus;
  d.base_ = base;
  d.degree_ = degree;
  d.partitions_ = std::move(partitions);
  return d;
}

int BranchDatum::total_defect() const {
  int v = 0;
  for (const Partition& p : partitions_) v += p.defect();
  return v;
}

bool BranchDatum::has_length(int len) const {
  return std::any_of(partitions_.begin(), partitions_.end(),
                     [len](const Partition& p) { return p.length() == len; });
}

std::vector<Partition> BranchDatum::canonical_partitions() const {
  std::vector<Partition> sorted = partitions_;
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return sorted;
}

std::string BranchDatum::to_line() const {
  std::string out = "g" + std::to_string(cover_genus_) + "/" + base_.to_string() +
                    " d=" + std::to_string(degree_);
  for (const Partition& p : canonical_partitions()) {
    out += ' ';
    out += p.to_string();
  }
  return out;
}

bool BranchDatum::same_candidate(const BranchDatum& other) const {
  return cover_genus_ == other.cover_genus_ && base_ == other.base_ &&
         degree_ == other.degree_ && canonical_partitions() == other.canonical_partitions();
}

int genus_from_partitions(int degree, const std::vector<Partition>& partitions) {
  int defect_sum = 0;
  for (const Partition& p : partitions) {
    if (p.degree() != degree) fail(errc::degree_mismatch, "partition degree mismatch");
    defect_sum += p.defect();
  }
  if (defect_sum % 2 != 0) fail(errc::parity, "total defect is odd");
  int genus = defect_sum / 2 - degree + 1;
  if (genus < 0) fail(errc::negative_genus, "computed genus is negative");
  return genus;
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void error_at(size_t at, const std::string& msg) const {
    fail(errc::syntax, msg + " at position " + std::to_string(at));
  }
  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_spaces();
    return pos >= text.size();
  }
  std::string_view token() {
    skip_spaces();
    size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    if (start == pos) error_at(start, "expected token");
    return text.substr(start, pos - start);
  }
};

int parse_int(std::string_view s, size_t at) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(errc::syntax, "expected integer at position " + std::to_string(at));
  }
  return value;
}

BaseSurface parse_base(std::string_view s, size_t at) {
  if (s == "S") return BaseSurface{0};
  if (s == "T") return BaseSurface{1};
  if (!s.empty() && (s.back() == 'P' || s.back() == 'K')) {
    fail(errc::unsupported_base, "non-orientable base surfaces are not supported");
  }
  if (s.size() >= 2 && s.back() == 'T') {
    return BaseSurface{parse_int(s.substr(0, s.size() - 1), at)};
  }
  fail(errc::syntax, "bad base surface at position " + std::to_string(at));
}

}  // namespace

BranchDatum parse_datum(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  Cursor cur{line};

  cur.skip_spaces();
  size_t head_at = cur.pos;
  std::string_view head = cur.token();
  auto slash = head.find('/');
  if (head.size() < 4 || head[0] != 'g' || slash == std::string_view::npos) {
    cur.error_at(head_at, "expected g<G>/<BASE>");
  }
  int cover_genus = parse_int(head.substr(1, slash - 1), head_at + 1);
  BaseSurface base = parse_base(head.substr(slash + 1), head_at + slash + 1);

  cur.skip_spaces();
  size_t deg_at = cur.pos;
  std::string_view deg_tok = cur.token();
  if (deg_tok.substr(0, 2) != "d=") cur.error_at(deg_at, "expected d=<D>");
  int degree = parse_int(deg_tok.substr(2), deg_at + 2);

  std::vector<Partition> partitions;
  while (!cur.done()) {
    size_t part_at = cur.pos;
    std::string_view tok = cur.token();
    std::vector<int> entries;
    size_t start = 0;
    while (start <= tok.size()) {
      size_t comma = tok.find(',', start);
      size_t end = comma == std::string_view::npos ? tok.size() : comma;
      if (end == start) cur.error_at(part_at + start, "empty partition entry");
      entries.push_back(parse_int(tok.substr(start, end - start), part_at + start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (entries.empty()) cur.error_at(part_at, "empty partition");
    for (int e : entries) {
      if (e < 1) cur.error_at(part_at, "partition entries must be positive");
    }
    partitions.emplace_back(std::move(entries));
  }
  if (partitions.empty()) fail(errc::syntax, "datum has no partitions");

  return BranchDatum::validate(cover_genus, base, degree, std::move(partitions));
}

std::string format_datum(const BranchDatum& datum) { return datum.to_line(); }

}  // namespace hurwitz
