#include "perm.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>

namespace hurwitz {

std::string uint128_to_string(uint128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out += char('0' + int(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Perm Perm::uninitialized(int degree) {
  if (degree < 1 || degree > max_degree) {
    fail(errc::unsupported_degree, "degree out of range: " + std::to_string(degree));
  }
  Perm p;
  p.degree_ = degree;
  if (degree > packed_capacity) p.big_.resize(degree);
  return p;
}

Perm Perm::identity(int degree) {
  Perm p = uninitialized(degree);
  std::uint8_t* img = p.mutable_data();
  for (int i = 0; i < degree; ++i) img[i] = std::uint8_t(i);
  return p;
}

Perm Perm::from_images(std::span<const int> images) {
  Perm p = uninitialized(static_cast<int>(images.size()));
  std::vector<bool> seen(images.size(), false);
  std::uint8_t* img = p.mutable_data();
  for (size_t i = 0; i < images.size(); ++i) {
    int y = images[i];
    if (y < 0 || y >= static_cast<int>(images.size()) || seen[y]) {
      fail(errc::bad_argument, "image array is not a bijection");
    }
    seen[y] = true;
    img[i] = std::uint8_t(y);
  }
  return p;
}

Perm Perm::from_bytes(const std::uint8_t* images, int degree) {
  Perm p = uninitialized(degree);
  std::memcpy(p.mutable_data(), images, degree);
  return p;
}

Partition Perm::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(degree_, false);
  const std::uint8_t* img = data();
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

int Perm::cycle_count() const {
  if (degree_ <= 64) return pk::cycle_count(data(), degree_);
  std::vector<bool> seen(degree_, false);
  const std::uint8_t* img = data();
  int cycles = 0;
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = img[j]) seen[j] = true;
  }
  return cycles;
}

bool Perm::is_identity() const {
  const std::uint8_t* img = data();
  for (int i = 0; i < degree_; ++i) {
    if (img[i] != i) return false;
  }
  return true;
}

std::string Perm::to_cycles() const {
  std::string out;
  std::vector<bool> seen(degree_, false);
  const std::uint8_t* img = data();
  for (int i = 0; i < degree_; ++i) {
    if (seen[i] || img[i] == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    bool first = true;
    for (int j = i; !seen[j]; j = img[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

bool Perm::operator==(const Perm& other) const {
  return degree_ == other.degree_ && std::memcmp(data(), other.data(), degree_) == 0;
}

Perm compose(const Perm& first, const Perm& then) {
  if (first.degree() != then.degree()) fail(errc::degree_mismatch, "permutation degrees differ");
  Perm out = Perm::uninitialized(first.degree());
  pk::compose(first.data(), then.data(), out.mutable_data(), first.degree());
  return out;
}

Perm inverse(const Perm& p) {
  Perm out = Perm::uninitialized(p.degree());
  const std::uint8_t* img = p.data();
  std::uint8_t* inv = out.mutable_data();
  for (int i = 0; i < p.degree(); ++i) inv[img[i]] = std::uint8_t(i);
  return out;
}

Perm conjugate(const Perm& p, const Perm& g) {
  return compose(compose(inverse(g), p), g);
}

Perm parse_cycles(std::string_view text, int degree) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  std::vector<bool> mentioned(degree, false);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail(errc::syntax, "expected '(' at position " + std::to_string(pos));
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) fail(errc::syntax, "expected point at position " + std::to_string(pos));
      pos = ptr - text.data();
      if (value < 1 || value > degree) {
        fail(errc::syntax, "point " + std::to_string(value) + " out of range 1.." +
                               std::to_string(degree));
      }
      if (mentioned[value - 1]) fail(errc::syntax, "point " + std::to_string(value) + " repeated");
      mentioned[value - 1] = true;
      cycle.push_back(value - 1);
    }
    for (size_t k = 0; k < cycle.size(); ++k) {
      img[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
  }
  return Perm::from_images(img);
}

Perm canonical_rep(const Partition& cycle_type) {
  std::vector<int> img(cycle_type.degree());
  int base = 0;
  for (int len : cycle_type.entries()) {
    for (int k = 0; k < len; ++k) img[base + k] = base + (k + 1) % len;
    base += len;
  }
  return Perm::from_images(img);
}

namespace {

// union-find over the point set
struct PointSets {
  std::vector<int> parent;
  explicit PointSets(int d) : parent(d) {
    for (int i = 0; i < d; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

PointSets orbit_sets(std::span<const Perm> generators) {
  if (generators.empty()) fail(errc::bad_argument, "no generators");
  int d = generators.front().degree();
  for (const Perm& g : generators) {
    if (g.degree() != d) fail(errc::degree_mismatch, "generator degrees differ");
  }
  PointSets sets(d);
  for (const Perm& g : generators) {
    for (int i = 0; i < d; ++i) sets.unite(i, g.apply(i));
  }
  return sets;
}

}  // namespace

bool is_transitive(std::span<const Perm> generators) {
  return orbit_count(generators) == 1;
}

int orbit_count(std::span<const Perm> generators) {
  PointSets sets = orbit_sets(generators);
  int count = 0;
  for (int i = 0; i < static_cast<int>(sets.parent.size()); ++i) {
    if (sets.find(i) == i) ++count;
  }
  return count;
}

Partition orbit_lengths(std::span<const Perm> generators) {
  PointSets sets = orbit_sets(generators);
  int d = static_cast<int>(sets.parent.size());
  std::vector<int> size(d, 0);
  for (int i = 0; i < d; ++i) ++size[sets.find(i)];
  std::vector<int> lengths;
  for (int i = 0; i < d; ++i) {
    if (size[i] > 0) lengths.push_back(size[i]);
  }
  return Partition(std::move(lengths));
}

uint128 class_size(const Partition& cycle_type) {
  int d = cycle_type.degree();
  if (d > Perm::packed_capacity) {
    fail(errc::unsupported_degree, "class size limited to degree 32");
  }
  uint128 numerator = 1;
  for (int i = 2; i <= d; ++i) numerator *= uint128(i);
  uint128 denominator = 1;
  std::array<int, 33> mult{};
  for (int len : cycle_type.entries()) ++mult[len];
  for (int len = 1; len <= d; ++len) {
    for (int m = 1; m <= mult[len]; ++m) denominator *= uint128(len) * uint128(m);
  }
  return numerator / denominator;
}

ClassIterator::ClassIterator(const Partition& cycle_type) : d_(cycle_type.degree()) {
  if (d_ < 1 || d_ > Perm::packed_capacity) {
    fail(errc::unsupported_degree, "class enumeration limited to degree 32");
  }
  for (int len : cycle_type.entries()) ++full_want_[len];
  reset();
}

void ClassIterator::reset() {
  want_ = full_want_;
  want_total_ = 0;
  for (int len = 1; len <= d_; ++len) want_total_ += want_[len];
  img_.fill(kUnset);
  used_.fill(false);
  for (int p = 0; p < d_; ++p) {
    chain_start_[p] = std::uint8_t(p);
    chain_size_[p] = 1;
  }
  chain_cnt_.fill(0);
  chain_cnt_[1] = std::uint8_t(d_);
  chains_total_ = d_;
  exhausted_ = false;
  primed_ = false;
  pos_ = 0;
  index_ = ~std::uint64_t(0);
}

const std::uint8_t* ClassIterator::next() {
  if (exhausted_) return nullptr;
  if (!primed_) {
    primed_ = true;
    pos_ = 0;
    try_[0] = 0;
  } else {
    // the previous call returned a complete assignment; backtrack one step
    --pos_;
    unassign(pos_);
  }
  for (;;) {
    if (pos_ == d_) {
      ++index_;
      return img_.data();
    }
    bool advanced = false;
    for (int y = try_[pos_]; y < d_; ++y) {
      if (used_[y]) continue;
      if (assign(pos_, y)) {
        try_[pos_] = std::int16_t(y + 1);
        ++pos_;
        try_[pos_] = 0;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    if (pos_ == 0) {
      exhausted_ = true;
      return nullptr;
    }
    --pos_;
    unassign(pos_);
  }
}

std::size_t ClassIterator::fill(std::uint8_t* dst, std::size_t max_count) {
  std::size_t count = 0;
  while (count < max_count) {
    const std::uint8_t* img = next();
    if (img == nullptr) break;
    std::memcpy(dst + count * d_, img, d_);
    ++count;
  }
  return count;
}

int ClassIterator::max_open_len() const {
  for (int len = d_; len >= 1; --len) {
    if (want_[len] > 0) return len;
  }
  return 0;
}

bool ClassIterator::assign(int pos, int y) {
  int si = chain_start_[pos];
  if (y == si) {
    int len = chain_size_[si];
    if (want_[len] == 0) return false;
    --want_[len];
    --want_total_;
    --chain_cnt_[len];
    --chains_total_;
    used_[y] = true;
    img_[pos] = std::uint8_t(y);
    undo_[pos] = {true, std::uint8_t(y), std::uint8_t(si), std::uint8_t(len)};
    if (feasible()) return true;
    unassign(pos);
    return false;
  }
  // merge: y heads its own chain since it has no incoming edge yet
  int la = chain_size_[si];
  int lb = chain_size_[y];
  if (la + lb > max_open_len()) return false;
  --chain_cnt_[la];
  --chain_cnt_[lb];
  ++chain_cnt_[la + lb];
  --chains_total_;
  chain_size_[si] = std::uint8_t(la + lb);
  for (int p = y;;) {
    chain_start_[p] = std::uint8_t(si);
    if (img_[p] == kUnset) break;
    p = img_[p];
  }
  used_[y] = true;
  img_[pos] = std::uint8_t(y);
  undo_[pos] = {false, std::uint8_t(y), std::uint8_t(si), std::uint8_t(la)};
  if (feasible()) return true;
  unassign(pos);
  return false;
}

void ClassIterator::unassign(int pos) {
  const UndoRec& rec = undo_[pos];
  int y = rec.y;
  int si = rec.chain_start;
  img_[pos] = kUnset;
  used_[y] = false;
  if (rec.closed) {
    int len = rec.size_before;
    ++want_[len];
    ++want_total_;
    ++chain_cnt_[len];
    ++chains_total_;
    return;
  }
  int la = rec.size_before;
  int merged = chain_size_[si];
  int lb = merged - la;
  --chain_cnt_[merged];
  ++chain_cnt_[la];
  ++chain_cnt_[lb];
  ++chains_total_;
  chain_size_[si] = std::uint8_t(la);
  for (int p = y;;) {
    chain_start_[p] = std::uint8_t(y);
    if (img_[p] == kUnset) break;
    p = img_[p];
  }
}

std::size_t ClassIterator::FeasKeyHash::operator()(const FeasKey& k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint8_t b : k.bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

bool ClassIterator::feasible() {
  if (chains_total_ < want_total_) return false;
  // a single remaining cycle swallows every chain; singleton chains can fill
  // any remaining lengths (sums are conserved by construction)
  if (want_total_ == 1 || chain_cnt_[1] == chains_total_) return true;
  FeasKey key;
  for (int len = 1; len <= d_; ++len) {
    key.bytes[len - 1] = chain_cnt_[len];
    key.bytes[32 + len - 1] = want_[len];
  }
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::array<std::uint8_t, 33> chains = chain_cnt_;
  std::array<std::uint8_t, 33> cycles = want_;
  bool ok = solve(chains.data(), cycles.data());
  memo_.emplace(key, ok);
  return ok;
}

bool ClassIterator::feasible_now(std::uint8_t* chains, std::uint8_t* cycles) {
  FeasKey key;
  for (int len = 1; len <= d_; ++len) {
    key.bytes[len - 1] = chains[len];
    key.bytes[32 + len - 1] = cycles[len];
  }
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool ok = solve(chains, cycles);
  memo_.emplace(key, ok);
  return ok;
}

// can the open chains be grouped into the remaining cycle lengths?
bool ClassIterator::solve(std::uint8_t* chains, std::uint8_t* cycles) {
  int cmax = 0;
  for (int len = d_; len >= 1; --len) {
    if (chains[len] > 0) {
      cmax = len;
      break;
    }
  }
  if (cmax == 0) {
    for (int len = 1; len <= d_; ++len) {
      if (cycles[len] > 0) return false;
    }
    return true;
  }
  // the largest chain must land in some cycle of length >= its size
  for (int len = d_; len >= cmax; --len) {
    if (cycles[len] == 0) continue;
    --cycles[len];
    --chains[cmax];
    bool ok = fill_cycle(chains, cycles, len - cmax, cmax);
    ++cycles[len];
    ++chains[cmax];
    if (ok) return true;
  }
  return false;
}

bool ClassIterator::fill_cycle(std::uint8_t* chains, std::uint8_t* cycles, int rem, int cap) {
  if (rem == 0) return feasible_now(chains, cycles);
  for (int s = std::min(rem, cap); s >= 1; --s) {
    if (chains[s] == 0) continue;
    --chains[s];
    bool ok = fill_cycle(chains, cycles, rem - s, s);
    ++chains[s];
    if (ok) return true;
  }
  return false;
}

}  // namespace hurwitz
