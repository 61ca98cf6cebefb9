#include "sic/bdd.hh"

#include <algorithm>
#include <atomic>
#include <cassert>

#include "sic/diag.hh"

namespace sic::bdd {

namespace {

std::uint32_t next_manager_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

std::size_t Manager::TripleHash::operator()(const Triple& t) const {
  return mix(mix(t.var, t.lo), t.hi);
}

std::size_t Manager::CacheKeyHash::operator()(const CacheKey& k) const {
  return mix(mix(k.op, k.a), k.b);
}

Manager::Manager() : id_(next_manager_id()) {
  nodes_.push_back(Node{kTermVar, 0, 0});  // false
  nodes_.push_back(Node{kTermVar, 1, 1});  // true
}

std::uint32_t Manager::unwrap(Ref f) const {
  if (f.manager != id_)
    throw UsageError("BDD handle used with a foreign manager");
  if (f.index >= nodes_.size()) throw UsageError("stale BDD handle");
  return f.index;
}

int Manager::add_bit_pair(const std::string& origin_var, int origin_bit) {
  int unprimed = static_cast<int>(bits_.size());
  bits_.push_back(BitInfo{origin_var, origin_bit, false});
  bits_.push_back(BitInfo{origin_var, origin_bit, true});
  return unprimed;
}

const BitInfo& Manager::bit_info(int bit) const {
  if (bit < 0 || bit >= bit_count()) throw UsageError("bit index out of range");
  return bits_[static_cast<std::size_t>(bit)];
}

std::uint32_t Manager::mk(std::uint32_t var, std::uint32_t lo,
                          std::uint32_t hi) {
  if (lo == hi) return lo;
  assert(nodes_[lo].var == kTermVar || nodes_[lo].var > var);
  assert(nodes_[hi].var == kTermVar || nodes_[hi].var > var);
  Triple key{var, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  std::uint32_t index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{var, lo, hi});
  unique_.emplace(key, index);
  return index;
}

Ref Manager::var(int bit) {
  if (bit < 0 || bit >= bit_count())
    throw UsageError("bit index out of range");
  return wrap(mk(static_cast<std::uint32_t>(bit), kFalse, kTrue));
}

Ref Manager::apply(Op op, Ref f, Ref g) {
  return wrap(apply_rec(op, unwrap(f), unwrap(g)));
}

std::uint32_t Manager::apply_rec(Op op, std::uint32_t f, std::uint32_t g) {
  switch (op) {
    case Op::And:
      if (f == kFalse || g == kFalse) return kFalse;
      if (f == kTrue) return g;
      if (g == kTrue) return f;
      if (f == g) return f;
      break;
    case Op::Or:
      if (f == kTrue || g == kTrue) return kTrue;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      if (f == g) return f;
      break;
    case Op::Xor:
      if (f == g) return kFalse;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      if (f == kTrue) return negate_rec(g);
      if (g == kTrue) return negate_rec(f);
      break;
    case Op::Implies:
      if (f == kFalse || g == kTrue) return kTrue;
      if (f == kTrue) return g;
      if (f == g) return kTrue;
      if (g == kFalse) return negate_rec(f);
      break;
  }
  bool commutative = op != Op::Implies;
  std::uint32_t a = f, b = g;
  if (commutative && a > b) std::swap(a, b);
  CacheKey key{static_cast<std::uint32_t>(op), a, b};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const Node& nf = nodes_[f];
  const Node& ng = nodes_[g];
  std::uint32_t var = std::min(nf.var, ng.var);
  std::uint32_t f0 = nf.var == var ? nf.lo : f;
  std::uint32_t f1 = nf.var == var ? nf.hi : f;
  std::uint32_t g0 = ng.var == var ? ng.lo : g;
  std::uint32_t g1 = ng.var == var ? ng.hi : g;
  std::uint32_t lo = apply_rec(op, f0, g0);
  std::uint32_t hi = apply_rec(op, f1, g1);
  std::uint32_t result = mk(var, lo, hi);
  cache_.emplace(key, result);
  return result;
}

Ref Manager::negate(Ref f) { return wrap(negate_rec(unwrap(f))); }

std::uint32_t Manager::negate_rec(std::uint32_t f) {
  if (f == kFalse) return kTrue;
  if (f == kTrue) return kFalse;
  CacheKey key{4, f, 0};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // Copy the node out: recursion grows nodes_ and may reallocate it.
  Node n = nodes_[f];
  std::uint32_t lo = negate_rec(n.lo);
  std::uint32_t hi = negate_rec(n.hi);
  std::uint32_t result = mk(n.var, lo, hi);
  cache_.emplace(key, result);
  return result;
}

std::uint32_t Manager::intern_set(const std::vector<int>& bits) {
  for (std::size_t i = 0; i < interned_sets_.size(); ++i)
    if (interned_sets_[i] == bits) return static_cast<std::uint32_t>(i);
  interned_sets_.push_back(bits);
  return static_cast<std::uint32_t>(interned_sets_.size() - 1);
}

Ref Manager::exists(const std::vector<int>& bits, Ref f) {
  std::vector<int> sorted = bits;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int b : sorted)
    if (b < 0 || b >= bit_count())
      throw UsageError("quantified bit index out of range");
  if (sorted.empty()) return f;
  std::uint32_t set_id = intern_set(sorted);
  return wrap(quant_rec(true, unwrap(f), sorted, set_id));
}

Ref Manager::forall(const std::vector<int>& bits, Ref f) {
  return negate(exists(bits, negate(f)));
}

std::uint32_t Manager::quant_rec(bool is_exists, std::uint32_t f,
                                 const std::vector<int>& bits,
                                 std::uint32_t set_id) {
  if (f == kFalse || f == kTrue) return f;
  // Copy the node out: recursion grows nodes_ and may reallocate it.
  Node n = nodes_[f];
  if (n.var > static_cast<std::uint32_t>(bits.back())) return f;
  CacheKey key{is_exists ? 5u : 6u,
               f, set_id};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::uint32_t lo = quant_rec(is_exists, n.lo, bits, set_id);
  std::uint32_t hi = quant_rec(is_exists, n.hi, bits, set_id);
  std::uint32_t result;
  if (std::binary_search(bits.begin(), bits.end(), static_cast<int>(n.var)))
    result = apply_rec(is_exists ? Op::Or : Op::And, lo, hi);
  else
    result = mk(n.var, lo, hi);
  cache_.emplace(key, result);
  return result;
}

Ref Manager::rename(Ref f, const std::vector<std::pair<int, int>>& map) {
  std::uint32_t root = unwrap(f);
  std::vector<std::pair<int, int>> sorted;
  for (auto [from, to] : map) {
    if (from < 0 || from >= bit_count() || to < 0 || to >= bit_count())
      throw UsageError("renamed bit index out of range");
    if (to != twin(from))
      throw UsageError("rename must send each bit to its twin");
    sorted.emplace_back(from, to);
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first == sorted[i - 1].first)
      throw UsageError("duplicate source bit in rename");
  if (sorted.empty()) return f;
  // A target occurring in the support would make the relabel unsound.
  std::vector<bool> seen(bits_.size(), false);
  support_rec(root, seen);
  for (auto [from, to] : sorted)
    if (seen[static_cast<std::size_t>(to)])
      throw UsageError("rename target occurs in support");
  std::vector<int> flat;
  for (auto [from, to] : sorted) {
    flat.push_back(from);
    flat.push_back(to);
  }
  std::uint32_t map_id = intern_set(flat);
  return wrap(rename_rec(root, sorted, map_id));
}

std::uint32_t Manager::rename_rec(std::uint32_t f,
                                  const std::vector<std::pair<int, int>>& map,
                                  std::uint32_t map_id) {
  if (f == kFalse || f == kTrue) return f;
  CacheKey key{7, f, map_id};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // Copy the node out: recursion grows nodes_ and may reallocate it.
  Node n = nodes_[f];
  std::uint32_t lo = rename_rec(n.lo, map, map_id);
  std::uint32_t hi = rename_rec(n.hi, map, map_id);
  std::uint32_t var = n.var;
  auto pos = std::lower_bound(map.begin(), map.end(),
                              std::pair<int, int>{static_cast<int>(var), -1});
  if (pos != map.end() && pos->first == static_cast<int>(var))
    var = static_cast<std::uint32_t>(pos->second);
  // Twins sit on adjacent levels, so swapping within a pair keeps the
  // global order intact; mk() asserts that in debug builds.
  std::uint32_t result = mk(var, lo, hi);
  cache_.emplace(key, result);
  return result;
}

std::uint64_t Manager::sat_count(Ref f, const std::vector<int>& over) {
  std::uint32_t root = unwrap(f);
  std::vector<int> sorted = over;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != over.size())
    throw UsageError("duplicate bit in sat_count set");
  if (sorted.size() > 62)
    throw UsageError("sat_count limited to 62 bits");
  for (int b : sorted)
    if (b < 0 || b >= bit_count())
      throw UsageError("sat_count bit index out of range");
  std::vector<bool> seen(bits_.size(), false);
  support_rec(root, seen);
  for (int b = 0; b < bit_count(); ++b)
    if (seen[static_cast<std::size_t>(b)] &&
        !std::binary_search(sorted.begin(), sorted.end(), b))
      throw UsageError("sat_count set must cover the support");
  std::uint32_t set_id = intern_set(sorted);
  // Position of each bit within the sorted set; bits below a node's
  // level but above its parent contribute free factors of two.
  std::uint64_t n = sorted.size();
  std::uint64_t top = count_rec(root, sorted, set_id, count_cache_);
  std::uint64_t pos_root;
  if (root == kFalse || root == kTrue) {
    pos_root = n;
  } else {
    auto it = std::lower_bound(sorted.begin(), sorted.end(),
                               static_cast<int>(nodes_[root].var));
    pos_root = static_cast<std::uint64_t>(it - sorted.begin());
  }
  return top << pos_root;
}

std::uint64_t Manager::count_rec(
    std::uint32_t f, const std::vector<int>& over, std::uint32_t set_id,
    std::unordered_map<std::uint64_t, std::uint64_t>& memo) {
  // Counts assignments to the bits at or below f's own level.
  if (f == kFalse) return 0;
  if (f == kTrue) return 1;
  std::uint64_t key = (static_cast<std::uint64_t>(set_id) << 32) | f;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const Node& node = nodes_[f];
  auto pos_of = [&](std::uint32_t child) -> std::uint64_t {
    if (child == kFalse || child == kTrue) return over.size();
    auto p = std::lower_bound(over.begin(), over.end(),
                              static_cast<int>(nodes_[child].var));
    return static_cast<std::uint64_t>(p - over.begin());
  };
  auto my_pos = std::lower_bound(over.begin(), over.end(),
                                 static_cast<int>(node.var)) -
                over.begin();
  std::uint64_t lo = count_rec(node.lo, over, set_id, memo)
                     << (pos_of(node.lo) - my_pos - 1);
  std::uint64_t hi = count_rec(node.hi, over, set_id, memo)
                     << (pos_of(node.hi) - my_pos - 1);
  std::uint64_t result = lo + hi;
  memo.emplace(key, result);
  return result;
}

std::optional<std::vector<bool>> Manager::pick_cube(Ref f) const {
  std::uint32_t cur = unwrap(f);
  if (cur == kFalse) return std::nullopt;
  std::vector<bool> out(bits_.size(), false);
  while (cur != kTrue) {
    const Node& n = nodes_[cur];
    if (n.lo != kFalse) {
      cur = n.lo;  // prefer 0: lexicographically least
    } else {
      out[n.var] = true;
      cur = n.hi;
    }
  }
  return out;
}

bool Manager::eval(Ref f, const std::vector<bool>& assignment) const {
  if (assignment.size() != bits_.size())
    throw UsageError("eval assignment length mismatch");
  std::uint32_t cur = unwrap(f);
  while (cur != kFalse && cur != kTrue) {
    const Node& n = nodes_[cur];
    cur = assignment[n.var] ? n.hi : n.lo;
  }
  return cur == kTrue;
}

void Manager::support_rec(std::uint32_t f, std::vector<bool>& seen) const {
  std::vector<std::uint32_t> stack{f};
  std::vector<bool> visited(nodes_.size(), false);
  while (!stack.empty()) {
    std::uint32_t cur = stack.back();
    stack.pop_back();
    if (cur == kFalse || cur == kTrue || visited[cur]) continue;
    visited[cur] = true;
    const Node& n = nodes_[cur];
    seen[n.var] = true;
    stack.push_back(n.lo);
    stack.push_back(n.hi);
  }
}

std::vector<int> Manager::support(Ref f) const {
  std::vector<bool> seen(bits_.size(), false);
  support_rec(unwrap(f), seen);
  std::vector<int> out;
  for (int b = 0; b < bit_count(); ++b)
    if (seen[static_cast<std::size_t>(b)]) out.push_back(b);
  return out;
}

void Manager::clear_cache() {
  cache_.clear();
  count_cache_.clear();
}

}  // namespace sic::bdd
