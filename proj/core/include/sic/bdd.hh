#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sic::bdd {

enum class Op : std::uint8_t { And, Or, Xor, Implies };

// Handle to a node inside one Manager. Handles from different managers
// never compare equal and must not be mixed in operations.
struct Ref {
  std::uint32_t index = 0;
  std::uint32_t manager = 0;
  friend bool operator==(const Ref&, const Ref&) = default;
};

// Where a decision bit came from: one bit of one model variable.
// origin_bit 0 is the most significant bit of the variable's encoding.
struct BitInfo {
  std::string origin_var;
  int origin_bit = 0;
  bool primed = false;
};

// Canonical reduced-ordered BDD store with a unique table and an
// unbounded operation cache. Bits are registered as unprimed/primed
// twin pairs occupying adjacent levels: unprimed bits get even indices,
// their primed twins the following odd index.
//
// Canonicity: two semantically equal functions built in the same
// manager are the same Ref. A manager and everything derived from it
// belong to a single thread; distinct managers are independent.
class Manager {
 public:
  Manager();
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  // Registers one encoding bit (both twins); returns the unprimed index.
  int add_bit_pair(const std::string& origin_var, int origin_bit);

  int bit_count() const { return static_cast<int>(bits_.size()); }
  const BitInfo& bit_info(int bit) const;
  static int twin(int bit) { return bit ^ 1; }
  static bool is_primed(int bit) { return (bit & 1) != 0; }

  Ref zero() const { return wrap(0); }
  Ref one() const { return wrap(1); }
  bool is_false(Ref f) const { return unwrap(f) == 0; }
  bool is_true(Ref f) const { return unwrap(f) == 1; }

  // The function that is true iff the given registered bit is 1.
  Ref var(int bit);

  Ref apply(Op op, Ref f, Ref g);
  Ref negate(Ref f);
  Ref exists(const std::vector<int>& bits, Ref f);
  Ref forall(const std::vector<int>& bits, Ref f);

  // Variable substitution restricted to twin pairs: every map entry must
  // send a bit to its twin, and no target bit may occur in f's support.
  // General renamings are rejected.
  Ref rename(Ref f, const std::vector<std::pair<int, int>>& map);

  // Number of satisfying assignments over `over`, which must contain
  // every support bit of f. At most 62 bits.
  std::uint64_t sat_count(Ref f, const std::vector<int>& over);

  // Lexicographically least satisfying assignment over all registered
  // bits, or nothing iff f is the constant false.
  std::optional<std::vector<bool>> pick_cube(Ref f) const;

  bool eval(Ref f, const std::vector<bool>& assignment) const;
  std::vector<int> support(Ref f) const;

  // Shorthands over apply/negate.
  Ref conj(Ref f, Ref g) { return apply(Op::And, f, g); }
  Ref disj(Ref f, Ref g) { return apply(Op::Or, f, g); }
  Ref implies(Ref f, Ref g) { return apply(Op::Implies, f, g); }
  Ref equiv(Ref f, Ref g) { return negate(apply(Op::Xor, f, g)); }

  std::size_t node_count() const { return nodes_.size(); }
  void clear_cache();
  std::uint32_t id() const { return id_; }

 private:
  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };
  static constexpr std::uint32_t kTermVar = 0xffffffffu;
  static constexpr std::uint32_t kFalse = 0;
  static constexpr std::uint32_t kTrue = 1;

  struct Triple {
    std::uint32_t var, lo, hi;
    friend bool operator==(const Triple&, const Triple&) = default;
  };
  struct TripleHash {
    std::size_t operator()(const Triple& t) const;
  };
  // op codes beyond Op: 4 = not, 5 = exists, 6 = forall, 7 = rename.
  struct CacheKey {
    std::uint32_t op, a, b;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
  };
  struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const;
  };

  Ref wrap(std::uint32_t i) const { return Ref{i, id_}; }
  std::uint32_t unwrap(Ref f) const;

  std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
  std::uint32_t apply_rec(Op op, std::uint32_t f, std::uint32_t g);
  std::uint32_t negate_rec(std::uint32_t f);
  std::uint32_t quant_rec(bool is_exists, std::uint32_t f,
                          const std::vector<int>& bits, std::uint32_t set_id);
  std::uint32_t rename_rec(std::uint32_t f,
                           const std::vector<std::pair<int, int>>& map,
                           std::uint32_t map_id);
  std::uint64_t count_rec(std::uint32_t f, const std::vector<int>& over,
                          std::uint32_t set_id,
                          std::unordered_map<std::uint64_t, std::uint64_t>& memo);
  void support_rec(std::uint32_t f, std::vector<bool>& seen) const;
  std::uint32_t intern_set(const std::vector<int>& bits);

  std::uint32_t id_;
  std::vector<BitInfo> bits_;
  std::vector<Node> nodes_;
  std::unordered_map<Triple, std::uint32_t, TripleHash> unique_;
  std::unordered_map<CacheKey, std::uint32_t, CacheKeyHash> cache_;
  std::unordered_map<std::uint64_t, std::uint64_t> count_cache_;
  std::vector<std::vector<int>> interned_sets_;
};

}  // namespace sic::bdd
