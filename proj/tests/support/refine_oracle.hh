#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sic/explicit.hh"

namespace sic::testing {

// Explicit-state alternating simulation between two interface graphs
// with matching global signatures; the brute-force reference the
// symbolic refinement engine is checked against. Pairs (sp, sq) are
// candidates only when their global values agree; the relation is
// shrunk until every Q-accepted input is matched by P and every
// P-produced output is matched by Q, landing related again.
struct SimOracle {
  const ExplicitGraph* gp = nullptr;
  const ExplicitGraph* gq = nullptr;
  std::vector<char> rel;  // gp state_count * gq state_count
  int iterations = 0;     // strict shrink steps until stable
  bool init_matched = false;

  bool related(std::uint64_t sp, std::uint64_t sq) const {
    return rel[sp * gq->state_count + sq] != 0;
  }
};

// Global values of a state keyed by sorted variable name.
inline std::vector<long> sim_global_key(const ExplicitGraph& g,
                                        std::uint64_t s) {
  std::vector<std::pair<std::string, long>> kv;
  std::vector<long> vals = g.values_of(s);
  for (std::size_t i = 0; i < g.src->vars.size(); ++i)
    if (g.src->vars[i].is_global) kv.push_back({g.src->vars[i].name, vals[i]});
  std::sort(kv.begin(), kv.end());
  std::vector<long> key;
  for (auto& [n, v] : kv) key.push_back(v);
  return key;
}

// In(P) must cover In(Q) and Out(P) must stay inside Out(Q).
inline bool sim_structural_ok(const Interface& p, const Interface& q) {
  for (const auto& a : q.input_alphabet()) {
    const ActionSpec* own = p.find_action(a);
    if (!own || !own->in_input()) return false;
  }
  for (const auto& a : p.output_alphabet()) {
    const ActionSpec* own = q.find_action(a);
    if (!own || !own->in_output()) return false;
  }
  return true;
}

inline SimOracle sim_oracle(const ExplicitGraph& p, const ExplicitGraph& q) {
  SimOracle o;
  o.gp = &p;
  o.gq = &q;
  const std::uint64_t np = p.state_count, nq = q.state_count;

  // Q global-update index -> the same values in P's global indexing.
  std::vector<std::uint64_t> remap(q.global_count);
  {
    std::vector<std::string> q_names, p_names;
    for (const auto& v : q.src->vars)
      if (v.is_global) q_names.push_back(v.name);
    for (const auto& v : p.src->vars)
      if (v.is_global) p_names.push_back(v.name);
    for (std::uint64_t gu = 0; gu < q.global_count; ++gu) {
      std::vector<long> qv = q.global_values_of(gu);
      std::map<std::string, long> by_name;
      for (std::size_t i = 0; i < q_names.size(); ++i)
        by_name[q_names[i]] = qv[i];
      std::vector<long> pv;
      for (const auto& n : p_names) pv.push_back(by_name.at(n));
      remap[gu] = p.global_index_of(pv);
    }
  }

  std::vector<std::vector<long>> pkey(np), qkey(nq);
  for (std::uint64_t s = 0; s < np; ++s) pkey[s] = sim_global_key(p, s);
  for (std::uint64_t s = 0; s < nq; ++s) qkey[s] = sim_global_key(q, s);

  o.rel.assign(np * nq, 0);
  for (std::uint64_t sp = 0; sp < np; ++sp)
    for (std::uint64_t sq = 0; sq < nq; ++sq)
      if (pkey[sp] == qkey[sq]) o.rel[sp * nq + sq] = 1;

  auto edges_for = [](const ExplicitGraph& g, const std::string& a)
      -> const ExplicitGraph::ActionEdges* {
    for (const auto& e : g.actions)
      if (e.action == a) return &e;
    return nullptr;
  };

  std::vector<std::string> q_in = q.src->input_alphabet();
  std::vector<std::string> p_out = p.src->output_alphabet();

  auto pair_ok = [&](const std::vector<char>& cur, std::uint64_t sp,
                     std::uint64_t sq) {
    for (const std::string& a : q_in) {
      const auto* qe = edges_for(q, a);
      const auto* pe = edges_for(p, a);
      bool p_listens = pe && pe->has_in;
      for (std::uint64_t gu = 0; gu < q.global_count; ++gu) {
        for (std::uint64_t sq2 : qe->in_resp[sq][gu]) {
          bool match = false;
          if (p_listens)
            for (std::uint64_t sp2 : pe->in_resp[sp][remap[gu]])
              if (cur[sp2 * nq + sq2]) {
                match = true;
                break;
              }
          if (!match) return false;
        }
      }
    }
    for (const std::string& a : p_out) {
      const auto* pe = edges_for(p, a);
      const auto* qe = edges_for(q, a);
      bool q_emits = qe && qe->has_out;
      for (std::uint64_t sp2 : pe->out_edges[sp]) {
        bool match = false;
        if (q_emits)
          for (std::uint64_t sq2 : qe->out_edges[sq])
            if (cur[sp2 * nq + sq2]) {
              match = true;
              break;
            }
        if (!match) return false;
      }
    }
    return true;
  };

  for (;;) {
    std::vector<char> next = o.rel;
    bool changed = false;
    for (std::uint64_t sp = 0; sp < np; ++sp)
      for (std::uint64_t sq = 0; sq < nq; ++sq) {
        std::uint64_t at = sp * nq + sq;
        if (!o.rel[at]) continue;
        if (!pair_ok(o.rel, sp, sq)) {
          next[at] = 0;
          changed = true;
        }
      }
    if (!changed) break;
    o.rel = std::move(next);
    ++o.iterations;
  }

  o.init_matched = true;
  for (std::uint64_t q0 : q.init_states) {
    bool found = false;
    for (std::uint64_t p0 : p.init_states)
      if (o.related(p0, q0)) {
        found = true;
        break;
      }
    if (!found) {
      o.init_matched = false;
      break;
    }
  }
  return o;
}

}  // namespace sic::testing
