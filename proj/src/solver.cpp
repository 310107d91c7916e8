#include "diamfree/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <thread>

#include "diamfree/bitwords.hpp"
#include "diamfree/kernels.hpp"

namespace diamfree {

namespace {

using Clock = std::chrono::steady_clock;

/// Solver vertex sets live on the stack: capacity for the default
/// 1000-vertex limit, only ctx.words words active.
constexpr std::size_t kMaxWords = 16;

struct VSet {
  std::array<std::uint64_t, kMaxWords> w{};
};

struct TimeoutInterrupt {};

struct Ctx {
  const DiameterGraph* g = nullptr;
  std::size_t nv = 0;
  std::size_t words = 0;
  Clock::time_point deadline{};
  bool use_deadline = false;
  std::atomic<bool>* abort = nullptr;
  std::uint64_t nodes = 0;
  // per-context scratch, reused across nodes
  std::vector<std::uint32_t> deg;
  std::vector<std::int8_t> color;
  std::vector<std::uint32_t> queue;

  const std::uint64_t* row(std::uint32_t v) const { return g->adj.data() + v * words; }

  void tick() {
    if ((++nodes & 0xFFF) != 0) return;
    if (abort && abort->load(std::memory_order_relaxed)) throw TimeoutInterrupt{};
    if (use_deadline && Clock::now() > deadline) {
      if (abort) abort->store(true, std::memory_order_relaxed);
      throw TimeoutInterrupt{};
    }
  }
};

std::size_t vcount(const Ctx& ctx, const VSet& s) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < ctx.words; ++i) total += std::popcount(s.w[i]);
  return total;
}

bool is_empty(const Ctx& ctx, const VSet& s) {
  for (std::size_t i = 0; i < ctx.words; ++i)
    if (s.w[i]) return false;
  return true;
}

bool equal(const Ctx& ctx, const VSet& a, const VSet& b) {
  for (std::size_t i = 0; i < ctx.words; ++i)
    if (a.w[i] != b.w[i]) return false;
  return true;
}

void remove_vertex(VSet& s, std::size_t v) { bits::clear_bit(s.w.data(), v); }
bool has_vertex(const VSet& s, std::size_t v) { return bits::test_bit(s.w.data(), v); }

void subtract_row(const Ctx& ctx, VSet& s, const std::uint64_t* row) {
  for (std::size_t i = 0; i < ctx.words; ++i) s.w[i] &= ~row[i];
}

/// Clears bits 0..v inclusive.
void clear_through(VSet& s, std::size_t v) {
  const std::size_t w = v >> 6;
  for (std::size_t i = 0; i < w; ++i) s.w[i] = 0;
  const std::size_t r = v & 63;
  s.w[w] &= r == 63 ? 0 : ~((std::uint64_t{2} << r) - 1);
}

std::size_t find_first(const Ctx& ctx, const VSet& s) {
  return bits::find_first(s.w.data(), ctx.words);
}

template <typename Fn>
void for_each_vertex(const Ctx& ctx, const VSet& s, Fn&& fn) {
  bits::for_each_bit(s.w.data(), ctx.words, fn);
}

int residual_degree(const Ctx& ctx, const VSet& cand, std::uint32_t v) {
  const std::uint64_t* r = ctx.row(v);
  int d = 0;
  for (std::size_t i = 0; i < ctx.words; ++i) d += std::popcount(r[i] & cand.w[i]);
  return d;
}

std::uint32_t first_residual_neighbor(const Ctx& ctx, const VSet& cand, std::uint32_t v) {
  const std::uint64_t* r = ctx.row(v);
  for (std::size_t i = 0; i < ctx.words; ++i) {
    const std::uint64_t w = r[i] & cand.w[i];
    if (w) return static_cast<std::uint32_t>(i * 64 + std::countr_zero(w));
  }
  return UINT32_MAX;
}

/// All residual degrees in one batched kernel sweep (entries outside cand
/// are garbage; callers only read cand members).
void batch_degrees(Ctx& ctx, const VSet& cand) {
  kernels::active_ops().popcount_and_batch(ctx.g->adj.data(), ctx.words, ctx.nv,
                                           cand.w.data(), ctx.deg.data());
}

/// Degree-0 and degree-1 vertices always extend to a maximum independent
/// set; take them and drop the lone neighbor. Returns how many were taken.
int simplify(Ctx& ctx, VSet& cand, std::vector<std::uint32_t>* included) {
  int base = 0;
  bool again = true;
  while (again) {
    again = false;
    for_each_vertex(ctx, cand, [&](std::size_t v64) {
      const auto v = static_cast<std::uint32_t>(v64);
      if (!has_vertex(cand, v)) return;  // removed earlier this pass
      const int d = residual_degree(ctx, cand, v);
      if (d == 0) {
        ++base;
        remove_vertex(cand, v);
        if (included) included->push_back(v);
        again = true;
      } else if (d == 1) {
        const std::uint32_t u = first_residual_neighbor(ctx, cand, v);
        ++base;
        remove_vertex(cand, v);
        remove_vertex(cand, u);
        if (included) included->push_back(v);
        again = true;
      }
    });
  }
  return base;
}

VSet component_of(const Ctx& ctx, const VSet& cand, std::size_t start) {
  VSet comp;
  bits::set_bit(comp.w.data(), start);
  VSet frontier = comp;
  VSet next;
  while (true) {
    for (std::size_t i = 0; i < ctx.words; ++i) next.w[i] = 0;
    for_each_vertex(ctx, frontier, [&](std::size_t v) {
      const std::uint64_t* r = ctx.row(static_cast<std::uint32_t>(v));
      for (std::size_t i = 0; i < ctx.words; ++i) next.w[i] |= r[i];
    });
    bool grew = false;
    for (std::size_t i = 0; i < ctx.words; ++i) {
      next.w[i] &= cand.w[i] & ~comp.w[i];
      if (next.w[i]) grew = true;
    }
    if (!grew) break;
    for (std::size_t i = 0; i < ctx.words; ++i) comp.w[i] |= next.w[i];
    frontier = next;
  }
  return comp;
}

/// Greedy clique cover of the residual graph; its size bounds alpha above.
int clique_cover_ub(const Ctx& ctx, const VSet& cand) {
  VSet unc = cand;
  VSet common;
  int cliques = 0;
  while (true) {
    const std::size_t v = find_first(ctx, unc);
    if (v == bits::npos) break;
    remove_vertex(unc, v);
    const std::uint64_t* rv = ctx.row(static_cast<std::uint32_t>(v));
    for (std::size_t i = 0; i < ctx.words; ++i) common.w[i] = rv[i] & unc.w[i];
    while (true) {
      const std::size_t u = find_first(ctx, common);
      if (u == bits::npos) break;
      remove_vertex(unc, u);
      const std::uint64_t* ru = ctx.row(static_cast<std::uint32_t>(u));
      for (std::size_t i = 0; i < ctx.words; ++i) common.w[i] &= ru[i] & unc.w[i];
    }
    ++cliques;
  }
  return cliques;
}

/// Greedy independent set: repeatedly take a minimum-residual-degree vertex
/// (smallest index on ties). Seeds the branch-and-bound lower bound.
std::vector<std::uint32_t> greedy_independent(Ctx& ctx, const VSet& cand0) {
  VSet rem = cand0;
  std::vector<std::uint32_t> picked;
  while (!is_empty(ctx, rem)) {
    std::uint32_t best = UINT32_MAX;
    int best_deg = INT32_MAX;
    for_each_vertex(ctx, rem, [&](std::size_t v) {
      const int d = residual_degree(ctx, rem, static_cast<std::uint32_t>(v));
      if (d < best_deg) {
        best_deg = d;
        best = static_cast<std::uint32_t>(v);
      }
    });
    picked.push_back(best);
    subtract_row(ctx, rem, ctx.row(best));
    remove_vertex(rem, best);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

/// 2-coloring of the residual subgraph into ctx.color, or false on an odd
/// cycle. Only entries of cand are meaningful afterwards.
bool two_color(Ctx& ctx, const VSet& cand) {
  for_each_vertex(ctx, cand, [&](std::size_t v) { ctx.color[v] = -1; });
  ctx.queue.clear();
  bool ok = true;
  for_each_vertex(ctx, cand, [&](std::size_t s) {
    if (!ok || ctx.color[s] != -1) return;
    ctx.color[s] = 0;
    const std::size_t q0 = ctx.queue.size();
    ctx.queue.push_back(static_cast<std::uint32_t>(s));
    for (std::size_t qi = q0; qi < ctx.queue.size() && ok; ++qi) {
      const std::uint32_t v = ctx.queue[qi];
      const std::uint64_t* r = ctx.row(v);
      for (std::size_t i = 0; i < ctx.words && ok; ++i) {
        std::uint64_t w = r[i] & cand.w[i];
        while (w) {
          const auto u = static_cast<std::uint32_t>(i * 64 + std::countr_zero(w));
          w &= w - 1;
          if (ctx.color[u] == -1) {
            ctx.color[u] = static_cast<std::int8_t>(1 - ctx.color[v]);
            ctx.queue.push_back(u);
          } else if (ctx.color[u] == ctx.color[v]) {
            ok = false;
            break;
          }
        }
      }
    }
  });
  return ok;
}

/// Hopcroft-Karp over a residual bipartite subgraph described by ctx.color.
struct HkResult {
  std::size_t matching = 0;
  std::vector<std::uint32_t> left, right;             // graph indices, ascending
  std::vector<std::int32_t> match_left, match_right;  // side-local partner or -1
};

HkResult hopcroft_karp(Ctx& ctx, const VSet& cand) {
  HkResult res;
  std::vector<std::int32_t> side_index(ctx.nv, -1);
  for_each_vertex(ctx, cand, [&](std::size_t v) {
    if (ctx.color[v] == 0) {
      side_index[v] = static_cast<std::int32_t>(res.left.size());
      res.left.push_back(static_cast<std::uint32_t>(v));
    } else {
      side_index[v] = static_cast<std::int32_t>(res.right.size());
      res.right.push_back(static_cast<std::uint32_t>(v));
    }
  });
  const std::size_t L = res.left.size();
  std::vector<std::vector<std::int32_t>> adj(L);
  for (std::size_t i = 0; i < L; ++i) {
    const std::uint64_t* r = ctx.row(res.left[i]);
    for (std::size_t w = 0; w < ctx.words; ++w) {
      std::uint64_t bw = r[w] & cand.w[w];
      while (bw) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bw));
        bw &= bw - 1;
        adj[i].push_back(side_index[u]);
      }
    }
  }
  res.match_left.assign(L, -1);
  res.match_right.assign(res.right.size(), -1);
  constexpr std::int32_t kInf = INT32_MAX;
  std::vector<std::int32_t> dist(L);
  std::vector<std::size_t> queue;

  auto bfs = [&]() -> bool {
    queue.clear();
    bool reachable_free = false;
    for (std::size_t i = 0; i < L; ++i) {
      dist[i] = res.match_left[i] < 0 ? 0 : kInf;
      if (res.match_left[i] < 0) queue.push_back(i);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t i = queue[qi];
      for (std::int32_t j : adj[i]) {
        const std::int32_t nxt = res.match_right[j];
        if (nxt < 0)
          reachable_free = true;
        else if (dist[nxt] == kInf) {
          dist[nxt] = dist[i] + 1;
          queue.push_back(static_cast<std::size_t>(nxt));
        }
      }
    }
    return reachable_free;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    for (std::int32_t j : adj[i]) {
      const std::int32_t nxt = res.match_right[j];
      if (nxt < 0 || (dist[nxt] == dist[i] + 1 && dfs(static_cast<std::size_t>(nxt)))) {
        res.match_left[i] = j;
        res.match_right[j] = static_cast<std::int32_t>(i);
        return true;
      }
    }
    dist[i] = kInf;
    return false;
  };
  while (bfs()) {
    for (std::size_t i = 0; i < L; ++i)
      if (res.match_left[i] < 0 && dfs(i)) ++res.matching;
  }
  return res;
}

/// Konig: complement of the minimum vertex cover derived from a maximum
/// matching via alternating reachability from the unmatched left vertices.
std::vector<std::uint32_t> konig_independent_set(const HkResult& hk, Ctx& ctx,
                                                 const VSet& cand) {
  const std::size_t L = hk.left.size();
  std::vector<char> z_left(L, 0), z_right(hk.right.size(), 0);
  std::vector<std::int32_t> side_index(ctx.nv, -1);
  for (std::size_t j = 0; j < hk.right.size(); ++j)
    side_index[hk.right[j]] = static_cast<std::int32_t>(j);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < L; ++i)
    if (hk.match_left[i] < 0) {
      z_left[i] = 1;
      queue.push_back(i);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t i = queue[qi];
    const std::uint64_t* r = ctx.row(hk.left[i]);
    for (std::size_t w = 0; w < ctx.words; ++w) {
      std::uint64_t bw = r[w] & cand.w[w];
      while (bw) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bw));
        bw &= bw - 1;
        const std::int32_t j = side_index[u];
        if (j < 0 || z_right[j]) continue;
        if (hk.match_left[i] == j) continue;  // left -> right uses non-matching edges
        z_right[j] = 1;
        const std::int32_t nxt = hk.match_right[j];
        if (nxt >= 0 && !z_left[nxt]) {
          z_left[nxt] = 1;
          queue.push_back(static_cast<std::size_t>(nxt));
        }
      }
    }
  }
  std::vector<std::uint32_t> is;
  for (std::size_t i = 0; i < L; ++i)
    if (z_left[i]) is.push_back(hk.left[i]);
  for (std::size_t j = 0; j < hk.right.size(); ++j)
    if (!z_right[j]) is.push_back(hk.right[j]);
  std::sort(is.begin(), is.end());
  return is;
}

/// Exact alpha of a residual of maximum degree <= 2 (paths and cycles).
int alpha_deg2(const Ctx& ctx, const VSet& cand, std::vector<std::uint32_t>* witness) {
  VSet rem = cand;
  int total = 0;
  while (!is_empty(ctx, rem)) {
    std::size_t start = bits::npos;
    for_each_vertex(ctx, rem, [&](std::size_t v) {
      if (start != bits::npos) return;
      if (residual_degree(ctx, rem, static_cast<std::uint32_t>(v)) <= 1) start = v;
    });
    const bool is_path = start != bits::npos;
    if (!is_path) start = find_first(ctx, rem);
    std::vector<std::uint32_t> seq;
    auto cur = static_cast<std::uint32_t>(start);
    while (cur != UINT32_MAX) {
      seq.push_back(cur);
      remove_vertex(rem, cur);
      cur = first_residual_neighbor(ctx, rem, cur);
    }
    const std::size_t len = seq.size();
    const std::size_t take = is_path ? (len + 1) / 2 : len / 2;
    total += static_cast<int>(take);
    if (witness)
      for (std::size_t i = 0, picked = 0; picked < take; i += 2, ++picked)
        witness->push_back(seq[i]);
  }
  return total;
}

/// Maximum matching of the bipartite double cover (v+, v-); half of it is
/// the fractional matching number, giving the LP bound
///   alpha <= floor(|V| - nu(double)/2),
/// which closes odd cycles exactly where the clique cover cannot.
std::size_t double_cover_matching(Ctx& ctx, const VSet& cand) {
  std::vector<std::uint32_t> verts;
  std::vector<std::int32_t> local(ctx.nv, -1);
  for_each_vertex(ctx, cand, [&](std::size_t v) {
    local[v] = static_cast<std::int32_t>(verts.size());
    verts.push_back(static_cast<std::uint32_t>(v));
  });
  const std::size_t L = verts.size();
  std::vector<std::vector<std::int32_t>> adj(L);
  for (std::size_t i = 0; i < L; ++i) {
    const std::uint64_t* r = ctx.row(verts[i]);
    for (std::size_t w = 0; w < ctx.words; ++w) {
      std::uint64_t bw = r[w] & cand.w[w];
      while (bw) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bw));
        bw &= bw - 1;
        adj[i].push_back(local[u]);
      }
    }
  }
  std::vector<std::int32_t> ml(L, -1), mr(L, -1);
  constexpr std::int32_t kInf = INT32_MAX;
  std::vector<std::int32_t> dist(L);
  std::vector<std::size_t> queue;
  std::size_t matching = 0;
  auto bfs = [&]() {
    queue.clear();
    bool found = false;
    for (std::size_t i = 0; i < L; ++i) {
      dist[i] = ml[i] < 0 ? 0 : kInf;
      if (ml[i] < 0) queue.push_back(i);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t i = queue[qi];
      for (std::int32_t j : adj[i]) {
        const std::int32_t nxt = mr[j];
        if (nxt < 0)
          found = true;
        else if (dist[nxt] == kInf) {
          dist[nxt] = dist[i] + 1;
          queue.push_back(static_cast<std::size_t>(nxt));
        }
      }
    }
    return found;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    for (std::int32_t j : adj[i]) {
      const std::int32_t nxt = mr[j];
      if (nxt < 0 || (dist[nxt] == dist[i] + 1 && dfs(static_cast<std::size_t>(nxt)))) {
        ml[i] = j;
        mr[j] = static_cast<std::int32_t>(i);
        return true;
      }
    }
    dist[i] = kInf;
    return false;
  };
  while (bfs()) {
    for (std::size_t i = 0; i < L; ++i)
      if (ml[i] < 0 && dfs(i)) ++matching;
  }
  return matching;
}

int lp_bound(Ctx& ctx, const VSet& cand) {
  const std::size_t n = vcount(ctx, cand);
  const std::size_t m2 = double_cover_matching(ctx, cand);
  return static_cast<int>(n - (m2 + 1) / 2);
}

int max_residual_degree(Ctx& ctx, const VSet& cand, std::uint32_t* argmax) {
  batch_degrees(ctx, cand);
  int best = -1;
  std::uint32_t arg = UINT32_MAX;
  for_each_vertex(ctx, cand, [&](std::size_t v) {
    const int d = static_cast<int>(ctx.deg[v]);
    if (d > best) {
      best = d;
      arg = static_cast<std::uint32_t>(v);
    }
  });
  if (argmax) *argmax = arg;
  return best;
}

int solve_alpha(Ctx& ctx, VSet cand, int floor_val);

/// One connected, already-simplified component.
int solve_component(Ctx& ctx, const VSet& comp, int floor_val) {
  static const bool kNoBip = std::getenv("EXP_NOBIP") != nullptr;
  static const bool kNoComp = std::getenv("EXP_NOCOMP") != nullptr;
  (void)kNoComp;
  std::uint32_t v = UINT32_MAX;
  const int maxdeg = max_residual_degree(ctx, comp, &v);
  if (maxdeg <= 2) return alpha_deg2(ctx, comp, nullptr);
  if (!kNoBip && two_color(ctx, comp)) {
    const HkResult hk = hopcroft_karp(ctx, comp);
    return static_cast<int>(vcount(ctx, comp) - hk.matching);
  }
  static const bool kLP = std::getenv("EXP_LP") != nullptr;
  {
    int ub = clique_cover_ub(ctx, comp);
    if (kLP && ub > floor_val) ub = std::min(ub, lp_bound(ctx, comp));
    if (ub <= floor_val) return floor_val;
  }

  // Branch on the max-degree vertex, exclude before include.
  VSet ex = comp;
  remove_vertex(ex, v);
  int best = std::max(floor_val, solve_alpha(ctx, ex, floor_val));

  VSet in = comp;
  subtract_row(ctx, in, ctx.row(v));
  remove_vertex(in, v);
  if (1 + static_cast<int>(vcount(ctx, in)) > best && 1 + clique_cover_ub(ctx, in) > best)
    best = std::max(best, 1 + solve_alpha(ctx, in, best - 1));
  return best;
}

/// Exact alpha of the induced subgraph when it exceeds floor_val; any value
/// <= floor_val otherwise.
int solve_alpha(Ctx& ctx, VSet cand, int floor_val) {
  static const bool kNoComp = std::getenv("EXP_NOCOMP") != nullptr;
  ctx.tick();
  const int base = simplify(ctx, cand, nullptr);
  if (is_empty(ctx, cand)) return base;
  if (kNoComp) return base + solve_component(ctx, cand, floor_val - base);
  VSet comp = component_of(ctx, cand, find_first(ctx, cand));
  if (equal(ctx, comp, cand)) return base + solve_component(ctx, comp, floor_val - base);
  int total = base;
  VSet rest = cand;
  while (!is_empty(ctx, rest)) {
    comp = component_of(ctx, rest, find_first(ctx, rest));
    total += solve_component(ctx, comp, -1);
    for (std::size_t i = 0; i < ctx.words; ++i) rest.w[i] &= ~comp.w[i];
  }
  return total;
}

bool find_witness(Ctx& ctx, VSet cand, int need, std::vector<std::uint32_t>& out);

bool witness_component(Ctx& ctx, const VSet& comp, int need,
                       std::vector<std::uint32_t>& out) {
  if (need <= 0) return true;
  std::uint32_t v = UINT32_MAX;
  const int maxdeg = max_residual_degree(ctx, comp, &v);
  if (maxdeg <= 2) {
    std::vector<std::uint32_t> w;
    if (alpha_deg2(ctx, comp, &w) < need) return false;
    out.insert(out.end(), w.begin(), w.begin() + need);
    return true;
  }
  if (two_color(ctx, comp)) {
    const HkResult hk = hopcroft_karp(ctx, comp);
    auto is = konig_independent_set(hk, ctx, comp);
    if (static_cast<int>(is.size()) < need) return false;
    out.insert(out.end(), is.begin(), is.begin() + need);
    return true;
  }
  if (clique_cover_ub(ctx, comp) < need) return false;

  // Include-first descent: with the exact target known this usually walks
  // straight to a witness.
  VSet in = comp;
  subtract_row(ctx, in, ctx.row(v));
  remove_vertex(in, v);
  out.push_back(v);
  if (find_witness(ctx, in, need - 1, out)) return true;
  out.pop_back();
  VSet ex = comp;
  remove_vertex(ex, v);
  return find_witness(ctx, ex, need, out);
}

bool find_witness(Ctx& ctx, VSet cand, int need, std::vector<std::uint32_t>& out) {
  if (need <= 0) return true;
  ctx.tick();
  const std::size_t mark = out.size();
  simplify(ctx, cand, &out);
  const int got = static_cast<int>(out.size() - mark);
  if (got >= need) {
    out.resize(mark + static_cast<std::size_t>(need));
    return true;
  }
  need -= got;
  if (is_empty(ctx, cand)) {
    out.resize(mark);
    return false;
  }
  std::vector<VSet> comps;
  {
    VSet rest = cand;
    while (!is_empty(ctx, rest)) {
      VSet comp = component_of(ctx, rest, find_first(ctx, rest));
      for (std::size_t i = 0; i < ctx.words; ++i) rest.w[i] &= ~comp.w[i];
      comps.push_back(comp);
    }
  }
  if (comps.size() == 1) {
    if (witness_component(ctx, comps[0], need, out)) return true;
    out.resize(mark);
    return false;
  }
  for (const VSet& comp : comps) {
    if (need == 0) break;
    const int ac = std::min(need, solve_alpha(ctx, comp, -1));
    if (ac > 0) {
      if (!witness_component(ctx, comp, ac, out)) {
        out.resize(mark);
        return false;
      }
      need -= ac;
    }
  }
  if (need == 0) return true;
  out.resize(mark);
  return false;
}

int resolve_threads(const SolveOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Ctx make_ctx(const DiameterGraph& g, const SolveOptions& opts, std::atomic<bool>* abort) {
  Ctx ctx;
  ctx.g = &g;
  ctx.nv = g.order();
  ctx.words = g.words;
  ctx.abort = abort;
  ctx.deg.assign(ctx.nv, 0);
  ctx.color.assign(ctx.nv, -1);
  ctx.queue.reserve(ctx.nv);
  if (opts.time_limit_s > 0) {
    ctx.use_deadline = true;
    ctx.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(opts.time_limit_s));
  }
  return ctx;
}

VSet full_set(const DiameterGraph& g) {
  VSet s;
  for (std::size_t v = 0; v < g.order(); ++v) bits::set_bit(s.w.data(), v);
  return s;
}

/// Deterministic split of the solution space by smallest chosen vertex:
/// alpha = max over v of 1 + alpha({u > v} minus N[v]). The shared floor
/// only prunes subtrees that cannot exceed it, so the maximum is exact
/// regardless of scheduling.
int parallel_alpha(const DiameterGraph& g, const SolveOptions& opts, int threads,
                   int greedy_lb, std::uint64_t& nodes, std::atomic<bool>& abort,
                   bool& timed_out) {
  const std::size_t nv = g.order();
  std::atomic<int> floor_val{greedy_lb};
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total_nodes{0};
  std::atomic<bool> saw_timeout{false};
  const VSet full = full_set(g);

  auto worker = [&]() {
    Ctx ctx = make_ctx(g, opts, &abort);
    try {
      while (true) {
        const std::size_t v = next.fetch_add(1, std::memory_order_relaxed);
        if (v >= nv) break;
        VSet sub = full;
        clear_through(sub, v);
        subtract_row(ctx, sub, g.adj.data() + v * g.words);
        const int snapshot = floor_val.load(std::memory_order_relaxed);
        const int a = 1 + solve_alpha(ctx, sub, snapshot - 1);
        int cur = floor_val.load(std::memory_order_relaxed);
        while (a > cur && !floor_val.compare_exchange_weak(cur, a)) {
        }
      }
    } catch (const TimeoutInterrupt&) {
      saw_timeout.store(true, std::memory_order_relaxed);
    }
    total_nodes.fetch_add(ctx.nodes, std::memory_order_relaxed);
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  nodes += total_nodes.load();
  timed_out = saw_timeout.load();
  return floor_val.load();
}

bool graph_is_triangle_free(const DiameterGraph& g) {
  for (std::uint32_t u = 0; u < g.order(); ++u) {
    const std::uint64_t* ru = g.row(u);
    bool bad = false;
    bits::for_each_bit(ru, g.words, [&](std::size_t v) {
      if (bad || v <= u) return;
      const std::uint64_t* rv = g.row(static_cast<std::uint32_t>(v));
      for (std::size_t i = 0; i < g.words; ++i)
        if (ru[i] & rv[i]) {
          bad = true;
          return;
        }
    });
    if (bad) return false;
  }
  return true;
}

struct EnumShared {
  int prune_mult = 3;  // cover of a residual is >= |V|/2 when triangle-free
  std::uint64_t limit = 0;
  std::atomic<std::uint64_t> produced{0};
};

void enumerate_rec(Ctx& ctx, EnumShared& sh, const VSet& cand, int need,
                   std::vector<std::uint32_t>& chosen,
                   std::vector<std::vector<std::uint32_t>>& out) {
  ctx.tick();
  if (need == 0) {
    if (sh.produced.fetch_add(1, std::memory_order_relaxed) + 1 > sh.limit)
      throw LimitError("enumeration exceeds limit of " + std::to_string(sh.limit));
    out.push_back(chosen);
    return;
  }
  const auto cnt = static_cast<int>(vcount(ctx, cand));
  if (cnt < need) return;
  if (cnt < sh.prune_mult * need && clique_cover_ub(ctx, cand) < need) return;

  int remaining = cnt;
  VSet sub;
  bool stop = false;
  for_each_vertex(ctx, cand, [&](std::size_t v64) {
    if (stop) return;
    if (remaining < need) {
      stop = true;
      return;
    }
    const auto v = static_cast<std::uint32_t>(v64);
    // v is committed as the smallest vertex of every set in this subtree.
    const std::uint64_t* rv = ctx.row(v);
    for (std::size_t i = 0; i < ctx.words; ++i) sub.w[i] = cand.w[i] & ~rv[i];
    clear_through(sub, v);
    chosen.push_back(v);
    enumerate_rec(ctx, sh, sub, need - 1, chosen, out);
    chosen.pop_back();
    --remaining;
  });
}

}  // namespace

bool is_independent(const DiameterGraph& g, std::span<const std::uint32_t> set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (g.has_edge(set[i], set[j])) return false;
  return true;
}

Matching max_matching(const BipartiteView& view) {
  const std::size_t L = view.left.size(), R = view.right.size();
  std::vector<std::int32_t> left_of(view.graph ? view.graph->order() : 0, -1);
  std::vector<std::int32_t> right_of(view.graph ? view.graph->order() : 0, -1);
  for (std::size_t i = 0; i < L; ++i) left_of[view.left[i]] = static_cast<std::int32_t>(i);
  for (std::size_t j = 0; j < R; ++j) right_of[view.right[j]] = static_cast<std::int32_t>(j);
  std::vector<std::vector<std::int32_t>> adj(L);
  for (const auto& [u, v] : view.edges) adj[left_of[u]].push_back(right_of[v]);
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<std::int32_t> ml(L, -1), mr(R, -1);
  constexpr std::int32_t kInf = INT32_MAX;
  std::vector<std::int32_t> dist(L);
  std::vector<std::size_t> queue;
  auto bfs = [&]() {
    queue.clear();
    bool found = false;
    for (std::size_t i = 0; i < L; ++i) {
      dist[i] = ml[i] < 0 ? 0 : kInf;
      if (ml[i] < 0) queue.push_back(i);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t i = queue[qi];
      for (std::int32_t j : adj[i]) {
        const std::int32_t nxt = mr[j];
        if (nxt < 0)
          found = true;
        else if (dist[nxt] == kInf) {
          dist[nxt] = dist[i] + 1;
          queue.push_back(static_cast<std::size_t>(nxt));
        }
      }
    }
    return found;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) {
    for (std::int32_t j : adj[i]) {
      const std::int32_t nxt = mr[j];
      if (nxt < 0 || (dist[nxt] == dist[i] + 1 && dfs(static_cast<std::size_t>(nxt)))) {
        ml[i] = j;
        mr[j] = static_cast<std::int32_t>(i);
        return true;
      }
    }
    dist[i] = kInf;
    return false;
  };
  while (bfs())
    for (std::size_t i = 0; i < L; ++i)
      if (ml[i] < 0) dfs(i);

  Matching m;
  for (std::size_t i = 0; i < L; ++i)
    if (ml[i] >= 0) m.pairs.emplace_back(view.left[i], view.right[ml[i]]);
  return m;
}

int matching_bound(const DiameterGraph& g, const BipartiteView& view) {
  if (view.left.size() + view.right.size() != g.order())
    throw std::invalid_argument("matching_bound: view must cover all vertices");
  std::vector<char> seen(g.order(), 0);
  for (std::uint32_t v : view.left) seen[v] = 1;
  for (std::uint32_t v : view.right) seen[v] = 1;
  for (char c : seen)
    if (!c) throw std::invalid_argument("matching_bound: view must cover all vertices");
  const Matching m = max_matching(view);
  return static_cast<int>(g.order() - m.size());
}

Propagation propagate_matching(const DiameterGraph& g, const Matching& m,
                               std::span<const std::uint32_t> seed) {
  if (!is_independent(g, seed))
    throw std::invalid_argument("propagate_matching: seed set is not independent");
  std::vector<std::int32_t> partner(g.order(), -1);
  for (const auto& [a, b] : m.pairs) {
    partner[a] = static_cast<std::int32_t>(b);
    partner[b] = static_cast<std::int32_t>(a);
  }
  Propagation res;
  std::vector<char> in_forced(g.order(), 0), in_excluded(g.order(), 0);
  std::vector<std::uint32_t> excl_reason(g.order(), 0);
  std::vector<std::uint32_t> queue(seed.begin(), seed.end());
  for (std::uint32_t z : seed) in_forced[z] = 1;
  for (std::size_t qi = 0; qi < queue.size() && !res.contradiction; ++qi) {
    const std::uint32_t z = queue[qi];
    for (std::uint32_t y : g.neighbors(z)) {
      if (in_forced[y]) {  // a forced vertex turned out adjacent to the closure
        res.contradiction = true;
        res.conflict = {z, y};
        break;
      }
      if (!in_excluded[y]) {
        in_excluded[y] = 1;
        excl_reason[y] = z;
      }
      const std::int32_t x = partner[y];
      if (x >= 0 && !in_forced[x]) {
        if (in_excluded[x]) {  // partner is forced in but already excluded
          res.contradiction = true;
          res.conflict = {static_cast<std::uint32_t>(x), excl_reason[x]};
          break;
        }
        in_forced[x] = 1;
        queue.push_back(static_cast<std::uint32_t>(x));
      }
    }
  }
  for (std::uint32_t v = 0; v < g.order(); ++v) {
    if (in_forced[v]) res.forced.push_back(v);
    if (in_excluded[v]) res.excluded.push_back(v);
  }
  return res;
}

MisResult independence_number(const DiameterGraph& g, const SolveOptions& opts) {
  if (g.order() > opts.vertex_limit || g.order() > kMaxWords * 64)
    throw std::invalid_argument("independence_number: vertex count " +
                                std::to_string(g.order()) + " exceeds limit " +
                                std::to_string(std::min<std::size_t>(opts.vertex_limit,
                                                                     kMaxWords * 64)));
  MisResult res;
  std::atomic<bool> abort{false};
  Ctx ctx = make_ctx(g, opts, &abort);
  const VSet full = full_set(g);
  const std::vector<std::uint32_t> greedy = greedy_independent(ctx, full);
  const int threads = resolve_threads(opts);

  int alpha = static_cast<int>(greedy.size());
  bool timed_out = false;
  if (threads <= 1) {
    try {
      alpha = solve_alpha(ctx, full, alpha - 1);
    } catch (const TimeoutInterrupt&) {
      timed_out = true;
    }
    res.nodes = ctx.nodes;
  } else {
    alpha = std::max(alpha, parallel_alpha(g, opts, threads, alpha, res.nodes, abort,
                                           timed_out));
  }

  if (timed_out) {
    res.timed_out = true;
    res.alpha = static_cast<int>(greedy.size());
    res.lower_bound = res.alpha;
    Ctx ub_ctx = make_ctx(g, SolveOptions{.time_limit_s = 0}, nullptr);
    res.upper_bound = clique_cover_ub(ub_ctx, full);
    res.witness = greedy;
    return res;
  }

  res.alpha = alpha;
  res.lower_bound = res.upper_bound = alpha;
  if (static_cast<int>(greedy.size()) == alpha) {
    res.witness = greedy;
  } else {
    // Deterministic witness pass, identical for every thread count.
    Ctx wctx = make_ctx(g, opts, &abort);
    std::vector<std::uint32_t> w;
    try {
      if (!find_witness(wctx, full, alpha, w))
        throw std::logic_error("witness extraction failed after exact solve");
    } catch (const TimeoutInterrupt&) {
      res.timed_out = true;  // alpha is exact; only the witness pass timed out
      res.witness = greedy;
      res.nodes += wctx.nodes;
      return res;
    }
    std::sort(w.begin(), w.end());
    res.witness = std::move(w);
    res.nodes += wctx.nodes;
  }
  if (!is_independent(g, res.witness) ||
      static_cast<int>(res.witness.size()) != res.alpha)
    throw std::logic_error("internal: witness failed re-verification");
  return res;
}

std::vector<std::vector<std::uint32_t>> enumerate_size(const DiameterGraph& g, int s,
                                                       const SolveOptions& opts) {
  if (g.order() > opts.vertex_limit || g.order() > kMaxWords * 64)
    throw std::invalid_argument("enumerate_size: vertex count exceeds limit");
  if (s < 0) throw std::invalid_argument("enumerate_size: negative size");
  if (s == 0) return {{}};

  EnumShared sh;
  sh.prune_mult = graph_is_triangle_free(g) ? 2 : 3;
  sh.limit = opts.enum_limit;
  const VSet full = full_set(g);
  const int threads = resolve_threads(opts);

  std::atomic<bool> abort{false};
  if (threads <= 1) {
    Ctx ctx = make_ctx(g, opts, &abort);
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> chosen;
    try {
      enumerate_rec(ctx, sh, full, s, chosen, out);
    } catch (const TimeoutInterrupt&) {
      throw TimeoutError("enumeration timed out");
    }
    return out;
  }

  // Split by the smallest chosen vertex; in-order merge preserves the
  // global DFS (lexicographic) order, so output is thread-count invariant.
  const std::size_t nv = g.order();
  std::vector<std::vector<std::vector<std::uint32_t>>> buckets(nv);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<bool> any_timeout{false};
  auto worker = [&]() {
    Ctx ctx = make_ctx(g, opts, &abort);
    try {
      while (true) {
        const std::size_t v = next.fetch_add(1);
        if (v >= nv) break;
        VSet sub = full;
        const std::uint64_t* rv = g.adj.data() + v * g.words;
        for (std::size_t i = 0; i < g.words; ++i) sub.w[i] &= ~rv[i];
        clear_through(sub, v);
        std::vector<std::uint32_t> chosen{static_cast<std::uint32_t>(v)};
        enumerate_rec(ctx, sh, sub, s - 1, chosen, buckets[v]);
      }
    } catch (const TimeoutInterrupt&) {
      any_timeout.store(true);
      abort.store(true);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      abort.store(true);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  if (any_timeout.load()) throw TimeoutError("enumeration timed out");

  std::vector<std::vector<std::uint32_t>> out;
  for (auto& b : buckets)
    for (auto& setv : b) out.push_back(std::move(setv));
  return out;
}

MisResult enumerate_maximum(const DiameterGraph& g, const SolveOptions& opts) {
  MisResult res = independence_number(g, opts);
  if (res.timed_out) return res;
  try {
    res.enumerated = enumerate_size(g, res.alpha, opts);
  } catch (const TimeoutError&) {
    res.timed_out = true;
    return res;
  }
  for (const auto& setv : *res.enumerated)
    if (!is_independent(g, setv)) throw std::logic_error("internal: non-independent result");
  return res;
}

}  // namespace diamfree
