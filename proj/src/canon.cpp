#include "diamfree/canon.hpp"

#include <algorithm>
#include <numeric>

namespace diamfree {

namespace {

std::vector<std::string> member_rows(const Family& f) {
  std::vector<std::string> rows;
  rows.reserve(f.size());
  for (const TritVector& v : f.members) rows.push_back(to_trit_string(v));
  return rows;
}

std::string join_sorted(std::vector<std::string> rows) {
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += '\n';
    out += rows[i];
  }
  return out;
}

std::string encode_with(const std::vector<std::string>& rows, std::span<const int> perm) {
  std::vector<std::string> permuted(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string& s = permuted[r];
    s.resize(perm.size());
    for (std::size_t t = 0; t < perm.size(); ++t) s[t] = rows[r][perm[t]];
  }
  return join_sorted(std::move(permuted));
}

struct CanonSearch {
  const std::vector<std::string>& rows;  // original member strings
  int n;
  int nmembers;
  std::vector<int> col_group;       // identical raw columns share a group id
  std::vector<int> current;         // chosen source column per depth
  std::vector<char> used;
  std::vector<std::string> prefix;  // per member, the chosen-column prefix
  std::vector<std::string> best_rows;
  std::vector<int> best_perm;
  bool have_best = false;

  explicit CanonSearch(const std::vector<std::string>& rows_, int n_)
      : rows(rows_), n(n_), nmembers(static_cast<int>(rows_.size())) {
    used.assign(n, 0);
    prefix.assign(nmembers, std::string{});
    // Raw-identical columns are fully interchangeable; keep one per group
    // at each depth.
    std::vector<std::string> cols(n);
    for (int c = 0; c < n; ++c) {
      cols[c].resize(nmembers);
      for (int r = 0; r < nmembers; ++r) cols[c][r] = rows[r][c];
    }
    col_group.assign(n, 0);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cols[a] < cols[b]; });
    int gid = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && cols[order[i]] != cols[order[i - 1]]) ++gid;
      col_group[order[i]] = gid;
    }
  }

  /// Best completion of member r once column `col` is appended: the suffix
  /// of any completion is a permutation of the member's entries on unused
  /// columns, so prefix + sorted(remaining) bounds every completion from
  /// below. Note '+' < '-' < '0' in byte order.
  std::string member_key(int r, int col) const {
    std::string key = prefix[static_cast<std::size_t>(r)];
    key += rows[r][col];
    int plus = 0, minus = 0, zero = 0;
    for (int c = 0; c < n; ++c) {
      if (used[c] || c == col) continue;
      switch (rows[r][c]) {
        case '+': ++plus; break;
        case '-': ++minus; break;
        default: ++zero; break;
      }
    }
    key.append(static_cast<std::size_t>(plus), '+');
    key.append(static_cast<std::size_t>(minus), '-');
    key.append(static_cast<std::size_t>(zero), '0');
    return key;
  }

  /// Rank-wise lower bound on any completion's encoding: pointwise
  /// domination (actual row >= its key) survives sorting, so comparing the
  /// sorted keys against the incumbent rows is sound. Returns +1 when no
  /// completion can beat the incumbent, 0 when at best it ties.
  int compare_with_best(const std::vector<std::string>& sorted_keys) const {
    if (!have_best) return -1;
    for (int r = 0; r < nmembers; ++r) {
      const int c = sorted_keys[r].compare(best_rows[r]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
  }

  void descend(int depth, bool prune) {
    if (depth == n) {
      std::vector<std::string> permuted(nmembers);
      for (int r = 0; r < nmembers; ++r) permuted[r] = prefix[r];
      std::sort(permuted.begin(), permuted.end());
      if (!have_best || permuted < best_rows) {
        best_rows = std::move(permuted);
        best_perm = current;
        have_best = true;
      }
      return;
    }
    // Candidate columns, most promising bound first, one per raw group.
    struct Cand {
      int col;
      std::vector<std::string> sorted_keys;
    };
    std::vector<Cand> cands;
    std::vector<char> group_seen(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < n; ++c) {
      if (used[c] || group_seen[col_group[c]]) continue;
      group_seen[col_group[c]] = 1;
      std::vector<std::string> keys(static_cast<std::size_t>(nmembers));
      for (int r = 0; r < nmembers; ++r) keys[static_cast<std::size_t>(r)] = member_key(r, c);
      std::sort(keys.begin(), keys.end());
      cands.push_back(Cand{c, std::move(keys)});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.sorted_keys < b.sorted_keys; });
    for (const Cand& cand : cands) {
      if (prune && have_best && compare_with_best(cand.sorted_keys) >= 0) continue;
      used[cand.col] = 1;
      current.push_back(cand.col);
      std::vector<std::string> saved(prefix);
      for (int r = 0; r < nmembers; ++r) prefix[r] += rows[r][cand.col];
      descend(depth + 1, prune);
      prefix = std::move(saved);
      current.pop_back();
      used[cand.col] = 0;
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const Family& f, const CanonOptions& opts) {
  const int n = f.sig.n();
  if (n > 16) throw std::invalid_argument("canonical_form: n > 16 not supported");
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  if (f.members.empty()) return CanonicalForm{std::string{}, identity};

  const std::vector<std::string> rows = member_rows(f);
  if (!opts.use_pruning) {
    // Brute force over all permutations (oracle path).
    std::vector<int> perm = identity;
    std::string best;
    std::vector<int> best_perm = perm;
    bool first = true;
    do {
      std::string enc = encode_with(rows, perm);
      if (first || enc < best) {
        best = std::move(enc);
        best_perm = perm;
        first = false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return CanonicalForm{std::move(best), std::move(best_perm)};
  }

  CanonSearch search(rows, n);
  search.descend(0, true);
  std::string bytes;
  for (std::size_t r = 0; r < search.best_rows.size(); ++r) {
    if (r) bytes += '\n';
    bytes += search.best_rows[r];
  }
  return CanonicalForm{std::move(bytes), std::move(search.best_perm)};
}

Family permute_family(const Family& f, std::span<const int> perm) {
  const int n = f.sig.n();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_family: permutation length mismatch");
  std::vector<TritVector> members;
  members.reserve(f.size());
  for (const TritVector& v : f.members) {
    TritVector w;
    w.n = v.n;
    for (int t = 0; t < n; ++t) {
      const int e = v.entry(perm[t]);
      if (e < 0) w.neg |= std::uint64_t{1} << t;
      else if (e > 0) w.pos |= std::uint64_t{1} << t;
    }
    members.push_back(w);
  }
  return make_family(f.sig, f.name, std::move(members), f.construction);
}

IsoResult are_isomorphic(const Family& f, const Family& g) {
  if (f.sig != g.sig) throw std::invalid_argument("are_isomorphic: signature mismatch");
  if (f.size() != g.size()) return {};
  const CanonicalForm cf = canonical_form(f);
  const CanonicalForm cg = canonical_form(g);
  if (cf.bytes != cg.bytes) return {};
  // permute(F, pf) == permute(G, pg); so permute(F, pf o pg^{-1}) == G.
  const int n = f.sig.n();
  std::vector<int> pg_inv(n);
  for (int t = 0; t < n; ++t) pg_inv[cg.perm[t]] = t;
  std::vector<int> witness(n);
  for (int t = 0; t < n; ++t) witness[t] = cf.perm[pg_inv[t]];
  if (permute_family(f, witness).members != g.members)
    throw std::logic_error("are_isomorphic: witness failed verification");
  return IsoResult{true, std::move(witness)};
}

Classification classify(std::span<const Family> families) {
  Classification result;
  if (families.empty()) return result;
  const Signature sig = families.front().sig;
  for (const Family& f : families)
    if (f.sig != sig) throw std::invalid_argument("classify: signature mismatch");

  for (std::size_t i = 0; i < families.size(); ++i) {
    CanonicalForm form = canonical_form(families[i]);
    bool placed = false;
    for (FamilyClass& cls : result.classes) {
      if (cls.form.bytes == form.bytes) {
        cls.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) result.classes.push_back(FamilyClass{std::move(form), {i}, i});
  }
  auto own_encoding = [&](std::size_t i) { return join_sorted(member_rows(families[i])); };
  for (FamilyClass& cls : result.classes) {
    std::size_t best = cls.members.front();
    std::string best_enc = own_encoding(best);
    for (std::size_t idx : cls.members) {
      std::string enc = own_encoding(idx);
      if (enc < best_enc) {
        best = idx;
        best_enc = std::move(enc);
      }
    }
    cls.representative = best;
  }
  std::sort(result.classes.begin(), result.classes.end(),
            [](const FamilyClass& a, const FamilyClass& b) { return a.form < b.form; });
  return result;
}

namespace {

/// Counts permutations whose sorted-prefix sequence matches the family's
/// own row-sorted encoding at every depth (exactly the setwise stabilizer).
struct StabSearch {
  const std::vector<std::string>& rows;
  const std::vector<std::string>& target;  // own sorted rows
  int n, nmembers;
  std::vector<char> used;
  std::vector<std::string> prefix;
  std::uint64_t count = 0;

  StabSearch(const std::vector<std::string>& rows_, const std::vector<std::string>& target_,
             int n_)
      : rows(rows_), target(target_), n(n_), nmembers(static_cast<int>(rows_.size())) {
    used.assign(n, 0);
    prefix.assign(nmembers, std::string{});
  }

  void descend(int depth) {
    if (depth == n) {
      ++count;
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      std::vector<std::string> p(prefix);
      for (int r = 0; r < nmembers; ++r) p[r] += rows[r][c];
      std::sort(p.begin(), p.end());
      bool match = true;
      for (int r = 0; r < nmembers && match; ++r)
        if (p[r].compare(0, static_cast<std::size_t>(depth + 1), target[r], 0,
                         static_cast<std::size_t>(depth + 1)) != 0)
          match = false;
      if (!match) continue;
      used[c] = 1;
      std::vector<std::string> saved(prefix);
      for (int r = 0; r < nmembers; ++r) prefix[r] += rows[r][c];
      descend(depth + 1);
      prefix = std::move(saved);
      used[c] = 0;
    }
  }
};

}  // namespace

std::uint64_t stabilizer_order(const Family& f) {
  const int n = f.sig.n();
  if (n > 12) throw std::invalid_argument("stabilizer_order: n > 12 not supported");
  if (f.members.empty()) {
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
    return fact;
  }
  const std::vector<std::string> rows = member_rows(f);
  std::vector<std::string> target = rows;
  std::sort(target.begin(), target.end());
  StabSearch search(rows, target, n);
  search.descend(0);
  return search.count;
}

std::string cycle_notation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  // perm[t] = source column at target t; report cycles of source -> target.
  std::vector<int> to_target(n);
  for (int t = 0; t < n; ++t) to_target[perm[t]] = t;
  std::vector<char> seen(n, 0);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || to_target[i] == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = to_target[j];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace diamfree
