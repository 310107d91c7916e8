#include "diamfree/families.hpp"

#include <algorithm>

#include "json.hpp"

namespace diamfree {

namespace {

/// Builds a vector of length n from 1-based position lists.
TritVector from_positions(int n, std::initializer_list<int> minus,
                          std::initializer_list<int> plus) {
  TritVector v;
  v.n = static_cast<std::uint8_t>(n);
  for (int p : minus) v.neg |= std::uint64_t{1} << (p - 1);
  for (int p : plus) v.pos |= std::uint64_t{1} << (p - 1);
  return v;
}

TritVector prepend_zero(const TritVector& x) {
  TritVector v;
  v.n = static_cast<std::uint8_t>(x.n + 1);
  v.neg = x.neg << 1;
  v.pos = x.pos << 1;
  return v;
}

void sort_members(std::vector<TritVector>& members) {
  std::sort(members.begin(), members.end(), lex_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

Signature sig_1k2(int k) { return Signature{1, k, 2}; }

void check_stu_range(int k, int i, int lo) {
  if (k < 1) throw std::out_of_range("k must be >= 1");
  if (i < lo || i > k + 2)
    throw std::out_of_range("index " + std::to_string(i) + " out of range [" +
                            std::to_string(lo) + ", " + std::to_string(k + 2) + "]");
}

}  // namespace

bool Family::contains(const TritVector& v) const {
  return std::binary_search(members.begin(), members.end(), v, lex_less);
}

Family make_family(Signature sig, std::string name, std::vector<TritVector> members,
                   std::string construction) {
  for (const TritVector& v : members)
    if (signature_of(v) != sig)
      throw std::invalid_argument("family \"" + name + "\": member " +
                                  to_trit_string(v) + " does not belong to the signature");
  sort_members(members);
  return Family{sig, std::move(name), std::move(construction), std::move(members)};
}

std::uint64_t frak_M(int k) {
  if (k < 0) throw std::invalid_argument("frak_M: k must be >= 0");
  return binomial(k + 3, 3) + 2;
}

std::uint64_t frak_M_general(int m, int k, int l) {
  if (m < 1 || l < 1 || k < 0) throw std::invalid_argument("frak_M_general: bad parameters");
  return binomial(m + l - 1, m - 1) * binomial(k + m + l, m + l) + binomial(m + l - 1, m);
}

std::optional<ExactValue> M_exact(const Signature& sig) {
  if (!sig.valid()) return std::nullopt;
  const int a = std::min(sig.m, sig.l), b = std::max(sig.m, sig.l), k = sig.k;
  const int n = sig.n();
  if (sig.m == sig.l) {
    const std::uint64_t v = binomial(n, sig.m) * binomial(k + sig.m, sig.m) / 2;
    return ExactValue{v, "antipodal-pair bound (m = l)"};
  }
  if (a + k <= b) {
    const std::uint64_t v = binomial(n - 1, a + k - 1) * binomial(a + k, a);
    return ExactValue{v, "intersecting-support bound (min(m,l)+k <= max(m,l))"};
  }
  if (a == 1 && b == 2 && k >= 1)
    return ExactValue{frak_M(k), "L_{1,k,2} series C(k+3,3)+2"};
  return std::nullopt;
}

Family S_set(int k, int i) {
  check_stu_range(k, i, 1);
  const int n = k + 3;
  std::vector<TritVector> members;
  for (int p = i + 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      members.push_back(from_positions(n, {i}, {p, q}));
  return make_family(sig_1k2(k), "S_" + std::to_string(k) + "(" + std::to_string(i) + ")",
                     std::move(members), "zeros, -1 at " + std::to_string(i) + ", +1 after");
}

Family T_set(int k, int i) {
  check_stu_range(k, i, 1);
  const int n = k + 3;
  std::vector<TritVector> members;
  for (int p = i + 1; p <= n; ++p)
    for (int q = i + 1; q <= n; ++q)
      if (p != q) members.push_back(from_positions(n, {p}, {i, q}));
  return make_family(sig_1k2(k), "T_" + std::to_string(k) + "(" + std::to_string(i) + ")",
                     std::move(members), "zeros, +1 at " + std::to_string(i) + ", -1/+1 after");
}

Family U_set(int k, int i) {
  check_stu_range(k, i, 2);
  const int n = k + 3;
  std::vector<TritVector> members;
  for (int l = 2; l <= i; ++l)
    for (int j = l + 1; j <= n; ++j)
      members.push_back(from_positions(n, {l}, {1, j}));
  return make_family(sig_1k2(k), "U_" + std::to_string(k) + "(" + std::to_string(i) + ")",
                     std::move(members), "+1 first, -1 within 2.." + std::to_string(i));
}

namespace {

Family xyz_direct(int k, char which) {
  const int n = k + 3;
  (void)n;
  std::vector<TritVector> members;
  auto absorb = [&](const Family& f) {
    members.insert(members.end(), f.members.begin(), f.members.end());
  };
  switch (which) {
    case 'X':
      absorb(T_set(k, k + 1));
      for (int i = 1; i <= k + 1; ++i) absorb(S_set(k, i));
      break;
    case 'Y':
      if (k == 1) {
        absorb(T_set(1, 1));
      } else {
        absorb(T_set(k, k));
        for (int i = 1; i <= k - 1; ++i) absorb(S_set(k, i));
      }
      break;
    case 'Z':
      if (k == 2) {
        absorb(T_set(2, 1));
      } else {
        absorb(T_set(k, k - 1));
        for (int i = 1; i <= k - 2; ++i) absorb(S_set(k, i));
      }
      break;
  }
  return make_family(sig_1k2(k), std::string(1, which) + "_" + std::to_string(k),
                     std::move(members), "direct union");
}

Family xyz_family(int k, char which, int base_k) {
  if (k < base_k) throw std::out_of_range("family index k out of range");
  Family direct = xyz_direct(k, which);
  if (k > base_k) {
    // Prepend-zero recursion; both routes must agree.
    Family prev = xyz_family(k - 1, which, base_k);
    std::vector<TritVector> members;
    members.reserve(direct.size());
    for (const TritVector& x : prev.members) members.push_back(prepend_zero(x));
    const Family s1 = S_set(k, 1);
    members.insert(members.end(), s1.members.begin(), s1.members.end());
    Family rec = make_family(direct.sig, direct.name, std::move(members), "recursive");
    if (rec.members != direct.members)
      throw std::logic_error("family " + direct.name +
                             ": direct and recursive constructions disagree");
  }
  return direct;
}

}  // namespace

Family X_family(int k) { return xyz_family(k, 'X', 1); }
Family Y_family(int k) { return xyz_family(k, 'Y', 1); }
Family Z_family(int k) { return xyz_family(k, 'Z', 2); }

Family V2_family() {
  Family x2 = X_family(2);
  std::vector<TritVector> members;
  for (const TritVector& v : X_family(1).members) members.push_back(prepend_zero(v));
  for (const char* s : {"-00++", "-0+0+", "-0++0", "-++00", "+-+00"})
    members.push_back(parse_trits(s));
  return make_family(x2.sig, "V_2", std::move(members), "X_2' plus five vectors");
}

Family W2_family() {
  std::vector<TritVector> members;
  for (const TritVector& v : Y_family(1).members) members.push_back(prepend_zero(v));
  for (const char* s : {"-++00", "-+0+0", "-+00+", "-00++", "++-00"})
    members.push_back(parse_trits(s));
  return make_family(sig_1k2(2), "W_2", std::move(members), "Y_2' plus five vectors");
}

Family recursive_family(int m, int k, int l) {
  if (m < 1 || l < 1 || m >= l || k < l - m)
    throw std::invalid_argument("recursive_family: requires 1 <= m < l and k >= l - m");
  const int k0 = l - m;
  // Star seed at k = l - m: everything whose first coordinate is -1 or 0.
  std::vector<TritVector> cur;
  for (const TritVector& v : generate(Signature{m, k0, l}))
    if (v.entry(0) != 1) cur.push_back(v);
  for (int kk = k0 + 1; kk <= k; ++kk) {
    std::vector<TritVector> next;
    for (const TritVector& v : cur) next.push_back(prepend_zero(v));
    for (const TritVector& v : generate(Signature{m, kk, l}))
      if (v.entry(0) == -1) next.push_back(v);
    cur = std::move(next);
  }
  Family f = make_family(Signature{m, k, l},
                         "R_" + std::to_string(m) + "," + std::to_string(k) + "," +
                             std::to_string(l),
                         std::move(cur), "star seed + prepend-zero recursion");
  // Construction check: the family avoids the lattice diameter and is at
  // least as large as the closed-form lower bound. With l - m >= 2 the
  // star seed strictly beats the closed form, whose value tracks the
  // first-nonzero-is-minus family instead.
  const int diam = lattice_diameter_sq(f.sig);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (squared_distance(f.members[i], f.members[j]) >= diam)
        throw std::logic_error("recursive_family: construction spans the diameter");
  if (f.size() < frak_M_general(m, k, l))
    throw std::logic_error("recursive_family: smaller than the closed-form bound");
  return f;
}

Family y_case_extra(int k) {
  if (k < 2) throw std::out_of_range("y_case_extra: k must be >= 2");
  const int n = k + 3;
  std::vector<TritVector> members;
  for (int j = k + 1; j <= n; ++j) members.push_back(from_positions(n, {j}, {1, k}));
  return make_family(sig_1k2(k), "Y-extra(" + std::to_string(k) + ")", std::move(members));
}

Family z_case_extra(int k) {
  if (k < 3) throw std::out_of_range("z_case_extra: k must be >= 3");
  const int n = k + 3;
  std::vector<TritVector> members;
  for (int j = k; j <= n; ++j) members.push_back(from_positions(n, {j}, {1, k - 1}));
  return make_family(sig_1k2(k), "Z-extra(" + std::to_string(k) + ")", std::move(members));
}

namespace {

TritVector s1_vec(int n, int p, int q) { return from_positions(n, {1}, {p, q}); }

/// Shared shape of the three case matchings: pairs between S_k(1) vectors
/// carrying a +1 at position i <= cap and shifted right-side partners.
void add_shift_pairs(CaseMatching& cm, int k, int cap) {
  const int n = k + 3;
  for (int i = 2; i <= cap; ++i) {
    for (int j = i + 1; j <= n - 1; ++j)
      cm.pairs.emplace_back(s1_vec(n, i, j), from_positions(n, {i}, {1, j + 1}));
    cm.pairs.emplace_back(s1_vec(n, i, n), from_positions(n, {i}, {1, i + 1}));
  }
}

}  // namespace

CaseMatching x_case_matching(int k) {
  if (k < 2) throw std::out_of_range("x_case_matching: k must be >= 2");
  const int n = k + 3;
  CaseMatching cm;
  cm.k = k;
  cm.label = "X";
  cm.left = S_set(k, 1).members;
  cm.right = U_set(k, k).members;
  add_shift_pairs(cm, k, k);
  for (int p = n - 2; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      cm.expected_isolated.push_back(s1_vec(n, p, q));
  return cm;
}

CaseMatching y_case_matching(int k) {
  if (k < 2) throw std::out_of_range("y_case_matching: k must be >= 2");
  const int n = k + 3;
  CaseMatching cm;
  cm.k = k;
  cm.label = "Y";
  cm.left = S_set(k, 1).members;
  if (k >= 3) cm.right = U_set(k, k - 1).members;
  const Family extra = y_case_extra(k);
  cm.right.insert(cm.right.end(), extra.members.begin(), extra.members.end());
  add_shift_pairs(cm, k, k - 1);
  cm.pairs.emplace_back(s1_vec(n, k + 1, k + 2), from_positions(n, {k + 1}, {1, k}));
  cm.pairs.emplace_back(s1_vec(n, k + 2, k + 3), from_positions(n, {k + 2}, {1, k}));
  cm.pairs.emplace_back(s1_vec(n, k + 1, k + 3), from_positions(n, {k + 3}, {1, k}));
  for (int t = k + 1; t <= n; ++t) cm.expected_isolated.push_back(s1_vec(n, k, t));
  return cm;
}

CaseMatching z_case_matching(int k) {
  if (k < 3) throw std::out_of_range("z_case_matching: k must be >= 3");
  const int n = k + 3;
  CaseMatching cm;
  cm.k = k;
  cm.label = "Z";
  cm.left = S_set(k, 1).members;
  if (k >= 4) cm.right = U_set(k, k - 2).members;
  const Family extra = z_case_extra(k);
  cm.right.insert(cm.right.end(), extra.members.begin(), extra.members.end());
  add_shift_pairs(cm, k, k - 2);
  cm.pairs.emplace_back(s1_vec(n, k, k + 1), from_positions(n, {k}, {1, k - 1}));
  cm.pairs.emplace_back(s1_vec(n, k + 1, k + 2), from_positions(n, {k + 1}, {1, k - 1}));
  cm.pairs.emplace_back(s1_vec(n, k + 2, k + 3), from_positions(n, {k + 2}, {1, k - 1}));
  cm.pairs.emplace_back(s1_vec(n, k, k + 3), from_positions(n, {k + 3}, {1, k - 1}));
  for (int t = k; t <= n; ++t) cm.expected_isolated.push_back(s1_vec(n, k - 1, t));
  cm.expected_unmatched.push_back(s1_vec(n, k, k + 2));
  cm.expected_unmatched.push_back(s1_vec(n, k + 1, k + 3));
  return cm;
}

BoundTable bound_table(int max_n) {
  BoundTable table;
  for (int n = 1; n <= max_n; ++n)
    for (int m = 0; m <= n; ++m)
      for (int k = 0; m + k <= n; ++k) {
        const Signature sig{m, k, n - m - k};
        if (auto exact = M_exact(sig)) {
          table[sig] = BoundEntry{exact->value, true, exact->source};
        } else {
          const int a = std::min(sig.m, sig.l), b = std::max(sig.m, sig.l);
          if (a >= 1 && a < b && k >= b - a) {
            table[sig] = BoundEntry{
                frak_M_general(a, k, b), false,
                "recursive-construction lower bound; exact value open for k in [" +
                    std::to_string(b - a + 1) + ", " +
                    std::to_string(b * binomial(a + b, a) - a - b) + "]"};
          }
        }
      }
  return table;
}

std::string family_to_json(const Family& f) {
  nlohmann::json j;
  j["signature"] = {f.sig.m, f.sig.k, f.sig.l};
  j["name"] = f.name;
  if (!f.construction.empty()) j["construction"] = f.construction;
  std::vector<std::string> members;
  members.reserve(f.size());
  for (const TritVector& v : f.members) members.push_back(to_trit_string(v));
  j["members"] = members;
  return j.dump(2) + "\n";
}

Family family_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const auto sig_arr = j.at("signature");
  if (!sig_arr.is_array() || sig_arr.size() != 3)
    throw std::invalid_argument("family JSON: signature must be [m, k, l]");
  Signature sig{sig_arr[0].get<int>(), sig_arr[1].get<int>(), sig_arr[2].get<int>()};
  std::vector<TritVector> members;
  for (const auto& s : j.at("members")) members.push_back(parse_trits(s.get<std::string>()));
  return make_family(sig, j.value("name", std::string{}), std::move(members),
                     j.value("construction", std::string{}));
}

}  // namespace diamfree
