#include "asinv/invgen.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>

#include "asinv/errors.hpp"
#include "json.hpp"

namespace asinv {

// ------------------------------------------------------------ InvariantSet

void InvariantSet::add(RationalFn g, std::string tag) {
  for (const auto& h : generators)
    if (h == g) return;
  generators.push_back(std::move(g));
  provenance.push_back(std::move(tag));
}

std::vector<std::string> InvariantSet::rendered() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.to_string());
  return out;
}

std::vector<MultiPoly> InvariantSet::polynomials() const {
  std::vector<MultiPoly> out;
  for (const auto& g : generators) {
    if (!g.is_polynomial()) throw DomainError("generator is not a polynomial: " + g.to_string());
    out.push_back(g.num() * g.den().constant_term().inv());
  }
  return out;
}

void InvariantSet::flag(const std::string& f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

namespace {

std::int64_t weight_of(const Exponents& e, const std::vector<std::int64_t>& w) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<std::int64_t>(e[i]) * w[i];
  return s;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Weight of a polynomial, nullopt if its terms disagree.
std::optional<std::int64_t> poly_weight(const MultiPoly& f, const std::vector<std::int64_t>& w) {
  std::optional<std::int64_t> out;
  for (const auto& [e, c] : f.terms()) {
    const std::int64_t x = weight_of(e, w);
    if (out && *out != x) return std::nullopt;
    out = x;
  }
  return out;
}

// Every exponent vector with sum_i w_i k_i == W (all w_i > 0).
void for_weight(const std::vector<std::int64_t>& w, std::int64_t W, const std::function<void(const Exponents&)>& fn) {
  Exponents e(w.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == w.size()) {
      if (left % w[i] == 0) {
        e[i] = static_cast<std::uint32_t>(left / w[i]);
        fn(e);
      }
      e[i] = 0;
      return;
    }
    for (std::int64_t k = left / w[i]; k >= 0; --k) {
      e[i] = static_cast<std::uint32_t>(k);
      rec(i + 1, left - k * w[i]);
    }
    e[i] = 0;
  };
  if (w.empty()) {
    if (W == 0) fn(e);
    return;
  }
  rec(0, W);
}

bool divides_exp(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Sorts by weight, then grevlex (larger leading term first).
void sort_set(InvariantSet& S, const std::vector<std::int64_t>& w) {
  std::vector<std::size_t> idx(S.generators.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](std::size_t i) -> std::int64_t {
    const auto& g = S.generators[i];
    if (!g.is_polynomial() || g.is_zero()) return 0;
    return g.num().max_weight(w);
  };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    const std::int64_t a = key(i), b = key(j);
    if (a != b) return a < b;
    const auto& gi = S.generators[i];
    const auto& gj = S.generators[j];
    if (gi.is_polynomial() && gj.is_polynomial() && !gi.is_zero() && !gj.is_zero())
      return GrevlexGreater{}(gi.num().leading_exponents(), gj.num().leading_exponents());
    return false;
  });
  std::vector<RationalFn> g;
  std::vector<std::string> t;
  for (auto i : idx) {
    g.push_back(S.generators[i]);
    t.push_back(S.provenance[i]);
  }
  S.generators = std::move(g);
  S.provenance = std::move(t);
}

std::vector<std::int64_t> ones(std::size_t n) { return std::vector<std::int64_t>(n, 1); }

// Minimal generators from complete graded pieces (pieces[W] spans the
// invariants of weight W).  Returns (generator, weight) in weight order.
std::vector<std::pair<MultiPoly, std::int64_t>> minimal_from_pieces(
    const std::map<std::int64_t, std::vector<MultiPoly>>& pieces) {
  std::vector<std::pair<MultiPoly, std::int64_t>> gens;
  for (const auto& [W, basis] : pieces) {
    if (W <= 0) continue;
    Echelon E;
    for (const auto& [g, wg] : gens) {
      auto it = pieces.find(W - wg);
      if (it == pieces.end()) continue;
      for (const auto& v : it->second) E.insert(g * v);
    }
    for (const auto& v : basis)
      if (E.insert(v)) gens.emplace_back(v.monic(), W);
  }
  return gens;
}

// --------------------------------------------------------- dense kernels

struct Dense {
  const FieldCtx* F;
  std::size_t cols;
  std::vector<std::vector<std::uint32_t>> rows;
};

// Basis of {v : M v = 0}.
std::vector<std::vector<std::uint32_t>> kernel(Dense M) {
  const FieldCtx& F = *M.F;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols && r < M.rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < M.rows.size() && M.rows[piv][c] == 0) ++piv;
    if (piv == M.rows.size()) continue;
    std::swap(M.rows[piv], M.rows[r]);
    const std::uint32_t inv = F.inv(M.rows[r][c]);
    for (auto& x : M.rows[r]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < M.rows.size(); ++i) {
      if (i == r || M.rows[i][c] == 0) continue;
      const std::uint32_t f = M.rows[i][c];
      auto& row = M.rows[i];
      const auto& pr = M.rows[r];
      for (std::size_t j = c; j < M.cols; ++j)
        if (pr[j]) row[j] = F.sub(row[j], F.mul(f, pr[j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(M.cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t fcol = 0; fcol < M.cols; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<std::uint32_t> v(M.cols, 0);
    v[fcol] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = F.neg(M.rows[i][fcol]);
    out.push_back(std::move(v));
  }
  return out;
}

// ------------------------------------------------------- linear actions

struct LinearAction {
  const FieldCtx* F = nullptr;
  VarTable vars;
  std::vector<std::vector<std::vector<Fq>>> mats;  // distinct elements
  std::vector<std::vector<MultiPoly>> images;      // images[g][i] = g(x_i)
  bool monomial = true;
};

LinearAction make_linear(const ActionSet& A) {
  LinearAction L;
  L.F = A.ctx;
  L.vars = A.vars;
  std::set<std::vector<std::vector<std::uint32_t>>> seen;
  for (const auto& M : linear_matrices(A)) {
    std::vector<std::vector<std::uint32_t>> key;
    for (const auto& row : M) {
      std::vector<std::uint32_t> r;
      for (const auto& x : row) r.push_back(x.index());
      key.push_back(std::move(r));
    }
    if (!seen.insert(key).second) continue;
    std::vector<MultiPoly> img;
    for (std::size_t i = 0; i < M.size(); ++i) {
      MultiPoly f(*A.ctx, A.vars);
      int nz = 0;
      for (std::size_t j = 0; j < M[i].size(); ++j)
        if (!M[i][j].is_zero()) {
          f += MultiPoly::variable(*A.ctx, A.vars, j) * M[i][j];
          ++nz;
        }
      if (nz != 1) L.monomial = false;
      img.push_back(std::move(f));
    }
    L.mats.push_back(M);
    L.images.push_back(std::move(img));
  }
  return L;
}

class PowerCache {
 public:
  explicit PowerCache(const LinearAction& L) : L_(L), cache_(L.images.size()) {
    for (std::size_t g = 0; g < L.images.size(); ++g) cache_[g].resize(L.images[g].size());
  }
  const MultiPoly& pw(std::size_t g, std::size_t i, std::uint32_t e) {
    auto& v = cache_[g][i];
    if (v.empty()) v.push_back(MultiPoly::constant(*L_.F, L_.vars, 1));
    while (v.size() <= e) v.push_back(v.back() * L_.images[g][i]);
    return v[e];
  }
  MultiPoly apply(std::size_t g, const Exponents& e) {
    MultiPoly r = MultiPoly::constant(*L_.F, L_.vars, 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) r = r * pw(g, i, e[i]);
    return r;
  }

 private:
  const LinearAction& L_;
  std::vector<std::vector<std::vector<MultiPoly>>> cache_;
};

// Small generating subset of the group (by matrix closure).
std::vector<std::size_t> group_generators(const LinearAction& L) {
  const FieldCtx& F = *L.F;
  using Mat = std::vector<std::vector<std::uint32_t>>;
  auto key = [](const std::vector<std::vector<Fq>>& M) {
    Mat k;
    for (const auto& r : M) {
      std::vector<std::uint32_t> row;
      for (const auto& x : r) row.push_back(x.index());
      k.push_back(std::move(row));
    }
    return k;
  };
  auto mul = [&](const Mat& A, const Mat& B) {
    const std::size_t n = A.size();
    Mat C(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (A[i][k])
          for (std::size_t j = 0; j < n; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
    return C;
  };
  std::vector<std::size_t> gens;
  std::set<Mat> closure;
  for (std::size_t g = 0; g < L.mats.size(); ++g) {
    const Mat M = key(L.mats[g]);
    if (closure.count(M)) continue;
    gens.push_back(g);
    // recompute the closure of the chosen generators
    std::vector<Mat> gm;
    for (auto h : gens) gm.push_back(key(L.mats[h]));
    const std::size_t n = M.size();
    Mat I(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    closure = {I};
    std::vector<Mat> queue{I};
    while (!queue.empty()) {
      Mat X = std::move(queue.back());
      queue.pop_back();
      for (const auto& G : gm) {
        Mat Y = mul(X, G);
        if (closure.insert(Y).second) queue.push_back(std::move(Y));
      }
    }
    if (closure.size() >= L.mats.size()) break;
  }
  return gens;
}

}  // namespace

// ------------------------------------------------------------- diagonal

InvariantSet diagonal_generators(std::uint32_t p, const VarTable& vars, const std::vector<std::int64_t>& weights,
                                 std::int64_t m, std::int64_t bound, const Budget& budget) {
  if (m <= 0) throw InputError("modulus must be positive");
  if (weights.size() != vars->size()) throw InputError("one weight per variable required");
  const FieldCtx& F = FieldCtx::get(p);
  if (bound < 0) bound = m;
  if (budget.max_degree && bound > static_cast<std::int64_t>(budget.max_degree)) bound = budget.max_degree;
  InvariantSet S;
  S.vars = vars;
  S.ctx = &F;
  S.bound = bound;
  const std::size_t n = vars->size();
  std::vector<std::int64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = mod(weights[i], m);
  // solutions grouped by degree
  std::vector<std::vector<Exponents>> by_degree(static_cast<std::size_t>(bound) + 1);
  std::size_t count = 0;
  Exponents e(n, 0);
  std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t deg,
                                                                          std::int64_t res) {
    if (i == n) {
      if (deg > 0 && res == 0) by_degree[static_cast<std::size_t>(deg)].push_back(e);
      if (++count > budget.max_terms) throw BudgetExceeded("congruence enumeration exceeds the term budget");
      return;
    }
    for (std::int64_t k = 0; deg + k <= bound; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      rec(i + 1, deg + k, (res + k * w[i]) % m);
    }
    e[i] = 0;
  };
  rec(0, 0, 0);
  std::vector<Exponents> irreducible;
  for (auto& level : by_degree) {
    std::sort(level.begin(), level.end(), GrevlexGreater{});
    for (const auto& s : level) {
      bool red = false;
      for (const auto& t : irreducible)
        if (divides_exp(t, s)) {
          red = true;
          break;
        }
      if (!red) irreducible.push_back(s);
    }
  }
  for (const auto& s : irreducible)
    S.add(RationalFn(MultiPoly::monomial(F, vars, s, F.one())), "congruence monomial mod " + std::to_string(m));
  return S;
}

InvariantSet two_pole_distinct_generators(std::uint32_t p, std::uint32_t d1, std::uint32_t d2) {
  if (d1 == d2) throw InputError("equal orders: use the equal-order generators");
  const Family fam = standard_family(p, {std::max(d1, d2), std::min(d1, d2)});
  const ActionSet A = stabilizer_actions(fam);
  InvariantSet S = diagonal_generators(p, fam.vars, A.weights, A.modulus);
  return S;
}

// ------------------------------------------------------------ equal orders

namespace {

struct EqualLayout {
  Family fam;
  std::uint32_t d = 0;
  std::vector<std::int64_t> w;     // grading d-i / d+i
  std::vector<int> partner;        // a_i <-> b_i, -1 for b_d
  std::vector<std::uint32_t> idx;  // i of each variable
  std::vector<bool> is_a;
  std::size_t bd = 0;
};

EqualLayout equal_layout(std::uint32_t p, std::uint32_t d) {
  EqualLayout L;
  L.fam = standard_family(p, {d, d});
  L.d = d;
  const auto& vars = *L.fam.vars;
  L.w.assign(vars.size(), 0);
  L.partner.assign(vars.size(), -1);
  L.idx.assign(vars.size(), 0);
  L.is_a.assign(vars.size(), false);
  auto pos = [&](const std::string& n) { return static_cast<int>(*var_index(L.fam.vars, n)); };
  const Slot& sa = L.fam.slots[0];
  const Slot& sb = L.fam.slots[1];
  for (std::uint32_t i = 1; i <= d; ++i) {
    const std::string& an = sa.coeff[i - 1];
    const std::string& bn = sb.coeff[i - 1];
    if (!an.empty()) {
      const int k = pos(an);
      L.w[k] = d - i;
      L.idx[k] = i;
      L.is_a[k] = true;
      if (!bn.empty()) L.partner[k] = pos(bn);
    }
    if (!bn.empty()) {
      const int k = pos(bn);
      L.w[k] = d + i;
      L.idx[k] = i;
      if (!an.empty()) L.partner[k] = pos(an);
      if (i == d) L.bd = k;
    }
  }
  return L;
}

// sigma(x^e) as an exponent vector, nullopt when b_d gets a negative power.
std::optional<Exponents> sigma_exponents(const EqualLayout& L, const Exponents& e) {
  Exponents out(e.size(), 0);
  std::int64_t t = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k == L.bd) continue;
    if (L.partner[k] < 0) return std::nullopt;  // cannot happen for valid layouts
    out[static_cast<std::size_t>(L.partner[k])] = e[k];
    const std::int64_t i = L.idx[k];
    t += L.is_a[k] ? -i * e[k] : i * e[k];
  }
  if (t % L.d) return std::nullopt;
  const std::int64_t ed = static_cast<std::int64_t>(e[L.bd]) + t / L.d;
  if (ed < 0) return std::nullopt;
  out[L.bd] = static_cast<std::uint32_t>(ed);
  return out;
}

}  // namespace

InvariantSet two_pole_equal_generators_mod(std::uint32_t p, std::uint32_t d, std::int64_t M, const Budget& budget) {
  const std::int64_t full = static_cast<std::int64_t>(d) * (p - 1);
  if (M <= 0 || full % M || M % d) throw InputError("modulus must divide d(p-1) and be a multiple of d");
  const EqualLayout L = equal_layout(p, d);
  const FieldCtx& F = FieldCtx::get(p);
  InvariantSet S;
  S.vars = L.fam.vars;
  S.ctx = &F;
  S.grading = "weights d-i (a_i), d+i (b_i)";
  // weight bound: twice the largest weight of an irreducible invariant of the diagonal part
  std::vector<std::int64_t> wmod(L.w.size());
  for (std::size_t i = 0; i < L.w.size(); ++i) wmod[i] = -L.w[i];
  const InvariantSet hb = diagonal_generators(p, L.fam.vars, wmod, M, M, budget);
  std::int64_t wh = 0;
  for (const auto& g : hb.generators) wh = std::max(wh, g.num().max_weight(L.w));
  std::int64_t Wmax = 2 * wh;
  if (budget.max_degree) Wmax = std::min<std::int64_t>(Wmax, budget.max_degree);
  S.bound = Wmax;
  std::map<std::int64_t, std::vector<MultiPoly>> pieces;
  std::map<std::int64_t, std::vector<std::string>> tags;
  std::size_t count = 0;
  Deadline clock(budget.max_ms);
  for (std::int64_t W = M; W <= Wmax; W += M) {
    std::set<Exponents> seen;
    std::vector<MultiPoly> basis;
    for_weight(L.w, W, [&](const Exponents& e) {
      if (++count > budget.max_terms) throw BudgetExceeded("equal-order enumeration exceeds the term budget");
      if (seen.count(e)) return;
      const auto s = sigma_exponents(L, e);
      if (!s) return;
      seen.insert(e);
      seen.insert(*s);
      MultiPoly f = MultiPoly::monomial(F, S.vars, e, F.one());
      if (*s != e) f += MultiPoly::monomial(F, S.vars, *s, F.one());
      basis.push_back(std::move(f));
    });
    if (!basis.empty()) pieces[W] = std::move(basis);
    if (clock.expired()) {
      S.complete = false;
      S.flag("capped: time budget reached at weight " + std::to_string(W));
      break;
    }
  }
  for (const auto& [g, w] : minimal_from_pieces(pieces))
    S.add(RationalFn(g), g.is_monomial() ? "fixed monomial" : "symmetrized pair m + sigma(m)");
  sort_set(S, L.w);
  S.flag("bound-limited: weight bound " + std::to_string(Wmax) + " (twice the largest diagonal generator weight)");
  if (M != full) S.flag("diagonal part restricted to alpha^" + std::to_string(M) + " = 1");
  return S;
}

InvariantSet two_pole_equal_generators(std::uint32_t p, std::uint32_t d, const Budget& budget) {
  return two_pole_equal_generators_mod(p, d, static_cast<std::int64_t>(d) * (p - 1), budget);
}

InvariantSet two_pole_equal_candidate_set(std::uint32_t p, std::uint32_t d) {
  const EqualLayout L = equal_layout(p, d);
  const FieldCtx& F = FieldCtx::get(p);
  const std::int64_t m = static_cast<std::int64_t>(d) * (p - 1);
  InvariantSet S;
  S.vars = L.fam.vars;
  S.ctx = &F;
  S.bound = m;
  S.grading = "weights d-i (a_i), d+i (b_i)";
  {
    Exponents e(S.vars->size(), 0);
    e[L.bd] = (p - 1) / 2;
    S.add(RationalFn(MultiPoly::monomial(F, S.vars, e, F.one())), "b_d^((p-1)/2)");
  }
  // exponents of a_i, b_i (i < d) with sum <= m, and n_d < (p-1)/2
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < S.vars->size(); ++k)
    if (k != L.bd) free.push_back(k);
  Exponents e(S.vars->size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t used) {
    if (j == free.size()) {
      for (std::uint32_t nd = 0; 2 * nd < p - 1; ++nd) {
        e[L.bd] = nd;
        std::int64_t t = 0, cong = 0;
        bool nonzero = nd > 0;
        for (auto k : free) {
          const std::int64_t i = L.idx[k];
          if (e[k]) nonzero = true;
          t += L.is_a[k] ? -i * e[k] : i * e[k];
          cong += L.is_a[k] ? e[k] * (i - d) : -static_cast<std::int64_t>(e[k]) * (i + d);
        }
        cong -= static_cast<std::int64_t>(nd) * 2 * d;
        if (!nonzero || t < 0 || mod(cong, m) != 0 || t % d) continue;
        const auto s = sigma_exponents(L, e);
        if (!s) continue;
        MultiPoly f = MultiPoly::monomial(F, S.vars, e, F.one()) + MultiPoly::monomial(F, S.vars, *s, F.one());
        S.add(RationalFn(f.monic()), "candidate pair");
      }
      e[L.bd] = 0;
      return;
    }
    for (std::int64_t k = 0; used + k <= m; ++k) {
      e[free[j]] = static_cast<std::uint32_t>(k);
      rec(j + 1, used + k);
    }
    e[free[j]] = 0;
  };
  rec(0, 0);
  return S;
}

// ------------------------------------------------------------ linear groups

InvariantSet orbit_sum_generators(const ActionSet& A, const Budget& budget) {
  if (A.kind != ActionKind::diagonal && A.kind != ActionKind::linearGroup)
    throw InputError("orbit sums need a linear group action");
  if (!A.is_group) throw InputError("orbit sums need a group");
  const LinearAction L = make_linear(A);
  const FieldCtx& F = *A.ctx;
  const std::size_t n = A.vars->size();
  const std::size_t G = L.mats.size();
  const bool modular = G % F.p() == 0;
  InvariantSet S;
  S.vars = A.vars;
  S.ctx = &F;
  if (n == 0) return S;
  std::int64_t bound = modular ? static_cast<std::int64_t>(n) * static_cast<std::int64_t>(G - 1)
                               : static_cast<std::int64_t>(G);
  if (modular && n == 1) bound = static_cast<std::int64_t>(G);
  const std::int64_t theoretical = bound;
  if (budget.max_degree && bound > static_cast<std::int64_t>(budget.max_degree)) {
    bound = budget.max_degree;
    S.complete = false;
    S.flag("bound-limited: degree " + std::to_string(bound) + " below the bound " + std::to_string(theoretical));
  }
  S.bound = bound;
  if (modular) {
    S.flag("modular: p divides |G| = " + std::to_string(G));
    S.flag("bound-limited: Symonds bound n(|G|-1) = " + std::to_string(theoretical));
  }
  PowerCache pc(L);
  std::vector<std::size_t> gens;
  if (modular && !L.monomial) gens = group_generators(L);
  const std::vector<std::int64_t> w1 = ones(n);
  std::map<std::int64_t, std::vector<MultiPoly>> pieces;
  std::size_t count = 0;
  Deadline clock(budget.max_ms);
  for (std::int64_t deg = 1; deg <= bound; ++deg) {
    std::vector<Exponents> monos;
    for_weight(w1, deg, [&](const Exponents& e) { monos.push_back(e); });
    count += monos.size();
    if (count > budget.max_terms) {
      S.complete = false;
      S.flag("capped: term budget reached at degree " + std::to_string(deg));
      break;
    }
    std::vector<MultiPoly> basis;
    if (L.monomial) {
      std::set<Exponents> visited;
      for (const auto& m : monos) {
        if (visited.count(m)) continue;
        std::map<Exponents, Fq, GrevlexGreater> orbit;
        bool valid = true;
        for (std::size_t g = 0; g < G; ++g) {
          const MultiPoly img = pc.apply(g, m);
          const auto& [e, c] = *img.terms().begin();
          auto it = orbit.find(e);
          if (it == orbit.end()) orbit.emplace(e, c);
          else if (it->second != c) valid = false;
          if (e == m && !c.is_one()) valid = false;
        }
        MultiPoly f(F, A.vars);
        for (const auto& [e, c] : orbit) {
          visited.insert(e);
          f.add_term(e, c);
        }
        if (valid) basis.push_back(f.monic());
      }
    } else if (!modular) {
      Echelon E;
      for (const auto& m : monos) {
        MultiPoly r(F, A.vars);
        for (std::size_t g = 0; g < G; ++g) r += pc.apply(g, m);
        if (!r.is_zero() && E.insert(r)) basis.push_back(r.monic());
      }
    } else {
      if (monos.size() > budget.max_kernel_dim) {
        S.complete = false;
        S.flag("capped: degree " + std::to_string(deg) + " needs a kernel of dimension " +
               std::to_string(monos.size()) + " (budget " + std::to_string(budget.max_kernel_dim) + ")");
        break;
      }
      std::map<Exponents, std::size_t, GrevlexGreater> col;
      for (std::size_t j = 0; j < monos.size(); ++j) col[monos[j]] = j;
      Dense D{&F, monos.size(), {}};
      for (auto g : gens) {
        std::vector<std::vector<std::uint32_t>> block(monos.size(), std::vector<std::uint32_t>(monos.size(), 0));
        for (std::size_t j = 0; j < monos.size(); ++j) {
          const MultiPoly img = pc.apply(g, monos[j]);
          for (const auto& [e, c] : img.terms()) block[col.at(e)][j] = c.index();
          block[j][j] = F.sub(block[j][j], 1);
        }
        for (auto& r : block) D.rows.push_back(std::move(r));
      }
      for (const auto& v : kernel(std::move(D))) {
        MultiPoly f(F, A.vars);
        for (std::size_t j = 0; j < v.size(); ++j)
          if (v[j]) f.add_term(monos[j], F.from_index(v[j]));
        basis.push_back(f.monic());
      }
    }
    if (!basis.empty()) pieces[deg] = std::move(basis);
    if (clock.expired() && deg < bound) {
      S.complete = false;
      S.flag("capped: time budget reached after degree " + std::to_string(deg));
      break;
    }
  }
  const std::string tag = L.monomial ? "orbit sum" : (modular ? "invariant (kernel)" : "Reynolds image");
  for (const auto& [g, w] : minimal_from_pieces(pieces)) S.add(RationalFn(g), tag);
  sort_set(S, w1);
  return S;
}

// ------------------------------------------------------------ closed forms

InvariantSet three_distinct_generators(std::uint32_t p, const std::vector<std::uint32_t>& orders) {
  const Family fam = standard_family(p, orders);
  if (fam.info.branch != 3 || fam.slots.size() != 3 || fam.slots[0].order == fam.slots[1].order ||
      fam.slots[1].order == fam.slots[2].order)
    throw InputError("three poles of distinct orders required");
  const FieldCtx& F = FieldCtx::get(p);
  InvariantSet S;
  S.vars = fam.vars;
  S.ctx = &F;
  S.bound = p - 1;
  const Slot& s0 = fam.slots[0];
  const MultiPoly lead = MultiPoly::variable(F, fam.vars, s0.coeff[s0.order - 1]);
  const MultiPoly pre = lead.pow(p - 2);
  for (std::size_t i = 0; i < fam.vars->size(); ++i)
    S.add(RationalFn(pre * MultiPoly::variable(F, fam.vars, i)), "a_{d1}^(p-2) x");
  sort_set(S, ones(fam.vars->size()));
  S.flag("closed form: generates the invariant field (reconstructing set)");
  return S;
}

// ------------------------------------------------------- multisymmetric

std::vector<Exponents> primitive_monomials(std::uint32_t m, std::uint32_t max_degree) {
  std::vector<Exponents> out;
  const std::vector<std::int64_t> w = ones(m);
  for (std::uint32_t deg = 1; deg <= max_degree; ++deg)
    for_weight(w, deg, [&](const Exponents& e) {
      std::uint32_t g = 0;
      for (auto x : e) g = std::gcd(g, x);
      if (g == 1) out.push_back(e);
    });
  return out;
}

VarTable multisym_vars(std::uint32_t m, std::uint32_t n) {
  static const char* letters[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      names.push_back(m <= 4 ? std::string(letters[i]) + std::to_string(j)
                             : "v" + std::to_string(i + 1) + "_" + std::to_string(j));
  return make_vars(std::move(names));
}

namespace {

// s_{k,mu} over the given columns (each column a vector of m polynomials).
std::vector<std::pair<RationalFn, std::string>> multisym_on_columns(const std::vector<std::vector<RationalFn>>& cols,
                                                                    std::uint32_t bound, const RationalFn& one) {
  std::vector<std::pair<RationalFn, std::string>> out;
  if (cols.empty()) return out;
  const std::uint32_t m = static_cast<std::uint32_t>(cols[0].size());
  const std::uint32_t n = static_cast<std::uint32_t>(cols.size());
  const RationalFn zero = one - one;
  for (const auto& mu : primitive_monomials(m, bound)) {
    const std::uint32_t deg = static_cast<std::uint32_t>(total_degree(mu));
    std::vector<RationalFn> vals;
    for (const auto& c : cols) {
      RationalFn v = one;
      for (std::uint32_t i = 0; i < m; ++i)
        if (mu[i]) v *= c[i].pow(mu[i]);
      vals.push_back(std::move(v));
    }
    for (std::uint32_t k = 1; k <= n && k * deg <= bound; ++k) {
      std::string label = "s_" + std::to_string(k) + ",(";
      for (std::uint32_t i = 0; i < m; ++i) label += (i ? "," : "") + std::to_string(mu[i]);
      out.emplace_back(elementary_symmetric(vals, k, one, zero), label + ")");
    }
  }
  return out;
}

std::uint32_t multisym_bound(std::uint32_t m, std::uint32_t n) { return std::max(n, m * (n - 1)); }

}  // namespace

InvariantSet multisym_generators(std::uint32_t m, std::uint32_t n, std::uint32_t p) {
  if (m <= 1) throw InputError("multisymmetric generators need m > 1");
  if (n < 1) throw InputError("multisymmetric generators need n >= 1");
  const FieldCtx& F = FieldCtx::get(p);
  const VarTable vars = multisym_vars(m, n);
  std::vector<std::vector<RationalFn>> cols(n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < m; ++i) cols[j].push_back(RationalFn::variable(F, vars, (*vars)[i * n + j]));
  InvariantSet raw;
  raw.vars = vars;
  raw.ctx = &F;
  raw.bound = multisym_bound(m, n);
  for (auto& [f, tag] : multisym_on_columns(cols, static_cast<std::uint32_t>(raw.bound), RationalFn::constant(F, vars, 1)))
    if (!f.is_constant()) raw.add(std::move(f), tag);
  return minimalize(raw);
}

// ------------------------------------------------------------ minimalize

InvariantSet minimalize(const InvariantSet& S, const std::vector<std::int64_t>& weights0) {
  InvariantSet out = S;
  out.generators.clear();
  out.provenance.clear();
  if (S.generators.empty()) return out;
  const std::vector<std::int64_t> w = weights0.empty() ? ones(S.vars->size()) : weights0;
  std::vector<std::tuple<std::int64_t, MultiPoly, std::string>> cand;
  for (std::size_t i = 0; i < S.generators.size(); ++i) {
    const auto& g = S.generators[i];
    if (!g.is_polynomial()) {
      out = S;
      out.flag("not minimalized: rational generators");
      return out;
    }
    const MultiPoly f = (g.num() * g.den().constant_term().inv()).monic();
    if (f.is_zero() || f.is_constant()) continue;
    const auto wt = poly_weight(f, w);
    if (!wt || *wt <= 0) {
      out = S;
      out.flag("not minimalized: inhomogeneous generators");
      return out;
    }
    cand.emplace_back(*wt, f, S.provenance[i]);
  }
  std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return GrevlexGreater{}(std::get<1>(a).leading_exponents(), std::get<1>(b).leading_exponents());
  });
  const std::int64_t top = std::get<0>(cand.back());
  // B[W]: span of products of retained generators of weight W
  std::map<std::int64_t, std::vector<MultiPoly>> B;
  B[0] = {MultiPoly::constant(*S.ctx, S.vars, 1)};
  std::vector<std::pair<MultiPoly, std::int64_t>> kept;
  std::size_t ci = 0;
  for (std::int64_t W = 1; W <= top; ++W) {
    Echelon E;
    for (const auto& [g, wg] : kept) {
      auto it = B.find(W - wg);
      if (it == B.end()) continue;
      for (const auto& v : it->second) E.insert(g * v);
    }
    while (ci < cand.size() && std::get<0>(cand[ci]) == W) {
      const auto& [wt, f, tag] = cand[ci];
      if (E.insert(f)) {
        kept.emplace_back(f, W);
        out.add(RationalFn(f), tag);
      }
      ++ci;
    }
    if (E.rank()) B[W] = E.basis();
  }
  return out;
}

// ------------------------------------------------------------ four poles

namespace {

const char* kJ[5][2] = {
    {"J1", "(theta^2-theta+1)*(a^2 + b^2/theta^2 + c^2/(1-theta)^2 + e^2/(theta^2*(1-theta)^2))"},
    {"J2'", "a*b - b*c + c*a + e*(a - b/theta^2 - c/(theta-1)^2)"},
    {"J2", "a^2*b^2 + b^2*c^2 + c^2*a^2 + e^2*(a^2 + b^2/theta^4 + c^2/(theta-1)^4)"},
    {"J3", "a^2*b^2*c^2 + a^2*b^2*e^2/theta^2 + a^2*c^2*e^2/(theta-1)^2 + b^2*c^2*e^2/(theta^2*(1-theta)^2)"},
    {"J4", "a*b*c*e/(1-theta+theta^2)"},
};

}  // namespace

InvariantSet four_pole_invariants(std::uint32_t p) {
  const Family fam = standard_family(p, {1, 1, 1, 1});
  const FieldCtx& F = FieldCtx::get(p);
  InvariantSet S;
  S.vars = fam.vars;
  S.ctx = &F;
  S.grading = "degree in a, b, c, e (theta of degree 0)";
  for (const auto& j : kJ) S.add(parse_rational(j[1], F, fam.vars), j[0]);
  S.flag("lambda-action omitted (maps taken with lambda = 1)");
  S.flag("rational generators of the invariant field");
  return S;
}

RationalFn four_pole_j(std::uint32_t p) {
  const Family fam = standard_family(p, {1, 1, 1, 1});
  return parse_rational("(theta^2-theta+1)^3/(theta^2*(theta-1)^2)", FieldCtx::get(p), fam.vars);
}

std::size_t verify_four_pole(std::uint32_t p) {
  const Family fam = standard_family(p, {1, 1, 1, 1});
  const ActionSet A = stabilizer_actions(fam);
  InvariantSet S = four_pole_invariants(p);
  S.add(four_pole_j(p), "j");
  // P_j(theta) = 0 is used by writing j through theta; the J's do not involve j.
  std::size_t checked = 0;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (const auto& m : A.maps) {
      if (!rational_equal(substitute_map(S.generators[i], A, m), relate(S.generators[i], A, m)))
        throw VerificationError(S.provenance[i] + " is not fixed by " + m.label);
      ++checked;
    }
  return checked;
}

// ------------------------------------------------------------ five poles

std::vector<Fq> FivePoleSpecializations::evaluate(std::span<const Fq> point) const {
  curve_from_point(family, point);  // rejects coincident poles
  // the maps are taken with lambda = 1; add the scalings by F_p^*
  std::set<std::vector<Fq>> all;
  for (const auto& y : orbit(point, action)) {
    const FieldCtx& K = y.front().ctx();
    for (std::uint32_t l = 1; l < family.p; ++l) {
      std::vector<Fq> z = y;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const std::string& n = (*family.vars)[i];
        if (n != "s" && n != "u") z[i] *= K.from_int(l);
      }
      all.insert(std::move(z));
    }
  }
  const std::vector<std::vector<Fq>> orb(all.begin(), all.end());
  std::vector<Fq> out;
  const FieldCtx& F = orb.front().front().ctx();
  for (const auto& [k, mu] : specs) {
    std::vector<Fq> vals;
    for (const auto& y : orb) {
      Fq v = F.one();
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i]) v *= y[i].pow(mu[i]);
      vals.push_back(v);
    }
    out.push_back(elementary_symmetric(vals, k, F.one(), F.zero()));
  }
  return out;
}

std::vector<std::string> FivePoleSpecializations::labels() const {
  std::vector<std::string> out;
  for (const auto& [k, mu] : specs)
    out.push_back("s_" + std::to_string(k) + "," +
                  MultiPoly::monomial(*action.ctx, action.vars, mu, action.ctx->one()).to_string());
  return out;
}

FivePoleSpecializations five_pole_specializations(std::uint32_t p, std::uint32_t k_max) {
  FivePoleSpecializations R;
  R.family = standard_family(p, {1, 1, 1, 1, 1});
  R.action = stabilizer_actions(R.family);
  const std::uint32_t m = static_cast<std::uint32_t>(R.family.vars->size());
  for (const auto& mu : primitive_monomials(m, k_max)) {
    const std::uint32_t deg = static_cast<std::uint32_t>(total_degree(mu));
    for (std::uint32_t k = 1; k * deg <= k_max; ++k) R.specs.emplace_back(k, mu);
  }
  return R;
}

// ------------------------------------------------------------ staged

namespace {

// Rewrites alpha^k through the binomial relation and drops alpha; throws
// DomainError when a power not divisible by k survives.
RationalFn eliminate_aux(const RationalFn& f, const ActionSet& A, const CoefficientMap& m) {
  if (!m.aux) return f.remap(A.vars);
  const AuxSpec& aux = *m.aux;
  const std::size_t ai = *var_index(A.all_vars, aux.name);
  const std::uint32_t k = aux.poly.degree_in(ai);
  const auto pc = aux.poly.coefficients_in(ai);
  for (std::uint32_t i = 1; i < k; ++i)
    if (!pc[i].is_zero()) throw DomainError("auxiliary relation is not a binomial");
  // alpha^k = -pc[0] / pc[k]
  const RationalFn ak = RationalFn(-pc[0], pc[k]);
  auto reduce = [&](const MultiPoly& g) {
    const auto cs = g.coefficients_in(ai);
    std::vector<RationalFn> by_rest(k, RationalFn::constant(*A.ctx, A.all_vars, 0));
    for (std::size_t e = 0; e < cs.size(); ++e) {
      if (cs[e].is_zero()) continue;
      by_rest[e % k] += RationalFn(cs[e]) * ak.pow(static_cast<std::int64_t>(e / k));
    }
    for (std::uint32_t r = 1; r < k; ++r)
      if (!by_rest[r].is_zero()) throw DomainError("image depends on the auxiliary root");
    return by_rest[0];
  };
  return (reduce(f.num()) / reduce(f.den())).remap(A.vars);
}

}  // namespace

StagedResult staged_generators(const ActionSet& A, const Budget& budget) {
  if (A.stage1.empty()) throw InputError("action has no first stage");
  StagedResult R;
  ActionSet H = A;
  H.maps = A.stage1;
  H.is_group = true;
  H.kind = ActionKind::linearGroup;
  H.group_order = A.stage1.size();
  R.stage1 = orbit_sum_generators(H, budget);
  R.stage1.provenance.assign(R.stage1.size(), "stage 1");
  // residual coset representatives: maps outside the first stage, one per coset
  std::vector<const CoefficientMap*> reps;
  std::vector<std::vector<RationalFn>> seen_images;
  for (const auto& m : A.maps) {
    std::vector<RationalFn> img;
    for (const auto& f : R.stage1.generators) img.push_back(eliminate_aux(substitute_map(f, A, m), A, m));
    bool fresh = true;
    for (const auto& s : seen_images)
      if (s == img) fresh = false;
    if (!fresh) continue;
    seen_images.push_back(img);
    reps.push_back(&m);
  }
  R.residual_images = seen_images;
  InvariantSet& S2 = R.stage2;
  S2.vars = A.vars;
  S2.ctx = A.ctx;
  const std::uint32_t order = static_cast<std::uint32_t>(seen_images.size());
  S2.bound = order;
  if (order <= 1) {
    S2 = R.stage1;
    return R;
  }
  const RationalFn one = RationalFn::constant(*A.ctx, A.vars, 1);
  for (auto& [f, tag] : multisym_on_columns(seen_images, order, one)) {
    if (f.is_constant()) continue;
    S2.add(f, tag + " of stage-1 generators");
  }
  S2.flag("stage 2: multisymmetric functions of the residual action, not minimalized");
  return R;
}

// ------------------------------------------------------------ extra poles

InvariantSet extra_pole_generators(const Family& fam, const ActionSet& A, bool closed_form, const Budget& budget) {
  const FieldCtx& F = FieldCtx::get(fam.p);
  const VarTable& vars = fam.vars;
  const std::size_t n = vars->size();
  // stage 1: multisymmetric functions of each group of equal-order extra poles
  std::map<int, std::vector<const Slot*>> groups;
  std::set<std::string> grouped;
  for (const auto& s : fam.slots)
    if (s.where == Slot::Where::param && s.group >= 0) groups[s.group].push_back(&s);
  struct Gen {
    MultiPoly f;
    std::string tag;
  };
  std::vector<Gen> stage1;
  for (auto& [gid, slots] : groups) {
    if (slots.size() < 2) continue;
    std::vector<std::vector<RationalFn>> cols;
    for (const Slot* s : slots) {
      std::vector<RationalFn> col;
      for (const auto& c : s->coeff)
        if (!c.empty()) {
          col.push_back(RationalFn::variable(F, vars, c));
          grouped.insert(c);
        }
      col.push_back(RationalFn::variable(F, vars, s->theta));
      grouped.insert(s->theta);
      cols.push_back(std::move(col));
    }
    const std::uint32_t m = static_cast<std::uint32_t>(cols[0].size());
    const std::uint32_t k = static_cast<std::uint32_t>(cols.size());
    InvariantSet raw;
    raw.vars = vars;
    raw.ctx = &F;
    for (auto& [f, tag] : multisym_on_columns(cols, multisym_bound(m, k), RationalFn::constant(F, vars, 1)))
      if (!f.is_constant()) raw.add(std::move(f), tag);
    const InvariantSet mini = minimalize(raw);
    for (std::size_t i = 0; i < mini.size(); ++i) stage1.push_back({mini.generators[i].num(), mini.provenance[i]});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!grouped.count((*vars)[i])) stage1.push_back({MultiPoly::variable(F, vars, i), "coordinate"});
  // weights of the second stage
  std::vector<std::int64_t> w;
  std::int64_t modulus = 0;
  if (fam.info.branch == 4) {
    modulus = fam.p - 1;
    w.assign(n, 1);
    for (const auto& s : fam.slots)
      if (s.where == Slot::Where::param) w[*var_index(vars, s.theta)] = 0;
  } else {
    modulus = A.modulus;
    w = A.weights;
  }
  InvariantSet S;
  S.vars = vars;
  S.ctx = &F;
  std::vector<std::int64_t> sw;
  for (const auto& g : stage1) {
    const auto wt = poly_weight(g.f, w);
    if (!wt) throw VerificationError("stage-1 generator is not a weight vector");
    sw.push_back(*wt);
  }
  if (closed_form) {
    if (fam.info.branch != 4) throw InputError("closed form only for three distinguished orders of multiplicity one");
    const Slot& s0 = fam.slots[0];
    const MultiPoly lead = MultiPoly::variable(F, vars, s0.coeff[s0.order - 1]);
    for (std::size_t i = 0; i < stage1.size(); ++i) {
      const std::int64_t e = static_cast<std::int64_t>(fam.p - 2) * sw[i];
      S.add(RationalFn(lead.pow(static_cast<std::uint32_t>(e)) * stage1[i].f),
            e ? "a_{d1}^(p-2)k * " + stage1[i].tag : stage1[i].tag);
    }
    sort_set(S, ones(n));
    S.bound = fam.p - 1;
    S.flag("closed form: generates the invariant field (reconstructing set)");
    return S;
  }
  // ring mode: irreducible congruence monomials in the stage-1 generators
  const VarTable fvars = [&] {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < stage1.size(); ++i) names.push_back("f" + std::to_string(i + 1));
    return make_vars(std::move(names));
  }();
  const InvariantSet hb = diagonal_generators(fam.p, fvars, sw, modulus, modulus, budget);
  InvariantSet raw;
  raw.vars = vars;
  raw.ctx = &F;
  for (const auto& g : hb.generators) {
    const Exponents& e = g.num().leading_exponents();
    MultiPoly f = MultiPoly::constant(F, vars, 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f = f * stage1[i].f.pow(e[i]);
    raw.add(RationalFn(f), "congruence product of stage-1 generators");
  }
  S = minimalize(raw);
  S.bound = modulus;
  sort_set(S, ones(n));
  return S;
}

// ------------------------------------------------------------ {1,1,1,2}

InvariantSet one_one_one_two_invariants(std::uint32_t p, const ActionSet& A) {
  const FieldCtx& F = FieldCtx::get(p);
  const VarTable& vars = A.vars;
  InvariantSet S;
  S.vars = vars;
  S.ctx = &F;
  S.grading = "degree in the coefficients (theta of degree 0)";
  auto P = [&](const char* s) { return parse_rational(s, F, vars); };
  auto fixed = [&](const RationalFn& f) {
    for (const auto& m : A.maps)
      if (!rational_equal(substitute_map(f, A, m), relate(f, A, m))) return false;
    return true;
  };
  auto orbit_sum = [&](const RationalFn& f) {
    std::vector<RationalFn> imgs;
    for (const auto& m : A.maps) {
      RationalFn g = substitute_map(f, A, m).remap(vars);
      if (std::find(imgs.begin(), imgs.end(), g) == imgs.end()) imgs.push_back(std::move(g));
    }
    RationalFn s = RationalFn::constant(F, vars, 0);
    for (const auto& g : imgs) s += g;
    return s;
  };
  const std::vector<std::pair<std::string, std::string>> shown = {
      {"I1", "(a*b*c)^2"},
      {"I2", "a*b*c*(a-b-c)"},
      {"I3", "a*b+a*c-b*c"},
      {"I4", "a^2+b^2+c^2"},
      {"I5", "(theta^2-theta+1)^3/(theta^2*(theta-1)^2)"},
      {"I6", "e2^2*(theta^2*(theta-1)^2+theta^2+(theta-1)^2)/(theta^2*(theta-1)^2)"},
      {"I7", "e1^2+(e1-e2)^2/theta^2+(e1+e2)^2/(theta-1)^2"},
  };
  const std::vector<std::string> fallback = {"", "", "", "", "", "e2^2", "e1^2"};
  for (std::size_t i = 0; i < shown.size(); ++i) {
    RationalFn f = P(shown[i].second.c_str());
    if (fixed(f)) {
      S.add(f, shown[i].first);
      continue;
    }
    if (fallback[i].empty()) {
      S.complete = false;
      S.flag(shown[i].first + " is not fixed by the transported maps; dropped");
      continue;
    }
    RationalFn g = orbit_sum(P(fallback[i].c_str()));
    S.flag(shown[i].first + " is not fixed by the transported maps; replaced by the orbit sum of " + fallback[i]);
    if (!g.is_constant()) S.add(g, "orbit sum of " + fallback[i]);
  }
  S.flag("rational generators of the invariant field");
  return S;
}

// ------------------------------------------------------------ one pole d = 1 mod p

InvariantSet one_pole_d1_generators(const Family& fam, const ActionSet& A, const Budget& budget) {
  InvariantSet S = diagonal_generators(fam.p, fam.vars, A.weights, A.modulus, -1, budget);
  ActionSet D = A;
  D.maps.erase(std::remove_if(D.maps.begin(), D.maps.end(), [](const auto& m) { return bool(m.numeric); }),
               D.maps.end());
  D.is_group = true;
  D.kind = ActionKind::diagonal;
  std::mt19937_64 rng(20240501);
  const FieldCtx& F = *A.ctx;
  bool agree = true;
  int tried = 0;
  for (int trial = 0; trial < 40 && tried < 8; ++trial) {
    std::vector<Fq> x;
    for (std::size_t i = 0; i < fam.vars->size(); ++i) x.push_back(F.random(rng));
    try {
      const auto full = orbit(x, A);
      const auto sub = orbit(x, D);
      ++tried;
      if (full.size() != sub.size()) {
        agree = false;
        break;
      }
    } catch (const DomainError&) {
    } catch (const BudgetExceeded&) {
    }
  }
  if (agree && tried > 0) {
    S.flag("translations preserve the beta = 0 orbits on all samples");
  } else {
    S.complete = false;
    S.flag("partial: invariants of the beta = 0 subgroup only; translations enlarge the orbits");
  }
  return S;
}

// ------------------------------------------------------------ checks

std::vector<std::pair<std::size_t, std::size_t>> invariance_failures(const InvariantSet& S, const ActionSet& A) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < A.maps.size(); ++j) {
      const auto& m = A.maps[j];
      if (m.numeric) continue;
      if (!rational_equal(substitute_map(S.generators[i], A, m), relate(S.generators[i], A, m)))
        out.emplace_back(i, j);
    }
  return out;
}

std::string invariant_set_json(const InvariantSet& S) {
  nlohmann::json j;
  j["variables"] = *S.vars;
  j["generators"] = S.rendered();
  j["provenance"] = S.provenance;
  j["bound"] = S.bound;
  j["grading"] = S.grading;
  j["flags"] = S.flags;
  j["complete"] = S.complete;
  return j.dump();
}

}  // namespace asinv
