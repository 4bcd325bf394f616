#include "asinv/curve.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "asinv/errors.hpp"

namespace asinv {

namespace {

bool location_less(const Fq& a, const Fq& b) {
  const auto ca = a.coords();
  const auto cb = b.coords();
  return ca < cb;
}

void trim(std::vector<Fq>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

MobiusT<Fq> to_generic(const Mobius& M) { return {M.a, M.b, M.c, M.d}; }

const FieldCtx& larger(const FieldCtx& a, const FieldCtx& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  const std::uint32_t k = std::lcm(a.k(), b.k());
  return FieldCtx::get(a.p(), k);
}

// The core transport: f_new = lambda^{-1} (f o M - h^p + h), h forced.
ASCurve transform(const ASCurve& c, const Mobius& M, const Fq& lambda, std::vector<Pole>* h_out) {
  if (M.det().is_zero()) throw DomainError("degenerate Moebius transformation (determinant 0)");
  if (lambda.is_zero()) throw DomainError("lambda must be nonzero");
  std::vector<TailT<Fq>> tails = compose_tails(to_tails(c.poles()), to_generic(M));
  const Fq linv = lambda.inv();
  std::vector<TailT<Fq>> h_tails;
  for (auto& t : tails) {
    std::vector<Fq> h;
    eliminate_tail_powers(t.coeffs, h);
    if (!h.empty()) h_tails.push_back({t.at_infinity, t.location, std::move(h)});
    for (auto& x : t.coeffs) x *= linv;
  }
  std::vector<Pole> poles = from_tails(tails);
  if (poles.empty()) throw DomainError("f reduces to a constant: the curve is of the form z^p - z");
  if (h_out) {
    *h_out = from_tails(h_tails);
    std::sort(h_out->begin(), h_out->end(), [](const Pole& x, const Pole& y) {
      if (x.at_infinity != y.at_infinity) return x.at_infinity;
      return location_less(x.location, y.location);
    });
  }
  return ASCurve(c.ctx(), std::move(poles));
}

// With beta = g^Q (Q the largest p-power <= deg) every p-th root taken while
// reducing f(x + beta) is exact, so the coefficient of x^target is a
// univariate polynomial in g.  Empty when it vanishes identically.
std::vector<Fq> clearing_polynomial(const ASCurve& cur, std::uint32_t target, std::uint64_t& Q) {
  const Pole* inf = cur.pole_at_infinity();
  if (!inf || cur.poles().size() != 1) throw VerificationError("translate_clearing needs a single pole at infinity");
  const FieldCtx& F = cur.ctx();
  const std::uint32_t p = F.p();
  Q = 1;
  while (Q * p <= inf->order()) Q *= p;
  const VarTable vars = make_vars({"g"});
  const MultiPoly beta = MultiPoly::monomial(F, vars, {static_cast<std::uint32_t>(Q)}, F.one());
  std::vector<MultiPoly> coeffs;
  for (const Fq& c : inf->tail) coeffs.push_back(MultiPoly::constant(F, vars, c));
  std::vector<MultiPoly> out = expand_tail(coeffs, beta, MultiPoly::constant(F, vars, 1));
  std::vector<MultiPoly> h;
  if (eliminate_tail_powers(out, h)) throw VerificationError("inexact p-th root while solving for a translation");
  if (out.size() < target || out[target - 1].is_zero()) return {};
  const MultiPoly& P = out[target - 1];
  std::vector<Fq> uni(P.degree_in(0) + 1, F.zero());
  for (const auto& [e, c] : P.terms()) uni[e[0]] = c;
  return uni;
}

// Brings c, and every element handed to it, into one field.
struct Work {
  ASCurve cur;
  Mobius M;
  Fq lambda;
  std::vector<std::string> notes;

  explicit Work(const ASCurve& c) : cur(c), M(Mobius::identity(c.ctx())), lambda(c.ctx().one()) {}

  const FieldCtx& ctx() const { return cur.ctx(); }

  void lift_to(const FieldCtx& F) {
    if (&F == &ctx()) return;
    notes.push_back("field extended to F_" + std::to_string(F.q()));
    cur = cur.lift(F);
    M = M.lift(F);
    lambda = F.embed(lambda);
  }

  void step(Mobius Ms, const Fq& ls) {
    const FieldCtx& F = larger(ctx(), Ms.a.ctx());
    lift_to(F);
    Ms = Ms.lift(F);
    cur = transform(cur, Ms, F.embed(ls), nullptr);
    M = M.compose(Ms);
    lambda = lambda * F.embed(ls);
  }

  // Scales x so that the pole at infinity becomes monic.
  void make_monic() {
    const Pole* inf = cur.pole_at_infinity();
    if (!inf) throw VerificationError("make_monic without a pole at infinity");
    const std::uint32_t d = inf->order();
    const Fq target = inf->tail.back().inv();
    auto roots = target.nth_roots(d);
    if (roots.empty()) {
      for (std::uint32_t m = 2;; ++m) {
        const std::uint64_t k = static_cast<std::uint64_t>(ctx().k()) * m;
        std::uint64_t q = 1;
        for (std::uint64_t i = 0; i < k && q <= FieldCtx::kMaxFieldSize; ++i) q *= ctx().p();
        if (q > FieldCtx::kMaxFieldSize) throw BudgetExceeded("no field small enough contains the required root");
        const FieldCtx& F = FieldCtx::get(ctx().p(), static_cast<std::uint32_t>(k));
        roots = F.embed(target).nth_roots(d);
        if (!roots.empty()) {
          lift_to(F);
          break;
        }
      }
    }
    if (roots.front().is_one()) return;
    step(Mobius::scale(roots.front()), ctx().one());
  }

  // Translates x -> x + beta so that the coefficient of x^target at infinity
  // vanishes.  With beta = g^(p^J) every p-th root taken during the reduction
  // is exact, so the condition is a univariate polynomial in g; its smallest
  // root in the smallest sufficient extension is used.
  void translate_clearing(std::uint32_t target) {
    std::uint64_t Q = 1;
    const std::vector<Fq> uni = clearing_polynomial(cur, target, Q);
    if (uni.empty()) return;
    const std::uint32_t p = ctx().p();
    for (std::uint32_t m = 1;; ++m) {
      const std::uint64_t k = static_cast<std::uint64_t>(ctx().k()) * m;
      std::uint64_t q = 1;
      for (std::uint64_t i = 0; i < k && q <= FieldCtx::kMaxFieldSize; ++i) q *= p;
      if (q > FieldCtx::kMaxFieldSize) throw BudgetExceeded("translation parameter lies outside every supported field");
      const FieldCtx& F = FieldCtx::get(p, static_cast<std::uint32_t>(k));
      std::vector<Fq> lifted;
      for (const Fq& c : uni) lifted.push_back(F.embed(c));
      const auto roots = univariate_roots(lifted);
      if (roots.empty()) continue;
      lift_to(F);
      const Fq b = roots.front().pow(static_cast<std::int64_t>(Q));
      if (!b.is_zero()) step(Mobius::translate(b), F.one());
      return;
    }
  }
};

Fq inf_coeff(const ASCurve& c, std::uint32_t i) {
  const Pole* p = c.pole_at_infinity();
  return p ? p->coeff(i) : c.ctx().zero();
}

// Poles in canonical order, stably sorted by order descending.
std::vector<const Pole*> by_order(const ASCurve& c) {
  std::vector<const Pole*> v;
  for (const auto& p : c.poles()) v.push_back(&p);
  std::stable_sort(v.begin(), v.end(), [](const Pole* a, const Pole* b) { return a->order() > b->order(); });
  return v;
}

std::optional<Fq> where(const Pole* p) {
  if (p->at_infinity) return std::nullopt;
  return p->location;
}

std::map<std::uint32_t, int> multiplicities(const std::vector<std::uint32_t>& orders) {
  std::map<std::uint32_t, int> m;
  for (auto d : orders) ++m[d];
  return m;
}

// Orders (d1, d2) of two poles whose values occur nowhere else; largest first.
std::optional<std::pair<std::uint32_t, std::uint32_t>> two_pole_choice(const std::vector<std::uint32_t>& orders) {
  if (orders.size() < 2) return std::nullopt;
  const auto mult = multiplicities(orders);
  std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
  auto consider = [&](std::uint32_t a, std::uint32_t b) {
    std::pair<std::uint32_t, std::uint32_t> c{a, b};
    if (!best || c > *best) best = c;
  };
  for (const auto& [v, m] : mult) {
    if (m == 2) consider(v, v);
    if (m != 1) continue;
    for (const auto& [w, n] : mult)
      if (n == 1 && w < v) consider(v, w);
  }
  return best;
}

// Orders of three poles whose values occur nowhere else; largest first.
std::optional<std::vector<std::uint32_t>> three_pole_choice(const std::vector<std::uint32_t>& orders) {
  if (orders.size() < 3) return std::nullopt;
  const auto mult = multiplicities(orders);
  std::vector<std::uint32_t> vals;
  for (const auto& [v, m] : mult) vals.push_back(v);
  std::optional<std::vector<std::uint32_t>> best;
  const std::size_t n = vals.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::uint32_t> pick;
    int total = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) {
        total += mult.at(vals[i]);
        for (int j = 0; j < mult.at(vals[i]); ++j) pick.push_back(vals[i]);
      }
    if (total != 3) continue;
    std::sort(pick.rbegin(), pick.rend());
    if (!best || pick > *best) best = pick;
  }
  return best;
}

// Picks poles with the given orders, in canonical order.
std::vector<const Pole*> pick_poles(const ASCurve& c, const std::vector<std::uint32_t>& wanted) {
  std::vector<const Pole*> out;
  std::vector<bool> used(c.poles().size(), false);
  for (auto d : wanted) {
    for (std::size_t i = 0; i < c.poles().size(); ++i) {
      if (!used[i] && c.poles()[i].order() == d) {
        used[i] = true;
        out.push_back(&c.poles()[i]);
        break;
      }
    }
  }
  return out;
}

bool has_tie(const ASCurve& c, const std::vector<std::uint32_t>& wanted) {
  const auto mult = multiplicities(c.orders());
  const auto w = multiplicities(wanted);
  for (const auto& [v, m] : w)
    if (m > 1 || mult.at(v) > m) return true;
  return false;
}

// Sends the listed poles to infinity, 0 and 1 (as many as given).
void place(Work& w, const std::vector<const Pole*>& ps) {
  const FieldCtx& F = w.ctx();
  std::optional<Fq> P = where(ps[0]);
  std::optional<Fq> Q = ps.size() > 1 ? where(ps[1]) : std::nullopt;
  Mobius N = Mobius::identity(F);
  if (ps.size() >= 3) {
    N = Mobius::cross_ratio(F, P, Q, where(ps[2]));
  } else if (ps.size() == 2) {
    // x -> (x - Q)/(x - P) with infinity conventions.
    if (!P) N = {F.one(), -*Q, F.zero(), F.one()};
    else if (!Q) N = {F.zero(), F.one(), F.one(), -*P};
    else N = {F.one(), -*Q, F.one(), -*P};
  } else {
    if (P) N = {F.zero(), F.one(), F.one(), -*P};
  }
  if (N.a.is_one() && N.b.is_zero() && N.c.is_zero() && N.d.is_one()) return;
  w.step(N.inverse(), F.one());
}

bool no_p_powers(const ASCurve& c) {
  const std::uint32_t p = c.p();
  for (const auto& pole : c.poles())
    for (std::uint32_t i = p; i <= pole.order(); i += p)
      if (!pole.coeff(i).is_zero()) return false;
  return true;
}

bool monic_at_infinity(const ASCurve& c) {
  const Pole* inf = c.pole_at_infinity();
  return inf && inf->tail.back().is_one();
}

// Orders at infinity, 0 and 1 equal `want` (as many as listed).
bool placed(const ASCurve& c, const std::vector<std::uint32_t>& want) {
  const FieldCtx& F = c.ctx();
  const Pole* slots[3] = {c.pole_at_infinity(), c.pole_at(F.zero()), c.pole_at(F.one())};
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!slots[i] || slots[i]->order() != want[i]) return false;
  return true;
}

bool p3_applicable(std::uint32_t p, std::uint32_t d) { return p3_depressed_applicable(p, d); }

}  // namespace

bool p3_depressed_applicable(std::uint32_t p, std::uint32_t d) {
  return p == 3 && (d == 4 || (d >= 7 && d % 3 == 1 && d % 9 != 1));
}

// ---------------------------------------------------------------- Pole / ASCurve

Fq Pole::coeff(std::uint32_t i) const {
  if (i == 0 || i > tail.size()) return tail.empty() ? Fq() : tail.front().ctx().zero();
  return tail[i - 1];
}

bool Pole::operator==(const Pole& o) const {
  if (at_infinity != o.at_infinity || tail != o.tail) return false;
  return at_infinity || location == o.location;
}

ASCurve::ASCurve(const FieldCtx& ctx, std::vector<Pole> poles) : ctx_(&ctx) {
  for (auto& p : poles) {
    trim(p.tail);
    if (p.tail.empty()) continue;
    for (const auto& x : p.tail)
      if (x.ctx_ptr() != ctx_) throw InputError("pole coefficient from a different field");
    if (!p.at_infinity && p.location.ctx_ptr() != ctx_) throw InputError("pole location from a different field");
    poles_.push_back(std::move(p));
  }
  canonicalize();
  for (std::size_t i = 0; i + 1 < poles_.size(); ++i) {
    const Pole& a = poles_[i];
    for (std::size_t j = i + 1; j < poles_.size(); ++j) {
      const Pole& b = poles_[j];
      if (a.at_infinity == b.at_infinity && (a.at_infinity || a.location == b.location))
        throw InputError("two poles at the same location");
    }
  }
}

void ASCurve::canonicalize() {
  std::sort(poles_.begin(), poles_.end(), [](const Pole& a, const Pole& b) {
    if (a.at_infinity != b.at_infinity) return a.at_infinity;
    if (a.order() != b.order()) return a.order() > b.order();
    if (a.at_infinity) return false;
    return location_less(a.location, b.location);
  });
}

std::vector<std::uint32_t> ASCurve::orders() const {
  std::vector<std::uint32_t> o;
  for (const auto& p : poles_) o.push_back(p.order());
  std::sort(o.rbegin(), o.rend());
  return o;
}

const Pole* ASCurve::pole_at_infinity() const {
  for (const auto& p : poles_)
    if (p.at_infinity) return &p;
  return nullptr;
}

const Pole* ASCurve::pole_at(const Fq& location) const {
  for (const auto& p : poles_)
    if (!p.at_infinity && p.location == location) return &p;
  return nullptr;
}

ASCurve ASCurve::lift(const FieldCtx& target) const {
  if (&target == ctx_) return *this;
  std::vector<Pole> out = poles_;
  for (auto& p : out) {
    if (!p.at_infinity) p.location = target.embed(p.location);
    for (auto& x : p.tail) x = target.embed(x);
  }
  return ASCurve(target, std::move(out));
}

// ---------------------------------------------------------------- Mobius

Mobius Mobius::identity(const FieldCtx& F) { return {F.one(), F.zero(), F.zero(), F.one()}; }
Mobius Mobius::scale(const Fq& alpha) {
  const FieldCtx& F = alpha.ctx();
  return {alpha, F.zero(), F.zero(), F.one()};
}
Mobius Mobius::translate(const Fq& beta) {
  const FieldCtx& F = beta.ctx();
  return {F.one(), beta, F.zero(), F.one()};
}
Mobius Mobius::affine(const Fq& alpha, const Fq& beta) {
  const FieldCtx& F = alpha.ctx();
  return {alpha, beta, F.zero(), F.one()};
}

Mobius Mobius::cross_ratio(const FieldCtx& F, std::optional<Fq> P, std::optional<Fq> Q, std::optional<Fq> R) {
  const Fq one = F.one();
  const Fq zero = F.zero();
  Mobius m;
  if (!P) {
    if (!Q || !R) throw DomainError("cross ratio of coincident points");
    m = {one, -*Q, zero, *R - *Q};
  } else if (!Q) {
    if (!R) throw DomainError("cross ratio of coincident points");
    m = {zero, *R - *P, one, -*P};
  } else if (!R) {
    m = {one, -*Q, one, -*P};
  } else {
    m = {*R - *P, -*Q * (*R - *P), *R - *Q, -*P * (*R - *Q)};
  }
  if (m.det().is_zero()) throw DomainError("cross ratio of coincident points");
  return m;
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius Mobius::compose(const Mobius& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::optional<Fq> Mobius::apply(std::optional<Fq> x) const {
  if (!x) {
    if (c.is_zero()) return std::nullopt;
    return a / c;
  }
  const Fq den = c * *x + d;
  if (den.is_zero()) return std::nullopt;
  return (a * *x + b) / den;
}

Mobius Mobius::lift(const FieldCtx& F) const { return {F.embed(a), F.embed(b), F.embed(c), F.embed(d)}; }

std::string Mobius::to_string() const {
  return "(" + a.to_string() + "*x+" + b.to_string() + ")/(" + c.to_string() + "*x+" + d.to_string() + ")";
}

// ---------------------------------------------------------------- conversions

std::vector<TailT<Fq>> to_tails(const std::vector<Pole>& poles) {
  std::vector<TailT<Fq>> out;
  for (const auto& p : poles) {
    TailT<Fq> t;
    t.at_infinity = p.at_infinity;
    t.location = p.at_infinity ? (p.tail.empty() ? Fq() : p.tail.front().ctx().zero()) : p.location;
    t.coeffs = p.tail;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Pole> from_tails(const std::vector<TailT<Fq>>& tails) {
  std::vector<Pole> out;
  for (const auto& t : tails) {
    Pole p;
    p.at_infinity = t.at_infinity;
    p.location = t.location;
    p.tail = t.coeffs;
    trim(p.tail);
    if (!p.tail.empty()) out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------- isomorphisms

std::string to_string(StandardFormVariant v) {
  switch (v) {
    case StandardFormVariant::theorem33: return "theorem33";
    case StandardFormVariant::farnell: return "farnell";
    case StandardFormVariant::p3depressed: return "p3depressed";
    case StandardFormVariant::twoPoleGeneral: return "twoPoleGeneral";
    case StandardFormVariant::threePlus: return "threePlus";
  }
  return "?";
}

StandardFormVariant variant_from_string(const std::string& s) {
  for (auto v : {StandardFormVariant::theorem33, StandardFormVariant::farnell, StandardFormVariant::p3depressed,
                 StandardFormVariant::twoPoleGeneral, StandardFormVariant::threePlus})
    if (to_string(v) == s) return v;
  throw InputError("unknown standard form variant '" + s + "'");
}

ASCurve eliminate_p_powers(const ASCurve& c, std::vector<Pole>& h) {
  return transform(c, Mobius::identity(c.ctx()), c.ctx().one(), &h);
}

ASCurve eliminate_p_powers(const ASCurve& c) {
  std::vector<Pole> h;
  return eliminate_p_powers(c, h);
}

std::vector<Pole> solve_h(const ASCurve& c, const Mobius& M, const Fq& lambda) {
  const FieldCtx& F = larger(c.ctx(), M.a.ctx());
  std::vector<Pole> h;
  transform(c.lift(F), M.lift(F), F.embed(lambda), &h);
  return h;
}

ASCurve apply_isomorphism(const ASCurve& c, const IsomorphismData& iso) {
  const FieldCtx& F = larger(c.ctx(), iso.M.a.ctx());
  const Fq lambda = F.embed(iso.lambda);
  if (!lambda.pow(F.p() - 1).is_one()) throw InputError("lambda must lie in F_p^*");
  std::vector<Pole> h;
  ASCurve out = transform(c.lift(F), iso.M.lift(F), lambda, &h);
  if (!iso.h.empty()) {
    std::vector<Pole> given = iso.h;
    for (auto& p : given) {
      if (!p.at_infinity) p.location = F.embed(p.location);
      for (auto& x : p.tail) x = F.embed(x);
      trim(p.tail);
    }
    std::erase_if(given, [](const Pole& p) { return p.tail.empty(); });
    std::sort(given.begin(), given.end(), [](const Pole& x, const Pole& y) {
      if (x.at_infinity != y.at_infinity) return x.at_infinity;
      return location_less(x.location, y.location);
    });
    if (given != h) throw VerificationError("supplied h does not match the one forced by (M, lambda)");
  }
  return out;
}

IsomorphismData inverse_isomorphism(const ASCurve& c, const IsomorphismData& iso) {
  const ASCurve image = apply_isomorphism(c, iso);
  IsomorphismData inv;
  inv.M = iso.M.inverse();
  inv.lambda = iso.lambda.inv();
  inv.h = solve_h(image, inv.M, inv.lambda);
  return inv;
}

// ---------------------------------------------------------------- standard forms

bool variant_applicable(const ASCurve& c, StandardFormVariant v) {
  const auto o = c.orders();
  switch (v) {
    case StandardFormVariant::theorem33: return true;
    case StandardFormVariant::farnell: return o.size() == 1 && o[0] % c.p() != 1;
    case StandardFormVariant::p3depressed: return o.size() == 1 && p3_applicable(c.p(), o[0]);
    case StandardFormVariant::twoPoleGeneral: return two_pole_choice(o).has_value();
    case StandardFormVariant::threePlus: return three_pole_choice(o).has_value();
  }
  return false;
}

bool is_standard_form(const ASCurve& c, StandardFormVariant v) {
  if (!variant_applicable(c, v) || !no_p_powers(c)) return false;
  const auto o = c.orders();
  switch (v) {
    case StandardFormVariant::theorem33:
      if (o.size() == 1) return placed(c, o) && monic_at_infinity(c) && inf_coeff(c, 1).is_zero();
      if (o.size() == 2) return placed(c, o) && monic_at_infinity(c);
      return placed(c, {o[0], o[1], o[2]});
    case StandardFormVariant::farnell:
      return placed(c, o) && monic_at_infinity(c) && inf_coeff(c, o[0] - 1).is_zero();
    case StandardFormVariant::p3depressed:
      return placed(c, o) && monic_at_infinity(c) && inf_coeff(c, o[0] - 3).is_zero();
    case StandardFormVariant::twoPoleGeneral: {
      const auto pick = *two_pole_choice(o);
      return placed(c, {pick.first, pick.second}) && monic_at_infinity(c);
    }
    case StandardFormVariant::threePlus: return placed(c, *three_pole_choice(o));
  }
  return false;
}

StandardFormResult to_standard_form(const ASCurve& c0, StandardFormVariant v) {
  if (!variant_applicable(c0, v)) {
    std::string why = "variant " + to_string(v) + " does not apply to " + c0.component().partition_string();
    if (v == StandardFormVariant::p3depressed && c0.p() == 3 && c0.orders().size() == 1 && c0.orders()[0] % 9 == 1)
      why += " (d = 1 mod 9: the depressed form may not exist)";
    throw InputError(why);
  }
  const ASCurve c = eliminate_p_powers(c0);
  Work w(c);
  const auto o = c.orders();
  const std::uint32_t d = o[0];

  auto one_pole_setup = [&]() {
    place(w, {by_order(w.cur)[0]});
    w.make_monic();
  };

  switch (v) {
    case StandardFormVariant::theorem33:
      if (o.size() == 1) {
        one_pole_setup();
        w.translate_clearing(1);
      } else {
        const auto ranked = by_order(w.cur);
        const std::size_t n = std::min<std::size_t>(3, ranked.size());
        std::vector<const Pole*> ps(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
        std::vector<std::uint32_t> want;
        for (auto* p : ps) want.push_back(p->order());
        if (has_tie(w.cur, want)) w.notes.push_back("tie among pole orders broken by canonical location order");
        place(w, ps);
        if (o.size() == 2) w.make_monic();
      }
      break;
    case StandardFormVariant::farnell: {
      one_pole_setup();
      const Fq top = inf_coeff(w.cur, d - 1);
      if (!top.is_zero()) {
        const Fq beta = -top / w.ctx().from_int(d);
        w.step(Mobius::translate(beta), w.ctx().one());
      }
      break;
    }
    case StandardFormVariant::p3depressed:
      one_pole_setup();
      w.translate_clearing(d - 3);
      break;
    case StandardFormVariant::twoPoleGeneral: {
      const auto pick = *two_pole_choice(o);
      const auto ps = pick_poles(w.cur, {pick.first, pick.second});
      if (has_tie(w.cur, {pick.first, pick.second}))
        w.notes.push_back("tie among pole orders broken by canonical location order");
      place(w, ps);
      w.make_monic();
      break;
    }
    case StandardFormVariant::threePlus: {
      const auto pick = *three_pole_choice(o);
      if (has_tie(w.cur, pick)) w.notes.push_back("tie among pole orders broken by canonical location order");
      place(w, pick_poles(w.cur, pick));
      break;
    }
  }

  StandardFormResult res{w.cur, {w.M, w.lambda, {}, w.notes}};
  const ASCurve orig = c0.lift(w.ctx());
  res.witness.h = solve_h(orig, w.M, w.lambda);
  if (apply_isomorphism(orig, res.witness) != res.curve)
    throw VerificationError("standard form witness does not reproduce the curve");
  if (!is_standard_form(res.curve, v)) throw VerificationError("standard form check failed for " + to_string(v));
  return res;
}

// ---------------------------------------------------------------- text format

namespace {

class CurveParser {
 public:
  explicit CurveParser(const std::string& s) : s_(s) {}

  ASCurve parse(std::vector<std::string>* warnings, bool strict) {
    ws();
    expect_word("p");
    ws();
    expect('=');
    const std::int64_t p = integer();
    ws();
    expect(';');
    ws();
    std::int64_t k = 1;
    if (s_.compare(pos_, 3, "ext") == 0) {
      pos_ += 3;
      ws();
      expect('=');
      k = integer();
      ws();
      expect(';');
    }
    try {
      F_ = &ext_field(p, k);
    } catch (const InputError& e) {
      throw ParseError(e.what(), 0);
    }
    ws();
    if (pos_ >= s_.size()) throw ParseError("empty curve", pos_);
    bool first = true;
    bool constant = false;
    while (true) {
      ws();
      if (pos_ >= s_.size()) break;
      bool neg = false;
      if (peek() == '+' || peek() == '-') {
        neg = peek() == '-';
        ++pos_;
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      ws();
      constant |= term(neg);
    }
    std::vector<Pole> poles;
    if (!inf_.empty()) poles.push_back({true, F_->zero(), inf_});
    for (auto& [idx, tail] : fin_) poles.push_back({false, F_->from_index(idx), tail});
    bool any_pow = false;
    for (auto& pl : poles) {
      trim(pl.tail);
      for (std::uint32_t i = F_->p(); i <= pl.tail.size(); i += F_->p())
        if (!pl.tail[i - 1].is_zero()) any_pow = true;
    }
    if (constant && warnings) warnings->push_back("constant term dropped");
    ASCurve raw(*F_, std::move(poles));
    if (raw.poles().empty()) throw DomainError("f is constant");
    if (any_pow) {
      if (strict) throw InputError("exponent divisible by p (pole order must not be a multiple of p)");
      ASCurve red = eliminate_p_powers(raw);
      if (warnings) warnings->push_back("reduced: p-power terms eliminated");
      return red;
    }
    return raw;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  void expect_word(const char* w) {
    const std::string ww(w);
    if (s_.compare(pos_, ww.size(), ww) != 0) throw ParseError("expected '" + ww + "'", pos_);
    pos_ += ww.size();
  }
  std::int64_t integer() {
    ws();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1ll << 40)) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an integer", pos_);
    return v;
  }
  std::uint32_t exponent() {
    ws();
    if (peek() != '^') return 1;
    ++pos_;
    const std::size_t at = pos_;
    const std::int64_t e = integer();
    if (e < 1 || e > 100000) throw ParseError("exponent out of range", at);
    return static_cast<std::uint32_t>(e);
  }
  bool at_x() {
    ws();
    return peek() == 'x' && !std::isalnum(static_cast<unsigned char>(pos_ + 1 < s_.size() ? s_[pos_ + 1] : ' '));
  }

  Fq atom() {
    ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return F_->from_int(integer() % F_->p());
    if (c == 't') {
      if (F_->k() == 1) throw ParseError("generator 't' needs ext >= 2", pos_);
      ++pos_;
      return F_->gen().pow(exponent());
    }
    if (c == '(') {
      ++pos_;
      const Fq v = sum();
      ws();
      expect(')');
      return v;
    }
    throw ParseError("expected a coefficient", pos_);
  }
  Fq product() {
    Fq v = atom();
    while (true) {
      ws();
      if (peek() != '*') return v;
      const std::size_t save = pos_;
      ++pos_;
      if (at_x()) {
        pos_ = save;
        return v;
      }
      v *= atom();
    }
  }
  Fq sum() {
    ws();
    Fq v = F_->zero();
    bool first = true;
    while (true) {
      ws();
      bool neg = false;
      if (peek() == '+' || peek() == '-') {
        neg = peek() == '-';
        ++pos_;
      } else if (!first) {
        return v;
      }
      first = false;
      const Fq t = product();
      v += neg ? -t : t;
    }
  }

  void add(std::vector<Fq>& tail, std::uint32_t i, const Fq& c) {
    if (tail.size() < i) tail.resize(i, F_->zero());
    tail[i - 1] += c;
  }

  // Returns true for a constant term.
  bool term(bool neg) {
    Fq c = F_->one();
    if (!at_x()) c = product();
    if (neg) c = -c;
    ws();
    if (at_x()) {
      ++pos_;
      add(inf_, exponent(), c);
      return false;
    }
    if (peek() == '*') {
      ++pos_;
      if (!at_x()) throw ParseError("expected 'x'", pos_);
      ++pos_;
      add(inf_, exponent(), c);
      return false;
    }
    if (peek() == '/') {
      ++pos_;
      ws();
      Fq theta = F_->zero();
      if (at_x()) {
        ++pos_;
      } else if (peek() == '(') {
        ++pos_;
        if (!at_x()) throw ParseError("expected 'x'", pos_);
        ++pos_;
        ws();
        if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
        theta = -sum();
        ws();
        expect(')');
      } else {
        throw ParseError("expected 'x' or '(x-...)'", pos_);
      }
      add(fin_[theta.index()], exponent(), c);
      return false;
    }
    return true;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const FieldCtx* F_ = nullptr;
  std::vector<Fq> inf_;
  std::map<std::uint32_t, std::vector<Fq>> fin_;
};

}  // namespace

std::vector<Fq> clearing_translations(const ASCurve& c, std::uint32_t target) {
  std::uint64_t Q = 1;
  const std::vector<Fq> uni = clearing_polynomial(c, target, Q);
  if (uni.empty()) return c.ctx().elements();
  std::vector<Fq> out;
  for (const Fq& g : univariate_roots(uni)) out.push_back(g.pow(static_cast<std::int64_t>(Q)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ASCurve parse_curve(const std::string& text, std::vector<std::string>* warnings, bool strict) {
  return CurveParser(text).parse(warnings, strict);
}

std::string render_curve(const ASCurve& c) {
  std::ostringstream os;
  os << "p=" << c.p() << "; ";
  if (c.ctx().k() > 1) os << "ext=" << c.ctx().k() << "; ";
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) os << " + ";
    os << s;
    first = false;
  };
  for (const auto& pole : c.poles()) {
    for (std::uint32_t i = pole.order(); i >= 1; --i) {
      const Fq& a = pole.tail[i - 1];
      if (a.is_zero()) continue;
      const std::string e = i > 1 ? "^" + std::to_string(i) : "";
      if (pole.at_infinity) {
        emit((a.is_one() ? "" : a.to_string() + "*") + "x" + e);
      } else if (pole.location.is_zero()) {
        emit(a.to_string() + "/x" + e);
      } else {
        emit(a.to_string() + "/(x-" + pole.location.to_string() + ")" + e);
      }
    }
  }
  return os.str();
}

}  // namespace asinv
