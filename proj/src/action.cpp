#include "asinv/action.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "asinv/errors.hpp"
#include "json.hpp"

namespace asinv {

namespace {

std::map<std::uint32_t, int> multiplicities(const std::vector<std::uint32_t>& orders) {
  std::map<std::uint32_t, int> m;
  for (auto d : orders) ++m[d];
  return m;
}

const FieldCtx& larger(const FieldCtx& a, const FieldCtx& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return FieldCtx::get(a.p(), std::lcm(a.k(), b.k()));
}

std::vector<Fq> lift_point(std::span<const Fq> x, const FieldCtx& F) {
  std::vector<Fq> out;
  out.reserve(x.size());
  for (const Fq& v : x) out.push_back(F.embed(v));
  return out;
}

// Names of the free coefficients of one pole: "a" when there is just one,
// otherwise "a1", "a2", ...
std::vector<std::string> tail_names(const std::string& letter, const std::vector<bool>& free, bool force_index) {
  const auto n = std::count(free.begin(), free.end(), true);
  std::vector<std::string> out(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (!free[i]) continue;
    out[i] = (n == 1 && !force_index) ? letter : letter + std::to_string(i + 1);
  }
  return out;
}

Slot make_slot(Slot::Where where, std::uint32_t order, std::uint32_t p, const std::string& letter,
               const std::vector<std::uint32_t>& zeros, bool monic, bool force_index = false) {
  Slot s;
  s.where = where;
  s.order = order;
  std::vector<bool> free(order, true);
  s.fixed.assign(order, 0);
  for (std::uint32_t i = 1; i <= order; ++i)
    if (i % p == 0) free[i - 1] = false;
  for (auto z : zeros)
    if (z >= 1 && z <= order) free[z - 1] = false;
  if (monic) {
    free[order - 1] = false;
    s.fixed[order - 1] = 1;
  }
  s.coeff = tail_names(letter, free, force_index);
  return s;
}

// Extra poles beyond the distinguished ones, largest order first.
void add_extras(Family& f, const std::vector<std::uint32_t>& extra) {
  const bool single = extra.size() == 1;
  const bool all_simple = std::all_of(extra.begin(), extra.end(), [](auto d) { return d == 1; });
  std::map<std::uint32_t, int> group_of;
  for (std::size_t j = 0; j < extra.size(); ++j) {
    const std::uint32_t d = extra[j];
    if (!group_of.count(d)) group_of[d] = static_cast<int>(group_of.size());
    Slot s;
    if (single) {
      s = make_slot(Slot::Where::param, d, f.p, "e", {}, false);
      s.theta = "theta";
    } else if (all_simple) {
      s = make_slot(Slot::Where::param, d, f.p, "e" + std::to_string(j + 1), {}, false);
      s.theta = "theta" + std::to_string(j + 1);
    } else {
      const std::string base = "e" + std::to_string(j + 1);
      s = make_slot(Slot::Where::param, d, f.p, d == 1 ? base : base + "_", {}, false, d > 1);
      if (d == 1) s.coeff[0] = base;
      s.theta = "theta" + std::to_string(j + 1);
    }
    s.group = group_of[d];
    f.slots.push_back(std::move(s));
  }
}

std::string coef_term(const std::string& name, const std::string& rest) {
  if (rest.empty()) return name;
  return name + "*" + rest;
}

std::string render_form(const Family& f) {
  if (f.kind == FormKind::pairedTwoTwo) return "x^2 + a1*x + b1/x + b2/x^2 + (e1*x + e2)/(x^2 + e3*x + e4)";
  if (f.kind == FormKind::fivePoles) return "a*x + b/x + c/(x-1) + (t*x + r)/(x^2 - s*x + u)";
  std::vector<std::string> terms;
  for (const auto& s : f.slots) {
    for (std::uint32_t i = s.order; i >= 1; --i) {
      std::string name = s.coeff[i - 1];
      if (name.empty()) {
        if (s.fixed[i - 1] == 0) continue;
        name = std::to_string(s.fixed[i - 1]);
      }
      const std::string pw = i == 1 ? "" : "^" + std::to_string(i);
      switch (s.where) {
        case Slot::Where::infinity:
          if (name == "1") terms.push_back("x" + pw);
          else terms.push_back(coef_term(name, "x" + pw));
          break;
        case Slot::Where::zero: terms.push_back(name + "/x" + pw); break;
        case Slot::Where::one: terms.push_back(name + "/(x-1)" + pw); break;
        case Slot::Where::param: terms.push_back(name + "/(x-" + s.theta + ")" + pw); break;
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
  return out;
}

VarTable slot_vars(const std::vector<Slot>& slots) {
  std::vector<std::string> names;
  for (const auto& s : slots)
    for (const auto& n : s.coeff)
      if (!n.empty()) names.push_back(n);
  for (const auto& s : slots)
    if (s.where == Slot::Where::param) names.push_back(s.theta);
  return make_vars(names);
}

std::size_t index_of(const VarTable& vars, const std::string& name) {
  auto i = var_index(vars, name);
  if (!i) throw VerificationError("unknown variable " + name);
  return *i;
}

// Two distinct roots of x^2 + b x + c, in F or its quadratic extension.
std::pair<Fq, Fq> quadratic_roots(const Fq& b, const Fq& c) {
  const FieldCtx* F = &b.ctx();
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Fq> co{F->embed(c), F->embed(b), F->one()};
    auto r = univariate_roots(co);
    if (r.size() == 2) return {r[0], r[1]};
    if (r.size() == 1) throw DomainError("repeated root: two poles coincide");
    F = &FieldCtx::get(F->p(), F->k() * 2);
  }
  throw DomainError("quadratic without roots");
}

}  // namespace

// ---------------------------------------------------------------- road map

CaseInfo classify_case(std::uint32_t p, std::vector<std::uint32_t> orders) {
  describe(p, orders);  // validation
  std::sort(orders.begin(), orders.end(), std::greater<>());
  const auto mult = multiplicities(orders);
  CaseInfo info;
  const std::size_t n = orders.size();
  std::vector<std::uint32_t> uniques;
  for (auto it = mult.rbegin(); it != mult.rend(); ++it)
    if (it->second == 1) uniques.push_back(it->first);
  if (n == 1) {
    info.branch = 1;
    info.distinguished = {orders[0]};
    info.route = "one pole: sent to infinity";
  } else if (n == 2) {
    info.branch = 2;
    info.distinguished = orders;
    info.route = orders[0] == orders[1] ? "two poles of equal order at infinity and 0"
                                        : "two poles of distinct order at infinity and 0";
  } else if (n == 3) {
    info.branch = 3;
    info.distinguished = orders;
    info.route = "three poles at infinity, 0, 1";
  } else if (uniques.size() >= 3) {
    info.branch = 4;
    info.distinguished = {uniques[0], uniques[1], uniques[2]};
    info.route = "three orders of multiplicity one at infinity, 0, 1";
  } else if (uniques.size() == 2) {
    info.branch = 5;
    info.distinguished = {uniques[0], uniques[1]};
    info.route = "two orders of multiplicity one at infinity and 0";
  } else {
    std::optional<std::uint32_t> triple;
    for (const auto& [v, m] : mult)
      if (m == 3) triple = v;  // ascending, so the largest wins
    if (triple) {
      info.branch = 6;
      info.distinguished = {*triple, *triple, *triple};
      info.route = "an order of multiplicity three at infinity, 0, 1";
    } else {
      int mmin = static_cast<int>(n);
      for (const auto& [v, m] : mult) mmin = std::min(mmin, m);
      std::uint32_t d1 = 0;
      for (const auto& [v, m] : mult)
        if (m == mmin) d1 = std::max(d1, v);
      info.branch = 7;
      info.distinguished = {d1};
      info.route = "largest order among those of smallest multiplicity at infinity";
    }
  }
  info.orders = info.distinguished;
  std::vector<std::uint32_t> rest = orders;
  for (auto d : info.distinguished) rest.erase(std::find(rest.begin(), rest.end(), d));
  info.orders.insert(info.orders.end(), rest.begin(), rest.end());
  return info;
}

// ---------------------------------------------------------------- families

Family standard_family(std::uint32_t p, const std::vector<std::uint32_t>& orders) {
  Family f;
  f.p = p;
  f.comp = describe(p, orders);
  f.info = classify_case(p, orders);
  const auto& o = f.comp.orders;  // descending
  using W = Slot::Where;
  auto extras_after = [&](const std::vector<std::uint32_t>& dist) {
    std::vector<std::uint32_t> rest = o;
    for (auto d : dist) rest.erase(std::find(rest.begin(), rest.end(), d));
    return rest;
  };
  switch (f.info.branch) {
    case 1: {
      const std::uint32_t d = o[0];
      f.kind = FormKind::onePole;
      std::vector<std::uint32_t> zeros;
      if (d % p != 1) {
        f.variant = StandardFormVariant::farnell;
        zeros = {d - 1};
      } else if (p3_depressed_applicable(p, d)) {
        f.variant = StandardFormVariant::p3depressed;
        zeros = {d - 3};
      } else {
        f.variant = StandardFormVariant::theorem33;
        zeros = {1};
      }
      f.slots.push_back(make_slot(W::infinity, d, p, "a", zeros, true));
      break;
    }
    case 2:
    case 5: {
      const auto& dist = f.info.distinguished;
      f.kind = FormKind::twoPole;
      f.variant = StandardFormVariant::twoPoleGeneral;
      f.slots.push_back(make_slot(W::infinity, dist[0], p, "a", {}, true));
      f.slots.push_back(make_slot(W::zero, dist[1], p, "b", {}, false));
      add_extras(f, extras_after(dist));
      break;
    }
    case 3:
    case 4:
    case 6: {
      const auto& dist = f.info.distinguished;
      f.kind = FormKind::threePlus;
      f.variant = StandardFormVariant::threePlus;
      f.slots.push_back(make_slot(W::infinity, dist[0], p, "a", {}, false));
      f.slots.push_back(make_slot(W::zero, dist[1], p, "b", {}, false));
      f.slots.push_back(make_slot(W::one, dist[2], p, "c", {}, false));
      add_extras(f, extras_after(dist));
      break;
    }
    default: {
      if (o == std::vector<std::uint32_t>{1, 1, 1, 1, 1}) {
        f.kind = FormKind::fivePoles;
        f.variant = StandardFormVariant::theorem33;
        f.vars = make_vars({"a", "b", "c", "s", "u", "t", "r"});
      } else if (o == std::vector<std::uint32_t>{2, 2, 1, 1} && p == 3) {
        f.kind = FormKind::pairedTwoTwo;
        f.variant = StandardFormVariant::twoPoleGeneral;
        f.vars = make_vars({"a1", "b1", "b2", "e1", "e2", "e3", "e4"});
      } else {
        // Generic layout: the three largest orders at infinity, 0, 1.
        f.kind = FormKind::threePlus;
        f.variant = StandardFormVariant::theorem33;
        f.slots.push_back(make_slot(W::infinity, o[0], p, "a", {}, false));
        f.slots.push_back(make_slot(W::zero, o[1], p, "b", {}, false));
        f.slots.push_back(make_slot(W::one, o[2], p, "c", {}, false));
        add_extras(f, std::vector<std::uint32_t>(o.begin() + 3, o.end()));
      }
      break;
    }
  }
  if (!f.slots.empty()) f.vars = slot_vars(f.slots);
  f.form = render_form(f);
  return f;
}

ASCurve curve_from_point(const Family& fam, std::span<const Fq> point) {
  if (point.size() != fam.vars->size()) throw InputError("point has the wrong number of coordinates");
  if (point.empty()) {
    // No free coefficients: the monic monomial.
    const FieldCtx& F = FieldCtx::get(fam.p);
    Pole pl{true, F.zero(), std::vector<Fq>(fam.slots[0].order, F.zero())};
    pl.tail.back() = F.one();
    return ASCurve(F, {pl});
  }
  const FieldCtx& F0 = point[0].ctx();
  auto val = [&](const std::string& n) { return point[index_of(fam.vars, n)]; };
  if (fam.kind == FormKind::fivePoles || fam.kind == FormKind::pairedTwoTwo) {
    const bool five = fam.kind == FormKind::fivePoles;
    // Simple poles phi1, phi2 of (t x + r)/(x^2 - s x + u), resp. (e1 x + e2)/(x^2 + e3 x + e4).
    const Fq b = five ? -val("s") : val("e3");
    const Fq c = five ? val("u") : val("e4");
    const Fq t = five ? val("t") : val("e1");
    const Fq r = five ? val("r") : val("e2");
    auto [phi1, phi2] = quadratic_roots(b, c);
    const FieldCtx& F = phi1.ctx();
    auto E = [&](const Fq& x) { return F.embed(x); };
    const Fq eps1 = (E(t) * phi1 + E(r)) / (phi1 - phi2);
    const Fq eps2 = (E(t) * phi2 + E(r)) / (phi2 - phi1);
    std::vector<Pole> poles;
    if (five) {
      poles.push_back({true, F.zero(), {E(val("a"))}});
      poles.push_back({false, F.zero(), {E(val("b"))}});
      poles.push_back({false, F.one(), {E(val("c"))}});
    } else {
      poles.push_back({true, F.zero(), {E(val("a1")), F.one()}});
      poles.push_back({false, F.zero(), {E(val("b1")), E(val("b2"))}});
    }
    poles.push_back({false, phi1, {eps1}});
    poles.push_back({false, phi2, {eps2}});
    for (const auto& pl : poles)
      if (pl.tail.back().is_zero()) throw DomainError("a pole of the standard form vanishes at this point");
    ASCurve c2(F, poles);
    if (c2.orders() != fam.comp.orders) throw DomainError("point does not lie on the component");
    return c2;
  }
  std::vector<Pole> poles;
  for (const auto& s : fam.slots) {
    Pole pl;
    pl.at_infinity = s.where == Slot::Where::infinity;
    switch (s.where) {
      case Slot::Where::infinity: pl.location = F0.zero(); break;
      case Slot::Where::zero: pl.location = F0.zero(); break;
      case Slot::Where::one: pl.location = F0.one(); break;
      case Slot::Where::param: pl.location = val(s.theta); break;
    }
    for (std::uint32_t i = 1; i <= s.order; ++i)
      pl.tail.push_back(s.coeff[i - 1].empty() ? F0.from_int(s.fixed[i - 1]) : val(s.coeff[i - 1]));
    if (pl.tail.back().is_zero()) throw DomainError("a leading coefficient of the standard form vanishes");
    poles.push_back(std::move(pl));
  }
  ASCurve c(F0, std::move(poles));
  if (c.orders() != fam.comp.orders) throw DomainError("point does not lie on the component");
  return c;
}

std::vector<Fq> point_from_curve(const Family& fam, const ASCurve& c) {
  const FieldCtx& F = c.ctx();
  if (c.orders() != fam.comp.orders) throw InputError("curve has orders outside the family");
  std::vector<Fq> out(fam.vars->size(), F.zero());
  auto set = [&](const std::string& n, const Fq& v) { out[index_of(fam.vars, n)] = v; };
  const Pole* inf = c.pole_at_infinity();
  const Pole* zero = c.pole_at(F.zero());
  const Pole* one = c.pole_at(F.one());
  auto bad = []() { return DomainError("curve is not in the family's standard form"); };
  if (fam.kind == FormKind::fivePoles || fam.kind == FormKind::pairedTwoTwo) {
    const bool five = fam.kind == FormKind::fivePoles;
    if (!inf || !zero || (five && !one)) throw bad();
    std::vector<const Pole*> rest;
    for (const auto& pl : c.poles())
      if (&pl != inf && &pl != zero && (!five || &pl != one)) rest.push_back(&pl);
    if (rest.size() != 2 || rest[0]->order() != 1 || rest[1]->order() != 1) throw bad();
    const Fq p1 = rest[0]->location, p2 = rest[1]->location;
    const Fq e1 = rest[0]->tail[0], e2 = rest[1]->tail[0];
    const Fq t = e1 + e2, r = -(e1 * p2 + e2 * p1);
    if (five) {
      if (inf->order() != 1 || zero->order() != 1 || one->order() != 1) throw bad();
      set("a", inf->tail[0]);
      set("b", zero->tail[0]);
      set("c", one->tail[0]);
      set("s", p1 + p2);
      set("u", p1 * p2);
      set("t", t);
      set("r", r);
    } else {
      if (inf->order() != 2 || !inf->tail[1].is_one() || zero->order() != 2) throw bad();
      set("a1", inf->tail[0]);
      set("b1", zero->tail[0]);
      set("b2", zero->tail[1]);
      set("e1", t);
      set("e2", r);
      set("e3", -(p1 + p2));
      set("e4", p1 * p2);
    }
    return out;
  }
  std::vector<const Pole*> used;
  std::vector<const Pole*> params;
  for (const auto& s : fam.slots) {
    const Pole* pl = nullptr;
    if (s.where == Slot::Where::infinity) pl = inf;
    else if (s.where == Slot::Where::zero) pl = zero;
    else if (s.where == Slot::Where::one) pl = one;
    else continue;
    if (!pl || pl->order() != s.order) throw bad();
    used.push_back(pl);
  }
  for (const auto& pl : c.poles())
    if (std::find(used.begin(), used.end(), &pl) == used.end()) params.push_back(&pl);
  std::size_t k = 0;
  for (const auto& s : fam.slots) {
    const Pole* pl = nullptr;
    switch (s.where) {
      case Slot::Where::infinity: pl = inf; break;
      case Slot::Where::zero: pl = zero; break;
      case Slot::Where::one: pl = one; break;
      case Slot::Where::param:
        if (k >= params.size()) throw bad();
        pl = params[k++];
        if (pl->order() != s.order) throw bad();
        set(s.theta, pl->location);
        break;
    }
    for (std::uint32_t i = 1; i <= s.order; ++i) {
      const Fq v = pl->coeff(i);
      if (s.coeff[i - 1].empty()) {
        if (v != F.from_int(s.fixed[i - 1])) throw bad();
      } else {
        set(s.coeff[i - 1], v);
      }
    }
  }
  return out;
}

StandardFormResult family_standard_form(const Family& fam, const ASCurve& c0) {
  if (c0.orders() != fam.comp.orders) throw InputError("curve belongs to " + c0.component().partition_string() +
                                                       ", not " + fam.comp.partition_string());
  if (fam.kind == FormKind::onePole) return to_standard_form(c0, fam.variant);
  const ASCurve c = eliminate_p_powers(c0);
  // Orders wanted at infinity, 0 (and 1).
  std::vector<std::uint32_t> want;
  bool monic = false;
  if (fam.kind == FormKind::fivePoles) {
    want = {1, 1, 1};
  } else if (fam.kind == FormKind::pairedTwoTwo) {
    want = {2, 2};
    monic = true;
  } else {
    for (const auto& s : fam.slots)
      if (s.where != Slot::Where::param) want.push_back(s.order);
    monic = fam.kind == FormKind::twoPole;
  }
  std::vector<const Pole*> ps;
  for (auto d : want)
    for (const auto& pl : c.poles())
      if (pl.order() == d && std::find(ps.begin(), ps.end(), &pl) == ps.end()) {
        ps.push_back(&pl);
        break;
      }
  if (ps.size() != want.size()) throw VerificationError("pole selection failed");
  std::vector<std::string> notes;
  {
    const auto mult = multiplicities(c.orders());
    const auto w = multiplicities(want);
    for (const auto& [v, m] : w)
      if (m > 1 || mult.at(v) > m) {
        notes.push_back("tie among pole orders broken by canonical location order");
        break;
      }
  }
  const FieldCtx& F = c.ctx();
  auto loc = [](const Pole* pl) -> std::optional<Fq> {
    if (pl->at_infinity) return std::nullopt;
    return pl->location;
  };
  Mobius N = Mobius::identity(F);
  if (ps.size() == 3) {
    N = Mobius::cross_ratio(F, loc(ps[0]), loc(ps[1]), loc(ps[2]));
  } else {
    const auto P = loc(ps[0]);
    const auto Q = loc(ps[1]);
    if (!P) N = {F.one(), -*Q, F.zero(), F.one()};
    else if (!Q) N = {F.zero(), F.one(), F.one(), -*P};
    else N = {F.one(), -*Q, F.one(), -*P};
  }
  Mobius M = N.inverse();
  ASCurve cur = apply_isomorphism(c0, {M, F.one(), {}, {}});
  if (monic) {
    const Pole* inf = cur.pole_at_infinity();
    const Fq target = inf->tail.back().inv();
    const FieldCtx* G = &cur.ctx();
    std::vector<Fq> roots = target.nth_roots(inf->order());
    for (std::uint32_t m = 2; roots.empty(); ++m) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < cur.ctx().k() * m && q <= FieldCtx::kMaxFieldSize; ++i) q *= F.p();
      if (q > FieldCtx::kMaxFieldSize) throw BudgetExceeded("no field small enough contains the required root");
      G = &FieldCtx::get(F.p(), cur.ctx().k() * m);
      roots = G->embed(target).nth_roots(inf->order());
    }
    if (G != &cur.ctx()) {
      notes.push_back("field extended to F_" + std::to_string(G->q()));
      cur = cur.lift(*G);
      M = M.lift(*G);
    }
    if (!roots.front().is_one()) {
      const Mobius S = Mobius::scale(roots.front());
      cur = apply_isomorphism(cur, {S, G->one(), {}, {}});
      M = M.compose(S);
    }
  }
  const FieldCtx& G = cur.ctx();
  StandardFormResult res{cur, {M, G.one(), {}, notes}};
  const ASCurve orig = c0.lift(G);
  res.witness.h = solve_h(orig, M, G.one());
  if (apply_isomorphism(orig, res.witness) != cur)
    throw VerificationError("family standard form witness does not reproduce the curve");
  point_from_curve(fam, cur);  // shape check
  return res;
}

// ---------------------------------------------------------------- symbolic transport

std::vector<SymPole> transport_symbolic(const std::vector<SymPole>& poles, const MobiusT<RationalFn>& M,
                                        const RationalFn& lambda, bool& linearized) {
  std::vector<TailT<RationalFn>> tails;
  for (const auto& pl : poles) tails.push_back({pl.at_infinity, pl.location, pl.tail});
  auto out = compose_tails(tails, M);
  const RationalFn linv = lambda.inv();
  std::vector<SymPole> res;
  for (auto& t : out) {
    std::vector<RationalFn> h;
    linearized |= eliminate_tail_powers(t.coeffs, h);
    for (auto& x : t.coeffs) x = x * linv;
    res.push_back({t.at_infinity, t.location, std::move(t.coeffs)});
  }
  return res;
}

MobiusT<RationalFn> symbolic_cross_ratio(const std::optional<RationalFn>& P, const std::optional<RationalFn>& Q,
                                         const std::optional<RationalFn>& R, const RationalFn& one) {
  const RationalFn zero = one - one;
  if (!P) {
    if (!Q || !R) throw DomainError("cross ratio of coincident points");
    return {one, -*Q, zero, *R - *Q};
  }
  if (!Q) {
    if (!R) throw DomainError("cross ratio of coincident points");
    return {zero, *R - *P, one, -*P};
  }
  if (!R) return {one, -*Q, one, -*P};
  return {*R - *P, -*Q * (*R - *P), *R - *Q, -*P * (*R - *Q)};
}

// ---------------------------------------------------------------- action sets

std::string to_string(ActionKind k) {
  switch (k) {
    case ActionKind::diagonal: return "diagonal";
    case ActionKind::linearGroup: return "linear-group";
    case ActionKind::nonlinearGroup: return "nonlinear-group";
    case ActionKind::nonGroup: return "non-group";
  }
  return "?";
}

namespace {

struct Sym {
  const FieldCtx& F;
  VarTable all;
  RationalFn v(const std::string& n) const { return RationalFn::variable(F, all, n); }
  RationalFn c(std::int64_t x) const { return RationalFn::constant(F, all, x); }
  RationalFn c(const Fq& x) const { return RationalFn::constant(F, all, x); }
};

std::vector<SymPole> layout_poles(const Family& fam, const Sym& S) {
  std::vector<SymPole> out;
  for (const auto& s : fam.slots) {
    SymPole sp;
    sp.at_infinity = s.where == Slot::Where::infinity;
    switch (s.where) {
      case Slot::Where::infinity: sp.location = S.c(0); break;
      case Slot::Where::zero: sp.location = S.c(0); break;
      case Slot::Where::one: sp.location = S.c(1); break;
      case Slot::Where::param: sp.location = S.v(s.theta); break;
    }
    for (std::uint32_t i = 1; i <= s.order; ++i)
      sp.tail.push_back(s.coeff[i - 1].empty() ? S.c(s.fixed[i - 1]) : S.v(s.coeff[i - 1]));
    out.push_back(std::move(sp));
  }
  return out;
}

std::string pole_name(const Family& fam, std::size_t i) {
  const auto& s = fam.slots[i];
  switch (s.where) {
    case Slot::Where::infinity: return "inf";
    case Slot::Where::zero: return "0";
    case Slot::Where::one: return "1";
    case Slot::Where::param: return s.theta;
  }
  return "?";
}

// Writes images for slot `slot` from a transported pole.
void read_slot(const Slot& s, const SymPole& pl, const VarTable& vars, std::vector<RationalFn>& images) {
  if (pl.tail.size() != s.order) throw VerificationError("transported pole changed order");
  for (std::uint32_t i = 1; i <= s.order; ++i) {
    if (s.coeff[i - 1].empty()) {
      if (!pl.tail[i - 1].is_constant() ||
          pl.tail[i - 1] != RationalFn::constant(pl.tail[i - 1].ctx(), pl.tail[i - 1].vars(), s.fixed[i - 1]))
        throw VerificationError("transported pole leaves the standard form");
      continue;
    }
    images[index_of(vars, s.coeff[i - 1])] = pl.tail[i - 1];
  }
  if (s.where == Slot::Where::param) images[index_of(vars, s.theta)] = pl.location;
}

// Moebius relabellings of the layout's poles: every ordered triple (P, Q, R)
// with the orders found at infinity, 0, 1 is sent there; remaining poles keep
// their relative order in the parameter slots.
std::vector<CoefficientMap> relabel_maps(const Family& fam, const Sym& S, const std::vector<std::int64_t>& lambdas,
                                         bool& linearized) {
  const auto poles = layout_poles(fam, S);
  const std::size_t n = poles.size();
  std::vector<CoefficientMap> out;
  auto loc = [&](std::size_t i) -> std::optional<RationalFn> {
    if (poles[i].at_infinity) return std::nullopt;
    return poles[i].location;
  };
  for (std::size_t P = 0; P < n; ++P)
    for (std::size_t Q = 0; Q < n; ++Q)
      for (std::size_t R = 0; R < n; ++R) {
        if (P == Q || Q == R || P == R) continue;
        if (fam.slots[P].order != fam.slots[0].order || fam.slots[Q].order != fam.slots[1].order ||
            fam.slots[R].order != fam.slots[2].order)
          continue;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
          if (i != P && i != Q && i != R) rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(),
                         [&](std::size_t x, std::size_t y) { return fam.slots[x].order > fam.slots[y].order; });
        bool fits = true;
        for (std::size_t j = 0; j < rest.size(); ++j)
          if (fam.slots[rest[j]].order != fam.slots[3 + j].order) fits = false;
        if (!fits) continue;
        const auto N = symbolic_cross_ratio(loc(P), loc(Q), loc(R), S.c(1));
        const MobiusT<RationalFn> M{N.d, -N.b, -N.c, N.a};
        for (auto lam : lambdas) {
          const auto moved = transport_symbolic(poles, M, S.c(lam), linearized);
          std::vector<RationalFn> images(fam.vars->size());
          read_slot(fam.slots[0], moved[P], fam.vars, images);
          read_slot(fam.slots[1], moved[Q], fam.vars, images);
          read_slot(fam.slots[2], moved[R], fam.vars, images);
          for (std::size_t j = 0; j < rest.size(); ++j) read_slot(fam.slots[3 + j], moved[rest[j]], fam.vars, images);
          CoefficientMap m;
          m.label = "(" + pole_name(fam, P) + "," + pole_name(fam, Q) + "," + pole_name(fam, R) +
                    ") -> (inf,0,1), lambda=" + std::to_string(lam);
          m.images = std::move(images);
          out.push_back(std::move(m));
        }
      }
  return out;
}

// Permutations of the parameter slots within each group of equal orders.
std::vector<CoefficientMap> slot_permutations(const Family& fam, const Sym& S) {
  std::vector<std::size_t> params;
  for (std::size_t i = 0; i < fam.slots.size(); ++i)
    if (fam.slots[i].where == Slot::Where::param) params.push_back(i);
  std::vector<std::size_t> perm = params;
  std::vector<CoefficientMap> out;
  // Enumerate all permutations of params that preserve groups.
  std::vector<std::size_t> idx(params.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (fam.slots[params[j]].group != fam.slots[params[idx[j]]].group) ok = false;
    if (!ok) continue;
    std::vector<RationalFn> images;
    for (const auto& n : *fam.vars) images.push_back(S.v(n));
    std::string label = "relabel";
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const Slot& to = fam.slots[params[j]];
      const Slot& from = fam.slots[params[idx[j]]];
      images[index_of(fam.vars, to.theta)] = S.v(from.theta);
      for (std::uint32_t i = 0; i < to.order; ++i)
        if (!to.coeff[i].empty()) images[index_of(fam.vars, to.coeff[i])] = S.v(from.coeff[i]);
      label += " " + to.theta + "<-" + from.theta;
    }
    CoefficientMap m;
    m.label = label;
    m.images = std::move(images);
    out.push_back(std::move(m));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// images of g o h as a substitution: first h's formulas, then g's.
CoefficientMap compose_maps(const CoefficientMap& outer, const CoefficientMap& inner, const VarTable& vars) {
  Assignment asg;
  for (std::size_t i = 0; i < vars->size(); ++i) asg[(*vars)[i]] = inner.images[i];
  CoefficientMap m;
  m.label = outer.label + " ; " + inner.label;
  for (const auto& f : outer.images) m.images.push_back(substitute(f, asg));
  return m;
}

std::vector<std::int64_t> all_lambdas(std::uint32_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = 1; l < static_cast<std::int64_t>(p); ++l) out.push_back(l);
  return out;
}

// Diagonal maps x_i -> alpha^{w_i} x_i for alpha^m = 1.
void fill_diagonal(ActionSet& A, const std::vector<std::int64_t>& w, std::int64_t m, const std::string& what) {
  const std::uint32_t p = A.ctx->p();
  const FieldCtx& F = FieldCtx::get(p, FieldCtx::degree_for_roots_of_unity(p, static_cast<std::uint64_t>(m)));
  A.ctx = &F;
  A.weights = w;
  A.modulus = m;
  const Fq zeta = F.primitive().pow(static_cast<std::int64_t>((F.q() - 1) / static_cast<std::uint64_t>(m)));
  for (std::int64_t j = 0; j < m; ++j) {
    const Fq alpha = zeta.pow(j);
    CoefficientMap cm;
    cm.label = what + " alpha=zeta^" + std::to_string(j) + " (zeta of order " + std::to_string(m) + ")";
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::int64_t e = ((w[i] % m) + m) % m;
      cm.images.push_back(RationalFn::variable(F, A.all_vars, (*A.vars)[i]) * alpha.pow(e));
    }
    A.maps.push_back(std::move(cm));
  }
}

std::vector<std::int64_t> layout_weights(const Family& fam, std::int64_t d1) {
  std::vector<std::int64_t> w(fam.vars->size(), 0);
  for (const auto& s : fam.slots) {
    for (std::uint32_t i = 1; i <= s.order; ++i) {
      if (s.coeff[i - 1].empty()) continue;
      const std::int64_t ii = i;
      std::int64_t wt = 0;
      if (s.where == Slot::Where::infinity) wt = ii - d1;
      else wt = -(ii + d1);
      w[index_of(fam.vars, s.coeff[i - 1])] = wt;
    }
    if (s.where == Slot::Where::param) w[index_of(fam.vars, s.theta)] = -1;
  }
  return w;
}

void two_equal_swaps(ActionSet& A, const Family& fam) {
  const std::uint32_t p = fam.p;
  const std::uint32_t d = fam.slots[0].order;
  const Sym S{*A.ctx, A.all_vars};
  const std::string bd = fam.slots[1].coeff[d - 1];
  const RationalFn alpha = S.v("alpha");
  for (std::int64_t lam : all_lambdas(p)) {
    CoefficientMap m;
    m.label = "x -> 1/(alpha x), alpha^" + std::to_string(d) + " " + bd + " = " + std::to_string(lam) +
              ", lambda=" + std::to_string(lam);
    const RationalFn L = S.c(lam);
    m.images.resize(A.vars->size());
    for (std::uint32_t i = 1; i <= d; ++i) {
      const std::string& an = fam.slots[0].coeff[i - 1];
      const std::string& bn = fam.slots[1].coeff[i - 1];
      const RationalFn ai = an.empty() ? S.c(fam.slots[0].fixed[i - 1]) : S.v(an);
      const RationalFn bi = bn.empty() ? S.c(0) : S.v(bn);
      if (!an.empty()) m.images[index_of(A.vars, an)] = alpha.pow(i) * bi / L;
      if (!bn.empty()) m.images[index_of(A.vars, bn)] = ai / (L * alpha.pow(i));
    }
    AuxSpec aux;
    aux.name = "alpha";
    const MultiPoly a = MultiPoly::variable(*A.ctx, A.all_vars, "alpha");
    const MultiPoly b = MultiPoly::variable(*A.ctx, A.all_vars, bd);
    aux.poly = a.pow(d) * b - MultiPoly::constant(*A.ctx, A.all_vars, lam);
    aux.relation[bd] = L / alpha.pow(d);
    m.aux = std::move(aux);
    A.maps.push_back(std::move(m));
  }
}

void paired_maps(ActionSet& A) {
  const Sym S{*A.ctx, A.all_vars};
  auto v = [&](const char* n) { return S.v(n); };
  CoefficientMap id, flip;
  id.label = "identity";
  for (const auto& n : *A.vars) id.images.push_back(S.v(n));
  flip.label = "x -> -x, lambda=1";
  flip.images = {-v("a1"), -v("b1"), v("b2"), -v("e1"), v("e2"), -v("e3"), v("e4")};
  A.stage1 = {id, flip};
  A.maps = {id, flip};
  for (int sign : {1, -1}) {
    const RationalFn al = v("alpha") * S.c(sign);
    CoefficientMap m;
    m.label = std::string("x -> 1/(") + (sign > 0 ? "" : "-") + "alpha x), alpha^2 b2 = 1, lambda=1";
    const RationalFn e1 = v("e1"), e2 = v("e2"), e3 = v("e3"), e4 = v("e4");
    m.images = {al * v("b1"),
                v("a1") / al,
                al.pow(-2),
                (e1 * e4 - e2 * e3) / (e4.pow(2) * al),
                -e2 / (e4.pow(2) * al.pow(2)),
                e3 / (al * e4),
                (al.pow(2) * e4).inv()};
    AuxSpec aux;
    aux.name = "alpha";
    const MultiPoly a = MultiPoly::variable(*A.ctx, A.all_vars, "alpha");
    aux.poly = a.pow(2) * MultiPoly::variable(*A.ctx, A.all_vars, "b2") - MultiPoly::constant(*A.ctx, A.all_vars, 1);
    aux.relation["b2"] = v("alpha").pow(-2);
    m.aux = std::move(aux);
    A.maps.push_back(std::move(m));
  }
}

void five_pole_maps(ActionSet& A, const Family& fam, bool& linearized) {
  const Sym S{*A.ctx, A.all_vars};
  const RationalFn th = S.v("theta"), s = S.v("s"), t = S.v("t"), r = S.v("r");
  const RationalFn th2 = s - th;
  std::vector<SymPole> poles(5);
  poles[0] = {true, S.c(0), {S.v("a")}};
  poles[1] = {false, S.c(0), {S.v("b")}};
  poles[2] = {false, S.c(1), {S.v("c")}};
  poles[3] = {false, th, {(t * th + r) / (th - th2)}};
  poles[4] = {false, th2, {(t * th2 + r) / (th2 - th)}};
  const char* names[5] = {"inf", "0", "1", "theta1", "theta2"};
  auto loc = [&](std::size_t i) -> std::optional<RationalFn> {
    if (i == 0) return std::nullopt;
    return poles[i].location;
  };
  AuxSpec aux;
  aux.name = "theta";
  {
    const MultiPoly x = MultiPoly::variable(*A.ctx, A.all_vars, "theta");
    const MultiPoly sp = MultiPoly::variable(*A.ctx, A.all_vars, "s");
    const MultiPoly up = MultiPoly::variable(*A.ctx, A.all_vars, "u");
    aux.poly = x * x - sp * x + up;
    aux.relation["u"] = th * th2;
  }
  for (std::size_t P = 0; P < 5; ++P)
    for (std::size_t Q = 0; Q < 5; ++Q)
      for (std::size_t R = 0; R < 5; ++R) {
        if (P == Q || Q == R || P == R) continue;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < 5; ++i)
          if (i != P && i != Q && i != R) rest.push_back(i);
        const auto N = symbolic_cross_ratio(loc(P), loc(Q), loc(R), S.c(1));
        const MobiusT<RationalFn> M{N.d, -N.b, -N.c, N.a};
        const auto moved = transport_symbolic(poles, M, S.c(1), linearized);
        const RationalFn& p1 = moved[rest[0]].location;
        const RationalFn& p2 = moved[rest[1]].location;
        const RationalFn& e1 = moved[rest[0]].tail[0];
        const RationalFn& e2 = moved[rest[1]].tail[0];
        CoefficientMap m;
        m.label = std::string("(") + names[P] + "," + names[Q] + "," + names[R] + ") -> (inf,0,1)";
        m.images = {moved[P].tail[0], moved[Q].tail[0], moved[R].tail[0], p1 + p2, p1 * p2, e1 + e2,
                    -(e1 * p2 + e2 * p1)};
        m.aux = aux;
        A.maps.push_back(std::move(m));
      }
  (void)fam;
}

// Numeric non-group maps of the one-pole d = 1 mod p case: all
// (alpha x + beta, alpha^d) that keep the form, beta over the point's field.
void one_pole_translations(ActionSet& A, const Family& fam) {
  const std::uint32_t d = fam.slots[0].order;
  const std::uint32_t p = fam.p;
  const std::uint32_t target = fam.variant == StandardFormVariant::p3depressed ? d - 3 : 1;
  CoefficientMap m;
  m.label = "x -> alpha x + beta, lambda = alpha^" + std::to_string(d) + ", beta solving the form condition";
  m.numeric = [fam, d, p, target](std::span<const Fq> point) {
    const ASCurve c = curve_from_point(fam, point);
    const FieldCtx& F = c.ctx();
    std::vector<std::vector<Fq>> out;
    for (const Fq& alpha : F.one().nth_roots(static_cast<std::uint64_t>(d) * (p - 1))) {
      const ASCurve c1 = apply_isomorphism(c, {Mobius::scale(alpha), alpha.pow(d), {}, {}});
      for (const Fq& beta : clearing_translations(c1, target)) {
        const ASCurve c2 = apply_isomorphism(c1, {Mobius::translate(beta), F.one(), {}, {}});
        out.push_back(point_from_curve(fam, c2));
      }
    }
    return out;
  };
  A.maps.push_back(std::move(m));
}

}  // namespace

ActionSet stabilizer_actions(const Family& fam) {
  ActionSet A;
  A.ctx = &FieldCtx::get(fam.p);
  A.vars = fam.vars;
  A.all_vars = fam.vars;
  const std::uint32_t p = fam.p;
  const Sym S0{*A.ctx, A.all_vars};
  bool linearized = false;
  switch (fam.kind) {
    case FormKind::onePole: {
      const std::int64_t d = fam.slots[0].order;
      const auto w = layout_weights(fam, d);
      fill_diagonal(A, w, d * (p - 1), "x -> alpha x, lambda=alpha^" + std::to_string(d) + ";");
      if (d % p != 1) {
        A.kind = ActionKind::diagonal;
        A.group_order = A.maps.size();
        A.stages.push_back("diagonal action of the roots of unity of order " + std::to_string(A.modulus));
      } else {
        one_pole_translations(A, fam);
        A.kind = ActionKind::nonGroup;
        A.is_group = false;
        A.stages.push_back("beta = 0 subgroup: diagonal of order " + std::to_string(A.modulus));
        A.stages.push_back("beta != 0 maps: numeric, not closed under composition");
        A.flags.push_back("non-group transformation set (d = 1 mod p)");
      }
      break;
    }
    case FormKind::twoPole: {
      const std::int64_t d1 = fam.slots[0].order;
      const bool equal = fam.slots[1].order == fam.slots[0].order;
      const auto w = layout_weights(fam, d1);
      if (equal && fam.slots.size() == 2) {
        A.all_vars = merge_vars(fam.vars, make_vars({"alpha"}));
        fill_diagonal(A, w, d1 * (p - 1), "x -> alpha x, lambda=alpha^" + std::to_string(d1) + ";");
        const std::size_t ndiag = A.maps.size();
        two_equal_swaps(A, fam);
        A.kind = ActionKind::nonlinearGroup;
        A.group_order = 2 * ndiag;
        A.stages.push_back("diagonal subgroup of order " + std::to_string(ndiag));
        A.stages.push_back("swaps x -> 1/(alpha x) with alpha^d b_d = lambda");
        break;
      }
      if (equal) throw InputError("two-pole layout with equal orders and extra poles is not supported");
      fill_diagonal(A, w, d1 * (p - 1), "x -> alpha x, lambda=alpha^" + std::to_string(d1) + ";");
      if (fam.slots.size() == 2) {
        A.kind = ActionKind::diagonal;
        A.group_order = A.maps.size();
        A.stages.push_back("diagonal action of the roots of unity of order " + std::to_string(A.modulus));
      } else {
        const Sym S{*A.ctx, A.all_vars};
        A.stage1 = slot_permutations(fam, S);
        std::vector<CoefficientMap> all;
        for (const auto& g : A.maps)
          for (const auto& h : A.stage1) all.push_back(compose_maps(g, h, A.vars));
        A.maps = std::move(all);
        A.kind = ActionKind::linearGroup;
        A.group_order = A.maps.size();
        A.stages.push_back("relabelling of equal-order extra poles");
        A.stages.push_back("diagonal action of order " + std::to_string(A.modulus));
      }
      break;
    }
    case FormKind::threePlus: {
      const bool symbolic_loc = fam.slots.size() > 3;
      const bool rel_lambda = !(fam.info.branch == 7);  // the four-pole maps are taken with lambda = 1
      auto maps = relabel_maps(fam, S0, rel_lambda ? all_lambdas(p) : std::vector<std::int64_t>{1}, linearized);
      A.stage1 = slot_permutations(fam, S0);
      if (A.stage1.size() > 1) {
        std::vector<CoefficientMap> all;
        for (const auto& g : maps)
          for (const auto& h : A.stage1) all.push_back(compose_maps(g, h, A.vars));
        maps = std::move(all);
        A.stages.push_back("relabelling of equal-order extra poles (" + std::to_string(A.stage1.size()) + ")");
      } else {
        A.stage1.clear();
      }
      A.maps = std::move(maps);
      A.group_order = A.maps.size();
      bool linear = true;
      for (const auto& m : A.maps)
        for (const auto& f : m.images)
          if (!f.is_polynomial() || f.num().total_degree() > 1) linear = false;
      A.kind = linear ? ActionKind::linearGroup : ActionKind::nonlinearGroup;
      A.stages.push_back(std::string("Moebius maps permuting the poles at infinity, 0, 1") +
                         (rel_lambda ? " times lambda in F_p^*" : " (lambda = 1)"));
      if (symbolic_loc && !linear) A.flags.push_back("maps derived by transport of the principal parts");
      break;
    }
    case FormKind::pairedTwoTwo: {
      A.all_vars = merge_vars(fam.vars, make_vars({"alpha"}));
      paired_maps(A);
      A.kind = ActionKind::nonlinearGroup;
      A.group_order = A.maps.size();
      A.stages.push_back("x -> -x (sign change)");
      A.stages.push_back("swaps x -> 1/(alpha x) with alpha^2 b2 = 1");
      break;
    }
    case FormKind::fivePoles: {
      A.all_vars = merge_vars(fam.vars, make_vars({"theta"}));
      five_pole_maps(A, fam, linearized);
      A.kind = ActionKind::nonGroup;
      A.is_group = false;
      A.stages.push_back("60 pole relabellings (lambda = 1); not closed under composition");
      A.flags.push_back("non-group transformation set");
      break;
    }
  }
  if (linearized) A.flags.push_back("linearized: p-power terms c*u^(pj) replaced by c*u^j");
  if (A.is_group) verify_group(A);
  return A;
}

ActionSet stabilizer_actions(std::uint32_t p, const std::vector<std::uint32_t>& orders, const CaseInfo& info) {
  Family fam = standard_family(p, orders);
  if (fam.info.branch != info.branch) throw InputError("case does not match the orders");
  return stabilizer_actions(fam);
}

// ---------------------------------------------------------------- evaluation

std::vector<std::vector<Fq>> apply_map(const ActionSet& A, const CoefficientMap& m, std::span<const Fq> point) {
  if (m.numeric) return m.numeric(point);
  if (point.empty()) return {{}};
  const FieldCtx& P = point[0].ctx();
  if (!P.contains(*A.ctx)) throw InputError("point field does not contain the action's field");
  const std::size_t n = A.vars->size();
  std::vector<Fq> full(A.all_vars->size(), P.zero());
  std::copy(point.begin(), point.end(), full.begin());
  std::vector<Fq> aux_values{P.zero()};
  std::size_t aux_index = 0;
  if (m.aux) {
    aux_index = index_of(A.all_vars, m.aux->name);
    const MultiPoly poly = &P == A.ctx ? m.aux->poly : m.aux->poly.lift(P);
    std::vector<Fq> uni;
    for (const auto& [e, c] : poly.terms()) {
      Fq v = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != aux_index && e[i]) v *= full[i].pow(e[i]);
      if (uni.size() <= e[aux_index]) uni.resize(e[aux_index] + 1, P.zero());
      uni[e[aux_index]] += v;
    }
    while (!uni.empty() && uni.back().is_zero()) uni.pop_back();
    if (uni.size() < 2) throw DomainError("auxiliary equation degenerates at this point");
    aux_values = univariate_roots(uni);
    if (aux_values.empty()) throw NeedsExtension("auxiliary root outside F_" + std::to_string(P.q()));
  }
  std::vector<std::vector<Fq>> out;
  for (const Fq& av : aux_values) {
    if (m.aux) full[aux_index] = av;
    std::vector<Fq> img(n);
    for (std::size_t i = 0; i < n; ++i)
      img[i] = &P == A.ctx ? m.images[i].evaluate(full) : m.images[i].lift(P).evaluate(full);
    out.push_back(std::move(img));
  }
  return out;
}

namespace {

ActionSet lift_action(const ActionSet& A, const FieldCtx& F) {
  if (&F == A.ctx) return A;
  ActionSet B = A;
  B.ctx = &F;
  for (auto& m : B.maps) {
    for (auto& f : m.images) f = f.lift(F);
    if (m.aux) {
      m.aux->poly = m.aux->poly.lift(F);
      for (auto& [k, v] : m.aux->relation) v = v.lift(F);
    }
  }
  B.stage1.clear();
  return B;
}

}  // namespace

std::vector<std::vector<Fq>> orbit(std::span<const Fq> point, const ActionSet& A0) {
  const FieldCtx* F = point.empty() ? A0.ctx : &larger(point[0].ctx(), *A0.ctx);
  constexpr std::size_t kMaxOrbit = 200000;
  while (true) {
    try {
      const ActionSet A = lift_action(A0, *F);
      const std::vector<Fq> x = lift_point(point, *F);
      std::set<std::vector<Fq>> seen{x};
      if (A.is_group) {
        std::vector<std::vector<Fq>> queue{x};
        while (!queue.empty()) {
          const auto y = std::move(queue.back());
          queue.pop_back();
          for (const auto& m : A.maps)
            for (auto& img : apply_map(A, m, y))
              if (seen.insert(img).second) {
                if (seen.size() > kMaxOrbit) throw BudgetExceeded("orbit too large");
                queue.push_back(img);
              }
        }
      } else {
        for (const auto& m : A.maps)
          for (auto& img : apply_map(A, m, x)) seen.insert(std::move(img));
      }
      return {seen.begin(), seen.end()};
    } catch (const NeedsExtension&) {
      const std::uint32_t k = F->k() * 2;
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < k && q <= FieldCtx::kMaxFieldSize; ++i) q *= F->p();
      if (q > FieldCtx::kMaxFieldSize) throw BudgetExceeded("auxiliary roots lie outside every supported field");
      F = &FieldCtx::get(F->p(), k);
    }
  }
}

std::vector<std::vector<std::vector<Fq>>> linear_matrices(const ActionSet& A) {
  const std::size_t n = A.vars->size();
  std::vector<std::vector<std::vector<Fq>>> out;
  for (const auto& m : A.maps) {
    if (m.aux || m.numeric) throw DomainError("action is not linear");
    std::vector<std::vector<Fq>> mat(n, std::vector<Fq>(n, A.ctx->zero()));
    for (std::size_t i = 0; i < n; ++i) {
      const RationalFn& f = m.images[i];
      if (!f.is_polynomial()) throw DomainError("action is not linear");
      const Fq dinv = f.den().constant_term().inv();
      for (const auto& [e, c] : f.num().terms()) {
        if (total_degree(e) != 1) throw DomainError("action is not linear");
        std::size_t j = 0;
        while (e[j] == 0) ++j;
        if (j >= n) throw DomainError("action is not linear");
        mat[i][j] = c * dinv;
      }
    }
    out.push_back(std::move(mat));
  }
  return out;
}

RationalFn relate(const RationalFn& f, const ActionSet& A, const CoefficientMap& m) {
  RationalFn g = same_vars(f.vars(), A.all_vars) ? f : f.remap(A.all_vars);
  if (&g.ctx() != A.ctx) g = g.lift(*A.ctx);
  if (!m.aux) return g;
  Assignment asg;
  for (const auto& n : *A.all_vars) asg[n] = RationalFn::variable(*A.ctx, A.all_vars, n);
  for (const auto& [k, v] : m.aux->relation) asg[k] = v;
  return substitute(g, asg);
}

RationalFn substitute_map(const RationalFn& f, const ActionSet& A, const CoefficientMap& m) {
  if (m.numeric) throw DomainError("numeric-only map has no symbolic form");
  RationalFn g = same_vars(f.vars(), A.vars) ? f : f.remap(A.vars);
  if (&g.ctx() != A.ctx) g = g.lift(*A.ctx);
  Assignment asg;
  for (std::size_t i = 0; i < A.vars->size(); ++i) asg[(*A.vars)[i]] = m.images[i];
  return relate(substitute(g, asg), A, m);
}

void verify_group(const ActionSet& A) {
  if (!A.is_group) return;
  const bool symbolic = std::none_of(A.maps.begin(), A.maps.end(), [](const auto& m) { return m.aux || m.numeric; });
  if (symbolic && A.maps.size() <= 64) {
    auto find = [&](const std::vector<RationalFn>& images) {
      for (const auto& m : A.maps)
        if (m.images == images) return true;
      return false;
    };
    std::vector<RationalFn> id;
    for (const auto& n : *A.vars) id.push_back(RationalFn::variable(*A.ctx, A.all_vars, n));
    if (!find(id)) throw VerificationError("action set lacks the identity");
    for (const auto& g : A.maps)
      for (const auto& h : A.maps)
        if (!find(compose_maps(g, h, A.vars).images))
          throw VerificationError("action set not closed: " + g.label + " o " + h.label);
    return;
  }
  // Numeric: the one-step images of a point form the whole closure.
  std::mt19937_64 rng(7);
  const FieldCtx& F = FieldCtx::get(A.ctx->p(), A.ctx->k() * 2);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Fq> x;
    for (std::size_t i = 0; i < A.vars->size(); ++i) x.push_back(F.random_nonzero(rng));
    std::set<std::vector<Fq>> one_step;
    try {
      for (const auto& m : A.maps)
        for (auto& y : apply_map(A, m, x)) one_step.insert(std::move(y));
      const auto closure = orbit(x, A);
      if (closure.size() != one_step.size()) throw VerificationError("action set not closed under composition");
    } catch (const NeedsExtension&) {
      continue;
    } catch (const DomainError&) {
      continue;
    }
  }
}

std::string action_json(const ActionSet& A) {
  nlohmann::json j;
  j["kind"] = to_string(A.kind);
  j["size"] = A.maps.size();
  j["is_group"] = A.is_group;
  if (A.is_group) j["group_order"] = A.group_order;
  j["field"] = "F_" + std::to_string(A.ctx->q());
  j["variables"] = *A.vars;
  if (A.modulus) {
    j["weights"] = A.weights;
    j["modulus"] = A.modulus;
  }
  j["stages"] = A.stages;
  j["flags"] = A.flags;
  std::vector<std::string> labels;
  for (const auto& m : A.maps) labels.push_back(m.label);
  j["maps"] = labels;
  return j.dump();
}

}  // namespace asinv
