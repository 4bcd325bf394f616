#include "asinv/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "asinv/errors.hpp"
#include "json.hpp"

namespace asinv {

namespace {

const FieldCtx& common_field(const FieldCtx& a, const FieldCtx& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return FieldCtx::get(a.p(), std::lcm(a.k(), b.k()));
}

std::vector<Fq> embed_all(std::span<const Fq> x, const FieldCtx& F) {
  std::vector<Fq> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(F.embed(v));
  return out;
}

std::string point_string(std::span<const Fq> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].to_string(false);
  return s + ")";
}

bool contains_point(const std::vector<std::vector<Fq>>& orb, std::span<const Fq> y) {
  if (orb.empty()) return false;
  const FieldCtx& F = common_field(orb.front().empty() ? y.front().ctx() : orb.front().front().ctx(),
                                   y.empty() ? orb.front().front().ctx() : y.front().ctx());
  const auto yy = embed_all(y, F);
  for (const auto& z : orb)
    if (embed_all(z, F) == yy) return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------ fingerprints

bool Fingerprint::operator==(const Fingerprint& o) const {
  if (values.size() != o.values.size()) return false;
  if (values.empty()) return true;
  const FieldCtx& F = common_field(*ctx, *o.ctx);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (F.embed(values[i]) != F.embed(o.values[i])) return false;
  return true;
}

std::vector<std::string> Fingerprint::rendered() const {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(v.to_string(false));
  return out;
}

Fingerprint fingerprint(std::span<const Fq> point, const InvariantSet& S) {
  Fingerprint fp;
  const FieldCtx& F = point.empty() ? *S.ctx : common_field(point.front().ctx(), *S.ctx);
  fp.ctx = &F;
  const auto x = embed_all(point, F);
  for (const auto& g : S.generators) {
    const RationalFn h = &g.ctx() == &F ? g : g.lift(F);
    try {
      fp.values.push_back(h.evaluate(x));
    } catch (const DomainError& e) {
      throw DomainError("generator " + g.to_string() + ": " + e.what());
    }
  }
  return fp;
}

// ------------------------------------------------------------ orbits

bool same_orbit(std::span<const Fq> x, std::span<const Fq> y, const ActionSet& A) {
  if (!A.is_group) throw InputError("transformation set is not a group; use orbits_intersect");
  if (x.size() != y.size()) return false;
  return contains_point(orbit(x, A), y);
}

bool orbits_intersect(std::span<const Fq> x, std::span<const Fq> y, const ActionSet& A) {
  if (A.is_group) return same_orbit(x, y, A);
  const auto ox = orbit(x, A);
  const auto oy = orbit(y, A);
  for (const auto& z : oy)
    if (contains_point(ox, z)) return true;
  return false;
}

// ------------------------------------------------------------ separation

std::vector<std::vector<Fq>> sample_points(const Family& fam, const SampleSpec& spec) {
  const FieldCtx& F = FieldCtx::get(fam.p, spec.field_degree);
  const std::size_t n = fam.vars->size();
  std::vector<std::vector<Fq>> out;
  auto keep = [&](const std::vector<Fq>& x) {
    if (!spec.admissible_only) return true;
    try {
      curve_from_point(fam, x);
      return true;
    } catch (const DomainError&) {
      return false;
    } catch (const InputError&) {
      return false;
    }
  };
  if (spec.kind == SampleSpec::Kind::exhaustive) {
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= F.q();
    if (total > 2e6) throw BudgetExceeded("exhaustive sample too large");
    const auto elems = F.elements();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<Fq> x;
      for (auto i : idx) x.push_back(elems[i]);
      if (keep(x)) out.push_back(std::move(x));
      std::size_t j = 0;
      while (j < n && ++idx[j] == elems.size()) idx[j++] = 0;
      if (j == n) break;
    }
    return out;
  }
  std::mt19937_64 rng(spec.seed);
  std::size_t attempts = 0;
  while (out.size() < spec.count) {
    if (++attempts > 100 * (spec.count + 10)) throw DomainError("could not draw admissible sample points");
    std::vector<Fq> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(F.random(rng));
    if (keep(x)) out.push_back(std::move(x));
  }
  return out;
}

SeparationReport separating_check(const Family& fam, const ActionSet& A, const InvariantSet& S,
                                  const std::vector<std::vector<Fq>>& points) {
  (void)fam;
  SeparationReport R;
  R.sample_size = points.size();
  struct Entry {
    std::vector<Fq> x;
    std::vector<std::vector<Fq>> orb;
    Fingerprint fp;
  };
  std::vector<Entry> es;
  for (const auto& x : points) {
    Entry e;
    e.x = x;
    try {
      e.fp = fingerprint(x, S);
      e.orb = orbit(x, A);
    } catch (const DomainError&) {
      ++R.skipped;
      continue;
    } catch (const BudgetExceeded&) {
      ++R.skipped;
      continue;
    }
    // soundness along the orbit (single pass for non-groups)
    for (const auto& y : e.orb) {
      Fingerprint fy;
      try {
        fy = fingerprint(y, S);
      } catch (const DomainError&) {
        continue;
      }
      if (fy != e.fp) {
        ++R.soundness_failures;
        if (R.witnesses.size() < 8) R.witnesses.push_back({x, y, "fingerprint not constant on the orbit"});
        break;
      }
    }
    es.push_back(std::move(e));
  }
  auto related = [&](const Entry& a, const Entry& b) {
    if (A.is_group) return contains_point(a.orb, b.x);
    for (const auto& z : b.orb)
      if (contains_point(a.orb, z)) return true;
    return false;
  };
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const bool fe = es[i].fp == es[j].fp;
      const bool oe = related(es[i], es[j]);
      R.orbit_equal_pairs += oe;
      R.fingerprint_equal_pairs += fe;
      if (fe && !oe) {
        ++R.violations;
        if (R.witnesses.size() < 8)
          R.witnesses.push_back({es[i].x, es[j].x, "equal fingerprints, different orbits"});
      }
      if (oe && !fe) {
        ++R.soundness_failures;
        if (R.witnesses.size() < 8) R.witnesses.push_back({es[i].x, es[j].x, "same orbit, different fingerprints"});
      }
    }
  return R;
}

SeparationReport separating_check(const Family& fam, const ActionSet& A, const InvariantSet& S,
                                  const SampleSpec& spec) {
  return separating_check(fam, A, S, sample_points(fam, spec));
}

std::string SeparationReport::to_json() const {
  nlohmann::json j;
  j["sample_size"] = sample_size;
  j["skipped"] = skipped;
  j["orbit_equal_pairs"] = orbit_equal_pairs;
  j["fingerprint_equal_pairs"] = fingerprint_equal_pairs;
  j["violations"] = violations;
  j["soundness_failures"] = soundness_failures;
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : witnesses) w.push_back({{"x", point_string(x.x)}, {"y", point_string(x.y)}, {"what", x.what}});
  j["witnesses"] = w;
  return j.dump();
}

// ------------------------------------------------------------ reconstruction

namespace {

bool is_four_pole(const Family& fam) {
  return fam.info.orders == std::vector<std::uint32_t>{1, 1, 1, 1} && fam.kind == FormKind::threePlus;
}

bool is_one_one_one_two(const Family& fam) {
  auto o = fam.info.orders;
  std::sort(o.begin(), o.end());
  return o == std::vector<std::uint32_t>{1, 1, 1, 2} && fam.kind == FormKind::threePlus;
}

// All poles of distinct orders (at least two of them).
bool all_distinct(const Family& fam) {
  if (fam.kind != FormKind::twoPole && fam.kind != FormKind::threePlus) return false;
  if (fam.slots.size() < 3) return false;
  std::set<std::uint32_t> o;
  for (const auto& s : fam.slots) o.insert(s.order);
  return o.size() == fam.slots.size();
}

Reconstruction finish(const Family& fam, std::vector<Fq> x) {
  Reconstruction r;
  r.curve = curve_from_point(fam, x);
  r.point = std::move(x);
  return r;
}

Reconstruction reconstruct_closed(const Family& fam, const InvariantSet& S, const Fingerprint& fp) {
  const FieldCtx& F = *fp.ctx;
  const std::uint32_t p = fam.p;
  const Slot& s0 = fam.slots[0];
  const std::size_t lead = *var_index(fam.vars, s0.coeff[s0.order - 1]);
  const std::size_t n = fam.vars->size();
  // generator -> (variable, exponent of the leading coefficient)
  std::optional<Fq> lead_power;
  std::vector<std::pair<std::size_t, std::uint32_t>> role(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Exponents& e = S.generators[i].num().leading_exponents();
    std::size_t var = lead;
    for (std::size_t j = 0; j < n; ++j)
      if (j != lead && e[j]) var = j;
    role[i] = {var, e[lead]};
    if (var == lead) lead_power = fp.values[i];
  }
  if (!lead_power || lead_power->is_zero())
    throw DomainError("the leading coefficient invariant vanishes (a_{d1} must be nonzero)");
  const auto roots = lead_power->nth_roots(p - 1);
  if (roots.empty()) throw DomainError("no (p-1)-th root of the leading invariant in this field");
  const Fq a = roots.front();
  std::vector<Fq> x(n, F.zero());
  x[lead] = a;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const auto [var, ea] = role[i];
    if (var == lead) continue;
    x[var] = fp.values[i] / a.pow(ea);
  }
  if (fingerprint(x, S) != fp) throw DomainError("values outside the image of the invariant map");
  return finish(fam, std::move(x));
}

template <class Pred>
std::optional<std::vector<Fq>> search_square_roots(const std::vector<Fq>& u, const std::vector<Fq>& scale,
                                                   Pred&& accept) {
  // x_i = scale_i * sqrt(u_i), trying the smaller root first
  std::vector<std::vector<Fq>> roots;
  for (const auto& v : u) {
    auto r = v.nth_roots(2);
    if (r.empty()) return std::nullopt;
    roots.push_back(std::move(r));
  }
  std::vector<std::size_t> idx(u.size(), 0);
  while (true) {
    std::vector<Fq> x;
    for (std::size_t i = 0; i < u.size(); ++i) x.push_back(scale[i] * roots[i][idx[i]]);
    if (accept(x)) return x;
    std::size_t j = u.size();
    while (j-- > 0) {
      if (++idx[j] < roots[j].size()) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return std::nullopt;
  }
}

Reconstruction reconstruct_four_pole(const Family& fam, const InvariantSet& S, const Fingerprint& fp) {
  const FieldCtx& F = *fp.ctx;
  // fp = (J1, J2', J2, J3, J4, j) in the order of four_pole_invariants plus j
  std::map<std::string, Fq> v;
  for (std::size_t i = 0; i < S.size(); ++i) v[S.provenance[i]] = fp.values[i];
  const Fq one = F.one();
  const Fq j = v.at("j");
  // theta: theta^2 (theta-1)^2 j = (theta^2 - theta + 1)^3
  std::vector<Fq> Pj(7, F.zero());
  {
    // (t^2 - t + 1)^3 = t^6 - 3t^5 + 6t^4 - 7t^3 + 6t^2 - 3t + 1
    const std::int64_t c[7] = {1, -3, 6, -7, 6, -3, 1};
    for (int i = 0; i < 7; ++i) Pj[i] = F.from_int(c[i]);
    // minus j (t^4 - 2t^3 + t^2)
    Pj[4] -= j;
    Pj[3] += j + j;
    Pj[2] -= j;
  }
  const auto thetas = univariate_roots(Pj);
  const std::vector<std::size_t> order = {0, 1, 2};
  for (const Fq& th : thetas) {
    if (th.is_zero() || th == one) continue;
    const Fq w = th * th - th + one;
    if (w.is_zero()) continue;
    const Fq om = one - th;
    const Fq t2 = th * th, o2 = om * om;
    const Fq sigma1 = v.at("J1") / w;
    const Fq sigma3 = v.at("J3") / (t2 * o2);
    const Fq sigma4 = v.at("J4") * v.at("J4") * w * w / (t2 * t2 * o2 * o2);
    for (const Fq& u1 : F.elements()) {
      if (u1.is_zero()) continue;
      const Fq s1 = sigma1 - u1;
      const Fq e3 = sigma4 / u1;
      const Fq e2 = (sigma3 - e3) / u1;
      // T^3 - s1 T^2 + e2 T - e3
      const std::vector<Fq> cubic = {-e3, e2, -s1, one};
      std::vector<Fq> r = univariate_roots(cubic);
      if (r.empty()) continue;
      // roots with multiplicity are not resolved here: need three roots
      std::vector<Fq> trip;
      {
        // recover multiplicities by deflation
        std::vector<Fq> poly = cubic;
        for (const Fq& z : r) {
          while (poly.size() > 1) {
            // synthetic division by (T - z)
            std::vector<Fq> q(poly.size() - 1, F.zero());
            Fq acc = F.zero();
            for (std::size_t k = poly.size(); k-- > 1;) {
              acc = acc * z + poly[k];
              q[k - 1] = acc;
            }
            if (!(acc * z + poly[0]).is_zero()) break;
            trip.push_back(z);
            poly = q;
          }
        }
      }
      if (trip.size() != 3) continue;
      std::sort(trip.begin(), trip.end());
      do {
        const std::vector<Fq> u = {u1, trip[0], trip[1], trip[2]};
        const std::vector<Fq> scale = {one, th, om, th * om};
        auto hit = search_square_roots(u, scale, [&](const std::vector<Fq>& abce) {
          const std::vector<Fq> x = {abce[0], abce[1], abce[2], abce[3], th};
          try {
            return fingerprint(x, S) == fp;
          } catch (const DomainError&) {
            return false;
          }
        });
        if (hit) {
          std::vector<Fq> x = {(*hit)[0], (*hit)[1], (*hit)[2], (*hit)[3], th};
          return finish(fam, std::move(x));
        }
      } while (std::next_permutation(trip.begin(), trip.end()));
    }
  }
  throw DomainError("no representative found: values outside the image or a degenerate stratum");
}

Reconstruction reconstruct_one_one_one_two(const Family& fam, const InvariantSet& S, const Fingerprint& fp) {
  const FieldCtx& F = *fp.ctx;
  const auto elems = F.elements();
  const std::size_t ia = *var_index(fam.vars, "a"), ib = *var_index(fam.vars, "b"), ic = *var_index(fam.vars, "c");
  const std::size_t i1 = *var_index(fam.vars, "e1"), i2 = *var_index(fam.vars, "e2");
  const std::size_t it = *var_index(fam.vars, "theta");
  // split generators by the variables they involve
  std::vector<std::size_t> abc, th, rest;
  for (std::size_t g = 0; g < S.size(); ++g) {
    const auto& f = S.generators[g];
    auto uses = [&](std::size_t k) { return f.num().involves(k) || f.den().involves(k); };
    if (uses(i1) || uses(i2)) rest.push_back(g);
    else if (uses(it)) th.push_back(g);
    else abc.push_back(g);
  }
  auto matches = [&](const std::vector<Fq>& x, const std::vector<std::size_t>& which) {
    for (auto g : which) {
      try {
        if (S.generators[g].lift(F).evaluate(x) != fp.values[g]) return false;
      } catch (const DomainError&) {
        return false;
      }
    }
    return true;
  };
  std::vector<Fq> x(fam.vars->size(), F.one());
  std::vector<std::vector<Fq>> abc_sols;
  for (const Fq& a : elems)
    for (const Fq& b : elems)
      for (const Fq& c : elems) {
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        x[ia] = a, x[ib] = b, x[ic] = c;
        if (matches(x, abc)) abc_sols.push_back(x);
      }
  for (auto y : abc_sols)
    for (const Fq& t : elems) {
      if (t.is_zero() || t.is_one()) continue;
      y[it] = t;
      if (!matches(y, th)) continue;
      for (const Fq& e2 : elems) {
        if (e2.is_zero()) continue;
        for (const Fq& e1 : elems) {
          y[i1] = e1, y[i2] = e2;
          if (matches(y, rest) && fingerprint(y, S) == fp) return finish(fam, y);
        }
      }
    }
  throw DomainError("no representative found: values outside the image over this field");
}

}  // namespace

InvariantSet reconstructing_set(const Family& fam) {
  if (is_four_pole(fam)) {
    InvariantSet S = four_pole_invariants(fam.p);
    S.add(four_pole_j(fam.p), "j");
    return S;
  }
  if (is_one_one_one_two(fam)) return one_one_one_two_invariants(fam.p, stabilizer_actions(fam));
  if (all_distinct(fam)) {
    if (fam.slots.size() == 3) {
      std::vector<std::uint32_t> o;
      for (const auto& s : fam.slots) o.push_back(s.order);
      return three_distinct_generators(fam.p, o);
    }
    return extra_pole_generators(fam, stabilizer_actions(fam), true);
  }
  throw InputError("reconstruction is implemented for distinct orders, {1,1,1,2} and four simple poles only");
}

Reconstruction reconstruct(const Family& fam, const Fingerprint& fp) {
  const InvariantSet S = reconstructing_set(fam);
  if (fp.values.size() != S.size()) throw InputError("fingerprint length does not match the reconstructing set");
  if (is_four_pole(fam)) return reconstruct_four_pole(fam, S, fp);
  if (is_one_one_one_two(fam)) return reconstruct_one_one_one_two(fam, S, fp);
  return reconstruct_closed(fam, S, fp);
}

}  // namespace asinv
