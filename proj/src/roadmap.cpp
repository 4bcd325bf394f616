#include "asinv/roadmap.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "asinv/errors.hpp"
#include "json.hpp"

namespace asinv {

namespace {

bool all_distinct_orders(const std::vector<std::uint32_t>& o) {
  return std::set<std::uint32_t>(o.begin(), o.end()).size() == o.size();
}

void append_flags(std::vector<std::string>& out, const std::vector<std::string>& in) {
  for (const auto& f : in)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

InvariantSet empty_set(const Family& fam) {
  InvariantSet S;
  S.vars = fam.vars;
  S.ctx = &FieldCtx::get(fam.p);
  return S;
}

// The generator pipeline of each branch.
InvariantSet branch_generators(const Family& fam, const ActionSet& A, const RoadmapOptions& opt,
                               std::vector<std::string>& labels_out) {
  const std::uint32_t p = fam.p;
  const auto& o = fam.info.orders;
  const int branch = fam.info.branch;
  if (fam.vars->empty()) return empty_set(fam);
  switch (branch) {
    case 1: {
      if (!A.is_group) return one_pole_d1_generators(fam, A, opt.budget);
      return diagonal_generators(p, fam.vars, A.weights, A.modulus, -1, opt.budget);
    }
    case 2: {
      if (o[0] != o[1]) return diagonal_generators(p, fam.vars, A.weights, A.modulus, -1, opt.budget);
      return two_pole_equal_generators(p, o[0], opt.budget);
    }
    case 3: {
      if (all_distinct_orders(o) && !opt.ring) return three_distinct_generators(p, o);
      return orbit_sum_generators(A, opt.budget);
    }
    case 4:
      return extra_pole_generators(fam, A, !opt.ring, opt.budget);
    case 5:
      return extra_pole_generators(fam, A, false, opt.budget);
    default:
      break;
  }
  auto so = o;
  std::sort(so.begin(), so.end());
  if (branch == 6 && so == std::vector<std::uint32_t>{1, 1, 1, 2}) return one_one_one_two_invariants(p, A);
  if (fam.kind == FormKind::pairedTwoTwo) {
    StagedResult R = staged_generators(A, opt.budget);
    InvariantSet S = R.stage2;
    S.flag("stage 1 (sign change): " + std::to_string(R.stage1.size()) + " generators");
    append_flags(S.flags, R.stage1.flags);
    return S;
  }
  if (fam.kind == FormKind::fivePoles) {
    const FivePoleSpecializations P = five_pole_specializations(p, 2);
    labels_out = P.labels();
    InvariantSet S = empty_set(fam);
    S.complete = false;
    S.bound = 2;
    S.flag("specialization: elementary symmetric functions over the single-pass orbit, evaluated numerically");
    return S;
  }
  if (so == std::vector<std::uint32_t>{1, 1, 1, 1}) {
    InvariantSet S = four_pole_invariants(p);
    S.add(four_pole_j(p), "j");
    return S;
  }
  if ((A.kind == ActionKind::linearGroup || A.kind == ActionKind::diagonal) && A.is_group)
    return orbit_sum_generators(A, opt.budget);
  throw InputError("unsupported sub-case: no generator pipeline for this configuration of poles");
}

std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

std::string orders_string(const std::vector<std::uint32_t>& o) {
  std::string s = "{";
  for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "," : "") + std::to_string(o[i]);
  return s + "}";
}

}  // namespace

RoadmapReport run_roadmap(std::uint32_t p, const std::vector<std::uint32_t>& orders, const RoadmapOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  RoadmapReport R;
  R.p = p;
  R.input_orders = orders;
  R.comp = describe(p, orders);
  const Family fam = standard_family(p, orders);
  R.info = fam.info;
  R.standard_form = fam.form;
  const ActionSet A = stabilizer_actions(fam);
  R.action_kind = A.kind;
  R.action_size = A.maps.size();
  R.is_group = A.is_group;
  std::vector<std::string> labels;
  InvariantSet S = branch_generators(fam, A, opt, labels);
  const auto bad = invariance_failures(S, A);
  if (!bad.empty()) {
    const auto [g, m] = bad.front();
    throw VerificationError("generator " + S.generators[g].to_string() + " is not fixed by map " + A.maps[m].label);
  }
  R.generators = labels.empty() ? S.rendered() : labels;
  append_flags(R.flags, S.flags);
  append_flags(R.flags, A.flags);
  if (!A.is_group) append_flags(R.flags, {"non-group"});
  R.complete = S.complete;
  R.set = std::move(S);
  R.elapsed_ms = opt.timing ? ms_since(t0) : 0;
  return R;
}

std::string RoadmapReport::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = {{"p", p}, {"orders", input_orders}};
  j["case"] = {{"branch", info.branch}, {"orders", info.orders}, {"distinguished", info.distinguished},
               {"route", info.route}};
  j["component"] = {{"g", comp.g}, {"s", comp.s}, {"D", comp.D}, {"dim", comp.dim}};
  j["standard_form"] = standard_form;
  j["action"] = {{"kind", to_string(action_kind)}, {"size", action_size}, {"is_group", is_group}};
  j["generators"] = generators;
  j["count"] = count();
  j["flags"] = flags;
  j["elapsed_ms"] = elapsed_ms;
  return j.dump();
}

std::string RoadmapReport::to_text() const {
  std::ostringstream os;
  os << "p = " << p << ", orders " << orders_string(input_orders) << "\n";
  os << "branch " << info.branch << " (" << info.route << "), resorted " << orders_string(info.orders) << "\n";
  os << "g = " << comp.g << ", s = " << comp.s << ", D = " << comp.D << ", dim = " << comp.dim << "\n";
  os << "standard form: y^" << p << " - y = " << standard_form << "\n";
  os << "action: " << to_string(action_kind) << ", " << action_size << " maps" << (is_group ? "" : " (not a group)")
     << "\n";
  os << count() << " generators:\n";
  for (const auto& g : generators) os << "  " << g << "\n";
  for (const auto& f : flags) os << "flag: " << f << "\n";
  os << "elapsed: " << elapsed_ms << " ms\n";
  return os.str();
}

// ------------------------------------------------------------ component table

std::string table1_annotation(const ComponentDescriptor& c) {
  if (c.p != 3) return "";
  static const std::vector<std::pair<std::vector<std::uint32_t>, std::string>> notes = {
      {{7}, "treated separately (d = 1 mod p, non-group)"},
      {{1, 1, 1, 1}, "treated separately (four equal poles)"},
      {{2, 1, 1, 1}, "treated separately ({1,1,1,2})"},
      {{2, 2, 2}, "treated separately (three equal poles, modular)"},
      {{2, 2, 1, 1}, "treated separately (staged {2,2,1,1})"},
      {{1, 1, 1, 1, 1}, "treated separately (five equal poles, non-group)"},
  };
  for (const auto& [o, n] : notes)
    if (c.orders == o) return n;
  return "";
}

std::vector<Table1Row> run_table1(const RoadmapOptions& opt0) {
  RoadmapOptions opt = opt0;
  opt.ring = true;
  std::vector<Table1Row> rows;
  for (const auto& c : table1()) {
    Table1Row r;
    r.comp = c;
    r.annotation = table1_annotation(c);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const RoadmapReport rep = run_roadmap(c.p, c.orders, opt);
      r.computed = true;
      r.count = rep.count();
      r.flags = rep.flags;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.elapsed_ms = opt.timing ? ms_since(t0) : 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << " g   p   D   s  partition        dim  #inv   ms      note\n";
  for (const auto& r : rows) {
    char buf[160];
    // annotated rows have no reference count; ours goes in the note
    std::string cnt = r.computed && r.annotation.empty() ? std::to_string(r.count) : "-";
    std::string note = r.annotation;
    if (r.computed && !r.annotation.empty()) note += "; computed " + std::to_string(r.count);
    if (!r.error.empty()) note += (note.empty() ? "" : "; ") + r.error;
    for (const auto& f : r.flags)
      if (f.rfind("capped", 0) == 0 || f.rfind("partial", 0) == 0 || f.rfind("specialization", 0) == 0)
        note += (note.empty() ? "" : "; ") + f;
    std::snprintf(buf, sizeof buf, "%2lld %3u %3lld %3lld  %-15s %4lld  %5s %6lld  ", static_cast<long long>(r.comp.g),
                  r.comp.p, static_cast<long long>(r.comp.D), static_cast<long long>(r.comp.s),
                  r.comp.partition_string().c_str(), static_cast<long long>(r.comp.dim), cnt.c_str(),
                  static_cast<long long>(r.elapsed_ms));
    os << buf << note << "\n";
  }
  return os.str();
}

std::string table1_json(const std::vector<Table1Row>& rows) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["g"] = r.comp.g;
    j["p"] = r.comp.p;
    j["D"] = r.comp.D;
    j["s"] = r.comp.s;
    j["partition"] = r.comp.orders;
    j["dim"] = r.comp.dim;
    j["annotation"] = r.annotation;
    if (r.computed && r.annotation.empty()) j["count"] = r.count;
    else j["count"] = nullptr;
    if (r.computed) j["computed_count"] = r.count;
    else j["computed_count"] = nullptr;
    j["flags"] = r.flags;
    j["error"] = r.error;
    j["elapsed_ms"] = r.elapsed_ms;
    a.push_back(std::move(j));
  }
  return a.dump();
}

// ------------------------------------------------------------ isomorphism

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::isomorphic: return "isomorphic";
    case IsoVerdict::not_isomorphic: return "not-isomorphic";
    case IsoVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string IsoResult::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["reason"] = reason;
  j["witness"] = witness;
  return j.dump();
}

namespace {

const FieldCtx& join(const FieldCtx& a, const FieldCtx& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return FieldCtx::get(a.p(), std::lcm(a.k(), b.k()));
}

std::vector<Fq> lifted(const std::vector<Fq>& x, const FieldCtx& F) {
  std::vector<Fq> y;
  for (const auto& v : x) y.push_back(F.embed(v));
  return y;
}

// Label of a single map sending x to y, if any.
std::optional<std::string> find_witness(const ActionSet& A, const std::vector<Fq>& x, const std::vector<Fq>& y) {
  const FieldCtx* F = A.ctx;
  if (!x.empty()) F = &join(join(x[0].ctx(), y[0].ctx()), *A.ctx);
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      const auto xx = lifted(x, *F), yy = lifted(y, *F);
      for (const auto& m : A.maps) {
        std::vector<std::vector<Fq>> imgs;
        try {
          imgs = apply_map(A, m, xx);
        } catch (const NeedsExtension&) {
          throw;
        } catch (const DomainError&) {
          continue;
        }
        for (const auto& img : imgs) {
          const FieldCtx& G = join(img.empty() ? *F : img[0].ctx(), *F);
          if (lifted(img, G) == lifted(yy, G)) return m.label;
        }
      }
      return std::nullopt;
    } catch (const NeedsExtension&) {
      F = &FieldCtx::get(F->p(), F->k() * 2);
    }
  }
  return std::nullopt;
}

}  // namespace

IsoResult compare_curves(const std::string& a, const std::string& b, const RoadmapOptions& opt) {
  IsoResult R;
  const ASCurve C1 = parse_curve(a);
  const ASCurve C2 = parse_curve(b);
  if (C1.p() != C2.p()) {
    R.verdict = IsoVerdict::not_isomorphic;
    R.reason = "different characteristic";
    return R;
  }
  if (C1.orders() != C2.orders()) {
    R.verdict = IsoVerdict::not_isomorphic;
    R.reason = "different pole partitions " + C1.component().partition_string() + " and " +
               C2.component().partition_string();
    return R;
  }
  const std::uint32_t p = C1.p();
  const Family fam = standard_family(p, C1.orders());
  const ActionSet A = stabilizer_actions(fam);
  const auto x = point_from_curve(fam, family_standard_form(fam, C1).curve);
  const auto y = point_from_curve(fam, family_standard_form(fam, C2).curve);
  if (fam.vars->empty()) {
    R.verdict = IsoVerdict::isomorphic;
    R.reason = "the component is a single point";
    return R;
  }
  // direct witness
  if (auto w = find_witness(A, x, y)) {
    R.verdict = IsoVerdict::isomorphic;
    R.reason = "a standard-form preserving map sends one model to the other";
    R.witness = *w;
    return R;
  }
  if (fam.kind == FormKind::fivePoles) {
    const FivePoleSpecializations P = five_pole_specializations(p, 2);
    const auto vx = P.evaluate(x), vy = P.evaluate(y);
    const FieldCtx& G = join(vx[0].ctx(), vy[0].ctx());
    if (lifted(vx, G) != lifted(vy, G)) {
      R.verdict = IsoVerdict::not_isomorphic;
      R.reason = "orbit specializations differ";
    } else {
      R.verdict = IsoVerdict::inconclusive;
      R.reason = "orbit specializations agree";
    }
    return R;
  }
  const RoadmapReport rep = run_roadmap(p, C1.orders(), opt);
  const Fingerprint f1 = fingerprint(x, rep.set), f2 = fingerprint(y, rep.set);
  if (A.is_group) {
    if (same_orbit(x, y, A)) {
      R.verdict = IsoVerdict::isomorphic;
      R.reason = "standard forms lie in one orbit";
      R.witness = "orbit closure";
    } else {
      R.verdict = IsoVerdict::not_isomorphic;
      R.reason = f1 != f2 ? "invariants differ" : "standard forms lie in different orbits";
    }
    return R;
  }
  if (f1 != f2 && rep.complete) {
    R.verdict = IsoVerdict::not_isomorphic;
    R.reason = "invariants differ";
    return R;
  }
  R.verdict = IsoVerdict::inconclusive;
  R.reason = orbits_intersect(x, y, A) ? "single-pass orbits intersect" : "no common point in single-pass orbits";
  return R;
}

// ------------------------------------------------------------ suites

std::string SuiteResult::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = name;
  j["passed"] = passed;
  j["lines"] = lines;
  return j.dump();
}

std::vector<std::string> suite_names() {
  return {"invariance", "separation-21p3", "fourpole-J", "reconstruct", "multisym", "fivepole", "degree-bound",
          "partial"};
}

namespace {

const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>& suite_families() {
  static const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> f = {
      {3, {4}},       {3, {2, 1}},    {3, {5}},          {3, {2, 2}},    {3, {1, 1, 1}}, {5, {3}},
      {5, {1, 1}},    {3, {4, 1}},    {3, {2, 1, 1}},    {3, {5, 1}},    {3, {4, 2}},    {3, {2, 2, 1}},
      {5, {4}},       {5, {2, 1}},    {7, {3}},          {7, {1, 1}},    {3, {8}},       {3, {4, 1, 1}},
      {3, {5, 1, 1}}, {3, {4, 2, 1}}, {5, {3, 1}},       {5, {2, 2}},    {5, {1, 1, 1}}, {3, {1, 1, 1, 1}},
      {3, {2, 1, 1, 1}}, {3, {2, 2, 1, 1}}, {3, {5, 4, 2, 1, 1}},
      {3, {5, 2}},    {3, {7, 1}},    {3, {4, 4}},       {3, {2, 2, 2}}};
  return f;
}

std::string fam_name(std::uint32_t p, const std::vector<std::uint32_t>& o) {
  return orders_string(o) + " p=" + std::to_string(p);
}

// fingerprint(g x) = fingerprint(x) along random orbit points
bool random_soundness(std::uint32_t p, const std::vector<std::uint32_t>& o, const InvariantSet& S, std::uint64_t seed,
                      std::string& msg) {
  const Family fam = standard_family(p, o);
  const ActionSet A = stabilizer_actions(fam);
  if (fam.vars->empty() || S.size() == 0) return true;
  SampleSpec spec;
  spec.kind = SampleSpec::Kind::random;
  spec.count = 5;
  spec.seed = seed;
  spec.admissible_only = true;
  spec.field_degree = 2;
  std::size_t checked = 0;
  for (const auto& x : sample_points(fam, spec)) {
    Fingerprint fx;
    std::vector<std::vector<Fq>> orb;
    try {
      fx = fingerprint(x, S);
      orb = orbit(x, A);
    } catch (const DomainError&) {
      continue;
    }
    for (const auto& y : orb) {
      try {
        if (fingerprint(y, S) != fx) {
          msg = "fingerprint changes along an orbit";
          return false;
        }
        ++checked;
      } catch (const DomainError&) {
      }
    }
  }
  msg = std::to_string(checked) + " orbit points";
  return true;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const RoadmapOptions& opt0) {
  RoadmapOptions opt = opt0;
  opt.timing = false;
  SuiteResult R;
  R.name = name;
  R.passed = true;
  auto fail = [&](const std::string& line) {
    R.passed = false;
    R.lines.push_back("FAIL " + line);
  };
  if (name == "invariance") {
    for (const auto& [p, o] : suite_families()) {
      for (bool ring : {false, true}) {
        RoadmapOptions q = opt;
        q.ring = ring;
        try {
          const RoadmapReport rep = run_roadmap(p, o, q);
          std::string msg;
          const bool ok = random_soundness(p, o, rep.set, opt.seed, msg);
          const std::string line = fam_name(p, o) + (ring ? " ring" : "") + ": " + std::to_string(rep.count()) +
                                   " generators symbolically invariant, " + msg;
          if (ok) R.lines.push_back("ok " + line);
          else fail(line);
        } catch (const VerificationError& e) {
          fail(fam_name(p, o) + ": " + e.what());
        }
      }
    }
  } else if (name == "separation-21p3") {
    const Family fam = standard_family(3, {2, 1});
    SampleSpec spec;
    spec.field_degree = 2;
    const SeparationReport S =
        separating_check(fam, stabilizer_actions(fam), two_pole_distinct_generators(3, 2, 1), spec);
    const std::string line = std::to_string(S.sample_size) + " points, " + std::to_string(S.violations) +
                             " violations, " + std::to_string(S.soundness_failures) + " soundness failures";
    if (S.ok() && S.sample_size == 81) R.lines.push_back("ok " + line);
    else fail(line);
  } else if (name == "fourpole-J") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
      try {
        const std::size_t n = verify_four_pole(p);
        R.lines.push_back("ok p=" + std::to_string(p) + ": 5 identities (J1, J2', J2, J3, J4) and j, " +
                          std::to_string(n) + " checks");
      } catch (const VerificationError& e) {
        fail("p=" + std::to_string(p) + ": " + e.what());
      }
    }
  } else if (name == "reconstruct") {
    for (auto o : std::vector<std::vector<std::uint32_t>>{{4, 2, 1}, {1, 1, 1, 1}}) {
      const Family fam = standard_family(3, o);
      const InvariantSet S = reconstructing_set(fam);
      SampleSpec spec;
      spec.kind = SampleSpec::Kind::random;
      spec.count = 100;
      spec.seed = opt.seed;
      spec.admissible_only = true;
      spec.field_degree = o.size() == 3 ? 2 : 3;
      std::size_t good = 0, tried = 0;
      for (const auto& x : sample_points(fam, spec)) {
        Fingerprint fp;
        try {
          fp = fingerprint(x, S);
        } catch (const DomainError&) {
          continue;
        }
        ++tried;
        try {
          if (fingerprint(reconstruct(fam, fp).point, S) == fp) ++good;
        } catch (const DomainError&) {
        }
      }
      const std::string line = fam_name(3, o) + ": " + std::to_string(good) + "/" + std::to_string(tried) +
                               " round trips";
      if (good == tried && tried > 0) R.lines.push_back("ok " + line);
      else fail(line);
    }
  } else if (name == "multisym") {
    for (auto [m, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}}) {
      const InvariantSet S = multisym_generators(m, n, 3);
      const auto gens = S.polynomials();
      // dimension of the generated algebra versus the averaged S_n-invariants
      const VarTable vars = multisym_vars(m, n);
      const FieldCtx& F = FieldCtx::get(3);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::vector<std::size_t>> perms;
      do perms.push_back(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
      std::vector<std::vector<MultiPoly>> B(7);
      B[0] = {MultiPoly::constant(F, vars, 1)};
      bool ok = true;
      std::string dims;
      for (std::uint32_t d = 1; d <= 6; ++d) {
        Echelon E;
        for (const auto& g : gens) {
          const auto gd = g.total_degree();
          if (gd <= d)
            for (const auto& v : B[d - gd]) E.insert(g * v);
        }
        B[d] = E.basis();
        // invariants: span of sums over all n! permutations of each monomial
        Echelon Inv;
        std::vector<std::int64_t> ones(m * n, 1);
        std::vector<Exponents> monos;
        std::function<void(std::size_t, std::uint32_t, Exponents&)> rec = [&](std::size_t i, std::uint32_t left,
                                                                              Exponents& e) {
          if (i + 1 == e.size()) {
            e[i] = left;
            monos.push_back(e);
            return;
          }
          for (std::uint32_t k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k, e);
          }
        };
        Exponents e(m * n, 0);
        rec(0, d, e);
        std::size_t inv_dim = 0;
        std::set<Exponents> seen;
        for (const auto& mono : monos) {
          if (seen.count(mono)) continue;
          MultiPoly s(F, vars);
          for (const auto& pm : perms) {
            Exponents f(m * n, 0);
            for (std::uint32_t r = 0; r < m; ++r)
              for (std::uint32_t c = 0; c < n; ++c) f[r * n + pm[c]] = mono[r * n + c];
            seen.insert(f);
            s += MultiPoly::monomial(F, vars, f, F.one());
          }
          // the averaged sum may vanish mod p; the orbit sum spans the same line
          MultiPoly orbit_sum(F, vars);
          std::set<Exponents> orb;
          for (const auto& pm : perms) {
            Exponents f(m * n, 0);
            for (std::uint32_t r = 0; r < m; ++r)
              for (std::uint32_t c = 0; c < n; ++c) f[r * n + pm[c]] = mono[r * n + c];
            orb.insert(f);
          }
          for (const auto& f : orb) orbit_sum += MultiPoly::monomial(F, vars, f, F.one());
          if (Inv.insert(orbit_sum)) ++inv_dim;
        }
        dims += " " + std::to_string(E.rank()) + "/" + std::to_string(inv_dim);
        if (E.rank() != inv_dim) ok = false;
      }
      const std::string line = "(" + std::to_string(m) + "," + std::to_string(n) + "): " +
                               std::to_string(S.size()) + " generators, dims" + dims;
      if (ok) R.lines.push_back("ok " + line);
      else fail(line);
    }
  } else if (name == "fivepole") {
    const FivePoleSpecializations P = five_pole_specializations(3, 2);
    const FieldCtx& F = FieldCtx::get(3, opt.field_ext ? opt.field_ext : 3);
    std::mt19937_64 rng(opt.seed);
    std::size_t done = 0, bad = 0, attempts = 0;
    while (done < 100 && attempts++ < 2000) {
      std::vector<Fq> x;
      for (std::size_t i = 0; i < P.family.vars->size(); ++i) x.push_back(F.random(rng));
      std::vector<Fq> vx;
      ASCurve D;
      try {
        vx = P.evaluate(x);
        const ASCurve C = curve_from_point(P.family, x);
        Mobius M{F.random(rng), F.random(rng), F.random(rng), F.random(rng)};
        if (M.det().is_zero()) continue;
        const std::int64_t l = 1 + static_cast<std::int64_t>(rng() % 2);
        D = apply_isomorphism(C, {M, C.ctx().from_int(l), {}, {}});
        const auto y = point_from_curve(P.family, family_standard_form(P.family, D).curve);
        const auto vy = P.evaluate(y);
        const FieldCtx& G = join(vx[0].ctx(), vy[0].ctx());
        if (lifted(vx, G) != lifted(vy, G)) ++bad;
        ++done;
      } catch (const DomainError&) {
        continue;
      } catch (const InputError&) {
        continue;  // coinciding poles: not a point of the family
      }
    }
    const std::string line = std::to_string(done) + " points over F_" + std::to_string(F.q()) + ", " +
                             std::to_string(P.specs.size()) + " specializations, " + std::to_string(bad) +
                             " disagreements";
    if (bad == 0 && done == 100) R.lines.push_back("ok " + line);
    else fail(line);
  } else if (name == "degree-bound") {
    for (const auto& [p, o] : suite_families()) {
      const Family fam = standard_family(p, o);
      const ActionSet A = stabilizer_actions(fam);
      if (!A.is_group || A.kind == ActionKind::nonlinearGroup || fam.vars->empty()) continue;
      if (A.group_order % p == 0) continue;
      RoadmapOptions q = opt;
      q.ring = true;
      const RoadmapReport rep = run_roadmap(p, o, q);
      std::uint64_t top = 0;
      for (const auto& g : rep.set.generators)
        if (g.is_polynomial()) top = std::max(top, g.num().total_degree());
      const std::string line = fam_name(p, o) + ": max degree " + std::to_string(top) + ", |G| = " +
                               std::to_string(A.group_order);
      if (top <= A.group_order) R.lines.push_back("ok " + line);
      else fail(line);
    }
  } else if (name == "partial") {
    for (const auto& [p, o] : std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>{{3, {2, 2, 2}},
                                                                                                 {3, {7}}}) {
      const RoadmapReport rep = run_roadmap(p, o, opt);
      std::string fl;
      for (const auto& f : rep.flags) fl += " [" + f + "]";
      const std::string line = fam_name(p, o) + ": " + std::to_string(rep.count()) + " generators," + fl;
      if (!rep.complete) R.lines.push_back("ok " + line);
      else fail(line + " (expected a flagged partial result)");
    }
  } else {
    throw InputError("unknown suite '" + name + "'");
  }
  return R;
}

}  // namespace asinv
