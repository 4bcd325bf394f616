// asinv: road map, component table, isomorphism test and verification suites.
// Exit codes: 0 ok, 2 input error, 3 verification failure, 4 budget exceeded.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "asinv/errors.hpp"
#include "asinv/roadmap.hpp"
#include "json.hpp"

using namespace asinv;

namespace {

constexpr int kOk = 0, kInput = 2, kVerify = 3, kBudget = 4;

struct Common {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint32_t budget_degree = 0;
  std::size_t budget_terms = Budget{}.max_terms;
  std::int64_t budget_ms = Budget{}.max_ms;
  std::uint32_t field_ext = 0;
  bool no_timing = false;

  RoadmapOptions options() const {
    RoadmapOptions o;
    o.seed = seed;
    o.budget.max_degree = budget_degree;
    o.budget.max_terms = budget_terms;
    o.budget.max_ms = budget_ms;
    o.field_ext = field_ext;
    o.timing = !no_timing;
    return o;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--budget-degree", c.budget_degree, "maximal generator degree (0: theoretical bound)");
  app->add_option("--budget-terms", c.budget_terms, "monomials enumerated per call");
  app->add_option("--budget-ms", c.budget_ms, "wall-clock budget per pipeline");
  app->add_option("--field-ext", c.field_ext, "extension degree for numeric sampling (0: automatic)");
  app->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0 (byte-stable output)");
}

void emit_error(const Common& c, const std::string& kind, const std::string& msg) {
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = msg;
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "asinv: " << kind << ": " << msg << "\n";
  }
}

template <class F>
int guarded(const Common& c, F&& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    emit_error(c, "budget exceeded", e.what());
    return kBudget;
  } catch (const VerificationError& e) {
    emit_error(c, "verification failure", e.what());
    return kVerify;
  } catch (const InputError& e) {
    emit_error(c, "input error", e.what());
    return kInput;
  } catch (const DomainError& e) {
    emit_error(c, "input error", e.what());
    return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of Artin-Schreier curves"};
  app.require_subcommand(1);

  Common rc, tc, ic, vc;
  std::uint32_t p = 0;
  std::string orders;
  bool ring = false;
  auto* roadmap = app.add_subcommand("roadmap", "classify, normalize and compute generators");
  roadmap->add_option("--p", p, "characteristic")->required();
  roadmap->add_option("--orders", orders, "pole orders, e.g. 4,2,1")->required();
  roadmap->add_flag("--ring", ring, "ring generators where the default is a reconstructing closed form");
  add_common(roadmap, rc);

  auto* table = app.add_subcommand("table1", "reproduce the genus 3..8 table");
  add_common(table, tc);

  std::string curve_a, curve_b;
  auto* iso = app.add_subcommand("iso", "decide whether two curves are isomorphic");
  iso->add_option("curve_a", curve_a, "e.g. \"p=3; x^2+1*x+1/x\"")->required();
  iso->add_option("curve_b", curve_b)->required();
  add_common(iso, ic);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required();
  add_common(verify, vc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc0 = app.exit(e);
    return rc0 == 0 ? kOk : kInput;
  }

  if (*roadmap) {
    return guarded(rc, [&] {
      RoadmapOptions o = rc.options();
      o.ring = ring;
      const RoadmapReport r = run_roadmap(p, parse_orders(orders), o);
      std::cout << (rc.format == "json" ? r.to_json() + "\n" : r.to_text());
      return kOk;
    });
  }
  if (*table) {
    return guarded(tc, [&] {
      const auto rows = run_table1(tc.options());
      std::cout << (tc.format == "json" ? table1_json(rows) + "\n" : table1_text(rows));
      return kOk;
    });
  }
  if (*iso) {
    return guarded(ic, [&] {
      const IsoResult r = compare_curves(curve_a, curve_b, ic.options());
      if (ic.format == "json") {
        std::cout << r.to_json() << "\n";
      } else {
        std::cout << to_string(r.verdict) << "\n" << r.reason << "\n";
        if (!r.witness.empty()) std::cout << "witness: " << r.witness << "\n";
      }
      return kOk;
    });
  }
  if (*verify) {
    return guarded(vc, [&] {
      const SuiteResult r = run_suite(suite, vc.options());
      if (vc.format == "json") {
        std::cout << r.to_json() << "\n";
      } else {
        for (const auto& l : r.lines) std::cout << l << "\n";
        std::cout << suite << ": " << (r.passed ? "pass" : "FAIL") << "\n";
      }
      return r.passed ? kOk : kVerify;
    });
  }
  return kInput;
}
