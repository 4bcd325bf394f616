#pragma once

// End-to-end pipeline: classification, standard form, transformations and
// generators for a prime and a list of pole orders; the genus 3..8 component table; isomorphism test;
// verification suites.

#include <cstdint>
#include <string>
#include <vector>

#include "asinv/action.hpp"
#include "asinv/invgen.hpp"
#include "asinv/moduli.hpp"
#include "asinv/verify.hpp"

namespace asinv {

struct RoadmapOptions {
  bool ring = false;  // ring generators where the default is a reconstructing closed form
  Budget budget;
  std::uint64_t seed = 1;
  std::uint32_t field_ext = 0;  // extension degree for numeric sampling (0: automatic)
  bool timing = true;           // false: elapsed_ms reported as 0
};

struct RoadmapReport {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> input_orders;
  CaseInfo info;
  ComponentDescriptor comp;
  std::string standard_form;
  ActionKind action_kind = ActionKind::diagonal;
  std::size_t action_size = 0;
  bool is_group = true;
  std::vector<std::string> generators;
  std::vector<std::string> flags;
  bool complete = true;
  std::int64_t elapsed_ms = 0;
  InvariantSet set;  // symbolic generators (empty for numeric specializations)

  std::size_t count() const { return generators.size(); }
  std::string to_json() const;
  std::string to_text() const;
};

// Throws InputError for inadmissible orders, VerificationError if a generator
// fails the symbolic invariance check, BudgetExceeded when nothing usable
// fits the budget.
RoadmapReport run_roadmap(std::uint32_t p, const std::vector<std::uint32_t>& orders, const RoadmapOptions& opt = {});

struct Table1Row {
  ComponentDescriptor comp;
  std::string annotation;  // non-empty when the reference table gives no count
  bool computed = false;
  std::size_t count = 0;
  std::vector<std::string> flags;
  std::string error;
  std::int64_t elapsed_ms = 0;
};

// Rows the reference table leaves to a separate discussion (not counted).
std::string table1_annotation(const ComponentDescriptor& c);
// All rows; counts use ring generators.
std::vector<Table1Row> run_table1(const RoadmapOptions& opt = {});
std::string table1_text(const std::vector<Table1Row>& rows);
std::string table1_json(const std::vector<Table1Row>& rows);

enum class IsoVerdict { isomorphic, not_isomorphic, inconclusive };
std::string to_string(IsoVerdict v);

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::inconclusive;
  std::string reason;
  std::string witness;  // label of a map sending one standard form to the other
  std::string to_json() const;
};
IsoResult compare_curves(const std::string& a, const std::string& b, const RoadmapOptions& opt = {});

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;
  std::string to_json() const;
};
std::vector<std::string> suite_names();
// InputError for unknown suites.
SuiteResult run_suite(const std::string& name, const RoadmapOptions& opt = {});

}  // namespace asinv
