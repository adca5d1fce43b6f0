#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbi/scenario.hpp"

namespace orbi {

/// One expected property of a report: the value at a JSON pointer compared
/// with op "eq", "ge" or "le".
struct Expectation {
  std::string pointer;
  std::string op = "eq";
  json value;
};

struct CorpusEntry {
  std::string name;
  std::vector<std::string> anchors;  // topics, matched by substring in filtered runs
  std::string command;               // analyze, sard, strata, obstruct, classify1, retraction
  json scenario;
  int expected_exit = kExitOk;
  std::vector<Expectation> expect;
};

/// The built-in regression corpus of worked examples.
const std::vector<CorpusEntry>& builtin_corpus();

/// Looks an entry up by name (nullptr when absent).
const CorpusEntry* find_entry(const std::string& name);

/// Dispatches the entry's command on its scenario.
Outcome run_entry(const CorpusEntry& e);

struct CorpusResult {
  std::string name;
  std::vector<std::string> anchors;
  bool pass = false;
  std::vector<std::string> failures;
  Outcome outcome;
};

struct CorpusRun {
  std::vector<CorpusResult> results;
  bool all_pass() const;
  json to_json() const;
};

/// Runs every entry whose anchors contain `anchor` (all when empty). With
/// `corrupt` set, one entry is deliberately broken first, so the run must
/// fail; used to test the harness itself.
CorpusRun run_corpus(const std::string& anchor = "", bool corrupt = false);

/// Evaluates the expectations of an entry against a report.
std::vector<std::string> check_expectations(const CorpusEntry& e, const Outcome& o);

}  // namespace orbi
