#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "orbi/corpus.hpp"
#include "orbi/error.hpp"
#include "orbi/scenario.hpp"

namespace {

using orbi::json;
using orbi::Outcome;

// Without --out the report goes to stdout and the summary to stderr; with
// --out the report goes to the file and the summary to stdout.
int emit(const Outcome& o, const std::string& out) {
  const std::string text = o.report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    for (const auto& line : o.summary) std::cerr << line << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return orbi::kExitInput;
    }
    f << text;
    for (const auto& line : o.summary) std::cout << line << "\n";
  }
  return o.exit_code;
}

Outcome load_failure(const std::string& command, const orbi::InputError& e) {
  Outcome o;
  o.exit_code = orbi::kExitInput;
  o.report = {{"tool", "orbicalc"}, {"version", orbi::kVersion}, {"command", command}, {"status", "input_error"},
              {"error", {{"path", e.path()}, {"message", e.what()}}}};
  o.summary = {command + ": input error: " + e.what()};
  return o;
}

template <class F>
int run_file(const std::string& command, const std::string& file, const std::string& out, F&& f) {
  json scenario;
  try {
    scenario = orbi::load_json_file(file);
  } catch (const orbi::InputError& e) {
    return emit(load_failure(command, e), out);
  }
  return emit(f(scenario), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local calculus for orbifold charts, germs and preimages"};
  app.set_version_flag("--version", std::string(orbi::kVersion));
  app.require_subcommand(1);

  std::string file, out;

  auto* analyze = app.add_subcommand("analyze", "full pipeline report for a germ, chart, atlas or component list");
  analyze->add_option("file", file, "scenario JSON")->required();
  analyze->add_option("--out", out, "write the JSON report here");

  orbi::SardFlags flags;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> box;
  auto* sard = app.add_subcommand("sard", "sample target points and count regular values");
  sard->add_option("file", file, "germ scenario JSON")->required();
  auto* samples_opt = sard->add_option("--samples", samples, "number of samples");
  auto* seed_opt = sard->add_option("--seed", seed, "random seed");
  auto* box_opt = sard->add_option("--box", box, "lo hi for one target coordinate (repeat per coordinate)")
                      ->expected(2)
                      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sard->add_option("--out", out, "write the JSON report here");

  auto* strata = app.add_subcommand("strata", "stratify a chart by isotropy type");
  strata->add_option("file", file, "chart JSON")->required();
  strata->add_option("--out", out, "write the JSON report here");

  auto* obstruct = app.add_subcommand("obstruct", "can the chart center map to a regular value?");
  obstruct->add_option("file", file, "source/target/theta JSON")->required();
  obstruct->add_option("--out", out, "write the JSON report here");

  auto* classify = app.add_subcommand("classify1", "classify compact 1-orbifold components");
  classify->add_option("file", file, "component list or atlas JSON")->required();
  classify->add_option("--out", out, "write the JSON report here");

  auto* retraction = app.add_subcommand("retraction", "no-retraction check for a candidate atlas");
  retraction->add_option("file", file, "atlas JSON")->required();
  retraction->add_option("--out", out, "write the JSON report here");

  auto* corpus = app.add_subcommand("corpus", "built-in regression corpus");
  corpus->require_subcommand(1);
  std::string anchor, dir;
  bool corrupt = false;
  auto* corpus_run = corpus->add_subcommand("run", "run every built-in scenario");
  corpus_run->add_option("--anchor", anchor, "only entries whose topic contains this string");
  corpus_run->add_flag("--corrupt", corrupt, "break one entry first (tests the harness)");
  corpus_run->add_option("--out", out, "write the JSON summary here");
  auto* corpus_list = corpus->add_subcommand("list", "list built-in scenarios");
  auto* corpus_export = corpus->add_subcommand("export", "write every built-in scenario to a directory");
  corpus_export->add_option("dir", dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : orbi::kExitInput;
  }

  if (analyze->parsed()) return run_file("analyze", file, out, orbi::cmd_analyze);
  if (sard->parsed()) {
    if (samples_opt->count()) flags.samples = samples;
    if (seed_opt->count()) flags.seed = seed;
    if (box_opt->count()) {
      std::vector<std::pair<double, double>> b;
      for (const auto& iv : box) {
        if (iv.size() != 2) {
          std::cerr << "--box takes two numbers\n";
          return orbi::kExitInput;
        }
        b.emplace_back(iv[0], iv[1]);
      }
      flags.box = std::move(b);
    }
    return run_file("sard", file, out, [&](const json& s) { return orbi::cmd_sard(s, flags); });
  }
  if (strata->parsed()) return run_file("strata", file, out, orbi::cmd_strata);
  if (obstruct->parsed()) return run_file("obstruct", file, out, orbi::cmd_obstruct);
  if (classify->parsed()) return run_file("classify1", file, out, orbi::cmd_classify1);
  if (retraction->parsed()) return run_file("retraction", file, out, orbi::cmd_retraction);

  if (corpus_list->parsed()) {
    for (const auto& e : orbi::builtin_corpus()) {
      std::cout << e.name << "  [" << e.command << "]";
      for (const auto& a : e.anchors) std::cout << " " << a;
      std::cout << "\n";
    }
    return 0;
  }
  if (corpus_export->parsed()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (const auto& e : orbi::builtin_corpus()) {
      std::ofstream f(std::filesystem::path(dir) / (e.name + ".json"));
      if (!f) {
        std::cerr << "cannot write into " << dir << "\n";
        return orbi::kExitInput;
      }
      f << e.scenario.dump(2) << "\n";
    }
    std::cout << orbi::builtin_corpus().size() << " scenarios written to " << dir << "\n";
    return 0;
  }
  if (corpus_run->parsed()) {
    orbi::CorpusRun run = orbi::run_corpus(anchor, corrupt);
    json summary = run.to_json();
    std::ostream& human = out.empty() ? std::cerr : std::cout;
    for (const auto& r : run.results) {
      human << (r.pass ? "PASS " : "FAIL ") << r.name << " [";
      for (std::size_t i = 0; i < r.anchors.size(); ++i) human << (i ? " " : "") << r.anchors[i];
      human << "]\n";
      for (const auto& f : r.failures) human << "    " << f << "\n";
    }
    human << summary["passed"].get<std::size_t>() << "/" << run.results.size() << " passed\n";
    if (out.empty()) {
      std::cout << summary.dump(2) << "\n";
    } else {
      std::ofstream f(out);
      f << summary.dump(2) << "\n";
    }
    if (run.results.empty()) return orbi::kExitInput;
    return run.all_pass() ? 0 : orbi::kExitCheck;
  }
  return 0;
}
