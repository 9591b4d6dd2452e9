// clonelab — a finite-universe workbench for clone and transformation-monoid
// structure: snail decompositions, conjugacy with conjugator synthesis,
// closure engines, membership predicates and extension builders.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "clonelab/approx.hpp"
#include "clonelab/clone_engine.hpp"
#include "clonelab/funcgraph.hpp"
#include "clonelab/io.hpp"
#include "clonelab/json_out.hpp"
#include "clonelab/monoids.hpp"
#include "clonelab/suites.hpp"

using nlohmann::json;
using namespace clonelab;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitSuccess = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;

std::string default_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CLONELAB_CACHE")) return env;
  return ".clonelab-cache";
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

SnailSpectrum parse_spectrum(const std::string& text) {
  SnailSpectrum spec;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidInput("spectrum entries look like 'period:count', got '" + item + "'");
    }
    spec[std::stoi(item.substr(0, colon))] += std::stoi(item.substr(colon + 1));
  }
  if (spec.empty()) throw InvalidInput("empty spectrum");
  return spec;
}

std::string table_line(const FnTable& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (i) out << ' ';
    out << f.values()[i];
  }
  return out.str();
}

void emit(const json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    // compact text rendering of the same content
    std::cout << "# config: " << report.at("config").dump() << "\n";
    for (const auto& [key, value] : report.items()) {
      if (key == "schema" || key == "config") continue;
      std::cout << key << ": " << value.dump() << "\n";
    }
  }
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& file, int k_flag, const std::string& lambdas_csv,
                const std::string& rich_periods_csv, int rich_min_count,
                const std::string& format) {
  FnTable f = read_fn_file(file);
  if (!f.is_unary()) throw InvalidInput("analyze: endofunction (arity 1) file required");
  int n = f.universe();
  int k = k_flag > 0 ? k_flag : n;
  SmallnessIdeal ideal(n, k);
  std::vector<int> lambdas = lambdas_csv.empty() ? std::vector<int>{} : parse_int_list(lambdas_csv);
  if (lambdas.empty()) {
    for (int lambda = 1; lambda <= n; ++lambda) lambdas.push_back(lambda);
  }
  RichnessParams richness;
  richness.periods = rich_periods_csv.empty() ? std::vector<int>{1, 2} : parse_int_list(rich_periods_csv);
  richness.min_count = rich_min_count;

  SnailDecomposition d = decompose(f);
  json report{
      {"schema", kSchemaVersion},
      {"config", json{{"command", "analyze"},
                      {"file", file},
                      {"n", n},
                      {"k", k},
                      {"lambdas", lambdas},
                      {"richness", json{{"periods", richness.periods}, {"min_count", richness.min_count}}},
                      {"format", format}}},
      {"function", to_json(f)},
      {"decomposition", to_json(d)},
      {"spectrum", to_json(spectrum(f))},
      {"canonical_form", canonical_form(f).to_string()},
      {"predicates", to_json(membership_report(f, ideal, lambdas, richness))}};
  emit(report, format);
  return kExitSuccess;
}

int cmd_conj(const std::string& file_f, const std::string& file_g, bool find,
             const std::string& format) {
  FnTable f = read_fn_file(file_f);
  FnTable g = read_fn_file(file_g);
  if (!f.is_unary() || !g.is_unary()) throw InvalidInput("conj: endofunction files required");
  if (f.universe() != g.universe()) throw InvalidInput("conj: universe mismatch");

  bool same_form = canonical_form(f) == canonical_form(g);
  json report{{"schema", kSchemaVersion},
              {"config", json{{"command", "conj"},
                              {"f", file_f},
                              {"g", file_g},
                              {"n", f.universe()},
                              {"find", find},
                              {"format", format}}},
              {"conjugate", same_form},
              {"gamma", nullptr}};
  if (find && same_form) {
    auto gamma = find_conjugator(f, g);
    if (!gamma) throw std::logic_error("conj: canonical forms agree but no conjugator was found");
    report["gamma"] = gamma->forward().values();
  }
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << (same_form ? "CONJUGATE" : "NOT CONJUGATE") << "\n";
    if (find && same_form) {
      std::cout << "gamma: " << table_line(FnTable(f.universe(), 1, report["gamma"].get<std::vector<int>>()))
                << "\n";
    }
  }
  return kExitSuccess;
}

int cmd_closure(const std::vector<std::string>& gen_files, int n_flag, int cap_flag,
                bool symmetric, int workers, bool use_cache, const std::string& cache_dir_flag,
                bool dump, const std::string& format) {
  std::vector<FnTable> gens;
  for (const std::string& file : gen_files) gens.push_back(read_fn_file(file));
  int n = n_flag;
  if (n <= 0) {
    if (gens.empty()) throw InvalidInput("closure: --n is required when no generator files are given");
    n = gens.front().universe();
  }
  int cap = cap_flag;
  if (cap <= 0) {
    cap = 1;
    for (const FnTable& g : gens) cap = std::max(cap, g.arity());
  }

  ClosureOptions opts;
  opts.arity_cap = cap;
  opts.symmetric = symmetric;
  opts.workers = workers;

  std::string cache_dir = default_cache_dir(cache_dir_flag);
  std::string cache_state = "off";
  std::optional<ClosureSet> cs;
  if (use_cache) {
    cs = read_closure_cache(cache_dir, n, cap, symmetric, gens);
    cache_state = cs ? "hit" : "miss";
  }
  if (!cs) {
    cs = clone_closure(n, gens, opts);
    if (use_cache) {
      write_closure_cache(cache_dir, *cs);
      cache_state = cache_state == "miss" ? "written" : cache_state;
    }
  }

  json counts = json::object();
  for (const auto& [arity, count] : cs->arity_counts()) counts[std::to_string(arity)] = count;
  json hist = json::object();
  for (const auto& [depth, count] : cs->generation_histogram()) hist[std::to_string(depth)] = count;

  json report{{"schema", kSchemaVersion},
              {"config", json{{"command", "closure"},
                              {"n", n},
                              {"arity_cap", cap},
                              {"symmetric", symmetric},
                              {"workers", workers},
                              {"generators", gen_files},
                              {"cache", cache_state},
                              {"cache_key", closure_cache_key(n, cap, symmetric, gens)},
                              {"format", format}}},
              {"members", cs->size()},
              {"members_per_arity", counts},
              {"generation_histogram", hist}};
  emit(report, format);
  if (dump) {
    for (const FnTable& m : cs->members()) std::cout << format_operation(m);
  }
  return kExitSuccess;
}

int cmd_lemma_check(const std::string& suite, int n_flag, int cap_flag, std::size_t samples,
                    std::uint64_t seed, const std::string& format) {
  SuiteResult result;
  if (suite == "rep-unary") {
    result = suite_rep_unary(n_flag > 0 ? n_flag : 3);
  } else if (suite == "rep-binary-alpha") {
    result = suite_rep_binary_alpha(n_flag > 0 ? n_flag : 2, cap_flag > 0 ? cap_flag : 4);
  } else if (suite == "schreier-ulam") {
    result = suite_schreier_ulam(n_flag > 0 ? n_flag : 5);
  } else if (suite == "glambda-oracle") {
    int max_n = n_flag > 0 ? std::min(n_flag, 5) : 5;
    std::vector<int> sampled;
    if (n_flag <= 0 || n_flag >= 6) sampled.push_back(6);
    if (n_flag <= 0 || n_flag >= 7) sampled.push_back(7);
    result = suite_glambda_oracle(max_n, sampled, samples, seed);
  } else if (suite == "approx-ext") {
    result = suite_approx_ext(n_flag > 0 ? n_flag : 3);
  } else {
    throw InvalidInput("unknown suite '" + suite +
                       "'; expected one of rep-unary, rep-binary-alpha, schreier-ulam, "
                       "glambda-oracle, approx-ext");
  }

  json report{{"schema", kSchemaVersion},
              {"config", json{{"command", "lemma-check"},
                              {"suite", suite},
                              {"n", n_flag},
                              {"cap", cap_flag},
                              {"samples", samples},
                              {"seed", seed},
                              {"format", format}}},
              {"passed", result.passed},
              {"checks", result.checks},
              {"summary", result.summary},
              {"seconds", result.seconds},
              {"witnesses", result.witnesses}};
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << (result.passed ? "PASS" : "FAIL") << " " << result.name << ": " << result.summary
              << " (" << result.seconds << "s)\n";
    for (const std::string& w : result.witnesses) std::cout << "  witness: " << w << "\n";
  }
  return result.passed ? kExitSuccess : kExitSuiteFailure;
}

int cmd_gen(const std::string& kind, int n, int arity, std::uint64_t seed,
            const std::string& spec_csv, const std::string& sizes_csv, int width,
            const std::string& out_file) {
  std::optional<FnTable> out;
  if (kind == "random") {
    Universe check(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> val(0, n - 1);
    std::vector<int> vals(checked_table_size(n, arity));
    for (int& v : vals) v = val(rng);
    out = FnTable(n, arity, std::move(vals));
  } else if (kind == "spectrum") {
    if (spec_csv.empty()) throw InvalidInput("gen spectrum: --spec is required");
    TreePlan plan;
    plan.fiber_width = width;
    if (!sizes_csv.empty()) plan.sizes = parse_int_list(sizes_csv);
    out = realize_spectrum(n, parse_spectrum(spec_csv), plan);
  } else if (kind == "permutation") {
    Universe check(n);
    std::mt19937_64 rng(seed);
    std::vector<int> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(pick(rng))]);
    }
    out = FnTable(n, 1, std::move(vals));
  } else {
    throw InvalidInput("unknown gen kind '" + kind + "'; expected random, spectrum or permutation");
  }

  std::string text = out->is_unary() ? format_endofunction(*out) : format_operation(*out);
  if (out_file.empty()) {
    std::cout << text;
  } else {
    atomic_write_file(out_file, text);
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clonelab — finite clone/monoid workbench"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "snail decomposition, canonical form and predicate report");
  std::string analyze_file;
  int analyze_k = 0;
  std::string analyze_lambdas, analyze_periods;
  int analyze_min_count = 1;
  analyze->add_option("file", analyze_file, "endofunction file")->required();
  analyze->add_option("--k", analyze_k, "smallness threshold (default n)");
  analyze->add_option("--lambdas", analyze_lambdas, "comma-separated lambda values (default 1..n)");
  analyze->add_option("--rich-periods", analyze_periods, "richness periods (default 1,2)");
  analyze->add_option("--rich-min-count", analyze_min_count, "richness minimum count (default 1)");

  // conj
  auto* conj = app.add_subcommand("conj", "conjugacy test with optional conjugator synthesis");
  std::string conj_f, conj_g;
  bool conj_find = false;
  conj->add_option("f", conj_f, "endofunction file")->required();
  conj->add_option("g", conj_g, "endofunction file")->required();
  conj->add_flag("--find", conj_find, "construct and print a conjugator");

  // closure
  auto* closure = app.add_subcommand("closure", "closure computation with caching");
  std::vector<std::string> closure_gens;
  int closure_n = 0, closure_cap = 0, closure_workers = 1;
  bool closure_symmetric = false, closure_cache = false, closure_dump = false;
  std::string closure_cache_dir;
  closure->add_option("generators", closure_gens, "generator files (endofunction or operation format)");
  closure->add_option("--n", closure_n, "universe size (required when no generators)");
  closure->add_option("--arity-cap", closure_cap, "arity cap (default: max generator arity)");
  closure->add_flag("--symmetric", closure_symmetric, "close under conjugation as well");
  closure->add_option("--workers", closure_workers, "parallel workers (results are identical)");
  closure->add_flag("--cache", closure_cache, "use the on-disk closure cache");
  closure->add_option("--cache-dir", closure_cache_dir, "cache directory (default $CLONELAB_CACHE or .clonelab-cache)");
  closure->add_flag("--dump", closure_dump, "print member tables after the report");

  // lemma-check
  auto* lemma = app.add_subcommand("lemma-check", "run a verification suite");
  std::string lemma_suite;
  int lemma_n = 0, lemma_cap = 0;
  std::size_t lemma_samples = 10000;
  std::uint64_t lemma_seed = 20250801;
  lemma->add_option("suite", lemma_suite,
                    "rep-unary | rep-binary-alpha | schreier-ulam | glambda-oracle | approx-ext")
      ->required();
  lemma->add_option("--n", lemma_n, "universe size override");
  lemma->add_option("--cap", lemma_cap, "arity cap override");
  lemma->add_option("--samples", lemma_samples, "sample count for randomized suites");
  lemma->add_option("--seed", lemma_seed, "random seed");

  // gen
  auto* gen = app.add_subcommand("gen", "deterministic generators for test inputs");
  std::string gen_kind, gen_spec, gen_sizes, gen_out;
  int gen_n = 0, gen_arity = 1, gen_width = 2;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", gen_kind, "random | spectrum | permutation")->required();
  gen->add_option("--n", gen_n, "universe size")->required();
  gen->add_option("--arity", gen_arity, "arity for random operations (default 1)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--spec", gen_spec, "spectrum as 'period:count,...'");
  gen->add_option("--sizes", gen_sizes, "per-snail sizes for spectrum realization");
  gen->add_option("--width", gen_width, "tree fiber width (default 2)");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) {
      return cmd_analyze(analyze_file, analyze_k, analyze_lambdas, analyze_periods,
                         analyze_min_count, format);
    }
    if (conj->parsed()) return cmd_conj(conj_f, conj_g, conj_find, format);
    if (closure->parsed()) {
      return cmd_closure(closure_gens, closure_n, closure_cap, closure_symmetric, closure_workers,
                         closure_cache, closure_cache_dir, closure_dump, format);
    }
    if (lemma->parsed()) {
      return cmd_lemma_check(lemma_suite, lemma_n, lemma_cap, lemma_samples, lemma_seed, format);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_kind, gen_n, gen_arity, gen_seed, gen_spec, gen_sizes, gen_width, gen_out);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
