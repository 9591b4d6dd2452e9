#include "clonelab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "clonelab/approx.hpp"
#include "clonelab/clone_engine.hpp"
#include "clonelab/funcgraph.hpp"
#include "clonelab/monoids.hpp"

namespace clonelab {

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string table_str(const FnTable& f) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (i) out << ",";
    out << f.values()[i];
  }
  out << "]";
  return out.str();
}

void add_witness(SuiteResult& r, std::string w, std::size_t cap = 16) {
  if (r.witnesses.size() < cap) r.witnesses.push_back(std::move(w));
}

}  // namespace

// ---------------------------------------------------------------------------
// rep-unary
// ---------------------------------------------------------------------------

SuiteResult suite_rep_unary(int n) {
  Stopwatch watch;
  SuiteResult result;
  result.name = "rep-unary";
  result.passed = true;

  std::vector<FnTable> fns = all_unary_functions(n);
  std::vector<Permutation> perms = all_permutations(n);

  std::vector<std::vector<FnTable>> gen_sets;
  gen_sets.push_back({});
  for (std::size_t i = 0; i < fns.size(); ++i) {
    gen_sets.push_back({fns[i]});
    for (std::size_t j = i + 1; j < fns.size(); ++j) gen_sets.push_back({fns[i], fns[j]});
  }

  ClosureOptions opts;
  opts.symmetric = true;
  for (const auto& gens : gen_sets) {
    ClosureSet G = monoid_closure(n, gens, opts);
    for (const Permutation& alpha : perms) {
      RepresentationUnaryResult check = check_representation_unary(G, alpha);
      result.checks += 1;
      if (!check.equal) {
        result.passed = false;
        std::ostringstream w;
        w << "monoid of " << G.size() << " functions, alpha=" << table_str(alpha.forward())
          << ": " << check.detail;
        if (check.witness) w << ", witness " << table_str(*check.witness);
        add_witness(result, w.str());
      }
    }
  }

  std::ostringstream s;
  s << gen_sets.size() << " symmetric monoids x " << perms.size() << " permutations at n=" << n
    << ", " << result.checks << " representation checks, " << result.witnesses.size()
    << " witnesses";
  result.summary = s.str();
  result.seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// rep-binary-alpha
// ---------------------------------------------------------------------------

std::vector<std::vector<FnTable>> rep_binary_seed_sets(int n) {
  if (n != 2) {
    throw InvalidInput("rep_binary_seed_sets: curated seed corpus exists for n=2 only");
  }
  FnTable id = FnTable::identity(2);
  FnTable nott(2, 1, {1, 0});
  FnTable c0 = FnTable::constant(2, 0);
  FnTable c1 = FnTable::constant(2, 1);
  FnTable andt(2, 2, {0, 0, 0, 1});
  FnTable ort(2, 2, {0, 1, 1, 1});
  FnTable xort(2, 2, {0, 1, 1, 0});
  FnTable xnort(2, 2, {1, 0, 0, 1});
  FnTable nandt(2, 2, {1, 1, 1, 0});
  FnTable maj(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
  FnTable xor3(2, 3, {0, 1, 1, 0, 1, 0, 0, 1});

  return {
      {},
      {c0},
      {nott},
      {c0, nott},
      {andt},
      {ort},
      {andt, ort},
      {andt, c0},
      {andt, c1},
      {ort, c0},
      {xort},
      {xnort},
      {xort, c1},
      {xort, nott},
      {maj},
      {maj, c0},
      {maj, nott},
      {xor3},
      {xor3, nott},
      {maj, xor3},
      {andt, nott},
      {nandt},
      {id, c1},
  };
}

SuiteResult suite_rep_binary_alpha(int n, int arity_cap) {
  Stopwatch watch;
  SuiteResult result;
  result.name = "rep-binary-alpha";
  result.passed = true;

  std::vector<std::vector<FnTable>> seeds = rep_binary_seed_sets(n);
  std::vector<Permutation> involutions;
  for (const Permutation& p : all_permutations(n)) {
    if (p.compose(p).is_identity()) involutions.push_back(p);
  }

  // Every t with 2*arity(t) <= cap.
  std::vector<FnTable> targets;
  for (int m = 1; 2 * m <= arity_cap; ++m) {
    std::size_t points = checked_table_size(n, m);
    std::vector<int> vals(points, 0);
    while (true) {
      targets.emplace_back(n, m, vals);
      std::size_t i = points;
      while (i > 0 && vals[i - 1] == n - 1) vals[--i] = 0;
      if (i == 0) break;
      vals[i - 1] += 1;
    }
  }

  ClosureOptions sym_opts;
  sym_opts.arity_cap = arity_cap;
  sym_opts.symmetric = true;
  sym_opts.work_guard = 5e10;  // the self-dual seeds legitimately need ~1e9
  ClosureOptions plain_opts;
  plain_opts.arity_cap = arity_cap;
  plain_opts.work_guard = 5e10;

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    ClosureSet C = clone_closure(n, seeds[si], sym_opts);
    for (const Permutation& alpha : involutions) {
      std::vector<FnTable> gens = C.rule_generators();
      gens.push_back(alpha.forward());
      ClosureSet with_alpha = clone_closure_seeded(n, std::move(gens), C.members(), plain_opts);
      for (const FnTable& t : targets) {
        bool representable = check_representation_binary_alpha(C, alpha, t).representable;
        bool member = with_alpha.contains(t);
        result.checks += 1;
        if (representable != member) {
          result.passed = false;
          std::ostringstream w;
          w << "seed set #" << si << " (|C|=" << C.size() << "), alpha="
            << table_str(alpha.forward()) << ", t=" << table_str(t)
            << ": representable=" << representable << " member=" << member;
          add_witness(result, w.str());
        }
      }
    }
  }

  std::ostringstream s;
  s << seeds.size() << " seeded symmetric clones x " << involutions.size()
    << " involutions at n=" << n << ", cap " << arity_cap << ", " << result.checks
    << " iff checks, " << result.witnesses.size() << " witnesses";
  result.summary = s.str();
  result.seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// schreier-ulam
// ---------------------------------------------------------------------------

namespace {

std::vector<int> cycle_type(const Permutation& p) {
  int n = p.universe();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> type;
  for (int x = 0; x < n; ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    int len = 0;
    int y = x;
    while (!seen[static_cast<std::size_t>(y)]) {
      seen[static_cast<std::size_t>(y)] = true;
      y = p(y);
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

}  // namespace

SuiteResult suite_schreier_ulam(int n) {
  Stopwatch watch;
  SuiteResult result;
  result.name = "schreier-ulam";
  result.passed = true;

  std::size_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= static_cast<std::size_t>(i);

  std::map<std::vector<int>, NormalClosureResult> by_type;
  std::string klein_note;
  for (const Permutation& alpha : all_permutations(n)) {
    if (alpha.is_identity()) continue;
    std::vector<int> type = cycle_type(alpha);
    auto it = by_type.find(type);
    if (it == by_type.end()) it = by_type.emplace(type, normal_closure_check(alpha)).first;
    const NormalClosureResult& r = it->second;
    result.checks += 1;

    bool ok;
    if (n >= 5) {
      // Only 1, A_n, S_n are normal in S_n here, so the closure of a non-id
      // element is A_n exactly for even alpha.
      ok = alpha.parity() == 1 ? (r.kind == NormalClosureKind::Alternating && r.order == factorial / 2)
                               : (r.kind == NormalClosureKind::FullSymmetric && r.order == factorial);
    } else if (n == 4) {
      bool double_transposition = type == std::vector<int>{2, 2};
      if (double_transposition) {
        ok = r.kind == NormalClosureKind::ProperSubgroup && r.order == 4;
        if (ok && klein_note.empty()) {
          klein_note = "double transpositions generate the Klein four group (order 4)";
        }
      } else {
        ok = alpha.parity() == 1 ? (r.kind == NormalClosureKind::Alternating && r.order == 12)
                                 : (r.kind == NormalClosureKind::FullSymmetric && r.order == 24);
      }
    } else if (n == 3) {
      ok = alpha.parity() == 1 ? (r.kind == NormalClosureKind::Alternating && r.order == 3)
                               : (r.kind == NormalClosureKind::FullSymmetric && r.order == 6);
    } else {
      ok = r.kind == NormalClosureKind::FullSymmetric && r.order == factorial;
    }
    if (!ok) {
      result.passed = false;
      std::ostringstream w;
      w << "alpha=" << table_str(alpha.forward()) << " -> " << to_string(r.kind) << " of order "
        << r.order;
      add_witness(result, w.str());
    }
  }

  std::ostringstream s;
  s << "finite echo: " << result.checks << " non-identity permutations at n=" << n << " over "
    << by_type.size() << " cycle types";
  if (!klein_note.empty()) s << "; " << klein_note;
  result.summary = s.str();
  result.seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// glambda-oracle
// ---------------------------------------------------------------------------

SuiteResult suite_glambda_oracle(int max_exhaustive_n, const std::vector<int>& sampled_ns,
                                 std::size_t samples_per_n, std::uint64_t seed) {
  Stopwatch watch;
  SuiteResult result;
  result.name = "glambda-oracle";
  result.passed = true;

  auto check_fn = [&](const FnTable& f) {
    int n = f.universe();
    for (int lambda = 1; lambda <= n; ++lambda) {
      result.checks += 2;
      if (in_G_lambda(f, lambda) != in_G_lambda_exhaustive(f, lambda)) {
        result.passed = false;
        add_witness(result, "G_lambda mismatch: f=" + table_str(f) + " lambda=" + std::to_string(lambda));
      }
      if (lambda_injective(f, lambda) != lambda_injective_exhaustive(f, lambda)) {
        result.passed = false;
        add_witness(result,
                    "lambda-injective mismatch: f=" + table_str(f) + " lambda=" + std::to_string(lambda));
      }
    }
  };

  for (int n = 1; n <= max_exhaustive_n; ++n) {
    for (const FnTable& f : all_unary_functions(n)) check_fn(f);
  }
  std::mt19937_64 rng(seed);
  for (int n : sampled_ns) {
    std::uniform_int_distribution<int> val(0, n - 1);
    for (std::size_t i = 0; i < samples_per_n; ++i) {
      std::vector<int> vals(static_cast<std::size_t>(n));
      for (int& v : vals) v = val(rng);
      check_fn(FnTable(n, 1, std::move(vals)));
    }
  }

  std::ostringstream s;
  s << "exhaustive n<=" << max_exhaustive_n << ", " << samples_per_n << " samples at each of "
    << sampled_ns.size() << " larger universes (seed " << seed << "), " << result.checks
    << " closed-form/oracle comparisons";
  result.summary = s.str();
  result.seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// approx-ext
// ---------------------------------------------------------------------------

SuiteResult suite_approx_ext(int n) {
  Stopwatch watch;
  SuiteResult result;
  result.name = "approx-ext";
  result.passed = true;

  std::vector<FnTable> fns = all_unary_functions(n);

  for (unsigned mask = 0; mask < (1u << n) - 1; ++mask) {  // S with X\S nonempty
    std::vector<int> domain;
    for (int x = 0; x < n; ++x) {
      if (mask & (1u << x)) domain.push_back(x);
    }
    std::size_t entries = 1;
    for (int i = 0; i < 2; ++i) entries *= domain.size();
    std::vector<int> pvals(entries, 0);
    while (true) {
      PartialFn p(n, 2, domain, pvals);
      PolEFExtension ext = extend_polEF(p);

      // gamma as a lookup over X\S
      std::vector<int> gamma_at(static_cast<std::size_t>(n), -1);
      for (std::size_t i = 0; i < ext.gamma_domain.size(); ++i) {
        gamma_at[static_cast<std::size_t>(ext.gamma_domain[i])] = ext.gamma[i];
      }

      for (const FnTable& g1 : fns) {
        // gamma[(X\S) /\ g1[X]]
        std::vector<bool> rhs(static_cast<std::size_t>(n), false);
        for (int v : image(g1)) {
          if (gamma_at[static_cast<std::size_t>(v)] >= 0) rhs[static_cast<std::size_t>(gamma_at[static_cast<std::size_t>(v)])] = true;
        }
        int rhs_size = static_cast<int>(std::count(rhs.begin(), rhs.end(), true));
        bool g1_const_outside = g1.is_constant() && gamma_at[static_cast<std::size_t>(g1.at1(0))] >= 0;

        for (const FnTable& g2 : fns) {
          result.checks += 1;
          std::vector<bool> img(static_cast<std::size_t>(n), false);
          bool constant = true;
          int first = -1;
          for (int x = 0; x < n; ++x) {
            int args[2] = {g1.at1(x), g2.at1(x)};
            int v = ext.table(args);
            img[static_cast<std::size_t>(v)] = true;
            if (first < 0) first = v;
            constant = constant && v == first;
          }
          bool contained = true;
          for (int y = 0; y < n; ++y) {
            if (rhs[static_cast<std::size_t>(y)] && !img[static_cast<std::size_t>(y)]) contained = false;
          }
          if (!contained) {
            result.passed = false;
            add_witness(result, "containment failed: S mask=" + std::to_string(mask) +
                                    " g1=" + table_str(g1) + " g2=" + table_str(g2));
          }
          // Constant first argument with value outside S: composite is the
          // constant gamma(c).
          if (g1_const_outside) {
            int expected = gamma_at[static_cast<std::size_t>(g1.at1(0))];
            if (!constant || first != expected) {
              result.passed = false;
              add_witness(result, "constant-case failed: S mask=" + std::to_string(mask) +
                                      " c=" + std::to_string(g1.at1(0)) + " g2=" + table_str(g2));
            }
          }
          // Finitized preservation bound for E-members.
          int img_size = static_cast<int>(std::count(img.begin(), img.end(), true));
          for (int k = 1; k <= n; ++k) {
            SmallnessIdeal ideal(n, k);
            if (in_E(g1, ideal) && in_E(g2, ideal)) {
              if (n - img_size > n - rhs_size) {
                result.passed = false;
                add_witness(result, "image bound failed: S mask=" + std::to_string(mask) +
                                        " k=" + std::to_string(k) + " g1=" + table_str(g1) +
                                        " g2=" + table_str(g2));
              }
            }
          }
        }
      }

      std::size_t i = pvals.size();
      while (i > 0 && pvals[i - 1] == n - 1) pvals[--i] = 0;
      if (i == 0) break;
      pvals[i - 1] += 1;
    }
  }

  std::ostringstream s;
  s << "polEF extension over all S, all partial tables and all unary pairs at n=" << n << ": "
    << result.checks << " instances, " << result.witnesses.size() << " witnesses";
  result.summary = s.str();
  result.seconds = watch.seconds();
  return result;
}

}  // namespace clonelab
