#ifndef CLONELAB_SUITES_HPP
#define CLONELAB_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "clonelab/core.hpp"

namespace clonelab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::vector<std::string> witnesses;  // bounded serialization of failures
  std::string summary;
  double seconds = 0;
};

/// Every symmetric unary monoid generated from at most two seed functions,
/// against every alpha in S_n: the generated monoid must equal both normal
/// forms {alpha^k o g} and {g o alpha^k}. Intended scale n = 3.
SuiteResult suite_rep_unary(int n);

/// Curated generator sets for the binary representation suite (>= 20 for
/// n = 2, all with tractable closures at cap 4).
std::vector<std::vector<FnTable>> rep_binary_seed_sets(int n);

/// For each seeded symmetric clone C (cap `arity_cap`), each involution
/// alpha and every t of arity <= arity_cap/2: existence of f in C^(2m) with
/// t(xs) = f(alpha(xs), xs) must coincide with membership of t in the
/// closure of C with alpha, both directions.
SuiteResult suite_rep_binary_alpha(int n, int arity_cap);

/// Normal closures over all alpha != id (memoized per cycle type). For
/// n >= 5 every closure is A_n (alpha even) or S_n (alpha odd); n = 4 must
/// exhibit the Klein four group under double transpositions; n <= 3
/// analogous small-group expectations.
SuiteResult suite_schreier_ulam(int n);

/// Closed forms for G_lambda and lambda-injectivity against the all-subsets
/// oracles: exhaustive for n <= max_exhaustive_n, seeded samples for the
/// listed larger universes.
SuiteResult suite_glambda_oracle(int max_exhaustive_n, const std::vector<int>& sampled_ns,
                                 std::size_t samples_per_n, std::uint64_t seed);

/// The polEF extension's set containment g(g1,g2)[X] >= gamma[(X\S) /\ g1[X]]
/// exhaustively over all S, all partial tables and all unary pairs, plus the
/// constant-argument case and the finitized image bound for E-members.
SuiteResult suite_approx_ext(int n);

}  // namespace clonelab

#endif
