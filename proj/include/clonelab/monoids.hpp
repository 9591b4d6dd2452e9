#ifndef CLONELAB_MONOIDS_HPP
#define CLONELAB_MONOIDS_HPP

#include <map>
#include <string>
#include <vector>

#include "clonelab/core.hpp"

namespace clonelab {

// Membership predicates for the named unary function classes, all
// parameterized by the smallness ideal. "Almost all" uniformly means "the
// exceptional set is small w.r.t. the same k".

/// A: the fiber f^-1[{y}] is small for almost all y.
bool in_A(const FnTable& f, const SmallnessIdeal& ideal);

/// B: every fiber is small.
bool in_B(const FnTable& f, const SmallnessIdeal& ideal);

/// E: f is almost surjective (|X \ f[X]| < k).
bool in_E(const FnTable& f, const SmallnessIdeal& ideal);

/// F: almost surjective or constant.
bool in_F(const FnTable& f, const SmallnessIdeal& ideal);

/// G_lambda: every A with |A| = lambda has |X \ f[X\A]| >= lambda.
/// Closed form; validated against in_G_lambda_exhaustive by the suites.
bool in_G_lambda(const FnTable& f, int lambda);

/// All-subsets oracle for G_lambda.
bool in_G_lambda_exhaustive(const FnTable& f, int lambda);

/// lambda-injective: some A with |A| < lambda makes f restricted to X\A
/// injective. Closed form (minimal removal is n - |image|).
bool lambda_injective(const FnTable& f, int lambda);

/// Removal-set oracle for lambda-injectivity.
bool lambda_injective_exhaustive(const FnTable& f, int lambda);

/// Adopted reading by symmetry with lambda-injective: |X \ f[X]| < lambda.
bool lambda_surjective(const FnTable& f, int lambda);

/// M_lambda: lambda-surjective or not lambda-injective.
bool in_M_lambda(const FnTable& f, int lambda);

/// A': some lambda <= lambda_bound has |f^-1[{x}]| <= lambda for almost all
/// x. With lambda_bound = n this is vacuously permissive (lambda = n always
/// works); the suites document that collapse.
bool in_A_prime(const FnTable& f, const SmallnessIdeal& ideal, int lambda_bound);

/// Generous: every kernel class is large.
bool is_generous(const FnTable& f, const SmallnessIdeal& ideal);

/// chi: at most two values and generous.
bool in_chi(const FnTable& f, const SmallnessIdeal& ideal);

/// Finite surrogate for "a large number of p-snails for all p": at least
/// min_count snails of every listed period.
struct RichnessParams {
  std::vector<int> periods;
  int min_count = 1;
};

bool is_rich(const FnTable& f, const RichnessParams& params);

/// Aggregated membership report; a pure function of (table, parameters).
struct MonoidPredicateReport {
  std::string fn_id;
  int n = 0;
  int k = 0;
  int lambda_bound = 0;
  std::vector<int> lambdas;
  RichnessParams richness;
  bool A = false;
  bool A_prime = false;
  bool B = false;
  bool E = false;
  bool F = false;
  bool generous = false;
  bool chi = false;
  bool rich = false;
  std::map<int, bool> G_lambda;
  std::map<int, bool> M_lambda;
  std::map<int, bool> lambda_injective;
  std::map<int, bool> lambda_surjective;
};

MonoidPredicateReport membership_report(const FnTable& f, const SmallnessIdeal& ideal,
                                        const std::vector<int>& lambdas,
                                        const RichnessParams& richness);

/// Measures (never asserts) whether {f : pred(f)} is composition-closed,
/// returning up to `max_witnesses` counterexample pairs (g, h) with
/// pred(g), pred(h) but not pred(g o h). The theory's closure claims live on
/// infinite X; finitely this is reported data.
struct CompositionClosureReport {
  std::size_t member_count = 0;
  bool closed = true;
  std::vector<std::pair<FnTable, FnTable>> witnesses;
};

template <typename Pred>
CompositionClosureReport composition_closure_report(const std::vector<FnTable>& members,
                                                    Pred pred, std::size_t max_witnesses = 4) {
  CompositionClosureReport report;
  report.member_count = members.size();
  for (const FnTable& g : members) {
    for (const FnTable& h : members) {
      if (!pred(compose1(g, h))) {
        report.closed = false;
        if (report.witnesses.size() < max_witnesses) report.witnesses.emplace_back(g, h);
      }
    }
  }
  return report;
}

/// All n^n unary tables in lexicographic order. Guarded (n <= 8).
std::vector<FnTable> all_unary_functions(int n);

}  // namespace clonelab

#endif
