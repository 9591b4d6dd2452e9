#include "clonelab/monoids.hpp"

#include <algorithm>

#include "clonelab/funcgraph.hpp"

namespace clonelab {

namespace {

void require_unary(const FnTable& f, const char* who) {
  if (!f.is_unary()) throw InvalidInput(std::string(who) + ": unary function required");
}

void require_lambda(const FnTable& f, int lambda, const char* who) {
  if (lambda < 1 || lambda > f.universe()) {
    throw InvalidInput(std::string(who) + ": lambda must satisfy 1 <= lambda <= n, got " +
                       std::to_string(lambda));
  }
}

std::vector<int> fiber_sizes(const FnTable& f) {
  std::vector<int> sizes(static_cast<std::size_t>(f.universe()), 0);
  for (int v : f.values()) sizes[static_cast<std::size_t>(v)] += 1;
  return sizes;
}

// Visit all subsets of {0,...,n-1} of the given size as bitmasks.
template <typename Visit>
void for_each_subset(int n, int size, Visit visit) {
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << i;
    visit(mask);
    int i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    idx[static_cast<std::size_t>(i)] += 1;
    for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

bool in_A(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "in_A");
  int exceptional = 0;
  for (int s : fiber_sizes(f)) {
    if (ideal.large_size(s)) ++exceptional;
  }
  return ideal.small_size(exceptional);
}

bool in_B(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "in_B");
  for (int s : fiber_sizes(f)) {
    if (ideal.large_size(s)) return false;
  }
  return true;
}

bool in_E(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "in_E");
  int missed = f.universe() - static_cast<int>(image(f).size());
  return ideal.small_size(missed);
}

bool in_F(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "in_F");
  return in_E(f, ideal) || f.is_constant();
}

bool in_G_lambda(const FnTable& f, int lambda) {
  require_unary(f, "in_G_lambda");
  require_lambda(f, lambda, "in_G_lambda");
  int n = f.universe();
  int im = static_cast<int>(image(f).size());
  // Removing A can be absorbed by the n - im redundant fiber elements; only
  // the overflow kills image values, one per element.
  int best_surviving_image = im - std::max(0, lambda - (n - im));
  return best_surviving_image <= n - lambda;
}

bool in_G_lambda_exhaustive(const FnTable& f, int lambda) {
  require_unary(f, "in_G_lambda_exhaustive");
  require_lambda(f, lambda, "in_G_lambda_exhaustive");
  int n = f.universe();
  bool ok = true;
  for_each_subset(n, lambda, [&](unsigned a_mask) {
    if (!ok) return;
    unsigned hit = 0;
    for (int x = 0; x < n; ++x) {
      if (!(a_mask & (1u << x))) hit |= 1u << f.at1(x);
    }
    int missed = n - __builtin_popcount(hit);
    if (missed < lambda) ok = false;
  });
  return ok;
}

bool lambda_injective(const FnTable& f, int lambda) {
  require_unary(f, "lambda_injective");
  require_lambda(f, lambda, "lambda_injective");
  int minimal_removal = f.universe() - static_cast<int>(image(f).size());
  return minimal_removal < lambda;
}

bool lambda_injective_exhaustive(const FnTable& f, int lambda) {
  require_unary(f, "lambda_injective_exhaustive");
  require_lambda(f, lambda, "lambda_injective_exhaustive");
  int n = f.universe();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) >= lambda) continue;
    unsigned seen = 0;
    bool injective = true;
    for (int x = 0; x < n && injective; ++x) {
      if (mask & (1u << x)) continue;
      unsigned bit = 1u << f.at1(x);
      if (seen & bit) injective = false;
      seen |= bit;
    }
    if (injective) return true;
  }
  return false;
}

bool lambda_surjective(const FnTable& f, int lambda) {
  require_unary(f, "lambda_surjective");
  require_lambda(f, lambda, "lambda_surjective");
  return f.universe() - static_cast<int>(image(f).size()) < lambda;
}

bool in_M_lambda(const FnTable& f, int lambda) {
  return lambda_surjective(f, lambda) || !lambda_injective(f, lambda);
}

bool in_A_prime(const FnTable& f, const SmallnessIdeal& ideal, int lambda_bound) {
  require_unary(f, "in_A_prime");
  require_lambda(f, lambda_bound, "in_A_prime");
  std::vector<int> sizes = fiber_sizes(f);
  for (int lambda = 1; lambda <= lambda_bound; ++lambda) {
    int exceptional = 0;
    for (int s : sizes) {
      if (s > lambda) ++exceptional;
    }
    if (ideal.small_size(exceptional)) return true;
  }
  return false;
}

bool is_generous(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "is_generous");
  for (const auto& cls : kernel_classes(f)) {
    if (!ideal.large_size(static_cast<int>(cls.size()))) return false;
  }
  return true;
}

bool in_chi(const FnTable& f, const SmallnessIdeal& ideal) {
  require_unary(f, "in_chi");
  return image(f).size() <= 2 && is_generous(f, ideal);
}

bool is_rich(const FnTable& f, const RichnessParams& params) {
  require_unary(f, "is_rich");
  if (params.periods.empty()) throw InvalidInput("is_rich: at least one period required");
  if (params.min_count < 1) throw InvalidInput("is_rich: min_count must be >= 1");
  SnailSpectrum spec = spectrum(f);
  for (int p : params.periods) {
    if (p < 1) throw InvalidInput("is_rich: periods must be >= 1");
    auto it = spec.find(p);
    if (it == spec.end() || it->second < params.min_count) return false;
  }
  return true;
}

MonoidPredicateReport membership_report(const FnTable& f, const SmallnessIdeal& ideal,
                                        const std::vector<int>& lambdas,
                                        const RichnessParams& richness) {
  require_unary(f, "membership_report");
  if (f.universe() != ideal.n()) throw InvalidInput("membership_report: ideal universe mismatch");
  MonoidPredicateReport r;
  r.fn_id = f.id();
  r.n = f.universe();
  r.k = ideal.k();
  r.lambda_bound = f.universe();
  r.lambdas = lambdas;
  r.richness = richness;
  r.A = in_A(f, ideal);
  r.A_prime = in_A_prime(f, ideal, r.lambda_bound);
  r.B = in_B(f, ideal);
  r.E = in_E(f, ideal);
  r.F = in_F(f, ideal);
  r.generous = is_generous(f, ideal);
  r.chi = in_chi(f, ideal);
  r.rich = is_rich(f, richness);
  for (int lambda : lambdas) {
    r.G_lambda[lambda] = in_G_lambda(f, lambda);
    r.M_lambda[lambda] = in_M_lambda(f, lambda);
    r.lambda_injective[lambda] = clonelab::lambda_injective(f, lambda);
    r.lambda_surjective[lambda] = clonelab::lambda_surjective(f, lambda);
  }
  return r;
}

std::vector<FnTable> all_unary_functions(int n) {
  Universe check(n);
  if (n > 8) {
    throw GuardExceeded("enumerating all n^n unary functions is guarded to n <= 8, got n=" +
                        std::to_string(n));
  }
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(n);
  std::vector<FnTable> out;
  out.reserve(count);
  std::vector<int> vals(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    out.emplace_back(n, 1, vals);
    for (int i = n - 1; i >= 0; --i) {
      if (++vals[static_cast<std::size_t>(i)] < n) break;
      vals[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

}  // namespace clonelab
