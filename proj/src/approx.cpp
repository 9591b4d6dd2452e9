#include "clonelab/approx.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <sstream>

#include "clonelab/funcgraph.hpp"
#include "clonelab/io.hpp"

namespace clonelab {

namespace {

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

PartialFn::PartialFn(int n, int m, std::vector<int> domain, std::vector<int> values)
    : n_(n), m_(m), domain_(std::move(domain)), values_(std::move(values)) {
  Universe check(n);
  if (m < 1) throw InvalidInput("partial function arity must be >= 1");
  checked_table_size(n, m);
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] < 0 || domain_[i] >= n) throw InvalidInput("domain element outside the universe");
    if (i > 0 && domain_[i] <= domain_[i - 1]) {
      throw InvalidInput("domain must be strictly ascending");
    }
  }
  if (values_.size() != pow_size(domain_.size(), m)) {
    throw InvalidInput("partial function must be total on S^m: expected " +
                       std::to_string(pow_size(domain_.size(), m)) + " values, got " +
                       std::to_string(values_.size()));
  }
  for (int v : values_) {
    if (v < 0 || v >= n) throw InvalidInput("partial function value outside the universe");
  }
}

bool PartialFn::in_domain(int x) const {
  return std::binary_search(domain_.begin(), domain_.end(), x);
}

int PartialFn::at(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != m_) throw InvalidInput("partial function arity mismatch");
  std::size_t idx = 0;
  for (int a : args) {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), a);
    if (it == domain_.end() || *it != a) throw InvalidInput("argument outside the domain");
    idx = idx * domain_.size() + static_cast<std::size_t>(it - domain_.begin());
  }
  return values_[idx];
}

bool PartialFn::co_large_domain(const SmallnessIdeal& ideal) const {
  return ideal.co_large_size(static_cast<int>(domain_.size()));
}

PartialFn parse_partial_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0, m = 0;
  std::size_t s = 0;
  if (!(in >> n >> m >> s)) throw ParseError("expected header 'n m |S|'", 1, 1);
  std::vector<int> domain(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (!(in >> domain[i])) throw ParseError("truncated domain line", 2, 1);
  }
  std::size_t entries = pow_size(s, m);
  std::vector<int> values(entries, 0);
  std::vector<bool> seen(entries, false);
  std::vector<int> args(static_cast<std::size_t>(m));
  for (std::size_t e = 0; e < entries; ++e) {
    for (int i = 0; i < m; ++i) {
      if (!(in >> args[static_cast<std::size_t>(i)])) {
        throw ParseError("truncated tuple entry", static_cast<int>(3 + e), 1);
      }
    }
    std::string arrow;
    int v;
    if (!(in >> arrow) || arrow != "->" || !(in >> v)) {
      throw ParseError("expected '-> value' after tuple", static_cast<int>(3 + e), 1);
    }
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i) {
      auto it = std::lower_bound(domain.begin(), domain.end(), args[static_cast<std::size_t>(i)]);
      if (it == domain.end() || *it != args[static_cast<std::size_t>(i)]) {
        throw ParseError("tuple element outside the domain", static_cast<int>(3 + e), 1);
      }
      idx = idx * s + static_cast<std::size_t>(it - domain.begin());
    }
    if (seen[idx]) throw ParseError("duplicate tuple entry", static_cast<int>(3 + e), 1);
    seen[idx] = true;
    values[idx] = v;
  }
  return PartialFn(n, m, std::move(domain), std::move(values));
}

std::string format_partial_text(const PartialFn& p) {
  std::ostringstream out;
  out << p.universe() << " " << p.arity() << " " << p.domain().size() << "\n";
  for (std::size_t i = 0; i < p.domain().size(); ++i) {
    if (i) out << ' ';
    out << p.domain()[i];
  }
  out << "\n";
  std::size_t s = p.domain().size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(p.arity()), 0);
  for (std::size_t e = 0; e < p.values().size(); ++e) {
    for (int i = 0; i < p.arity(); ++i) {
      if (i) out << ' ';
      out << p.domain()[pick[static_cast<std::size_t>(i)]];
    }
    out << " -> " << p.values()[e] << "\n";
    for (int i = p.arity() - 1; i >= 0; --i) {
      if (++pick[static_cast<std::size_t>(i)] < s) break;
      pick[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out.str();
}

namespace {

// i-th element of X\S (ascending) -> i mod n.
std::pair<std::vector<int>, std::vector<int>> round_robin_outside(int n,
                                                                  const std::vector<int>& domain) {
  std::vector<int> outside;
  for (int x = 0; x < n; ++x) {
    if (!std::binary_search(domain.begin(), domain.end(), x)) outside.push_back(x);
  }
  std::vector<int> gamma(outside.size());
  for (std::size_t i = 0; i < outside.size(); ++i) gamma[i] = static_cast<int>(i % static_cast<std::size_t>(n));
  return {outside, gamma};
}

}  // namespace

FnTable extend_generic(const PartialFn& p) {
  if (p.arity() != 1) throw InvalidInput("extend_generic: unary partial function required");
  const int n = p.universe();
  std::vector<int> vals(static_cast<std::size_t>(n), 0);
  auto [outside, gamma] = round_robin_outside(n, p.domain());
  for (std::size_t i = 0; i < p.domain().size(); ++i) {
    vals[static_cast<std::size_t>(p.domain()[i])] = p.values()[i];
  }
  for (std::size_t i = 0; i < outside.size(); ++i) {
    vals[static_cast<std::size_t>(outside[i])] = gamma[i];
  }
  FnTable g(n, 1, std::move(vals));
  for (std::size_t i = 0; i < p.domain().size(); ++i) {
    assert(g.at1(p.domain()[i]) == p.values()[i]);
  }
  return g;
}

PolEFExtension extend_polEF(const PartialFn& p) {
  if (p.arity() != 2) throw InvalidInput("extend_polEF: binary partial function required");
  const int n = p.universe();
  if (p.domain_is_all()) throw InvalidInput("extend_polEF: X\\S must be nonempty");

  auto [outside, gamma] = round_robin_outside(n, p.domain());
  std::vector<int> gamma_at(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < outside.size(); ++i) gamma_at[static_cast<std::size_t>(outside[i])] = gamma[i];

  const std::vector<int>& dom = p.domain();
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < dom.size(); ++i) pos[static_cast<std::size_t>(dom[i])] = static_cast<int>(i);

  std::vector<int> vals(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = 0; x2 < n; ++x2) {
      int v;
      if (pos[static_cast<std::size_t>(x1)] < 0) {
        v = gamma_at[static_cast<std::size_t>(x1)];
      } else if (pos[static_cast<std::size_t>(x2)] < 0) {
        v = gamma_at[static_cast<std::size_t>(x2)];
      } else {
        v = p.values()[static_cast<std::size_t>(pos[static_cast<std::size_t>(x1)]) * dom.size() +
                       static_cast<std::size_t>(pos[static_cast<std::size_t>(x2)])];
      }
      vals[static_cast<std::size_t>(x1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x2)] = v;
    }
  }
  PolEFExtension out{FnTable(n, 2, std::move(vals)), std::move(outside), std::move(gamma),
                     false};
  out.gamma_onto = out.gamma_domain.size() >= static_cast<std::size_t>(n);
  for (int a : dom) {
    for (int b : dom) {
      int args[2] = {a, b};
      assert(out.table(args) == p.at(args));
      (void)args;
    }
  }
  return out;
}

ApproxProbeReport probe_approximation(const ClosureSet& cs, int m, const SmallnessIdeal& ideal,
                                      std::size_t trials, std::uint64_t seed) {
  const int n = cs.universe();
  if (ideal.n() != n) throw InvalidInput("probe_approximation: ideal universe mismatch");
  if (m < 1 || m > cs.arity_cap()) {
    throw InvalidInput("probe_approximation: arity must be within the closure's cap");
  }

  ApproxProbeReport report;
  report.n = n;
  report.arity = m;
  report.k = ideal.k();
  report.seed = seed;
  report.trials = trials;

  // Co-large subsets S (|X\S| >= k), as sorted element lists.
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (!ideal.co_large_size(size)) continue;
    std::vector<int> s;
    for (int x = 0; x < n; ++x) {
      if (mask & (1u << x)) s.push_back(x);
    }
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());

  std::vector<FnTable> candidates = cs.members_of_arity(m);
  auto search = [&](const PartialFn& p) -> std::optional<FnTable> {
    std::size_t s = p.domain().size();
    std::size_t entries = p.values().size();
    for (const FnTable& g : candidates) {
      bool ok = true;
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      std::vector<int> args(static_cast<std::size_t>(m));
      for (std::size_t e = 0; e < entries && ok; ++e) {
        for (int i = 0; i < m; ++i) args[static_cast<std::size_t>(i)] = p.domain()[pick[static_cast<std::size_t>(i)]];
        ok = g(args) == p.values()[e];
        for (int i = m - 1; i >= 0; --i) {
          if (++pick[static_cast<std::size_t>(i)] < s) break;
          pick[static_cast<std::size_t>(i)] = 0;
        }
      }
      if (ok) return g;
    }
    return std::nullopt;
  };

  constexpr double kExhaustiveLimit = 1e5;
  constexpr std::size_t kSampleLimit = 200;
  double space = 0;
  for (const auto& s : subsets) {
    space += std::pow(static_cast<double>(n), std::pow(static_cast<double>(s.size()), m));
    if (space > kExhaustiveLimit) break;
  }
  report.exhaustive = space <= kExhaustiveLimit;

  auto record = [&](const std::vector<int>& domain, std::vector<int> values) {
    PartialFn p(n, m, domain, std::move(values));
    std::optional<FnTable> hit = search(p);
    report.instances += 1;
    if (hit) report.hits += 1;
    if ((!hit && report.sample.size() < kSampleLimit) ||
        (hit && report.sample.size() + 16 < kSampleLimit)) {
      report.sample.push_back({p.domain(), p.values(), hit});
    }
  };

  if (report.exhaustive) {
    for (const auto& s : subsets) {
      std::size_t entries = pow_size(s.size(), m);
      std::vector<int> values(entries, 0);
      while (true) {
        record(s, values);
        std::size_t i = entries;
        while (i > 0 && values[i - 1] == n - 1) values[--i] = 0;
        if (i == 0) break;
        values[i - 1] += 1;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_subset(0, subsets.size() - 1);
    std::uniform_int_distribution<int> pick_value(0, n - 1);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& s = subsets[pick_subset(rng)];
      std::vector<int> values(pow_size(s.size(), m));
      for (int& v : values) v = pick_value(rng);
      record(s, std::move(values));
    }
  }
  report.hit_rate =
      report.instances == 0 ? 0.0 : static_cast<double>(report.hits) / static_cast<double>(report.instances);
  return report;
}

FnTable build_cross_section_example(int n, const std::vector<int>& T, int anchor) {
  Universe check(n);
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (T[i] < 0 || T[i] >= n) throw InvalidInput("build_cross_section_example: T outside the universe");
    if (i > 0 && T[i] <= T[i - 1]) throw InvalidInput("build_cross_section_example: T must be ascending");
  }
  if (!std::binary_search(T.begin(), T.end(), anchor)) {
    throw InvalidInput("build_cross_section_example: anchor must lie in T");
  }

  auto [outside, gamma] = round_robin_outside(n, T);
  std::vector<int> gamma_at(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < outside.size(); ++i) gamma_at[static_cast<std::size_t>(outside[i])] = gamma[i];
  std::vector<bool> in_t(static_cast<std::size_t>(n), false);
  for (int t : T) in_t[static_cast<std::size_t>(t)] = true;

  std::vector<int> vals(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  int counter = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int v;
      if (in_t[static_cast<std::size_t>(x)] && in_t[static_cast<std::size_t>(y)]) {
        v = anchor;
      } else if (y == anchor && !in_t[static_cast<std::size_t>(x)]) {
        v = gamma_at[static_cast<std::size_t>(x)];
      } else if (x == anchor && !in_t[static_cast<std::size_t>(y)]) {
        v = gamma_at[static_cast<std::size_t>(y)];
      } else {
        v = counter % n;
        ++counter;
      }
      vals[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)] = v;
    }
  }
  return FnTable(n, 2, std::move(vals));
}

FnTable build_rich_extension(const std::vector<int>& S, const SmallnessIdeal& ideal,
                             const RichnessParams& richness) {
  const int n = ideal.n();
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 0 || S[i] >= n) throw InvalidInput("build_rich_extension: S outside the universe");
    if (i > 0 && S[i] <= S[i - 1]) throw InvalidInput("build_rich_extension: S must be ascending");
  }
  if (richness.periods.empty() || richness.min_count < 1) {
    throw InvalidInput("build_rich_extension: richness parameters required");
  }

  SnailSpectrum spec;
  int needed = 0;
  for (int p : richness.periods) {
    if (p < 1) throw InvalidInput("build_rich_extension: periods must be >= 1");
    spec[p] = richness.min_count;
  }
  for (const auto& [p, count] : spec) needed += p * count;
  if (needed > static_cast<int>(S.size())) {
    throw InvalidInput("build_rich_extension: requested spectrum needs " + std::to_string(needed) +
                       " elements but |S| = " + std::to_string(S.size()));
  }

  // T = prefix of S hosting the spectrum as pure cycles; the rest of X is
  // spread round-robin over the whole universe.
  std::vector<int> T(S.begin(), S.begin() + needed);
  FnTable core = realize_spectrum(needed, spec, TreePlan{});
  std::vector<int> vals(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < needed; ++i) {
    vals[static_cast<std::size_t>(T[static_cast<std::size_t>(i)])] = T[static_cast<std::size_t>(core.at1(i))];
  }
  int counter = 0;
  for (int x = 0; x < n; ++x) {
    if (vals[static_cast<std::size_t>(x)] == -1) {
      vals[static_cast<std::size_t>(x)] = counter % n;
      ++counter;
    }
  }
  FnTable f(n, 1, std::move(vals));

  // Construction echo: the T-part realizes exactly the requested spectrum.
  std::vector<int> t_part(static_cast<std::size_t>(needed));
  for (int i = 0; i < needed; ++i) {
    auto it = std::lower_bound(T.begin(), T.end(), f.at1(T[static_cast<std::size_t>(i)]));
    assert(it != T.end());
    t_part[static_cast<std::size_t>(i)] = static_cast<int>(it - T.begin());
  }
  assert(spectrum(FnTable(needed, 1, t_part)) == spec);
  (void)t_part;
  return f;
}

}  // namespace clonelab
