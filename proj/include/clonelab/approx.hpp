#ifndef CLONELAB_APPROX_HPP
#define CLONELAB_APPROX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/core.hpp"
#include "clonelab/monoids.hpp"

namespace clonelab {

/// An m-ary function defined on S^m for a subset S of the universe.
/// Total on its domain by construction.
class PartialFn {
 public:
  /// `values` indexed by S^m tuples in lexicographic order (first argument
  /// most significant), over S in ascending order.
  PartialFn(int n, int m, std::vector<int> domain, std::vector<int> values);

  int universe() const { return n_; }
  int arity() const { return m_; }
  const std::vector<int>& domain() const { return domain_; }
  const std::vector<int>& values() const { return values_; }

  bool domain_is_all() const { return static_cast<int>(domain_.size()) == n_; }
  bool in_domain(int x) const;
  /// Value at a tuple of domain elements.
  int at(std::span<const int> args) const;
  bool co_large_domain(const SmallnessIdeal& ideal) const;

 private:
  int n_;
  int m_;
  std::vector<int> domain_;
  std::vector<int> values_;
};

/// Text format: line 1 = "n m |S|"; line 2 = S elements; following lines =
/// "x1 ... xm -> v" entries, one per tuple.
PartialFn parse_partial_text(const std::string& text);
std::string format_partial_text(const PartialFn& p);

/// Completes a unary partial function: values on S are kept, X\S is sent
/// through the round-robin map (i-th missing element, ascending, goes to
/// i mod n), which spreads the new fibers as evenly as possible over X.
FnTable extend_generic(const PartialFn& p);

struct PolEFExtension {
  FnTable table;
  /// The elements of X\S, ascending, and where the round-robin map sends them.
  std::vector<int> gamma_domain;
  std::vector<int> gamma;
  /// Whether gamma reaches all of X (needs |X\S| >= n; otherwise coverage is
  /// maximal but partial).
  bool gamma_onto = false;
};

/// The three-case extension of a binary partial function p on S^2:
///   g(x1,x2) = p(x1,x2)   when x1, x2 in S
///   g(x1,x2) = gamma(x1)  when x1 not in S
///   g(x1,x2) = gamma(x2)  when x1 in S, x2 not in S
/// For any unary g1, g2 the image satisfies
/// g(g1,g2)[X] >= gamma[(X\S) /\ g1[X]].
PolEFExtension extend_polEF(const PartialFn& p);

struct ApproxInstance {
  std::vector<int> domain;
  std::vector<int> partial_values;
  std::optional<FnTable> found;
};

struct ApproxProbeReport {
  int n = 0;
  int arity = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// True when the whole (S, partial) instance space was enumerated; only
  /// then is a full hit rate a proof rather than evidence.
  bool exhaustive = false;
  std::size_t instances = 0;
  std::size_t hits = 0;
  double hit_rate = 0.0;
  /// Bounded sample of instances (all misses first, then hits).
  std::vector<ApproxInstance> sample;
};

/// Samples co-large S and partial functions on S^m, searching `cs` for a
/// member agreeing on S^m. Enumeration is exhaustive when the instance space
/// has at most 10^5 entries, otherwise seeded sampling.
ApproxProbeReport probe_approximation(const ClosureSet& cs, int m, const SmallnessIdeal& ideal,
                                      std::size_t trials, std::uint64_t seed);

/// A unary function whose restriction to a prefix T of S realizes one snail
/// of period p per requested period, `min_count` times; everything outside T
/// is spread round-robin over X. The T-part guarantees is_rich for the given
/// parameters.
FnTable build_rich_extension(const std::vector<int>& S, const SmallnessIdeal& ideal,
                             const RichnessParams& richness);

/// Example generator, no claim attached: a binary function that is constant
/// `anchor` on T^2 while its cross sections through `anchor` sweep as much of
/// X as |X\T| allows — f(s, anchor) = f(anchor, s) = round-robin over X for s
/// outside T; the remaining cells are filled round-robin as well.
/// Deterministic for fixed inputs. Requires anchor in T.
FnTable build_cross_section_example(int n, const std::vector<int>& T, int anchor);

}  // namespace clonelab

#endif
