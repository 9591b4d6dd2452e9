#ifndef CLONELAB_FUNCGRAPH_HPP
#define CLONELAB_FUNCGRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clonelab/core.hpp"

namespace clonelab {

/// One connectedness component of the functional graph (X, f): a cycle of
/// minimal period p with rooted trees hanging off it.
struct Snail {
  int period = 0;
  /// Cycle elements in traversal order: starts at the minimal cycle element,
  /// cycle[i+1] = f(cycle[i]).
  std::vector<int> cycle;
  /// All members, ascending.
  std::vector<int> elements;
};

/// Full structure of a unary function. level[x] is the least t >= 0 with
/// f^t(x) on a cycle, parent[x] = f(x), and components are ordered by their
/// minimal element.
struct SnailDecomposition {
  int n = 0;
  std::vector<Snail> components;
  std::vector<int> component_of;
  std::vector<int> level;
  std::vector<int> parent;
};

SnailDecomposition decompose(const FnTable& f);

/// period -> number of snails with that period.
using SnailSpectrum = std::map<int, int>;

SnailSpectrum spectrum(const FnTable& f);

/// Total conjugacy invariant: the sorted multiset of per-snail codes, where a
/// snail code is the lexicographically minimal rotation of the rooted-tree
/// codes hanging on its cycle. Equal forms iff the functions are conjugate.
///
/// Spectrum equality alone is necessary but not sufficient on a finite
/// universe (two 1-snails with different tree shapes share a spectrum); the
/// tree codes close that gap.
struct CanonicalForm {
  std::vector<std::string> snail_codes;  // sorted
  bool operator==(const CanonicalForm&) const = default;
  auto operator<=>(const CanonicalForm&) const = default;
  std::string to_string() const;
};

CanonicalForm canonical_form(const FnTable& f);

/// If some gamma with f = gamma^-1 o g o gamma exists, returns one, built by
/// level induction: snails are matched by canonical code, cycles aligned by
/// rotation, then trees extended fiber by fiber. The result is verified
/// against the equation before returning. Absence is a value, not an error.
std::optional<Permutation> find_conjugator(const FnTable& f, const FnTable& g);

/// Layout plan for realize_spectrum. `sizes` gives one entry per requested
/// snail (ordered by ascending period, then index); empty means each snail
/// gets its period and leftover elements are spread round-robin. Tree nodes
/// attach breadth-first with at most `fiber_width` children per node.
struct TreePlan {
  std::vector<int> sizes;
  int fiber_width = 2;
};

/// Builds a unary function on {0,...,n-1} whose spectrum equals `spec`:
/// cycles are laid out as f(x_i) = x_{i+1} and the remaining elements hang as
/// balanced trees. Deterministic for fixed inputs.
FnTable realize_spectrum(int n, const SnailSpectrum& spec, const TreePlan& plan = {});

/// A permutation gamma with g(x) = g(y), x != y implying
/// g(gamma(x)) != g(gamma(y)): same-class elements are pushed into pairwise
/// distinct kernel classes. When the kernel classes form a transpose-closed
/// array (in particular when all classes have equal size) this is the literal
/// class-array transpose gamma(x_i^j) = x_j^i; otherwise a capacity-greedy
/// assignment is used. Infeasible kernels are rejected with a witness class.
Permutation kernel_transpose(const FnTable& g);

}  // namespace clonelab

#endif
