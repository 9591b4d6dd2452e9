#ifndef CLONELAB_CLONE_ENGINE_HPP
#define CLONELAB_CLONE_ENGINE_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "clonelab/core.hpp"

namespace clonelab {

struct ClosureOptions {
  int arity_cap = 1;
  bool symmetric = false;
  /// Deterministic by contract: member sets, orderings and generation tags do
  /// not depend on the worker count.
  int workers = 1;
  std::size_t max_members = 2'000'000;
  /// Budget of composed-table evaluations per call.
  double work_guard = 4e8;
  /// Once the binary level is complete, fill every level outright (all
  /// finitary operations are compositions of binary ones, within the cap).
  /// Exactness-preserving; switchable so the two routes can be compared.
  bool saturation_fill = true;
};

/// A deduplicated, generation-tagged set of operations containing all
/// projections of arity <= arity_cap and closed under composition and the
/// minor operations within the cap (and under conjugation when the symmetric
/// flag is set). Closure is relative to the cap: derivations never leave
/// arities <= arity_cap.
///
/// Members are kept in canonical order (arity, then table lexicographically);
/// dedup key is (arity, table).
class ClosureSet {
 public:
  int universe() const { return n_; }
  int arity_cap() const { return arity_cap_; }
  bool symmetric() const { return symmetric_; }
  bool projections_included() const { return true; }

  const std::vector<FnTable>& members() const { return members_; }
  /// BFS depth per member, aligned with members(). Empty for cache-loaded
  /// sets (the histogram survives the round trip, per-member depths do not).
  const std::vector<int>& generations() const { return generations_; }
  const std::map<int, int>& generation_histogram() const { return gen_hist_; }
  /// The seed list as given by the caller (before any conjugate expansion).
  const std::vector<FnTable>& generators() const { return generators_; }
  /// Generators actually driving the closure rules (conjugate-expanded when
  /// symmetric).
  const std::vector<FnTable>& rule_generators() const { return rule_generators_; }

  bool contains(const FnTable& f) const;
  std::size_t size() const { return members_.size(); }
  std::vector<FnTable> members_of_arity(int m) const;
  std::map<int, std::size_t> arity_counts() const;

 private:
  friend ClosureSet clone_closure_seeded(int, std::vector<FnTable>, std::vector<FnTable>,
                                         const ClosureOptions&);
  friend std::optional<ClosureSet> read_closure_cache(const std::filesystem::path&, int, int,
                                                      bool, std::span<const FnTable>);
  ClosureSet() = default;
  void rebuild_index();

  int n_ = 1;
  int arity_cap_ = 1;
  bool symmetric_ = false;
  std::vector<FnTable> members_;
  std::vector<int> generations_;
  std::map<int, int> gen_hist_;
  std::vector<FnTable> generators_;
  std::vector<FnTable> rule_generators_;
  std::unordered_map<FnTable, std::size_t, FnTableHash> index_;
};

/// Least set containing `generators`, all projections of arity <= cap, and
/// closed under composition + minors (+ conjugation when symmetric) within
/// the cap. With arity_cap = 1 this is exactly the generated monoid.
ClosureSet clone_closure(int n, std::vector<FnTable> generators, const ClosureOptions& opts);

/// clone_closure with extra depth-0 members that are already known to lie in
/// the closure of `generators` (used to resume from a computed set).
ClosureSet clone_closure_seeded(int n, std::vector<FnTable> generators,
                                std::vector<FnTable> seed_members, const ClosureOptions& opts);

/// Monoid generated by unary functions (plus the identity).
ClosureSet monoid_closure(int n, std::vector<FnTable> generators, ClosureOptions opts = {});

/// Least superset of `cs` additionally closed under conjugation by every
/// permutation. Idempotent.
ClosureSet symmetric_closure(const ClosureSet& cs, const ClosureOptions& opts = {});

/// Minor of f along slot_map: result(x_0,...,x_{p-1}) has
/// result(xs) = f(xs[slot_map[0]], ..., xs[slot_map[m-1]]). Covers variable
/// identification, permutation of variables and fictitious variables.
FnTable minor(const FnTable& f, std::span<const int> slot_map, int target_arity);

/// h(x_1,...,x_m) = g(x_1,...,x_m,x_1,...,x_m) for a 2m-ary g.
FnTable diagonal_identification(const FnTable& g);

// ---------------------------------------------------------------------------
// Representation checks
// ---------------------------------------------------------------------------

struct RepresentationUnaryResult {
  bool equal = false;
  /// A member of the symmetric difference when not equal.
  std::optional<FnTable> witness;
  std::string detail;
};

/// For a symmetric unary monoid G and a permutation alpha: compares the
/// monoid generated by G and alpha against both normal forms
/// {alpha^k o g} and {g o alpha^k}, 0 <= k < order(alpha). Inputs that are
/// not symmetric monoids are rejected with a witness.
RepresentationUnaryResult check_representation_unary(const ClosureSet& G,
                                                     const Permutation& alpha);

struct RepresentationBinaryResult {
  bool representable = false;
  std::optional<FnTable> f;
};

/// Whether some f in C^(2m) satisfies t(xs) = f(alpha(xs), xs) pointwise.
/// Requires alpha^2 = id and a symmetric C with 2*arity(t) <= cap.
RepresentationBinaryResult check_representation_binary_alpha(const ClosureSet& C,
                                                             const Permutation& alpha,
                                                             const FnTable& t);

/// Independent route for the same question: membership of t in the closure
/// of C together with alpha. The representation lemma says the two agree.
bool member_of_closure_with(const ClosureSet& C, const Permutation& alpha, const FnTable& t,
                            const ClosureOptions& opts = {});

// ---------------------------------------------------------------------------
// pol(G) membership
// ---------------------------------------------------------------------------

struct PolSampling {
  std::size_t tuples = 0;
  std::uint64_t seed = 0;
};

/// True iff f(g_1,...,g_m) satisfies `pred` for all tuples over `extension`
/// (the materialized set {g unary : G(g)}). Tuple spaces beyond the guard are
/// rejected unless a sampling plan is supplied.
bool pol_membership(const FnTable& f, std::span<const FnTable> extension,
                    const std::function<bool(const FnTable&)>& pred,
                    std::optional<PolSampling> sampling = std::nullopt,
                    std::size_t tuple_guard = 20'000'000);

// ---------------------------------------------------------------------------
// Normal closure (finite Schreier–Ulam echo)
// ---------------------------------------------------------------------------

enum class NormalClosureKind { FullSymmetric, Alternating, ProperSubgroup };

struct NormalClosureResult {
  NormalClosureKind kind = NormalClosureKind::ProperSubgroup;
  std::size_t order = 0;
  /// Least permutation table not generated, absent for the full group.
  std::optional<FnTable> missing_witness;
};

/// Subgroup of S_n generated by all conjugates of alpha.
NormalClosureResult normal_closure_check(const Permutation& alpha);

const char* to_string(NormalClosureKind kind);

// ---------------------------------------------------------------------------
// Disk cache
// ---------------------------------------------------------------------------

/// Key over (n, cap, flags, sorted generator tables).
std::string closure_cache_key(int n, int arity_cap, bool symmetric,
                              std::span<const FnTable> generators);

std::filesystem::path closure_cache_path(const std::filesystem::path& dir, const std::string& key);

/// Header line with parameters, then member tables in the operation text
/// format, one per line pair. Written atomically.
std::filesystem::path write_closure_cache(const std::filesystem::path& dir, const ClosureSet& cs);

/// Returns the cached set if present (nullopt on a miss); corrupt files are
/// a ParseError.
std::optional<ClosureSet> read_closure_cache(const std::filesystem::path& dir, int n,
                                             int arity_cap, bool symmetric,
                                             std::span<const FnTable> generators);

}  // namespace clonelab

#endif
