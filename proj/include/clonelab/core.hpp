#ifndef CLONELAB_CORE_HPP
#define CLONELAB_CORE_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonelab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rejected input: a precondition the caller can fix.
struct InvalidInput : Error {
  using Error::Error;
};

/// A resource guard tripped (universe size, table size, closure work).
struct GuardExceeded : Error {
  using Error::Error;
};

/// Universes larger than this are rejected everywhere; unary enumeration
/// (n^n functions, n! permutations) explodes past it.
inline constexpr int kMaxUniverse = 12;

/// Hard cap on n^m table entries for higher arities.
inline constexpr std::size_t kMaxTableEntries = 1'000'000;

/// n^m with overflow/guard checking. Throws GuardExceeded past kMaxTableEntries.
std::size_t checked_table_size(int n, int m);

/// The base set X = {0, ..., n-1}.
class Universe {
 public:
  explicit Universe(int n);
  int size() const { return n_; }

 private:
  int n_;
};

/// Finite surrogate for the small/large/co-small/co-large dichotomy:
/// small(S) iff |S| < k. With k = n this reads "small iff not all of X",
/// which is the semantics all the theory statements assume; every predicate
/// takes the ideal explicitly so suites can sweep k.
///
/// Subsets of small sets are small. The union of two small sets need not be
/// small (k = 2, two disjoint singletons); nothing here asserts it.
class SmallnessIdeal {
 public:
  SmallnessIdeal(int n, int k);

  /// The strictest threshold: small iff |S| < |X|.
  static SmallnessIdeal strictest(int n) { return {n, n}; }

  int n() const { return n_; }
  int k() const { return k_; }

  bool small_size(int size) const { return size < k_; }
  bool large_size(int size) const { return size >= k_; }
  bool co_small_size(int size) const { return small_size(n_ - size); }
  bool co_large_size(int size) const { return large_size(n_ - size); }

  bool small(std::span<const int> s) const { return small_size(static_cast<int>(s.size())); }
  bool large(std::span<const int> s) const { return large_size(static_cast<int>(s.size())); }
  bool co_small(std::span<const int> s) const { return co_small_size(static_cast<int>(s.size())); }
  bool co_large(std::span<const int> s) const { return co_large_size(static_cast<int>(s.size())); }

 private:
  int n_;
  int k_;
};

/// An m-ary operation on {0,...,n-1} as a flat value table.
///
/// Index order is fixed globally: argument tuples are enumerated
/// lexicographically with the FIRST argument most significant, i.e.
/// index(x1,...,xm) = ((x1*n + x2)*n + ...)*n + xm. Every module and every
/// file format uses this order.
///
/// Immutable after construction; safe to share across threads.
class FnTable {
 public:
  FnTable(int n, int m, std::vector<int> values);

  static FnTable identity(int n);
  static FnTable constant(int n, int value, int arity = 1);
  /// pi^m_coord, coord in [0, m).
  static FnTable projection(int n, int m, int coord);

  int universe() const { return n_; }
  int arity() const { return m_; }
  const std::vector<int>& values() const { return values_; }

  std::size_t index_of(std::span<const int> args) const;
  int operator()(std::span<const int> args) const { return values_[index_of(args)]; }
  /// Unary fast path.
  int at1(int x) const { return values_[static_cast<std::size_t>(x)]; }

  bool is_unary() const { return m_ == 1; }
  bool is_bijection() const;
  bool is_constant() const;

  std::uint64_t hash() const;
  /// Stable hex id used in reports.
  std::string id() const;

  bool operator==(const FnTable& other) const = default;
  /// Canonical ordering: (arity, values lexicographically); universe first
  /// so mixed-universe containers still sort deterministically.
  std::strong_ordering operator<=>(const FnTable& other) const;

 private:
  int n_;
  int m_;
  std::vector<int> values_;
};

struct FnTableHash {
  std::size_t operator()(const FnTable& f) const { return static_cast<std::size_t>(f.hash()); }
};

/// A bijection on X with its inverse kept alongside.
class Permutation {
 public:
  explicit Permutation(FnTable forward);
  static Permutation identity(int n);
  static Permutation from_values(int n, std::vector<int> values);

  int universe() const { return forward_.universe(); }
  const FnTable& forward() const { return forward_; }
  const FnTable& inverse() const { return inverse_; }

  int operator()(int x) const { return forward_.at1(x); }
  int inv(int x) const { return inverse_.at1(x); }

  /// (a.compose(b))(x) = a(b(x)).
  Permutation compose(const Permutation& other) const;
  Permutation inverted() const;
  int order() const;
  bool is_identity() const;
  /// +1 for even, -1 for odd.
  int parity() const;

  bool operator==(const Permutation& other) const { return forward_ == other.forward_; }

 private:
  Permutation(FnTable forward, FnTable inverse);
  FnTable forward_;
  FnTable inverse_;
};

// ---------------------------------------------------------------------------
// Primitive algebra
// ---------------------------------------------------------------------------

/// Clone composition: result(xs) = f(g1(xs), ..., gm(xs)) where m = arity(f)
/// and all gs share a common arity p; the result has arity p.
FnTable compose(const FnTable& f, std::span<const FnTable> gs);

/// Unary convenience: (f o g)(x) = f(g(x)).
FnTable compose1(const FnTable& f, const FnTable& g);

/// Conjugation: result(x1,...,xm) = gamma^-1(f(gamma(x1),...,gamma(xm))).
/// With compose as above, conjugate(f, gamma.compose(delta)) equals
/// conjugate(conjugate(f, gamma), delta).
FnTable conjugate(const FnTable& f, const Permutation& gamma);

/// Kernel classes of a unary f: the nonempty fibers f^-1[{y}], each sorted,
/// listed in canonical order (ascending minimum element). They partition X.
std::vector<std::vector<int>> kernel_classes(const FnTable& f);

/// Sorted image {f(x) : x in X} of a unary f.
std::vector<int> image(const FnTable& f);

/// Sorted support {x : f(x) != x} of a unary f.
std::vector<int> support(const FnTable& f);
std::vector<int> support(const Permutation& alpha);

/// All n! permutations in lexicographic table order. Guarded to n <= 8.
std::vector<Permutation> all_permutations(int n);

std::uint64_t fnv1a64(std::span<const int> data, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace clonelab

#endif
