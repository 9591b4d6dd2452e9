#include "clonelab/core.hpp"

#include <algorithm>
#include <numeric>

namespace clonelab {

std::size_t checked_table_size(int n, int m) {
  std::size_t size = 1;
  for (int i = 0; i < m; ++i) {
    if (size > kMaxTableEntries / static_cast<std::size_t>(n)) {
      throw GuardExceeded("table of arity " + std::to_string(m) + " on universe " +
                          std::to_string(n) + " exceeds the " +
                          std::to_string(kMaxTableEntries) + "-entry guard");
    }
    size *= static_cast<std::size_t>(n);
  }
  if (size > kMaxTableEntries) {
    throw GuardExceeded("table of arity " + std::to_string(m) + " on universe " +
                        std::to_string(n) + " exceeds the " +
                        std::to_string(kMaxTableEntries) + "-entry guard");
  }
  return size;
}

Universe::Universe(int n) : n_(n) {
  if (n < 1) throw InvalidInput("universe size must be >= 1, got " + std::to_string(n));
  if (n > kMaxUniverse) {
    throw GuardExceeded("universe size " + std::to_string(n) + " exceeds the guard (n <= " +
                        std::to_string(kMaxUniverse) + ")");
  }
}

SmallnessIdeal::SmallnessIdeal(int n, int k) : n_(n), k_(k) {
  Universe check(n);
  if (k < 1 || k > n) {
    throw InvalidInput("smallness threshold k must satisfy 1 <= k <= n, got k=" +
                       std::to_string(k) + ", n=" + std::to_string(n));
  }
}

FnTable::FnTable(int n, int m, std::vector<int> values)
    : n_(n), m_(m), values_(std::move(values)) {
  Universe check(n);
  if (m < 1) throw InvalidInput("arity must be >= 1, got " + std::to_string(m));
  std::size_t expect = checked_table_size(n, m);
  if (values_.size() != expect) {
    throw InvalidInput("value table has " + std::to_string(values_.size()) +
                       " entries, expected n^m = " + std::to_string(expect));
  }
  for (int v : values_) {
    if (v < 0 || v >= n) {
      throw InvalidInput("table entry " + std::to_string(v) + " outside [0, " +
                         std::to_string(n) + ")");
    }
  }
}

FnTable FnTable::identity(int n) {
  std::vector<int> vals(static_cast<std::size_t>(n));
  std::iota(vals.begin(), vals.end(), 0);
  return FnTable(n, 1, std::move(vals));
}

FnTable FnTable::constant(int n, int value, int arity) {
  std::vector<int> vals(checked_table_size(n, arity), value);
  return FnTable(n, arity, std::move(vals));
}

FnTable FnTable::projection(int n, int m, int coord) {
  if (coord < 0 || coord >= m) {
    throw InvalidInput("projection coordinate " + std::to_string(coord) + " outside [0, " +
                       std::to_string(m) + ")");
  }
  std::size_t size = checked_table_size(n, m);
  std::vector<int> vals(size);
  // stride of coordinate `coord` under first-argument-most-significant order
  std::size_t stride = 1;
  for (int i = coord + 1; i < m; ++i) stride *= static_cast<std::size_t>(n);
  for (std::size_t idx = 0; idx < size; ++idx) {
    vals[idx] = static_cast<int>((idx / stride) % static_cast<std::size_t>(n));
  }
  return FnTable(n, m, std::move(vals));
}

std::size_t FnTable::index_of(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != m_) {
    throw InvalidInput("expected " + std::to_string(m_) + " arguments, got " +
                       std::to_string(args.size()));
  }
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= n_) throw InvalidInput("argument " + std::to_string(a) + " outside universe");
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a);
  }
  return idx;
}

bool FnTable::is_bijection() const {
  if (m_ != 1) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (int v : values_) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool FnTable::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](int v) { return v == values_.front(); });
}

std::uint64_t fnv1a64(std::span<const int> data, std::uint64_t seed) {
  std::uint64_t h = seed;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte & 0xff;
    h *= 0x100000001b3ull;
  };
  for (int v : data) {
    std::uint64_t u = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
    mix(u);
    mix(u >> 8);
    mix(u >> 16);
    mix(u >> 24);
  }
  return h;
}

std::uint64_t FnTable::hash() const {
  int header[2] = {n_, m_};
  return fnv1a64(values_, fnv1a64(header));
}

std::string FnTable::id() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = hash();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::strong_ordering FnTable::operator<=>(const FnTable& other) const {
  if (auto c = n_ <=> other.n_; c != 0) return c;
  if (auto c = m_ <=> other.m_; c != 0) return c;
  return values_ <=> other.values_;
}

Permutation::Permutation(FnTable forward, FnTable inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

Permutation::Permutation(FnTable forward)
    : forward_(std::move(forward)), inverse_(forward_) {
  if (!forward_.is_bijection()) {
    throw InvalidInput("permutation table is not a bijection");
  }
  std::vector<int> inv(forward_.values().size());
  for (int x = 0; x < forward_.universe(); ++x) {
    inv[static_cast<std::size_t>(forward_.at1(x))] = x;
  }
  inverse_ = FnTable(forward_.universe(), 1, std::move(inv));
}

Permutation Permutation::identity(int n) {
  FnTable id = FnTable::identity(n);
  return Permutation(id, id);
}

Permutation Permutation::from_values(int n, std::vector<int> values) {
  return Permutation(FnTable(n, 1, std::move(values)));
}

Permutation Permutation::compose(const Permutation& other) const {
  return Permutation(compose1(forward_, other.forward_), compose1(other.inverse_, inverse_));
}

Permutation Permutation::inverted() const { return Permutation(inverse_, forward_); }

int Permutation::order() const {
  Permutation p = *this;
  int ord = 1;
  while (!p.is_identity()) {
    p = p.compose(*this);
    ++ord;
  }
  return ord;
}

bool Permutation::is_identity() const {
  for (int x = 0; x < universe(); ++x) {
    if (forward_.at1(x) != x) return false;
  }
  return true;
}

int Permutation::parity() const {
  // count cycles; parity = (-1)^(n - #cycles)
  int n = universe();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int cycles = 0;
  for (int x = 0; x < n; ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    ++cycles;
    int y = x;
    while (!seen[static_cast<std::size_t>(y)]) {
      seen[static_cast<std::size_t>(y)] = true;
      y = forward_.at1(y);
    }
  }
  return ((n - cycles) % 2 == 0) ? 1 : -1;
}

FnTable compose(const FnTable& f, std::span<const FnTable> gs) {
  if (static_cast<int>(gs.size()) != f.arity()) {
    throw InvalidInput("compose: f has arity " + std::to_string(f.arity()) + " but " +
                       std::to_string(gs.size()) + " inner functions were given");
  }
  int n = f.universe();
  int p = gs.front().arity();
  for (const FnTable& g : gs) {
    if (g.universe() != n) throw InvalidInput("compose: universe mismatch");
    if (g.arity() != p) throw InvalidInput("compose: inner functions must share one arity");
  }
  std::size_t size = checked_table_size(n, p);
  std::vector<int> vals(size);
  std::vector<const std::vector<int>*> inner;
  inner.reserve(gs.size());
  for (const FnTable& g : gs) inner.push_back(&g.values());
  const std::vector<int>& fv = f.values();
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t fidx = 0;
    for (const auto* gv : inner) {
      fidx = fidx * static_cast<std::size_t>(n) + static_cast<std::size_t>((*gv)[idx]);
    }
    vals[idx] = fv[fidx];
  }
  return FnTable(n, p, std::move(vals));
}

FnTable compose1(const FnTable& f, const FnTable& g) {
  return compose(f, std::span<const FnTable>(&g, 1));
}

FnTable conjugate(const FnTable& f, const Permutation& gamma) {
  if (f.universe() != gamma.universe()) throw InvalidInput("conjugate: universe mismatch");
  int n = f.universe();
  int m = f.arity();
  std::size_t size = f.values().size();
  std::vector<int> vals(size);
  std::vector<int> args(static_cast<std::size_t>(m), 0);
  std::vector<int> mapped(static_cast<std::size_t>(m));
  for (std::size_t idx = 0; idx < size; ++idx) {
    for (int i = 0; i < m; ++i) mapped[static_cast<std::size_t>(i)] = gamma(args[static_cast<std::size_t>(i)]);
    vals[idx] = gamma.inv(f(mapped));
    // odometer over args, last argument least significant
    for (int i = m - 1; i >= 0; --i) {
      if (++args[static_cast<std::size_t>(i)] < n) break;
      args[static_cast<std::size_t>(i)] = 0;
    }
  }
  return FnTable(n, m, std::move(vals));
}

std::vector<std::vector<int>> kernel_classes(const FnTable& f) {
  if (!f.is_unary()) throw InvalidInput("kernel_classes: unary function required");
  int n = f.universe();
  std::vector<std::vector<int>> fiber(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) fiber[static_cast<std::size_t>(f.at1(x))].push_back(x);
  std::vector<std::vector<int>> classes;
  for (auto& block : fiber) {
    if (!block.empty()) classes.push_back(std::move(block));
  }
  // fibers are built in ascending element order, so block.front() is the minimum
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

std::vector<int> image(const FnTable& f) {
  if (!f.is_unary()) throw InvalidInput("image: unary function required");
  std::vector<bool> hit(static_cast<std::size_t>(f.universe()), false);
  for (int v : f.values()) hit[static_cast<std::size_t>(v)] = true;
  std::vector<int> out;
  for (int y = 0; y < f.universe(); ++y) {
    if (hit[static_cast<std::size_t>(y)]) out.push_back(y);
  }
  return out;
}

std::vector<int> support(const FnTable& f) {
  if (!f.is_unary()) throw InvalidInput("support: unary function required");
  std::vector<int> out;
  for (int x = 0; x < f.universe(); ++x) {
    if (f.at1(x) != x) out.push_back(x);
  }
  return out;
}

std::vector<int> support(const Permutation& alpha) { return support(alpha.forward()); }

std::vector<Permutation> all_permutations(int n) {
  Universe check(n);
  if (n > 8) {
    throw GuardExceeded("enumerating S_n is guarded to n <= 8, got n=" + std::to_string(n));
  }
  std::vector<int> vals(static_cast<std::size_t>(n));
  std::iota(vals.begin(), vals.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_values(n, vals));
  } while (std::next_permutation(vals.begin(), vals.end()));
  return out;
}

}  // namespace clonelab
