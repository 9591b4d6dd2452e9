#include <doctest.h>

#include <random>

#include "clonelab/core.hpp"

using namespace clonelab;

namespace {

// Independent pointwise oracle: evaluates f(g1(xs),...,gm(xs)) straight from
// the definition, one tuple at a time.
int eval_composed(const FnTable& f, const std::vector<FnTable>& gs, std::vector<int> args) {
  std::vector<int> inner;
  for (const FnTable& g : gs) inner.push_back(g(args));
  return f(inner);
}

FnTable random_unary(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(0, n - 1);
  std::vector<int> vals(static_cast<std::size_t>(n));
  for (int& v : vals) v = val(rng);
  return FnTable(n, 1, std::move(vals));
}

Permutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(pick(rng))]);
  }
  return Permutation::from_values(n, std::move(vals));
}

}  // namespace

TEST_CASE("universe and table guards") {
  CHECK_THROWS_AS(Universe(0), InvalidInput);
  CHECK_THROWS_AS(Universe(13), GuardExceeded);
  CHECK(Universe(12).size() == 12);
  CHECK_THROWS_AS(FnTable(3, 0, {}), InvalidInput);
  CHECK_THROWS_AS(FnTable(3, 1, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(FnTable(3, 1, {0, 1, 3}), InvalidInput);
  // 12^6 > 10^6 entries
  CHECK_THROWS_AS(checked_table_size(12, 6), GuardExceeded);
}

TEST_CASE("smallness ideal") {
  CHECK_THROWS_AS(SmallnessIdeal(4, 0), InvalidInput);
  CHECK_THROWS_AS(SmallnessIdeal(4, 5), InvalidInput);

  SmallnessIdeal strictest = SmallnessIdeal::strictest(5);
  CHECK(strictest.k() == 5);
  // small iff |S| < |X|
  CHECK(strictest.small_size(4));
  CHECK_FALSE(strictest.small_size(5));
  CHECK(strictest.co_large_size(0));
  CHECK_FALSE(strictest.co_large_size(1));

  SmallnessIdeal ideal(6, 3);
  CHECK(ideal.small_size(2));
  CHECK(ideal.large_size(3));
  CHECK(ideal.co_small_size(4));  // complement has 2 < 3
  CHECK(ideal.co_large_size(3));  // complement has 3 >= 3

  // subsets of small sets are small (size monotonicity)
  for (int s = 0; s <= 6; ++s) {
    if (ideal.small_size(s)) {
      for (int t = 0; t <= s; ++t) CHECK(ideal.small_size(t));
    }
  }
  // the union of two small sets need not be small: two disjoint singletons
  // under k = 2 form a large pair — documented, never asserted the other way
  SmallnessIdeal k2(6, 2);
  CHECK(k2.small_size(1));
  CHECK(k2.large_size(2));
}

TEST_CASE("projection tables use first-argument-most-significant order") {
  FnTable p1 = FnTable::projection(3, 2, 0);
  FnTable p2 = FnTable::projection(3, 2, 1);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      int args[2] = {x, y};
      CHECK(p1(args) == x);
      CHECK(p2(args) == y);
    }
  }
  CHECK(p1.values() == std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
  CHECK(p2.values() == std::vector<int>{0, 1, 2, 0, 1, 2, 0, 1, 2});
}

TEST_CASE("compose: identity projection and constants") {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 5; ++n) {
    FnTable g = random_unary(n, rng);
    CHECK(compose1(FnTable::identity(n), g) == g);
    CHECK(compose1(g, FnTable::identity(n)) == g);
  }
  // n=3, f=[1,2,0], g=[2,2,2] -> f o g = [0,0,0]
  FnTable f(3, 1, {1, 2, 0});
  FnTable g = FnTable::constant(3, 2);
  CHECK(compose1(f, g) == FnTable::constant(3, 0));
}

TEST_CASE("compose: XOR collapsed on the diagonal") {
  // n=2, f = XOR, gs = [pi, pi] -> constant 0 unary table
  FnTable xort(2, 2, {0, 1, 1, 0});
  std::vector<FnTable> gs = {FnTable::identity(2), FnTable::identity(2)};
  FnTable got = compose(xort, gs);
  // expected from the pointwise oracle
  for (int x = 0; x < 2; ++x) {
    CHECK(got.at1(x) == eval_composed(xort, gs, {x}));
  }
  CHECK(got == FnTable::constant(2, 0));
}

TEST_CASE("compose agrees with the pointwise oracle and is clone-associative") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      // f binary, g1 g2 binary, h1 h2 unary
      std::uniform_int_distribution<int> val(0, n - 1);
      auto rnd_table = [&](int m) {
        std::vector<int> vals(checked_table_size(n, m));
        for (int& v : vals) v = val(rng);
        return FnTable(n, m, std::move(vals));
      };
      FnTable f = rnd_table(2);
      std::vector<FnTable> gs = {rnd_table(2), rnd_table(2)};
      std::vector<FnTable> hs = {rnd_table(1), rnd_table(1)};

      FnTable fg = compose(f, gs);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          CHECK(fg(std::vector<int>{x, y}) == eval_composed(f, gs, {x, y}));
        }
      }

      // f(g1(h), g2(h)) built two ways
      FnTable route1 = compose(fg, hs);
      std::vector<FnTable> ghs = {compose(gs[0], hs), compose(gs[1], hs)};
      FnTable route2 = compose(f, ghs);
      CHECK(route1 == route2);
    }
  }
  CHECK_THROWS_AS(compose(FnTable(2, 2, {0, 0, 0, 1}), std::vector<FnTable>{FnTable::identity(2)}),
                  InvalidInput);
  CHECK_THROWS_AS(compose1(FnTable::identity(2), FnTable::identity(3)), InvalidInput);
}

TEST_CASE("conjugate: identity cases and constants") {
  for (const Permutation& gamma : all_permutations(3)) {
    CHECK(conjugate(FnTable::identity(3), gamma) == FnTable::identity(3));
  }
  std::mt19937_64 rng(3);
  FnTable f = random_unary(4, rng);
  CHECK(conjugate(f, Permutation::identity(4)) == f);
  // constant 0 under gamma = (0 1 2): gamma^-1(0) = 2
  Permutation cycle = Permutation::from_values(3, {1, 2, 0});
  CHECK(conjugate(FnTable::constant(3, 0), cycle) == FnTable::constant(3, 2));
  CHECK_THROWS_AS(conjugate(FnTable::identity(2), Permutation::identity(3)), InvalidInput);
}

TEST_CASE("conjugation round-trip, exhaustively for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Permutation> perms = all_permutations(n);
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(n);
    std::vector<int> vals(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      FnTable f(n, 1, vals);
      for (const Permutation& gamma : perms) {
        CHECK(conjugate(conjugate(f, gamma), gamma.inverted()) == f);
      }
      for (int i = n - 1; i >= 0; --i) {
        if (++vals[static_cast<std::size_t>(i)] < n) break;
        vals[static_cast<std::size_t>(i)] = 0;
      }
    }
  }
}

TEST_CASE("conjugation round-trip and action law, randomized for n <= 6") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      FnTable f = random_unary(n, rng);
      Permutation gamma = random_perm(n, rng);
      Permutation delta = random_perm(n, rng);
      CHECK(conjugate(conjugate(f, gamma), gamma.inverted()) == f);
      // action law under (gamma o delta)(x) = gamma(delta(x))
      CHECK(conjugate(f, gamma.compose(delta)) == conjugate(conjugate(f, gamma), delta));
    }
    // also a binary op round-trip
    std::uniform_int_distribution<int> val(0, n - 1);
    std::vector<int> bvals(checked_table_size(n, 2));
    for (int& v : bvals) v = val(rng);
    FnTable b(n, 2, std::move(bvals));
    Permutation gamma = random_perm(n, rng);
    CHECK(conjugate(conjugate(b, gamma), gamma.inverted()) == b);
  }
}

TEST_CASE("kernel classes, image, support") {
  CHECK(kernel_classes(FnTable::identity(4)) ==
        std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
  CHECK(kernel_classes(FnTable::constant(4, 2)) == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  // n=4, f=[1,0,0,0]: fibers {0} (of value 1) and {1,2,3} (of value 0)
  FnTable f(4, 1, {1, 0, 0, 0});
  CHECK(kernel_classes(f) == std::vector<std::vector<int>>{{0}, {1, 2, 3}});

  CHECK(support(FnTable::identity(5)).empty());
  CHECK(image(FnTable::constant(5, 3)) == std::vector<int>{3});
  FnTable g(4, 1, {1, 0, 2, 2});
  CHECK(image(g) == std::vector<int>{0, 1, 2});
  CHECK(support(g) == std::vector<int>{0, 1, 3});
  CHECK(support(Permutation::from_values(4, {1, 0, 2, 3})) == std::vector<int>{0, 1});
}

TEST_CASE("image size equals kernel class count, exhaustively for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(n);
    std::vector<int> vals(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      FnTable f(n, 1, vals);
      CHECK(image(f).size() == kernel_classes(f).size());
      for (int i = n - 1; i >= 0; --i) {
        if (++vals[static_cast<std::size_t>(i)] < n) break;
        vals[static_cast<std::size_t>(i)] = 0;
      }
    }
  }
}

TEST_CASE("permutations") {
  CHECK_THROWS_AS(Permutation::from_values(3, {0, 0, 1}), InvalidInput);
  Permutation p = Permutation::from_values(4, {1, 2, 3, 0});
  CHECK(p.order() == 4);
  CHECK(p.parity() == -1);
  CHECK(p.compose(p.inverted()).is_identity());
  CHECK(Permutation::from_values(4, {1, 0, 3, 2}).parity() == 1);
  CHECK(all_permutations(4).size() == 24);
  CHECK_THROWS_AS(all_permutations(9), GuardExceeded);
  // compose convention: (a.compose(b))(x) = a(b(x))
  Permutation a = Permutation::from_values(3, {1, 2, 0});
  Permutation b = Permutation::from_values(3, {1, 0, 2});
  for (int x = 0; x < 3; ++x) CHECK(a.compose(b)(x) == a(b(x)));
}
