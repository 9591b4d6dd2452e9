#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "clonelab/clone_engine.hpp"
#include "clonelab/monoids.hpp"

using namespace clonelab;

namespace {

// Independent closure oracle: saturate under minors and full-tuple
// composition with f ranging over ALL current members (no generator
// restriction, no saturation shortcuts). Exponential; small inputs only.
std::set<FnTable> brute_closure(int n, const std::vector<FnTable>& gens, int cap, bool symmetric) {
  std::set<FnTable> s;
  for (int m = 1; m <= cap; ++m) {
    for (int coord = 0; coord < m; ++coord) s.insert(FnTable::projection(n, m, coord));
  }
  for (const FnTable& g : gens) s.insert(g);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<FnTable> cur(s.begin(), s.end());
    // minors
    for (const FnTable& f : cur) {
      int m = f.arity();
      for (int p = 1; p <= cap; ++p) {
        std::vector<int> slots(static_cast<std::size_t>(m), 0);
        while (true) {
          changed |= s.insert(minor(f, slots, p)).second;
          int i = m - 1;
          while (i >= 0 && slots[static_cast<std::size_t>(i)] == p - 1) slots[static_cast<std::size_t>(i--)] = 0;
          if (i < 0) break;
          slots[static_cast<std::size_t>(i)] += 1;
        }
      }
    }
    // full-tuple compositions over every member as the outer function
    for (const FnTable& f : cur) {
      int m = f.arity();
      for (int p = 1; p <= cap; ++p) {
        std::vector<FnTable> level;
        for (const FnTable& g : cur) {
          if (g.arity() == p) level.push_back(g);
        }
        std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
        while (true) {
          std::vector<FnTable> tuple;
          for (int i = 0; i < m; ++i) tuple.push_back(level[pick[static_cast<std::size_t>(i)]]);
          changed |= s.insert(compose(f, tuple)).second;
          int i = m - 1;
          while (i >= 0 && pick[static_cast<std::size_t>(i)] == level.size() - 1) {
            pick[static_cast<std::size_t>(i--)] = 0;
          }
          if (i < 0) break;
          pick[static_cast<std::size_t>(i)] += 1;
        }
      }
    }
    if (symmetric) {
      for (const FnTable& f : cur) {
        for (const Permutation& gamma : all_permutations(n)) {
          changed |= s.insert(conjugate(f, gamma)).second;
        }
      }
    }
  }
  return s;
}

std::set<FnTable> as_set(const ClosureSet& cs) {
  return {cs.members().begin(), cs.members().end()};
}

}  // namespace

TEST_CASE("minor covers identification, permutation and fictitious variables") {
  FnTable andt(2, 2, {0, 0, 0, 1});
  // identification: and(x,x) = x
  std::vector<int> diag = {0, 0};
  CHECK(minor(andt, diag, 1) == FnTable::identity(2));
  // permutation of variables keeps the symmetric table
  std::vector<int> swapped = {1, 0};
  CHECK(minor(andt, swapped, 2) == andt);
  // fictitious variable: and as a ternary op ignoring slot 1
  std::vector<int> up = {0, 2};
  FnTable t = minor(andt, up, 3);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        CHECK(t(std::vector<int>{x, y, z}) == (x & z));
      }
    }
  }
  CHECK_THROWS_AS(minor(andt, diag, 0), InvalidInput);
  // diagonal identification of a 4-ary table
  FnTable g(2, 4, std::vector<int>{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1});
  FnTable h = diagonal_identification(g);
  CHECK(h.arity() == 2);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      CHECK(h(std::vector<int>{x, y}) == g(std::vector<int>{x, y, x, y}));
    }
  }
}

TEST_CASE("monoid closure: identity, cyclic group, S3") {
  ClosureSet trivial = monoid_closure(3, {FnTable::identity(3)});
  CHECK(trivial.size() == 1);
  CHECK(trivial.contains(FnTable::identity(3)));

  ClosureSet cyclic = monoid_closure(3, {FnTable(3, 1, {1, 2, 0})});
  CHECK(cyclic.size() == 3);

  ClosureSet s3 = monoid_closure(3, {FnTable(3, 1, {1, 2, 0}), FnTable(3, 1, {1, 0, 2})});
  CHECK(s3.size() == 6);
  for (const Permutation& gamma : all_permutations(3)) CHECK(s3.contains(gamma.forward()));
  CHECK_THROWS_AS(monoid_closure(2, {FnTable(2, 2, {0, 0, 0, 1})}), InvalidInput);
}

TEST_CASE("clone closure: projections only") {
  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet cs = clone_closure(2, {}, opts);
  // dedup key is (arity, table): pi^1_1, pi^2_1, pi^2_2
  CHECK(cs.size() == 3);
  CHECK(cs.arity_counts() == std::map<int, std::size_t>{{1, 1}, {2, 2}});
}

TEST_CASE("clone closure: functional completeness at cap 2") {
  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet cs = clone_closure(
      2, {FnTable(2, 2, {0, 0, 0, 1}), FnTable(2, 2, {0, 1, 1, 1}), FnTable(2, 1, {1, 0})}, opts);
  CHECK(cs.size() == 20);
  CHECK(cs.arity_counts() == std::map<int, std::size_t>{{1, 4}, {2, 16}});
  CHECK(as_set(cs) == brute_closure(2, cs.generators(), 2, false));
}

TEST_CASE("clone closure: AND alone against the brute oracle") {
  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet cs = clone_closure(2, {FnTable(2, 2, {0, 0, 0, 1})}, opts);
  CHECK(as_set(cs) == brute_closure(2, cs.generators(), 2, false));
  // monotone conjunction fragment: projections + AND itself
  CHECK(cs.size() == 4);
}

TEST_CASE("clone closure matches the brute oracle on seeded generator sets") {
  // n = 2 with any generators, n = 3 with unary ones: the oracle is
  // exponential in the level sizes, so near-complete binary levels at n = 3
  // (19683 tables) are out of its reach
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    int cap = 2;
    std::uniform_int_distribution<int> val(0, n - 1);
    std::vector<FnTable> gens;
    int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      int m = n == 3 ? 1 : 1 + static_cast<int>(rng() % 2);
      std::vector<int> vals(checked_table_size(n, m));
      for (int& v : vals) v = val(rng);
      gens.emplace_back(n, m, std::move(vals));
    }
    bool symmetric = (rng() % 2) == 0;
    ClosureOptions opts;
    opts.arity_cap = cap;
    opts.symmetric = symmetric;
    opts.work_guard = 1e10;
    ClosureSet cs = clone_closure(n, gens, opts);
    CHECK(as_set(cs) == brute_closure(n, gens, cap, symmetric));
  }
}

TEST_CASE("clone closure at cap 3: saturation fill against the plain fixpoint") {
  // AND + NOT is complete; every level up to the cap must fill, with or
  // without the binary-saturation shortcut
  std::vector<FnTable> gens = {FnTable(2, 2, {0, 0, 0, 1}), FnTable(2, 1, {1, 0})};
  ClosureOptions with_fill;
  with_fill.arity_cap = 3;
  with_fill.work_guard = 1e10;
  ClosureOptions without_fill = with_fill;
  without_fill.saturation_fill = false;
  ClosureSet fast = clone_closure(2, gens, with_fill);
  ClosureSet slow = clone_closure(2, gens, without_fill);
  CHECK(fast.arity_counts() == std::map<int, std::size_t>{{1, 4}, {2, 16}, {3, 256}});
  CHECK(fast.members() == slow.members());
}

TEST_CASE("symmetric closure: constants and idempotence") {
  ClosureSet one_const = monoid_closure(3, {FnTable::constant(3, 0)});
  CHECK(one_const.size() == 2);  // id + the constant
  ClosureSet sym = symmetric_closure(one_const);
  CHECK(sym.size() == 4);  // id + all three constants
  for (int c = 0; c < 3; ++c) CHECK(sym.contains(FnTable::constant(3, c)));
  ClosureSet again = symmetric_closure(sym);
  CHECK(as_set(again) == as_set(sym));

  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet projections = clone_closure(2, {}, opts);
  CHECK(as_set(symmetric_closure(projections)) == as_set(projections));
}

TEST_CASE("closure idempotence: re-closing adds nothing") {
  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet cs = clone_closure(2, {FnTable(2, 2, {0, 0, 0, 1}), FnTable(2, 1, {1, 0})}, opts);
  ClosureSet again = clone_closure_seeded(2, cs.generators(), cs.members(), opts);
  CHECK(again.members() == cs.members());
  ClosureSet mono = monoid_closure(3, {FnTable(3, 1, {1, 2, 0}), FnTable(3, 1, {0, 0, 1})});
  ClosureSet mono_again = monoid_closure(3, mono.members());
  CHECK(mono_again.members() == mono.members());
}

TEST_CASE("closure monotonicity on seeded instances") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 3;
    std::uniform_int_distribution<int> val(0, n - 1);
    auto rnd_unary = [&]() {
      std::vector<int> vals(static_cast<std::size_t>(n));
      for (int& v : vals) v = val(rng);
      return FnTable(n, 1, std::move(vals));
    };
    FnTable a = rnd_unary(), b = rnd_unary();
    ClosureSet small = monoid_closure(n, {a});
    ClosureSet big = monoid_closure(n, {a, b});
    for (const FnTable& f : small.members()) CHECK(big.contains(f));
  }
}

TEST_CASE("closure generations are breadth-first") {
  ClosureSet s3 = monoid_closure(3, {FnTable(3, 1, {1, 2, 0}), FnTable(3, 1, {1, 0, 2})});
  // seeds at depth 0, products found layer by layer
  const auto& hist = s3.generation_histogram();
  CHECK(hist.at(0) == 3);  // id + both generators
  CHECK(hist.size() >= 2);
  std::size_t total = 0;
  for (const auto& [d, c] : hist) total += static_cast<std::size_t>(c);
  CHECK(total == s3.size());
}

TEST_CASE("closure determinism across worker counts") {
  std::vector<FnTable> gens = {FnTable(2, 2, {0, 0, 0, 1}), FnTable(2, 2, {0, 1, 1, 1}),
                               FnTable(2, 1, {1, 0})};
  std::vector<ClosureSet> runs;
  for (int workers : {1, 2, 8}) {
    ClosureOptions opts;
    opts.arity_cap = 2;
    opts.workers = workers;
    runs.push_back(clone_closure(2, gens, opts));
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    CHECK(runs[i].members() == runs[0].members());
    CHECK(runs[i].generations() == runs[0].generations());
  }
}

TEST_CASE("closure cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "clonelab-cache-test";
  std::filesystem::remove_all(dir);
  std::vector<FnTable> gens = {FnTable(2, 2, {0, 0, 0, 1}), FnTable(2, 1, {1, 0})};
  ClosureOptions opts;
  opts.arity_cap = 2;
  ClosureSet cs = clone_closure(2, gens, opts);

  CHECK_FALSE(read_closure_cache(dir, 2, 2, false, gens).has_value());
  write_closure_cache(dir, cs);
  auto loaded = read_closure_cache(dir, 2, 2, false, gens);
  REQUIRE(loaded.has_value());
  CHECK(loaded->members() == cs.members());
  CHECK(loaded->generation_histogram() == cs.generation_histogram());
  CHECK(loaded->generations().empty());
  // different key: a miss, not a collision
  CHECK_FALSE(read_closure_cache(dir, 2, 2, true, gens).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("work and member guards trip with clear errors") {
  ClosureOptions tiny;
  tiny.arity_cap = 2;
  tiny.work_guard = 10;
  CHECK_THROWS_AS(clone_closure(3, {FnTable(3, 2, std::vector<int>(9, 1))}, tiny), GuardExceeded);
  ClosureOptions small_members;
  small_members.arity_cap = 2;
  small_members.max_members = 3;  // the AND closure has 4 members
  CHECK_THROWS_AS(clone_closure(2, {FnTable(2, 2, {0, 0, 0, 1})}, small_members), GuardExceeded);
}

TEST_CASE("check_representation_unary: powers of alpha over the trivial monoid") {
  ClosureSet trivial = monoid_closure(3, {});
  for (const Permutation& alpha : all_permutations(3)) {
    RepresentationUnaryResult r = check_representation_unary(trivial, alpha);
    CHECK(r.equal);
  }
}

TEST_CASE("check_representation_unary: symmetric constant monoid and a 3-cycle") {
  ClosureSet G = symmetric_closure(monoid_closure(3, {FnTable::constant(3, 0)}));
  Permutation alpha = Permutation::from_values(3, {1, 2, 0});
  RepresentationUnaryResult r = check_representation_unary(G, alpha);
  CHECK(r.equal);
}

TEST_CASE("check_representation_unary: all unary non-permutations plus id at n = 4") {
  std::vector<FnTable> gens;
  for (const FnTable& f : all_unary_functions(4)) {
    if (!f.is_bijection()) gens.push_back(f);
  }
  gens.push_back(FnTable::identity(4));
  ClosureSet G = monoid_closure(4, gens);
  CHECK(G.size() == 233);  // 256 - 24 permutations + id
  Permutation alpha = Permutation::from_values(4, {1, 0, 2, 3});
  RepresentationUnaryResult r = check_representation_unary(G, alpha);
  CHECK(r.equal);
}

TEST_CASE("check_representation_unary rejects non-monoid or non-symmetric input") {
  ClosureSet good = monoid_closure(3, {FnTable(3, 1, {1, 2, 0})});
  CHECK_NOTHROW(check_representation_unary(good, Permutation::identity(3)));
  // closure of [0,0,1] is a monoid but not conjugation-closed
  ClosureSet not_sym = monoid_closure(3, {FnTable(3, 1, {0, 0, 1})});
  CHECK_THROWS_AS(check_representation_unary(not_sym, Permutation::identity(3)), InvalidInput);
}

TEST_CASE("check_representation_binary_alpha: trivial representations") {
  ClosureOptions opts;
  opts.arity_cap = 4;
  opts.symmetric = true;
  ClosureSet C = clone_closure(2, {}, opts);
  Permutation alpha = Permutation::from_values(2, {1, 0});
  // t = alpha: f = pi^2_1 gives alpha(x) = f(alpha(x), x)
  CHECK(check_representation_binary_alpha(C, alpha, alpha.forward()).representable);
  // t = identity: f = pi^2_2
  CHECK(check_representation_binary_alpha(C, alpha, FnTable::identity(2)).representable);
  // rejects alpha with alpha^2 != id
  ClosureOptions opts3;
  opts3.arity_cap = 2;
  opts3.symmetric = true;
  ClosureSet C3 = clone_closure(3, {}, opts3);
  CHECK_THROWS_AS(
      check_representation_binary_alpha(C3, Permutation::from_values(3, {1, 2, 0}), FnTable::identity(3)),
      InvalidInput);
}

TEST_CASE("check_representation_binary_alpha: both directions against membership") {
  // C = symmetric clone of AND at cap 4; alpha = NOT; t = OR
  ClosureOptions opts;
  opts.arity_cap = 4;
  opts.symmetric = true;
  opts.work_guard = 1e10;
  ClosureSet C = clone_closure(2, {FnTable(2, 2, {0, 0, 0, 1})}, opts);
  Permutation alpha = Permutation::from_values(2, {1, 0});
  FnTable ort(2, 2, {0, 1, 1, 1});
  bool representable = check_representation_binary_alpha(C, alpha, ort).representable;
  ClosureOptions plain;
  plain.work_guard = 1e10;
  bool member = member_of_closure_with(C, alpha, ort, plain);
  CHECK(representable == member);
  CHECK(member);  // AND + NOT is complete, so OR is reachable
}

TEST_CASE("pol membership") {
  // projections preserve every nonempty extension
  std::vector<FnTable> ext;
  for (const FnTable& f : all_unary_functions(3)) {
    if (image(f).size() >= 2) ext.push_back(f);
  }
  auto pred = [](const FnTable& h) { return image(h).size() >= 2; };
  CHECK(pol_membership(FnTable::projection(3, 2, 0), ext, pred));
  CHECK(pol_membership(FnTable::identity(3), ext, pred));
  // a constant operation collapses everything: not a polymorphism here
  CHECK_FALSE(pol_membership(FnTable::constant(3, 0, 2), ext, pred));
  // guard and sampling paths
  CHECK_THROWS_AS(
      pol_membership(FnTable::constant(3, 0, 2), ext, pred, std::nullopt, /*tuple_guard=*/4),
      GuardExceeded);
  CHECK_FALSE(
      pol_membership(FnTable::constant(3, 0, 2), ext, pred, PolSampling{64, 99}, /*tuple_guard=*/4));
}

TEST_CASE("normal closure: identity, 3-cycle, transposition") {
  NormalClosureResult trivial = normal_closure_check(Permutation::identity(5));
  CHECK(trivial.kind == NormalClosureKind::ProperSubgroup);
  CHECK(trivial.order == 1);

  NormalClosureResult a5 = normal_closure_check(Permutation::from_values(5, {1, 2, 0, 3, 4}));
  CHECK(a5.kind == NormalClosureKind::Alternating);
  CHECK(a5.order == 60);

  NormalClosureResult s5 = normal_closure_check(Permutation::from_values(5, {1, 0, 2, 3, 4}));
  CHECK(s5.kind == NormalClosureKind::FullSymmetric);
  CHECK(s5.order == 120);
  CHECK_FALSE(s5.missing_witness.has_value());

  // independent oracle for |A_5|: all-pairs product closure from two 3-cycles
  std::set<FnTable> group;
  group.insert(FnTable::identity(5));
  group.insert(FnTable(5, 1, {1, 2, 0, 3, 4}));
  group.insert(FnTable(5, 1, {0, 1, 3, 4, 2}));
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<FnTable> cur(group.begin(), group.end());
    for (const FnTable& a : cur) {
      for (const FnTable& b : cur) {
        changed |= group.insert(compose1(a, b)).second;
      }
    }
  }
  CHECK(group.size() == 60);
}

TEST_CASE("normal closure: Klein four group at n = 4") {
  NormalClosureResult v4 = normal_closure_check(Permutation::from_values(4, {1, 0, 3, 2}));
  CHECK(v4.kind == NormalClosureKind::ProperSubgroup);
  CHECK(v4.order == 4);
  CHECK(v4.missing_witness.has_value());
}
