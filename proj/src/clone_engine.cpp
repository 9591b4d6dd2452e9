#include "clonelab/clone_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "clonelab/io.hpp"

namespace clonelab {

// ---------------------------------------------------------------------------
// ClosureSet
// ---------------------------------------------------------------------------

bool ClosureSet::contains(const FnTable& f) const { return index_.find(f) != index_.end(); }

void ClosureSet::rebuild_index() {
  index_.clear();
  index_.reserve(members_.size() * 2);
  for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i], i);
  gen_hist_.clear();
  for (int d : generations_) gen_hist_[d] += 1;
}

std::vector<FnTable> ClosureSet::members_of_arity(int m) const {
  std::vector<FnTable> out;
  for (const FnTable& f : members_) {
    if (f.arity() == m) out.push_back(f);
  }
  return out;
}

std::map<int, std::size_t> ClosureSet::arity_counts() const {
  std::map<int, std::size_t> out;
  for (const FnTable& f : members_) out[f.arity()] += 1;
  return out;
}

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

FnTable minor(const FnTable& f, std::span<const int> slot_map, int target_arity) {
  if (static_cast<int>(slot_map.size()) != f.arity()) {
    throw InvalidInput("minor: slot map must have one entry per argument of f");
  }
  for (int s : slot_map) {
    if (s < 0 || s >= target_arity) throw InvalidInput("minor: slot map entry out of range");
  }
  const int n = f.universe();
  const int m = f.arity();
  std::size_t size = checked_table_size(n, target_arity);
  std::vector<int> vals(size);
  std::vector<int> args(static_cast<std::size_t>(target_arity), 0);
  const std::vector<int>& fv = f.values();
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t fidx = 0;
    for (int i = 0; i < m; ++i) {
      fidx = fidx * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(args[static_cast<std::size_t>(slot_map[static_cast<std::size_t>(i)])]);
    }
    vals[idx] = fv[fidx];
    for (int i = target_arity - 1; i >= 0; --i) {
      if (++args[static_cast<std::size_t>(i)] < n) break;
      args[static_cast<std::size_t>(i)] = 0;
    }
  }
  return FnTable(n, target_arity, std::move(vals));
}

FnTable diagonal_identification(const FnTable& g) {
  if (g.arity() % 2 != 0) throw InvalidInput("diagonal_identification: arity must be even");
  int m = g.arity() / 2;
  std::vector<int> slots(static_cast<std::size_t>(g.arity()));
  for (int i = 0; i < g.arity(); ++i) slots[static_cast<std::size_t>(i)] = i % m;
  return minor(g, slots, m);
}

// ---------------------------------------------------------------------------
// Closure engine
//
// Layered BFS with two rules: minors of any member, and full-tuple
// composition f(g_1,...,g_m) where f ranges over the generators. Closing
// under generator composition closes under composition by every member (by
// induction over derivations: h(f_1,...,f_q) applied to a member tuple is h
// applied to the member tuple (f_1(gs),...,f_q(gs))), so the result is the
// least set satisfying the ClosureSet contract while tuple enumeration stays
// bounded by the generator arities.
//
// Saturated arities are skipped, and once the binary level is complete every
// level up to the cap is filled outright: all finitary operations are
// compositions of binary ones, and the required derivations stay within the
// cap (a balanced binary composition tree over p variables only ever applies
// binary members to p-ary members).
// ---------------------------------------------------------------------------

namespace {

struct Engine {
  int n;
  ClosureOptions opts;
  std::vector<FnTable> members;
  std::vector<int> depth;
  std::unordered_map<FnTable, std::size_t, FnTableHash> index;
  std::vector<std::vector<std::size_t>> by_arity;   // arity -> member ids, insertion order
  std::vector<std::optional<std::size_t>> full_at;  // arity -> n^(n^p) when representable
  double work_done = 0;

  Engine(int n_, const ClosureOptions& o) : n(n_), opts(o) {
    by_arity.resize(static_cast<std::size_t>(opts.arity_cap) + 1);
    full_at.resize(static_cast<std::size_t>(opts.arity_cap) + 1);
    for (int p = 1; p <= opts.arity_cap; ++p) {
      long double logc = std::pow(static_cast<long double>(n), p) * std::log2(static_cast<long double>(n));
      if (n == 1) {
        full_at[static_cast<std::size_t>(p)] = 1;
      } else if (logc < 62.0L) {
        std::size_t c = 1;
        std::size_t points = checked_table_size(n, p);
        for (std::size_t i = 0; i < points; ++i) c *= static_cast<std::size_t>(n);
        full_at[static_cast<std::size_t>(p)] = c;
      }
    }
  }

  bool level_full(int p) const {
    const auto& f = full_at[static_cast<std::size_t>(p)];
    return f && by_arity[static_cast<std::size_t>(p)].size() == *f;
  }

  bool all_full() const {
    for (int p = 1; p <= opts.arity_cap; ++p) {
      if (!level_full(p)) return false;
    }
    return true;
  }

  bool insert(FnTable f, int d) {
    auto [it, fresh] = index.try_emplace(std::move(f), members.size());
    if (!fresh) return false;
    if (members.size() >= opts.max_members) {
      throw GuardExceeded("closure exceeds the member guard (" + std::to_string(opts.max_members) +
                          "); limiting parameters: n=" + std::to_string(n) +
                          ", arity cap=" + std::to_string(opts.arity_cap));
    }
    members.push_back(it->first);
    depth.push_back(d);
    by_arity[static_cast<std::size_t>(it->first.arity())].push_back(it->second);
    return true;
  }

  void spend(double work) {
    work_done += work;
    if (work_done > opts.work_guard) {
      throw GuardExceeded("closure expansion exceeds the work guard (~" +
                          std::to_string(static_cast<long long>(opts.work_guard)) +
                          " table evaluations); limiting parameters: generator arities and arity cap=" +
                          std::to_string(opts.arity_cap));
    }
  }
};

struct CompJob {
  std::size_t gen;    // index into rule generators
  int p;              // component (= result) arity
  int pos;            // which slot takes a frontier member
  std::size_t front;  // index into the frontier slice of by_arity[p]
};

struct MinorJob {
  std::size_t member;  // frontier member id
};

// One layer's candidate generation; read-only over the engine state.
void run_jobs(const Engine& eng, const std::vector<FnTable>& gens,
              const std::vector<MinorJob>& minors, const std::vector<CompJob>& comps,
              const std::vector<std::size_t>& old_sizes, int workers,
              std::vector<std::vector<FnTable>>& out) {
  std::size_t total = minors.size() + comps.size();
  out.assign(static_cast<std::size_t>(workers), {});

  auto work = [&](int w) {
    std::unordered_set<FnTable, FnTableHash> local;
    auto emit = [&](FnTable f) {
      if (eng.index.find(f) != eng.index.end()) return;
      if (local.insert(f).second) out[static_cast<std::size_t>(w)].push_back(std::move(f));
    };
    std::vector<int> slot(static_cast<std::size_t>(eng.opts.arity_cap) + 1, 0);
    for (std::size_t job = static_cast<std::size_t>(w); job < total; job += static_cast<std::size_t>(workers)) {
      if (job < minors.size()) {
        const FnTable& u = eng.members[minors[job].member];
        int m = u.arity();
        for (int p = 1; p <= eng.opts.arity_cap; ++p) {
          if (eng.level_full(p)) continue;
          std::fill(slot.begin(), slot.begin() + m, 0);
          while (true) {
            emit(minor(u, std::span<const int>(slot.data(), static_cast<std::size_t>(m)), p));
            int i = m - 1;
            while (i >= 0 && slot[static_cast<std::size_t>(i)] == p - 1) {
              slot[static_cast<std::size_t>(i)] = 0;
              --i;
            }
            if (i < 0) break;
            slot[static_cast<std::size_t>(i)] += 1;
          }
        }
        continue;
      }
      const CompJob& cj = comps[job - minors.size()];
      const FnTable& f = gens[cj.gen];
      const int m = f.arity();
      const auto& level = eng.by_arity[static_cast<std::size_t>(cj.p)];
      const std::size_t old_count = old_sizes[static_cast<std::size_t>(cj.p)];
      const std::size_t points = checked_table_size(eng.n, cj.p);
      // slots before `pos` range over pre-frontier members, slot `pos` is the
      // fixed frontier member, slots after range over everything present.
      std::vector<const std::vector<int>*> comp(static_cast<std::size_t>(m));
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      comp[static_cast<std::size_t>(cj.pos)] = &eng.members[level[old_count + cj.front]].values();
      bool done = false;
      for (int i = 0; i < m && !done; ++i) {
        if (i == cj.pos) continue;
        std::size_t limit = i < cj.pos ? old_count : level.size();
        if (limit == 0) done = true;
        else comp[static_cast<std::size_t>(i)] = &eng.members[level[0]].values();
      }
      if (done) continue;
      const std::vector<int>& fv = f.values();
      std::vector<int> vals(points);
      while (true) {
        for (std::size_t x = 0; x < points; ++x) {
          std::size_t fidx = 0;
          for (int i = 0; i < m; ++i) {
            fidx = fidx * static_cast<std::size_t>(eng.n) +
                   static_cast<std::size_t>((*comp[static_cast<std::size_t>(i)])[x]);
          }
          vals[x] = fv[fidx];
        }
        emit(FnTable(eng.n, cj.p, vals));
        // odometer over the free slots
        int i = m - 1;
        for (; i >= 0; --i) {
          if (i == cj.pos) continue;
          std::size_t limit = i < cj.pos ? old_count : level.size();
          if (++pick[static_cast<std::size_t>(i)] < limit) {
            comp[static_cast<std::size_t>(i)] = &eng.members[level[pick[static_cast<std::size_t>(i)]]].values();
            break;
          }
          pick[static_cast<std::size_t>(i)] = 0;
          comp[static_cast<std::size_t>(i)] = &eng.members[level[0]].values();
        }
        if (i < 0) break;
      }
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
}

}  // namespace

ClosureSet clone_closure_seeded(int n, std::vector<FnTable> generators,
                                std::vector<FnTable> seed_members, const ClosureOptions& opts) {
  Universe check(n);
  if (opts.arity_cap < 1) throw InvalidInput("closure: arity cap must be >= 1");
  if (opts.workers < 1) throw InvalidInput("closure: workers must be >= 1");
  checked_table_size(n, opts.arity_cap);
  for (const FnTable& g : generators) {
    if (g.universe() != n) throw InvalidInput("closure: generator universe mismatch");
    if (g.arity() > opts.arity_cap) {
      throw InvalidInput("closure: generator arity " + std::to_string(g.arity()) +
                         " exceeds the cap " + std::to_string(opts.arity_cap));
    }
  }
  for (const FnTable& s : seed_members) {
    if (s.universe() != n || s.arity() > opts.arity_cap) {
      throw InvalidInput("closure: seed member outside the universe/cap");
    }
  }

  std::vector<FnTable> rule_gens = generators;
  if (opts.symmetric) {
    std::vector<Permutation> perms = all_permutations(n);
    std::unordered_set<FnTable, FnTableHash> seen(rule_gens.begin(), rule_gens.end());
    std::size_t base = rule_gens.size();
    for (std::size_t i = 0; i < base; ++i) {
      for (const Permutation& gamma : perms) {
        FnTable c = conjugate(rule_gens[i], gamma);
        if (seen.insert(c).second) rule_gens.push_back(std::move(c));
      }
    }
  }

  Engine eng(n, opts);
  for (int m = 1; m <= opts.arity_cap; ++m) {
    for (int coord = 0; coord < m; ++coord) eng.insert(FnTable::projection(n, m, coord), 0);
  }
  for (const FnTable& g : rule_gens) eng.insert(g, 0);
  for (const FnTable& s : seed_members) eng.insert(s, 0);

  std::vector<std::size_t> boundary(static_cast<std::size_t>(opts.arity_cap) + 1, 0);
  std::size_t frontier_begin = 0;
  int d = 0;
  while (frontier_begin < eng.members.size()) {
    // frontier of arity p lives at by_arity[p][boundary[p]..)
    std::vector<MinorJob> minor_jobs;
    for (std::size_t i = frontier_begin; i < eng.members.size(); ++i) minor_jobs.push_back({i});

    std::vector<CompJob> comp_jobs;
    double planned = 0;
    for (std::size_t gi = 0; gi < rule_gens.size(); ++gi) {
      int m = rule_gens[gi].arity();
      for (int p = 1; p <= opts.arity_cap; ++p) {
        if (eng.level_full(p)) continue;
        const auto& level = eng.by_arity[static_cast<std::size_t>(p)];
        std::size_t old_count = boundary[static_cast<std::size_t>(p)];
        std::size_t fresh = level.size() - old_count;
        if (fresh == 0) continue;
        double points = static_cast<double>(checked_table_size(n, p));
        for (int pos = 0; pos < m; ++pos) {
          double tuples = 1;
          for (int i = 0; i < m; ++i) {
            if (i == pos) continue;
            tuples *= static_cast<double>(i < pos ? old_count : level.size());
          }
          planned += tuples * points * m * static_cast<double>(fresh);
          for (std::size_t fr = 0; fr < fresh; ++fr) comp_jobs.push_back({gi, p, pos, fr});
        }
      }
    }
    for (std::size_t i = frontier_begin; i < eng.members.size(); ++i) {
      const FnTable& u = eng.members[i];
      for (int p = 1; p <= opts.arity_cap; ++p) {
        if (eng.level_full(p)) continue;
        planned += std::pow(static_cast<double>(p), u.arity()) * static_cast<double>(checked_table_size(n, p));
      }
    }
    eng.spend(planned);

    std::vector<std::size_t> old_sizes = boundary;
    std::vector<std::size_t> next_boundary(static_cast<std::size_t>(opts.arity_cap) + 1);
    for (int p = 1; p <= opts.arity_cap; ++p) {
      next_boundary[static_cast<std::size_t>(p)] = eng.by_arity[static_cast<std::size_t>(p)].size();
    }
    std::size_t next_frontier = eng.members.size();

    std::vector<std::vector<FnTable>> buffers;
    run_jobs(eng, rule_gens, minor_jobs, comp_jobs, old_sizes, opts.workers, buffers);
    for (auto& buf : buffers) {
      for (FnTable& cand : buf) eng.insert(std::move(cand), d + 1);
    }

    if (opts.saturation_fill && opts.arity_cap >= 2 && eng.level_full(2) && !eng.all_full()) {
      std::size_t total = 0;
      for (int p = 1; p <= opts.arity_cap; ++p) {
        if (!eng.full_at[static_cast<std::size_t>(p)]) {
          throw GuardExceeded("closure saturates but the full level at arity " + std::to_string(p) +
                              " does not fit in the member guard");
        }
        total += *eng.full_at[static_cast<std::size_t>(p)];
      }
      if (total > opts.max_members) {
        throw GuardExceeded("closure saturates to " + std::to_string(total) +
                            " members, past the guard of " + std::to_string(opts.max_members));
      }
      for (int p = 1; p <= opts.arity_cap; ++p) {
        if (eng.level_full(p)) continue;
        std::size_t points = checked_table_size(n, p);
        std::vector<int> vals(points, 0);
        while (true) {
          eng.insert(FnTable(n, p, vals), d + 1);
          std::size_t i = points;
          while (i > 0 && vals[i - 1] == n - 1) vals[--i] = 0;
          if (i == 0) break;
          vals[i - 1] += 1;
        }
      }
    }

    boundary = next_boundary;
    frontier_begin = next_frontier;
    ++d;
  }

  // Canonical order: (arity, table), with generation tags kept aligned.
  std::vector<std::size_t> order(eng.members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eng.members[a] < eng.members[b];
  });

  ClosureSet cs;
  cs.n_ = n;
  cs.arity_cap_ = opts.arity_cap;
  cs.symmetric_ = opts.symmetric;
  cs.generators_ = std::move(generators);
  cs.rule_generators_ = std::move(rule_gens);
  cs.members_.reserve(eng.members.size());
  cs.generations_.reserve(eng.members.size());
  for (std::size_t i : order) {
    cs.members_.push_back(std::move(eng.members[i]));
    cs.generations_.push_back(eng.depth[i]);
  }
  cs.rebuild_index();
  return cs;
}

ClosureSet clone_closure(int n, std::vector<FnTable> generators, const ClosureOptions& opts) {
  return clone_closure_seeded(n, std::move(generators), {}, opts);
}

ClosureSet monoid_closure(int n, std::vector<FnTable> generators, ClosureOptions opts) {
  for (const FnTable& g : generators) {
    if (!g.is_unary()) throw InvalidInput("monoid_closure: unary generators required");
  }
  opts.arity_cap = 1;
  return clone_closure_seeded(n, std::move(generators), {}, opts);
}

ClosureSet symmetric_closure(const ClosureSet& cs, const ClosureOptions& opts_in) {
  ClosureOptions opts = opts_in;
  opts.arity_cap = cs.arity_cap();
  opts.symmetric = true;
  return clone_closure_seeded(cs.universe(), cs.generators(), cs.members(), opts);
}

// ---------------------------------------------------------------------------
// Representation checks
// ---------------------------------------------------------------------------

RepresentationUnaryResult check_representation_unary(const ClosureSet& G,
                                                     const Permutation& alpha) {
  const int n = G.universe();
  if (alpha.universe() != n) throw InvalidInput("check_representation_unary: universe mismatch");
  if (G.arity_cap() != 1) {
    throw InvalidInput("check_representation_unary: G must be a unary closure set");
  }
  if (!G.contains(FnTable::identity(n))) {
    throw InvalidInput("check_representation_unary: G does not contain the identity");
  }
  for (const FnTable& g : G.members()) {
    for (const FnTable& h : G.members()) {
      if (!G.contains(compose1(g, h))) {
        throw InvalidInput("check_representation_unary: G is not composition-closed; witness " +
                           g.id() + " o " + h.id());
      }
    }
  }
  for (const Permutation& gamma : all_permutations(n)) {
    for (const FnTable& g : G.members()) {
      if (!G.contains(conjugate(g, gamma))) {
        throw InvalidInput("check_representation_unary: G is not symmetric; witness " + g.id());
      }
    }
  }

  std::vector<FnTable> gens = G.members();
  gens.push_back(alpha.forward());
  ClosureSet closure = monoid_closure(n, std::move(gens));

  const int ord = alpha.order();
  std::set<FnTable> left;   // alpha^k o g
  std::set<FnTable> right;  // g o alpha^k
  FnTable power = FnTable::identity(n);
  for (int k = 0; k < ord; ++k) {
    for (const FnTable& g : G.members()) {
      left.insert(compose1(power, g));
      right.insert(compose1(g, power));
    }
    power = compose1(alpha.forward(), power);
  }

  std::set<FnTable> closure_set(closure.members().begin(), closure.members().end());
  RepresentationUnaryResult result;
  if (closure_set == left && left == right) {
    result.equal = true;
    result.detail = "closure and both normal forms coincide (" +
                    std::to_string(closure_set.size()) + " functions)";
    return result;
  }
  result.equal = false;
  auto first_diff = [](const std::set<FnTable>& a, const std::set<FnTable>& b) -> std::optional<FnTable> {
    std::vector<FnTable> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    if (diff.empty()) return std::nullopt;
    return diff.front();
  };
  if (auto w = first_diff(closure_set, left)) {
    result.witness = w;
    result.detail = "closure and {alpha^k o g} differ";
  } else if (auto w2 = first_diff(left, right)) {
    result.witness = w2;
    result.detail = "{alpha^k o g} and {g o alpha^k} differ";
  }
  return result;
}

RepresentationBinaryResult check_representation_binary_alpha(const ClosureSet& C,
                                                             const Permutation& alpha,
                                                             const FnTable& t) {
  const int n = C.universe();
  if (alpha.universe() != n || t.universe() != n) {
    throw InvalidInput("check_representation_binary_alpha: universe mismatch");
  }
  if (!alpha.compose(alpha).is_identity()) {
    throw InvalidInput("check_representation_binary_alpha: alpha^2 must be the identity");
  }
  if (!C.symmetric()) {
    throw InvalidInput("check_representation_binary_alpha: C must be a symmetric closure set");
  }
  const int m = t.arity();
  if (2 * m > C.arity_cap()) {
    throw InvalidInput("check_representation_binary_alpha: need 2*arity(t) <= cap");
  }

  // Precompute, for each argument tuple of t, the index of
  // (alpha(x_1),...,alpha(x_m),x_1,...,x_m) in a 2m-ary table.
  std::size_t points = t.values().size();
  std::vector<std::size_t> fidx(points);
  std::vector<int> args(static_cast<std::size_t>(m), 0);
  for (std::size_t idx = 0; idx < points; ++idx) {
    std::size_t v = 0;
    for (int i = 0; i < m; ++i) {
      v = v * static_cast<std::size_t>(n) + static_cast<std::size_t>(alpha(args[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i < m; ++i) {
      v = v * static_cast<std::size_t>(n) + static_cast<std::size_t>(args[static_cast<std::size_t>(i)]);
    }
    fidx[idx] = v;
    for (int i = m - 1; i >= 0; --i) {
      if (++args[static_cast<std::size_t>(i)] < n) break;
      args[static_cast<std::size_t>(i)] = 0;
    }
  }

  RepresentationBinaryResult result;
  for (const FnTable& f : C.members()) {
    if (f.arity() != 2 * m) continue;
    bool match = true;
    for (std::size_t idx = 0; idx < points && match; ++idx) {
      match = f.values()[fidx[idx]] == t.values()[idx];
    }
    if (match) {
      result.representable = true;
      result.f = f;
      return result;
    }
  }
  return result;
}

bool member_of_closure_with(const ClosureSet& C, const Permutation& alpha, const FnTable& t,
                            const ClosureOptions& opts_in) {
  ClosureOptions opts = opts_in;
  opts.arity_cap = C.arity_cap();
  opts.symmetric = false;
  std::vector<FnTable> gens = C.rule_generators();
  gens.push_back(alpha.forward());
  ClosureSet closure = clone_closure_seeded(C.universe(), std::move(gens), C.members(), opts);
  return closure.contains(t);
}

// ---------------------------------------------------------------------------
// pol(G)
// ---------------------------------------------------------------------------

bool pol_membership(const FnTable& f, std::span<const FnTable> extension,
                    const std::function<bool(const FnTable&)>& pred,
                    std::optional<PolSampling> sampling, std::size_t tuple_guard) {
  const int n = f.universe();
  const int m = f.arity();
  for (const FnTable& g : extension) {
    if (!g.is_unary() || g.universe() != n) {
      throw InvalidInput("pol_membership: extension must consist of unary functions on the same universe");
    }
  }
  if (extension.empty()) return true;

  auto apply_tuple = [&](std::span<const std::size_t> pick) {
    std::vector<int> vals(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      std::size_t fidx = 0;
      for (int i = 0; i < m; ++i) {
        fidx = fidx * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(extension[pick[static_cast<std::size_t>(i)]].at1(x));
      }
      vals[static_cast<std::size_t>(x)] = f.values()[fidx];
    }
    return FnTable(n, 1, std::move(vals));
  };

  double space = std::pow(static_cast<double>(extension.size()), m);
  if (space > static_cast<double>(tuple_guard)) {
    if (!sampling) {
      throw GuardExceeded("pol_membership: tuple space of ~" + std::to_string(space) +
                          " needs an explicit sampling plan");
    }
    std::mt19937_64 rng(sampling->seed);
    std::uniform_int_distribution<std::size_t> pickd(0, extension.size() - 1);
    std::vector<std::size_t> pick(static_cast<std::size_t>(m));
    for (std::size_t trial = 0; trial < sampling->tuples; ++trial) {
      for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = pickd(rng);
      if (!pred(apply_tuple(pick))) return false;
    }
    return true;
  }

  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  while (true) {
    if (!pred(apply_tuple(pick))) return false;
    int i = m - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == extension.size() - 1) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    pick[static_cast<std::size_t>(i)] += 1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Normal closure
// ---------------------------------------------------------------------------

const char* to_string(NormalClosureKind kind) {
  switch (kind) {
    case NormalClosureKind::FullSymmetric: return "S_n";
    case NormalClosureKind::Alternating: return "A_n";
    case NormalClosureKind::ProperSubgroup: return "proper subgroup";
  }
  return "?";
}

NormalClosureResult normal_closure_check(const Permutation& alpha) {
  const int n = alpha.universe();
  std::vector<Permutation> perms = all_permutations(n);

  // {gamma^-1 alpha gamma : gamma} is the conjugacy class of alpha; it is
  // closed under inverses, so word closure below is a subgroup.
  std::unordered_set<FnTable, FnTableHash> class_set;
  std::vector<FnTable> gens;
  for (const Permutation& gamma : perms) {
    FnTable c = conjugate(alpha.forward(), gamma);
    if (class_set.insert(c).second) gens.push_back(std::move(c));
  }

  std::unordered_set<FnTable, FnTableHash> group;
  std::vector<FnTable> frontier;
  FnTable id = FnTable::identity(n);
  group.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<FnTable> next;
    for (const FnTable& w : frontier) {
      for (const FnTable& g : gens) {
        FnTable wg = compose1(w, g);
        if (group.insert(wg).second) next.push_back(std::move(wg));
      }
    }
    frontier = std::move(next);
  }

  std::size_t full = perms.size();
  NormalClosureResult result;
  result.order = group.size();
  if (group.size() == full) {
    result.kind = NormalClosureKind::FullSymmetric;
    return result;
  }
  for (const Permutation& p : perms) {
    if (group.find(p.forward()) == group.end()) {
      result.missing_witness = p.forward();
      break;
    }
  }
  bool all_even = true;
  for (const FnTable& g : group) {
    if (Permutation(g).parity() != 1) {
      all_even = false;
      break;
    }
  }
  if (all_even && group.size() * 2 == full) {
    result.kind = NormalClosureKind::Alternating;
  } else {
    result.kind = NormalClosureKind::ProperSubgroup;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

std::string closure_cache_key(int n, int arity_cap, bool symmetric,
                              std::span<const FnTable> generators) {
  std::vector<FnTable> sorted(generators.begin(), generators.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> stream = {n, arity_cap, symmetric ? 1 : 0};
  for (const FnTable& g : sorted) {
    stream.push_back(g.arity());
    stream.insert(stream.end(), g.values().begin(), g.values().end());
    stream.push_back(-1);
  }
  std::uint64_t h = fnv1a64(stream);
  static const char* digits = "0123456789abcdef";
  std::string key(16, '0');
  for (int i = 15; i >= 0; --i) {
    key[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return key;
}

std::filesystem::path closure_cache_path(const std::filesystem::path& dir, const std::string& key) {
  return dir / ("closure-" + key + ".txt");
}

std::filesystem::path write_closure_cache(const std::filesystem::path& dir, const ClosureSet& cs) {
  std::filesystem::create_directories(dir);
  std::string key = closure_cache_key(cs.universe(), cs.arity_cap(), cs.symmetric(), cs.generators());
  std::ostringstream out;
  out << "clonelab-closure 1 n=" << cs.universe() << " cap=" << cs.arity_cap()
      << " symmetric=" << (cs.symmetric() ? 1 : 0) << " gens=" << key
      << " members=" << cs.size() << " gen_hist=";
  if (cs.generation_histogram().empty()) {
    out << "-";
  } else {
    bool first = true;
    for (const auto& [d, c] : cs.generation_histogram()) {
      if (!first) out << ",";
      first = false;
      out << d << ":" << c;
    }
  }
  out << "\n";
  for (const FnTable& f : cs.members()) out << format_operation(f);
  std::filesystem::path path = closure_cache_path(dir, key);
  atomic_write_file(path, out.str());
  return path;
}

std::optional<ClosureSet> read_closure_cache(const std::filesystem::path& dir, int n,
                                             int arity_cap, bool symmetric,
                                             std::span<const FnTable> generators) {
  std::string key = closure_cache_key(n, arity_cap, symmetric, generators);
  std::filesystem::path path = closure_cache_path(dir, key);
  std::ifstream in(path);
  if (!in) return std::nullopt;

  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "clonelab-closure" || version != "1") {
    throw ParseError("unrecognized closure cache header", 1, 1);
  }
  std::map<std::string, std::string> params;
  std::string kv;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("malformed cache parameter '" + kv + "'", 1, 1);
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto need = [&](const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw ParseError("cache header missing parameter '" + name + "'", 1, 1);
    return it->second;
  };
  if (std::stoi(need("n")) != n || std::stoi(need("cap")) != arity_cap ||
      std::stoi(need("symmetric")) != (symmetric ? 1 : 0) || need("gens") != key) {
    throw ParseError("cache header does not match the requested closure", 1, 1);
  }
  std::size_t count = static_cast<std::size_t>(std::stoull(need("members")));

  ClosureSet cs;
  cs.n_ = n;
  cs.arity_cap_ = arity_cap;
  cs.symmetric_ = symmetric;
  cs.generators_.assign(generators.begin(), generators.end());
  cs.rule_generators_ = cs.generators_;
  if (symmetric) {
    std::vector<Permutation> perms = all_permutations(n);
    std::unordered_set<FnTable, FnTableHash> seen(cs.rule_generators_.begin(), cs.rule_generators_.end());
    std::size_t base = cs.rule_generators_.size();
    for (std::size_t i = 0; i < base; ++i) {
      for (const Permutation& gamma : perms) {
        FnTable c = conjugate(cs.rule_generators_[i], gamma);
        if (seen.insert(c).second) cs.rule_generators_.push_back(std::move(c));
      }
    }
  }

  int line = 2;
  for (std::size_t i = 0; i < count; ++i) {
    int fn, fm;
    if (!(in >> fn >> fm)) throw ParseError("truncated cache member header", line, 1);
    if (fn != n) throw ParseError("cache member universe mismatch", line, 1);
    std::size_t sz = checked_table_size(fn, fm);
    std::vector<int> vals(sz);
    for (std::size_t j = 0; j < sz; ++j) {
      if (!(in >> vals[j])) throw ParseError("truncated cache member table", line + 1, 1);
    }
    cs.members_.emplace_back(fn, fm, std::move(vals));
    line += 2;
  }
  for (std::size_t i = 1; i < cs.members_.size(); ++i) {
    if (!(cs.members_[i - 1] < cs.members_[i])) {
      throw ParseError("cache members not in canonical order", 1, 1);
    }
  }
  cs.rebuild_index();
  // generations do not survive the round trip; the histogram does
  std::string hist = need("gen_hist");
  if (hist != "-") {
    std::istringstream hstream(hist);
    std::string item;
    while (std::getline(hstream, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("malformed gen_hist entry", 1, 1);
      cs.gen_hist_[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    }
  }
  return cs;
}

}  // namespace clonelab
