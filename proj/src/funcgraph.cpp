#include "clonelab/funcgraph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <sstream>

namespace clonelab {

SnailDecomposition decompose(const FnTable& f) {
  if (!f.is_unary()) throw InvalidInput("decompose: unary function required");
  const int n = f.universe();
  std::vector<bool> on_cycle(static_cast<std::size_t>(n), false);

  // Color walk: 0 = unvisited, 1 = on current path, 2 = settled. Whenever a
  // walk closes on its own path, the tail of the path is a cycle.
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::vector<int> path;
  for (int start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)] != 0) continue;
    path.clear();
    int x = start;
    while (color[static_cast<std::size_t>(x)] == 0) {
      color[static_cast<std::size_t>(x)] = 1;
      path.push_back(x);
      x = f.at1(x);
    }
    if (color[static_cast<std::size_t>(x)] == 1) {
      auto it = std::find(path.begin(), path.end(), x);
      for (; it != path.end(); ++it) on_cycle[static_cast<std::size_t>(*it)] = true;
    }
    for (int y : path) color[static_cast<std::size_t>(y)] = 2;
  }

  // Levels by reverse BFS from the cycles.
  std::vector<std::vector<int>> preimage(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) preimage[static_cast<std::size_t>(f.at1(x))].push_back(x);
  std::vector<int> level(static_cast<std::size_t>(n), -1);
  std::deque<int> queue;
  for (int x = 0; x < n; ++x) {
    if (on_cycle[static_cast<std::size_t>(x)]) {
      level[static_cast<std::size_t>(x)] = 0;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    for (int x : preimage[static_cast<std::size_t>(y)]) {
      if (on_cycle[static_cast<std::size_t>(x)]) continue;
      level[static_cast<std::size_t>(x)] = level[static_cast<std::size_t>(y)] + 1;
      queue.push_back(x);
    }
  }

  // Component of x = component of the cycle element its orbit reaches.
  std::vector<int> cycle_anchor(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (cycle_anchor[static_cast<std::size_t>(x)] != -1) continue;
    path.clear();
    int y = x;
    while (cycle_anchor[static_cast<std::size_t>(y)] == -1 && !on_cycle[static_cast<std::size_t>(y)]) {
      path.push_back(y);
      y = f.at1(y);
    }
    int anchor = on_cycle[static_cast<std::size_t>(y)] ? y : cycle_anchor[static_cast<std::size_t>(y)];
    for (int z : path) cycle_anchor[static_cast<std::size_t>(z)] = anchor;
    if (on_cycle[static_cast<std::size_t>(y)]) cycle_anchor[static_cast<std::size_t>(y)] = y;
  }
  // Two cycle elements share a component iff they share a cycle; anchor them
  // all to the minimal element of their cycle.
  std::vector<int> cycle_root(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (!on_cycle[static_cast<std::size_t>(x)] || cycle_root[static_cast<std::size_t>(x)] != -1) continue;
    int least = x;
    for (int y = f.at1(x); y != x; y = f.at1(y)) least = std::min(least, y);
    cycle_root[static_cast<std::size_t>(x)] = least;
    for (int y = f.at1(x); y != x; y = f.at1(y)) cycle_root[static_cast<std::size_t>(y)] = least;
  }

  std::vector<int> root_of(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    root_of[static_cast<std::size_t>(x)] = cycle_root[static_cast<std::size_t>(cycle_anchor[static_cast<std::size_t>(x)])];
  }
  std::vector<int> roots;
  for (int x = 0; x < n; ++x) {
    if (on_cycle[static_cast<std::size_t>(x)] && cycle_root[static_cast<std::size_t>(x)] == x) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());

  SnailDecomposition d;
  d.n = n;
  d.level = std::move(level);
  d.parent = f.values();
  d.component_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < roots.size(); ++c) {
    Snail s;
    int r = roots[c];
    s.cycle.push_back(r);
    for (int y = f.at1(r); y != r; y = f.at1(y)) s.cycle.push_back(y);
    s.period = static_cast<int>(s.cycle.size());
    d.components.push_back(std::move(s));
  }
  std::vector<int> index_of_root(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < roots.size(); ++c) index_of_root[static_cast<std::size_t>(roots[c])] = static_cast<int>(c);
  for (int x = 0; x < n; ++x) {
    int c = index_of_root[static_cast<std::size_t>(root_of[static_cast<std::size_t>(x)])];
    d.component_of[static_cast<std::size_t>(x)] = c;
    d.components[static_cast<std::size_t>(c)].elements.push_back(x);
  }
  return d;
}

SnailSpectrum spectrum(const FnTable& f) {
  SnailSpectrum s;
  for (const Snail& snail : decompose(f).components) s[snail.period] += 1;
  return s;
}

namespace {

struct TreeView {
  // children[x]: tree children of x (preimages excluding the cycle edge),
  // sorted ascending; populated for every element.
  std::vector<std::vector<int>> children;
  std::vector<bool> on_cycle;
};

TreeView tree_view(const FnTable& f, const SnailDecomposition& d) {
  TreeView t;
  t.children.assign(static_cast<std::size_t>(d.n), {});
  t.on_cycle.assign(static_cast<std::size_t>(d.n), false);
  for (const Snail& s : d.components) {
    for (int c : s.cycle) t.on_cycle[static_cast<std::size_t>(c)] = true;
  }
  for (int x = 0; x < d.n; ++x) {
    if (!t.on_cycle[static_cast<std::size_t>(x)]) {
      t.children[static_cast<std::size_t>(f.at1(x))].push_back(x);
    }
  }
  return t;
}

// Classic rooted-tree canonical code: "(" + concatenation of the children's
// codes in sorted order + ")". Equal codes iff the rooted trees are
// isomorphic.
std::vector<std::string> rooted_codes(const SnailDecomposition& d, const TreeView& t) {
  std::vector<std::string> code(static_cast<std::size_t>(d.n));
  std::vector<int> order(static_cast<std::size_t>(d.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return d.level[static_cast<std::size_t>(a)] > d.level[static_cast<std::size_t>(b)];
  });
  for (int x : order) {
    std::vector<std::string> kids;
    for (int c : t.children[static_cast<std::size_t>(x)]) kids.push_back(code[static_cast<std::size_t>(c)]);
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const std::string& k : kids) out += k;
    out += ")";
    code[static_cast<std::size_t>(x)] = std::move(out);
  }
  return code;
}

std::string join_rotation(const std::vector<std::string>& seq, std::size_t shift) {
  std::string out = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += seq[(i + shift) % seq.size()];
  }
  out += "]";
  return out;
}

std::string snail_code(const Snail& s, const std::vector<std::string>& node_code) {
  std::vector<std::string> seq;
  seq.reserve(s.cycle.size());
  for (int c : s.cycle) seq.push_back(node_code[static_cast<std::size_t>(c)]);
  std::string best = join_rotation(seq, 0);
  for (std::size_t shift = 1; shift < seq.size(); ++shift) {
    std::string cand = join_rotation(seq, shift);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

std::string CanonicalForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < snail_codes.size(); ++i) {
    if (i) out += "|";
    out += snail_codes[i];
  }
  return out;
}

CanonicalForm canonical_form(const FnTable& f) {
  SnailDecomposition d = decompose(f);
  TreeView t = tree_view(f, d);
  std::vector<std::string> node_code = rooted_codes(d, t);
  CanonicalForm form;
  for (const Snail& s : d.components) form.snail_codes.push_back(snail_code(s, node_code));
  std::sort(form.snail_codes.begin(), form.snail_codes.end());
  return form;
}

std::optional<Permutation> find_conjugator(const FnTable& f, const FnTable& g) {
  if (!f.is_unary() || !g.is_unary()) throw InvalidInput("find_conjugator: unary functions required");
  if (f.universe() != g.universe()) throw InvalidInput("find_conjugator: universe mismatch");
  const int n = f.universe();

  SnailDecomposition df = decompose(f);
  SnailDecomposition dg = decompose(g);
  TreeView tf = tree_view(f, df);
  TreeView tg = tree_view(g, dg);
  std::vector<std::string> cf = rooted_codes(df, tf);
  std::vector<std::string> cg = rooted_codes(dg, tg);

  auto snail_order = [](const SnailDecomposition& d, const std::vector<std::string>& codes) {
    std::vector<std::pair<std::string, int>> keyed;
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      keyed.emplace_back(snail_code(d.components[i], codes), static_cast<int>(i));
    }
    std::sort(keyed.begin(), keyed.end());
    return keyed;
  };
  auto kf = snail_order(df, cf);
  auto kg = snail_order(dg, cg);
  if (kf.size() != kg.size()) return std::nullopt;
  for (std::size_t i = 0; i < kf.size(); ++i) {
    if (kf[i].first != kg[i].first) return std::nullopt;
  }

  std::vector<int> gamma(static_cast<std::size_t>(n), -1);
  auto sorted_children = [](const TreeView& t, const std::vector<std::string>& codes, int x) {
    std::vector<std::pair<std::string, int>> kids;
    for (int c : t.children[static_cast<std::size_t>(x)]) kids.emplace_back(codes[static_cast<std::size_t>(c)], c);
    std::sort(kids.begin(), kids.end());
    return kids;
  };

  for (std::size_t pair = 0; pair < kf.size(); ++pair) {
    const Snail& A = df.components[static_cast<std::size_t>(kf[pair].second)];
    const Snail& B = dg.components[static_cast<std::size_t>(kg[pair].second)];
    const std::size_t p = A.cycle.size();

    // Align the cycles: find a rotation making the hanging-tree codes agree
    // position by position. One exists because the snail codes are equal.
    std::size_t shift = p;
    for (std::size_t s = 0; s < p; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < p && ok; ++i) {
        ok = cf[static_cast<std::size_t>(A.cycle[i])] == cg[static_cast<std::size_t>(B.cycle[(i + s) % p])];
      }
      if (ok) {
        shift = s;
        break;
      }
    }
    if (shift == p) return std::nullopt;  // cannot happen with equal codes

    // Level induction: the cycle first, then matched fibers, pairing children
    // with equal subtree codes.
    std::vector<std::pair<int, int>> stack;
    for (std::size_t i = 0; i < p; ++i) {
      gamma[static_cast<std::size_t>(A.cycle[i])] = B.cycle[(i + shift) % p];
      stack.emplace_back(A.cycle[i], B.cycle[(i + shift) % p]);
    }
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      auto xs = sorted_children(tf, cf, x);
      auto ys = sorted_children(tg, cg, y);
      assert(xs.size() == ys.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        gamma[static_cast<std::size_t>(xs[i].second)] = ys[i].second;
        stack.emplace_back(xs[i].second, ys[i].second);
      }
    }
  }

  Permutation result = Permutation::from_values(n, std::move(gamma));
  if (conjugate(g, result) != f) {
    throw std::logic_error("find_conjugator: constructed map failed verification");
  }
  return result;
}

FnTable realize_spectrum(int n, const SnailSpectrum& spec, const TreePlan& plan) {
  Universe check(n);
  if (plan.fiber_width < 1) throw InvalidInput("realize_spectrum: fiber width must be >= 1");

  // Snails in ascending period order.
  std::vector<int> periods;
  for (const auto& [p, count] : spec) {
    if (p < 1) throw InvalidInput("realize_spectrum: period must be >= 1");
    if (count < 0) throw InvalidInput("realize_spectrum: counts must be >= 0");
    for (int i = 0; i < count; ++i) periods.push_back(p);
  }
  if (periods.empty()) throw InvalidInput("realize_spectrum: at least one snail required");

  std::vector<int> sizes;
  if (plan.sizes.empty()) {
    sizes = periods;
    long total = std::accumulate(sizes.begin(), sizes.end(), 0L);
    if (total > n) {
      throw InvalidInput("realize_spectrum: periods sum to " + std::to_string(total) +
                         " > n = " + std::to_string(n));
    }
    for (long extra = n - total, i = 0; extra > 0; --extra, ++i) {
      sizes[static_cast<std::size_t>(i % static_cast<long>(sizes.size()))] += 1;
    }
  } else {
    sizes = plan.sizes;
    if (sizes.size() != periods.size()) {
      throw InvalidInput("realize_spectrum: plan has " + std::to_string(sizes.size()) +
                         " sizes for " + std::to_string(periods.size()) + " snails");
    }
  }
  long total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < periods[i]) {
      throw InvalidInput("realize_spectrum: snail size " + std::to_string(sizes[i]) +
                         " below its period " + std::to_string(periods[i]));
    }
    total += sizes[i];
  }
  if (total != n) {
    throw InvalidInput("realize_spectrum: snail sizes sum to " + std::to_string(total) +
                       ", need exactly n = " + std::to_string(n));
  }

  std::vector<int> vals(static_cast<std::size_t>(n), 0);
  int base = 0;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    int p = periods[s];
    int size = sizes[s];
    for (int i = 0; i < p; ++i) {
      vals[static_cast<std::size_t>(base + i)] = base + (i + 1) % p;
    }
    // Balanced trees: breadth-first attachment, at most fiber_width children
    // per node.
    std::deque<int> attach;
    for (int i = 0; i < p; ++i) attach.push_back(base + i);
    int next = base + p;
    int end = base + size;
    while (next < end) {
      int host = attach.front();
      attach.pop_front();
      for (int w = 0; w < plan.fiber_width && next < end; ++w, ++next) {
        vals[static_cast<std::size_t>(next)] = host;
        attach.push_back(next);
      }
    }
    base += size;
  }
  return FnTable(n, 1, std::move(vals));
}

namespace {

std::string class_to_string(const std::vector<int>& cls) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (i) out << ",";
    out << cls[i];
  }
  out << "}";
  return out.str();
}

}  // namespace

Permutation kernel_transpose(const FnTable& g) {
  if (!g.is_unary()) throw InvalidInput("kernel_transpose: unary function required");
  const int n = g.universe();
  std::vector<std::vector<int>> classes = kernel_classes(g);
  const int r = static_cast<int>(classes.size());
  for (const auto& cls : classes) {
    if (static_cast<int>(cls.size()) > r) {
      throw InvalidInput("kernel_transpose: class " + class_to_string(cls) + " has " +
                         std::to_string(cls.size()) + " elements but there are only " +
                         std::to_string(r) + " classes");
    }
  }

  std::vector<int> gamma(static_cast<std::size_t>(n), -1);
  auto cell_defined = [&](int i, int j) {
    return j < static_cast<int>(classes[static_cast<std::size_t>(i)].size());
  };
  bool transpose_closed = true;
  for (int i = 0; i < r && transpose_closed; ++i) {
    for (int j = 0; cell_defined(i, j) && transpose_closed; ++j) {
      transpose_closed = cell_defined(j, i);
    }
  }

  if (transpose_closed) {
    // The square-array reading: gamma(x_i^j) = x_j^i.
    for (int i = 0; i < r; ++i) {
      for (int j = 0; cell_defined(i, j); ++j) {
        gamma[static_cast<std::size_t>(classes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] =
            classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
    }
  } else {
    // Ragged kernels: assign each class's elements to pairwise distinct
    // target classes, always taking the targets with the most unused
    // elements (largest-capacity-first realizes exactly the feasible cases).
    std::vector<int> row_order(static_cast<std::size_t>(r));
    std::iota(row_order.begin(), row_order.end(), 0);
    std::sort(row_order.begin(), row_order.end(), [&](int a, int b) {
      std::size_t sa = classes[static_cast<std::size_t>(a)].size();
      std::size_t sb = classes[static_cast<std::size_t>(b)].size();
      return sa != sb ? sa > sb : a < b;
    });
    std::vector<int> capacity(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) capacity[static_cast<std::size_t>(c)] = static_cast<int>(classes[static_cast<std::size_t>(c)].size());
    std::vector<std::vector<int>> targets(static_cast<std::size_t>(r));
    for (int i : row_order) {
      int need = static_cast<int>(classes[static_cast<std::size_t>(i)].size());
      std::vector<int> cols(static_cast<std::size_t>(r));
      std::iota(cols.begin(), cols.end(), 0);
      std::sort(cols.begin(), cols.end(), [&](int a, int b) {
        int ca = capacity[static_cast<std::size_t>(a)];
        int cb = capacity[static_cast<std::size_t>(b)];
        return ca != cb ? ca > cb : a < b;
      });
      for (int t = 0; t < need; ++t) {
        if (capacity[static_cast<std::size_t>(cols[static_cast<std::size_t>(t)])] <= 0) {
          throw InvalidInput("kernel_transpose: kernel shape of class " +
                             class_to_string(classes[static_cast<std::size_t>(i)]) +
                             " admits no class-separating permutation");
        }
        targets[static_cast<std::size_t>(i)].push_back(cols[static_cast<std::size_t>(t)]);
        capacity[static_cast<std::size_t>(cols[static_cast<std::size_t>(t)])] -= 1;
      }
      std::sort(targets[static_cast<std::size_t>(i)].begin(), targets[static_cast<std::size_t>(i)].end());
    }
    std::vector<std::size_t> next_slot(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < classes[static_cast<std::size_t>(i)].size(); ++j) {
        int c = targets[static_cast<std::size_t>(i)][j];
        gamma[static_cast<std::size_t>(classes[static_cast<std::size_t>(i)][j])] =
            classes[static_cast<std::size_t>(c)][next_slot[static_cast<std::size_t>(c)]++];
      }
    }
  }

  Permutation result = Permutation::from_values(n, std::move(gamma));
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (g.at1(x) == g.at1(y) && g.at1(result(x)) == g.at1(result(y))) {
        throw std::logic_error("kernel_transpose: separation property failed verification");
      }
    }
  }
  return result;
}

}  // namespace clonelab
