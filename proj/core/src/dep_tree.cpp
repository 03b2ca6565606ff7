#include "ordolex/dep_tree.hpp"

#include <algorithm>
#include <numeric>

namespace ordolex {

DepTree build_tree(const Sentence& s) {
  const int n = s.size();
  DepTree tree;
  tree.sentence = &s;
  tree.children.assign(n + 1, {});

  for (const Token& t : s.tokens) {
    if (t.head > n) {
      throw TreeError("dangling-head", s.sent_id + ": head " + std::to_string(t.head) +
                                           " of token " + std::to_string(t.position) +
                                           " is out of range");
    }
  }

  // Walk head chains with tricolor marking; a chain that re-enters itself
  // before reaching a root is a cycle. Covers self-loops (head == position).
  // Runs before the root-count check: a rootless sentence always contains a
  // cycle, and cyclic is the more specific reason.
  std::vector<char> state(n + 1, 0);  // 0 new, 1 on current chain, 2 proven
  for (int start = 1; start <= n; ++start) {
    int p = start;
    std::vector<int> chain;
    while (p != 0 && state[p] == 0) {
      state[p] = 1;
      chain.push_back(p);
      p = s.at(p).head;
    }
    if (p != 0 && state[p] == 1) {
      throw TreeError("cyclic", s.sent_id + ": cycle through token " + std::to_string(p));
    }
    for (int q : chain) state[q] = 2;
  }

  int roots = 0;
  for (const Token& t : s.tokens) {
    if (t.head == 0) {
      tree.root = t.position;
      ++roots;
    }
  }
  if (roots != 1) {
    throw TreeError("bad-root",
                    s.sent_id + ": expected exactly one HEAD=0 token, found " +
                        std::to_string(roots));
  }

  for (int p = 1; p <= n; ++p) {
    int h = s.at(p).head;
    if (h != 0) tree.children[h].push_back(p);  // increasing p = surface order
  }
  return tree;
}

namespace {

// Euler intervals for O(1) descendant tests.
struct Tour {
  std::vector<int> tin, tout;

  explicit Tour(const DepTree& t) : tin(t.size() + 1, 0), tout(t.size() + 1, 0) {
    int clock = 0;
    std::vector<std::pair<int, std::size_t>> stack{{t.root, 0}};
    tin[t.root] = ++clock;
    while (!stack.empty()) {
      auto& [node, next_child] = stack.back();
      if (next_child < t.children[node].size()) {
        int child = t.children[node][next_child++];
        tin[child] = ++clock;
        stack.emplace_back(child, 0);
      } else {
        tout[node] = ++clock;
        stack.pop_back();
      }
    }
  }

  bool descends(int node, int ancestor) const {
    return tin[ancestor] <= tin[node] && tout[node] <= tout[ancestor];
  }
};

}  // namespace

bool is_projective(const DepTree& t) {
  const Tour tour(t);
  const int n = t.size();
  for (int d = 1; d <= n; ++d) {
    const int h = t.token(d).head;
    if (h == 0) continue;
    const int lo = std::min(h, d), hi = std::max(h, d);
    for (int between = lo + 1; between < hi; ++between) {
      if (!tour.descends(between, h)) return false;
    }
  }
  return true;
}

namespace {

bool counts_as_word(const Token& t, const LengthPolicy& policy) {
  return policy.count_punct || t.upos != "PUNCT";
}

}  // namespace

ClauseLayout extract_layout(const DepTree& t, const LengthPolicy& policy) {
  const Sentence& s = *t.sentence;
  const int n = t.size();

  ClauseLayout layout;
  layout.sent_id = s.sent_id;
  layout.verb_position = t.root;
  layout.policy = policy;
  layout.postverbal_begin = t.root + 1;
  layout.postverbal_end = n;
  for (int p = 1; p <= n; ++p) {
    if (counts_as_word(s.at(p), policy)) ++layout.n_words;
  }

  for (int dep : t.children[t.root]) {
    // Subtree yield via DFS; projectivity makes it a contiguous interval.
    int lo = dep, hi = dep, seen = 0;
    std::vector<int> stack{dep};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      ++seen;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
      for (int c : t.children[p]) stack.push_back(c);
    }
    if (seen != hi - lo + 1 || (lo < t.root && hi > t.root)) {
      throw TreeError("discontinuous-constituent",
                      s.sent_id + ": subtree of token " + std::to_string(dep) +
                          " is not a contiguous interval on one side of the root");
    }
    if (hi < t.root) {
      Constituent c;
      c.head_position = dep;
      c.begin = lo;
      c.end = hi;
      c.head_deprel = s.at(dep).deprel;
      for (int p = lo; p <= hi; ++p) {
        if (!counts_as_word(s.at(p), policy)) continue;
        ++c.length;
        if (p > dep) ++c.right_offset;
      }
      layout.preverbal.push_back(std::move(c));
    }
    // Subtrees at/after the root stay inside the fixed postverbal suffix.
  }

  std::sort(layout.preverbal.begin(), layout.preverbal.end(),
            [](const Constituent& a, const Constituent& b) { return a.begin < b.begin; });

  int covered = 0;
  for (const Constituent& c : layout.preverbal) covered += c.end - c.begin + 1;
  if (covered != t.root - 1) {
    throw TreeError("discontinuous-constituent",
                    s.sent_id + ": preverbal constituents do not cover the preverbal domain");
  }
  return layout;
}

int arc_length(int a, int b) {
  if (a == b) throw Error("domain", "arc endpoints must differ");
  return std::abs(a - b) - 1;
}

int arc_length(const std::vector<Token>& tokens, int a, int b, const LengthPolicy& policy) {
  if (a == b) throw Error("domain", "arc endpoints must differ");
  if (policy.count_punct) return std::abs(a - b) - 1;
  const int lo = std::min(a, b), hi = std::max(a, b);
  int words = 0;
  for (int p = lo + 1; p < hi; ++p) {
    if (counts_as_word(tokens[p - 1], policy)) ++words;
  }
  return words;
}

Permutation identity_order(int n) {
  Permutation order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

bool is_permutation_of_n(const Permutation& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int idx : order) {
    if (idx < 0 || idx >= n || seen[idx]) return false;
    seen[idx] = 1;
  }
  return true;
}

long long root_arc_total(const ClauseLayout& layout, const Permutation& order) {
  const int n = layout.n_constituents();
  if (!is_permutation_of_n(order, n)) {
    throw Error("domain", "order is not a permutation of the preverbal constituents");
  }
  long long total = 0, suffix = 0;
  for (int slot = n - 1; slot >= 0; --slot) {
    const Constituent& c = layout.preverbal[order[slot]];
    total += c.right_offset + suffix;
    suffix += c.length;
  }
  return total;
}

long long total_dependency_length(const std::vector<Token>& tokens, const LengthPolicy& policy) {
  const int n = static_cast<int>(tokens.size());
  long long total = 0;
  for (const Token& t : tokens) {
    if (t.head == 0) continue;
    if (t.head < 0 || t.head > n) {
      throw TreeError("dangling-head", "head " + std::to_string(t.head) + " of token " +
                                           std::to_string(t.position) + " is out of range");
    }
    total += arc_length(tokens, t.head, t.position, policy);
  }
  return total;
}

}  // namespace ordolex
