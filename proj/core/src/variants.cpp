#include "ordolex/variants.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace ordolex {

// --- permutation generation ---------------------------------------------

namespace {

// Lehmer rank; fits in uint64 for n <= 20. The identity has rank 0.
std::uint64_t lehmer_rank(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < n; ++j) {
      if (p[j] < p[i]) ++smaller_right;
    }
    rank = rank * (n - i) + smaller_right;
  }
  return rank;
}

}  // namespace

std::vector<Permutation> enumerate_or_sample(int n, std::uint64_t cap, Rng& rng) {
  if (n < 2) throw Error("domain", "need at least two constituents to permute");
  if (n > 20) throw Error("factorial-overflow", "refusing to permute more than 20 constituents");
  if (cap < 1) throw Error("domain", "cap must be at least 1");

  std::uint64_t non_identity = 1;
  bool exceeds_cap = false;
  for (int i = 2; i <= n; ++i) {
    non_identity *= i;
    if (non_identity - 1 > cap) {
      exceeds_cap = true;
      break;
    }
  }

  std::vector<Permutation> result;
  if (!exceeds_cap) {
    // The identity is lexicographically first, so walking next_permutation
    // from it yields every non-identity order in lexicographic order.
    Permutation p = identity_order(n);
    while (std::next_permutation(p.begin(), p.end())) result.push_back(p);
    return result;
  }

  result.reserve(cap);
  std::unordered_set<std::uint64_t> seen;
  while (result.size() < cap) {
    Permutation p = rng.random_permutation(n);
    const std::uint64_t rank = lehmer_rank(p);
    if (rank == 0) continue;  // reference order, never emitted as a variant
    if (seen.insert(rank).second) result.push_back(std::move(p));
  }
  return result;
}

// --- ordering strategies -------------------------------------------------

Strategy strategy_from_string(const std::string& name) {
  if (name == "random") return Strategy::random;
  if (name == "ascending") return Strategy::ascending;
  if (name == "descending") return Strategy::descending;
  if (name == "least_effort") return Strategy::least_effort;
  throw Error("domain", "unknown ordering strategy: " + name);
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::ascending: return "ascending";
    case Strategy::descending: return "descending";
    case Strategy::least_effort: return "least_effort";
  }
  throw Error("domain", "unknown ordering strategy");
}

Permutation strategy_order(const ClauseLayout& layout, Strategy s, Rng& rng) {
  const int n = layout.n_constituents();
  if (n < 1) throw Error("domain", "layout has no preverbal constituents");

  Permutation order = identity_order(n);
  switch (s) {
    case Strategy::random:
      rng.shuffle(order);
      return order;
    case Strategy::ascending:
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return layout.preverbal[a].length < layout.preverbal[b].length;
      });
      return order;
    case Strategy::descending:
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return layout.preverbal[a].length > layout.preverbal[b].length;
      });
      return order;
    case Strategy::least_effort:
      rng.shuffle(order);
      return least_effort_transform(order, layout);
  }
  throw Error("domain", "unknown ordering strategy");
}

Permutation least_effort_transform(const Permutation& base, const ClauseLayout& layout) {
  const int n = layout.n_constituents();
  if (!is_permutation_of_n(base, n)) {
    throw Error("domain", "base is not a permutation of the preverbal constituents");
  }
  if (n <= 1) return base;

  int min_length = layout.preverbal[base[0]].length;
  for (int slot = 1; slot < n; ++slot) {
    min_length = std::min(min_length, layout.preverbal[base[slot]].length);
  }
  // Ties go to the shortest constituent nearest the verb: smallest move.
  int source_slot = n - 1;
  while (layout.preverbal[base[source_slot]].length != min_length) --source_slot;
  if (source_slot == n - 1) return base;

  Permutation moved = base;
  const int shortest = moved[source_slot];
  moved.erase(moved.begin() + source_slot);
  moved.push_back(shortest);
  return moved;
}

// --- realization -----------------------------------------------------------

std::vector<Token> realize_tokens(const DepTree& tree, const ClauseLayout& layout,
                                  const Permutation& order) {
  const Sentence& s = *tree.sentence;
  const int n_const = layout.n_constituents();
  if (!is_permutation_of_n(order, n_const)) {
    throw Error("domain", "order is not a permutation of the preverbal constituents");
  }

  // New surface sequence: reordered constituent blocks, verb, fixed suffix.
  std::vector<int> old_positions;
  old_positions.reserve(s.size());
  for (int slot = 0; slot < n_const; ++slot) {
    const Constituent& c = layout.preverbal[order[slot]];
    for (int p = c.begin; p <= c.end; ++p) old_positions.push_back(p);
  }
  old_positions.push_back(layout.verb_position);
  for (int p = layout.postverbal_begin; p <= layout.postverbal_end; ++p) {
    old_positions.push_back(p);
  }

  std::vector<int> new_of_old(s.size() + 1, 0);
  for (std::size_t i = 0; i < old_positions.size(); ++i) {
    new_of_old[old_positions[i]] = static_cast<int>(i) + 1;
  }

  std::vector<Token> tokens;
  tokens.reserve(old_positions.size());
  for (std::size_t i = 0; i < old_positions.size(); ++i) {
    Token t = s.at(old_positions[i]);
    t.position = static_cast<int>(i) + 1;
    t.head = t.head == 0 ? 0 : new_of_old[t.head];
    tokens.push_back(std::move(t));
  }
  return tokens;
}

VariantRecord realize(const DepTree& tree, const ClauseLayout& layout, const Permutation& order) {
  VariantRecord rec;
  rec.sent_id = layout.sent_id;
  rec.order = order;
  rec.is_reference = order == identity_order(layout.n_constituents());
  rec.n_constituents = layout.n_constituents();
  rec.n_words = layout.n_words;
  rec.cl_last = order.empty() ? 0 : layout.preverbal[order.back()].length;
  rec.root_arc_dl = root_arc_total(layout, order);
  rec.total_dl = total_dependency_length(realize_tokens(tree, layout, order), layout.policy);
  return rec;
}

// --- TSV wire format ---------------------------------------------------------

const char* kVariantTsvHeader =
    "sent_id\torder\tis_reference\tn_constituents\tn_words\tcl_last\ttotal_dl\troot_arc_dl";

std::string order_to_string(const Permutation& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(order[i]);
  }
  return out;
}

Permutation order_from_string(const std::string& text, long line_no) {
  Permutation order;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dash = text.find('-', start);
    std::string part =
        dash == std::string::npos ? text.substr(start) : text.substr(start, dash - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw DataError("malformed-tsv",
                      "bad order field '" + text + "' at row " + std::to_string(line_no));
    }
    order.push_back(std::stoi(part));
    if (dash == std::string::npos) break;
    start = dash + 1;
  }
  return order;
}

std::string to_tsv_row(const VariantRecord& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "\t%d\t%d\t%d\t%d\t%lld\t%lld", r.is_reference ? 1 : 0,
                r.n_constituents, r.n_words, r.cl_last, r.total_dl, r.root_arc_dl);
  return r.sent_id + "\t" + order_to_string(r.order) + buf;
}

namespace {

long long tsv_int(const std::string& field, long line_no) {
  const std::size_t digits_from = field.size() > 0 && field[0] == '-' ? 1 : 0;
  if (field.size() == digits_from ||
      field.find_first_not_of("0123456789", digits_from) != std::string::npos) {
    throw DataError("malformed-tsv",
                    "bad integer field '" + field + "' at row " + std::to_string(line_no));
  }
  return std::stoll(field);
}

}  // namespace

VariantRecord variant_from_tsv_row(const std::string& line, long line_no) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (fields.size() != 8) {
    throw DataError("malformed-tsv", "expected 8 tab-separated fields, got " +
                                         std::to_string(fields.size()) + " at row " +
                                         std::to_string(line_no));
  }
  VariantRecord r;
  r.sent_id = fields[0];
  r.order = order_from_string(fields[1], line_no);
  r.is_reference = tsv_int(fields[2], line_no) != 0;
  r.n_constituents = static_cast<int>(tsv_int(fields[3], line_no));
  r.n_words = static_cast<int>(tsv_int(fields[4], line_no));
  r.cl_last = static_cast<int>(tsv_int(fields[5], line_no));
  r.total_dl = tsv_int(fields[6], line_no);
  r.root_arc_dl = tsv_int(fields[7], line_no);
  return r;
}

}  // namespace ordolex
