#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordolex/dep_tree.hpp"
#include "ordolex/rng.hpp"

namespace ordolex {

// One constituent order of one sentence together with the features the
// classifier consumes: length of the verb-adjacent constituent (cl_last) and
// total dependency length.
struct VariantRecord {
  std::string sent_id;
  Permutation order;
  bool is_reference = false;  // true only for the identity order
  int n_constituents = 0;
  int n_words = 0;
  int cl_last = 0;
  long long total_dl = 0;
  long long root_arc_dl = 0;
};

// All non-identity permutations of 0..n-1 in lexicographic order when there
// are at most `cap` of them, otherwise `cap` distinct non-identity
// permutations sampled uniformly without replacement. Refuses n > 20
// (factorial overflow guard). Requires n >= 2.
std::vector<Permutation> enumerate_or_sample(int n, std::uint64_t cap, Rng& rng);

enum class Strategy { random, ascending, descending, least_effort };

// Throws Error("domain") on an unknown tag.
Strategy strategy_from_string(const std::string& name);
std::string to_string(Strategy s);

// ascending/descending sort by constituent length, stable on the original
// surface order for equal lengths; random draws uniformly; least_effort draws
// a uniform random order and applies least_effort_transform.
Permutation strategy_order(const ClauseLayout& layout, Strategy s, Rng& rng);

// Moves the shortest constituent to the verb-adjacent slot; among equally
// short constituents the one nearest the verb in `base` moves. All other
// relative orders are preserved. Idempotent, and never increases
// root_arc_total.
Permutation least_effort_transform(const Permutation& base, const ClauseLayout& layout);

// Token sequence of the sentence with the preverbal constituents rearranged
// as whole blocks (internal order intact, postverbal suffix fixed); heads are
// remapped to the new positions.
std::vector<Token> realize_tokens(const DepTree& tree, const ClauseLayout& layout,
                                  const Permutation& order);

VariantRecord realize(const DepTree& tree, const ClauseLayout& layout, const Permutation& order);

// TSV wire format for variant datasets.
extern const char* kVariantTsvHeader;
std::string to_tsv_row(const VariantRecord& r);
VariantRecord variant_from_tsv_row(const std::string& line, long line_no);

std::string order_to_string(const Permutation& order);         // dash-joined indices
Permutation order_from_string(const std::string& text, long line_no);

}  // namespace ordolex
