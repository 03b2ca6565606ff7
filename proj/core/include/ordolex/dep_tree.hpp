#pragma once

#include <string>
#include <vector>

#include "ordolex/conllu.hpp"

namespace ordolex {

// Rooted dependency tree over one sentence. Non-owning: the sentence must
// outlive the tree.
struct DepTree {
  const Sentence* sentence = nullptr;
  int root = 0;  // position of the unique HEAD=0 token
  std::vector<std::vector<int>> children;  // children[p] in surface order; index 0 unused

  const Token& token(int position) const { return sentence->at(position); }
  int size() const { return sentence->size(); }
};

// Throws TreeError with code "bad-root" (zero or multiple HEAD=0 tokens),
// "dangling-head" (head index out of range) or "cyclic".
DepTree build_tree(const Sentence& s);

// True iff for every arc (h, d) every token strictly between h and d is a
// descendant of h.
bool is_projective(const DepTree& t);

struct LengthPolicy {
  // When off, UPOS=PUNCT tokens are invisible to every word count: constituent
  // lengths, intervening-word counts, and per-sentence word totals.
  bool count_punct = true;
};

// Subtree of one direct dependent of the root. The yield is a contiguous
// interval (guaranteed by projectivity).
struct Constituent {
  int head_position = 0;
  int begin = 0, end = 0;  // inclusive token-position interval
  int length = 0;          // member words under the active LengthPolicy
  int right_offset = 0;    // member words strictly after head_position
  std::string head_deprel;
};

// The permutable part of a clause: preverbal constituents in surface order,
// the verb, and a fixed postverbal suffix.
struct ClauseLayout {
  std::string sent_id;
  std::vector<Constituent> preverbal;  // jointly cover positions 1..verb_position-1
  int verb_position = 0;
  int postverbal_begin = 0, postverbal_end = -1;  // inclusive; begin > end when empty
  LengthPolicy policy;
  int n_words = 0;  // whole-sentence word count under policy

  int n_constituents() const { return static_cast<int>(preverbal.size()); }
  bool has_postverbal() const { return postverbal_begin <= postverbal_end; }
};

// Precondition: projective tree. A root-dependent subtree that straddles the
// verb (impossible under projectivity) raises Error("internal").
ClauseLayout extract_layout(const DepTree& t, const LengthPolicy& policy = {});

// Count of intervening words; adjacent positions give 0. a == b is a domain error.
int arc_length(int a, int b);
// Same, honoring the punctuation policy: counts only non-PUNCT tokens strictly
// between a and b when count_punct is off.
int arc_length(const std::vector<Token>& tokens, int a, int b, const LengthPolicy& policy);

// order[k] = index of the constituent occupying preverbal slot k;
// slot n-1 is adjacent to the verb.
using Permutation = std::vector<int>;
Permutation identity_order(int n);
bool is_permutation_of_n(const Permutation& order, int n);

// Sum over preverbal constituents of the verb -> constituent-head arc length
// after rearranging the constituents per `order`. Equals, for each
// constituent, its right_offset plus the lengths of everything placed between
// it and the verb.
long long root_arc_total(const ClauseLayout& layout, const Permutation& order);

// Sum of arc lengths over all non-root tokens.
long long total_dependency_length(const std::vector<Token>& tokens, const LengthPolicy& policy = {});

}  // namespace ordolex
