#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ordolex/error.hpp"

namespace ordolex {

// One syntactic word from a CoNLL-U token line. Multiword-token ranges
// (`1-2`) and empty nodes (`5.1`) never become Tokens; they are kept as raw
// lines on the Sentence for diagnostics only.
struct Token {
  int position = 0;  // 1-based surface index
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root, otherwise the 1-based position of the head
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<Token> tokens;  // positions are exactly 1..n, no gaps
  long source_line = 0;       // first line of the block in the source file
  std::vector<std::string> comments;    // raw '#' lines, in order
  std::vector<std::string> raw_ranges;  // multiword-token / empty-node lines, verbatim

  const Token& at(int position) const { return tokens[position - 1]; }
  int size() const { return static_cast<int>(tokens.size()); }
};

struct FilterPolicy {
  int min_preverbal = 2;
  bool require_projective = true;
  std::set<std::string> root_upos_allowed = {"VERB"};
  int min_corpus_sentences = 2000;  // advisory; shortfall produces a warning, not a failure
};

// Parses CoNLL-U text into sentences. `source_name` seeds synthesized ids
// ("<source>:<block-index>") for blocks without a `# sent_id =` comment.
// Throws ParseError on malformed ID/HEAD fields or broken block structure.
std::vector<Sentence> parse_conllu(std::istream& in, const std::string& source_name);
std::vector<Sentence> parse_conllu_file(const std::string& path);

// Emits `# sent_id = ...` plus one 10-column line per token. Re-parsing the
// output reproduces the token list exactly.
void write_conllu(const Sentence& s, std::ostream& out);
std::string to_conllu(const std::vector<Sentence>& sentences);

struct FilterResult {
  std::vector<Sentence> kept;
  std::vector<std::pair<std::string, std::string>> skiplog;  // (sent_id, reason)
  std::vector<std::string> warnings;
};

// Keeps exactly the sentences that build a tree whose root UPOS is allowed,
// that pass the projectivity requirement, and whose clause layout has at
// least min_preverbal preverbal constituents. Everything else lands in the
// skiplog with a machine-readable reason; tree-construction failures are
// skips, not aborts.
FilterResult filter_corpus(const std::vector<Sentence>& sentences, const FilterPolicy& policy);

extern const char* kSkiplogTsvHeader;  // "sent_id\treason"
void write_skiplog(const FilterResult& result, std::ostream& out);

}  // namespace ordolex
