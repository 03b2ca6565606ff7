#include <doctest.h>

#include <sstream>

#include "ordolex/conllu.hpp"
#include "ordolex/dep_tree.hpp"
#include "support/synthetic.hpp"

using namespace ordolex;

namespace {

std::string token_line(int id, const std::string& form, const std::string& upos, int head,
                       const std::string& deprel) {
  return std::to_string(id) + "\t" + form + "\t" + form + "\t" + upos + "\t_\t_\t" +
         std::to_string(head) + "\t" + deprel + "\t_\t_\n";
}

std::vector<Sentence> parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_conllu(in, "test");
}

const char* kFixturePath = ORDOLEX_SOURCE_DIR "/data/hindi_sample.conllu";

}  // namespace

TEST_CASE("two-line block parses with root at position 2") {
  const auto sentences = parse_text(token_line(1, "dog", "NOUN", 2, "nsubj") +
                                    token_line(2, "barks", "VERB", 0, "root") + "\n");
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].size() == 2);
  CHECK(sentences[0].at(2).head == 0);
  CHECK(sentences[0].at(1).head == 2);
  CHECK(sentences[0].sent_id == "test:1");
}

TEST_CASE("multiword-token and empty-node lines are kept out of the token list") {
  const std::string text = "# sent_id = mwt-1\n"
                           "1-2\tdu\tdu\t_\t_\t_\t_\t_\t_\t_\n" +
                           token_line(1, "de", "ADP", 2, "case") +
                           token_line(2, "le", "VERB", 0, "root") +
                           "2.1\tnull\tnull\t_\t_\t_\t_\t_\t_\t_\n\n";
  const auto sentences = parse_text(text);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].size() == 2);
  CHECK(sentences[0].raw_ranges.size() == 2);
  CHECK(sentences[0].sent_id == "mwt-1");
}

TEST_CASE("malformed HEAD names the line") {
  const std::string text =
      token_line(1, "a", "NOUN", 2, "dep") + "2\tb\tb\tVERB\t_\t_\tx\troot\t_\t_\n\n";
  try {
    parse_text(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.code() == "parse");
  }
}

TEST_CASE("token ids must be exactly 1..n") {
  const std::string gap = token_line(1, "a", "NOUN", 3, "dep") +
                          token_line(3, "c", "VERB", 0, "root") + "\n";
  CHECK_THROWS_AS(parse_text(gap), ParseError);

  const std::string dup = token_line(1, "a", "NOUN", 2, "dep") +
                          token_line(2, "b", "VERB", 0, "root") +
                          token_line(2, "b2", "NOUN", 2, "dep") + "\n";
  CHECK_THROWS_AS(parse_text(dup), ParseError);
}

TEST_CASE("bundled fixture parses and serializing round-trips the token list") {
  const auto sentences = parse_conllu_file(kFixturePath);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].sent_id == "hi-toffee-1");
  CHECK(sentences[0].size() == 11);

  std::istringstream again(to_conllu(sentences));
  const auto reparsed = parse_conllu(again, "round");
  REQUIRE(reparsed.size() == 1);
  CHECK(reparsed[0].tokens == sentences[0].tokens);
  CHECK(reparsed[0].sent_id == sentences[0].sent_id);
}

TEST_CASE("round-trip over random synthetic corpora") {
  const auto corpus = testsupport::make_corpus(25, {}, 20240901);
  std::istringstream in(to_conllu(corpus));
  const auto reparsed = parse_conllu(in, "round");
  REQUIRE(reparsed.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(reparsed[i].tokens == corpus[i].tokens);
  }
}

TEST_CASE("filter skips by reason and keeps the partition exact") {
  std::vector<Sentence> corpus;

  // root is a noun
  {
    std::istringstream in(token_line(1, "a", "NOUN", 2, "dep") +
                          token_line(2, "b", "NOUN", 0, "root") + "\n");
    auto s = parse_conllu(in, "noun-root");
    corpus.push_back(s[0]);
  }
  // crossing arcs: 3->1 and 2->4
  {
    std::istringstream in(token_line(1, "a", "NOUN", 3, "dep") +
                          token_line(2, "b", "NOUN", 4, "dep") +
                          token_line(3, "c", "NOUN", 4, "dep") +
                          token_line(4, "d", "VERB", 0, "root") + "\n");
    auto s = parse_conllu(in, "crossing");
    corpus.push_back(s[0]);
  }
  // mutual heads: cycle
  {
    std::istringstream in(token_line(1, "a", "NOUN", 2, "dep") +
                          token_line(2, "b", "NOUN", 1, "dep") +
                          token_line(3, "c", "VERB", 0, "root") + "\n");
    auto s = parse_conllu(in, "cycle");
    corpus.push_back(s[0]);
  }
  // verb-rooted, projective, but only one preverbal constituent
  {
    std::istringstream in(token_line(1, "a", "NOUN", 2, "nsubj") +
                          token_line(2, "b", "VERB", 0, "root") + "\n");
    auto s = parse_conllu(in, "short");
    corpus.push_back(s[0]);
  }
  // the qualifying fixture
  corpus.push_back(parse_conllu_file(kFixturePath)[0]);

  const FilterResult result = filter_corpus(corpus, FilterPolicy{});
  REQUIRE(result.kept.size() == 1);
  CHECK(result.kept[0].sent_id == "hi-toffee-1");
  REQUIRE(result.skiplog.size() == 4);
  CHECK(result.skiplog[0].second == "root-not-verb");
  CHECK(result.skiplog[1].second == "non-projective");
  CHECK(result.skiplog[2].second == "cyclic");
  CHECK(result.skiplog[3].second == "too-few-preverbal");
  CHECK(corpus.size() == result.kept.size() + result.skiplog.size());
  CHECK(!result.warnings.empty());  // advisory corpus-size warning

  std::ostringstream log;
  write_skiplog(result, log);
  CHECK(log.str().find("crossing:1\tnon-projective") != std::string::npos);
}

TEST_CASE("raising min_preverbal never grows the kept set") {
  testsupport::CorpusSpec spec;
  spec.min_constituents = 1;
  spec.max_constituents = 5;
  const auto corpus = testsupport::make_corpus(60, spec, 77);

  std::size_t previous = corpus.size() + 1;
  for (int min_preverbal = 1; min_preverbal <= 5; ++min_preverbal) {
    FilterPolicy policy;
    policy.min_preverbal = min_preverbal;
    const FilterResult result = filter_corpus(corpus, policy);
    CHECK(result.kept.size() + result.skiplog.size() == corpus.size());
    CHECK(result.kept.size() <= previous);
    previous = result.kept.size();
  }
}

TEST_CASE("multiple roots are a skip, not an abort") {
  std::istringstream in(token_line(1, "a", "VERB", 0, "root") +
                        token_line(2, "b", "VERB", 0, "root") + "\n");
  auto corpus = parse_conllu(in, "two-roots");
  const FilterResult result = filter_corpus(corpus, FilterPolicy{});
  REQUIRE(result.skiplog.size() == 1);
  CHECK(result.skiplog[0].second == "bad-root");
}

TEST_CASE("AUX roots become admissible via policy") {
  std::istringstream in(token_line(1, "a", "NOUN", 3, "nsubj") +
                        token_line(2, "b", "NOUN", 3, "obj") +
                        token_line(3, "c", "AUX", 0, "root") + "\n");
  auto corpus = parse_conllu(in, "aux-root");

  CHECK(filter_corpus(corpus, FilterPolicy{}).kept.empty());
  FilterPolicy policy;
  policy.root_upos_allowed = {"VERB", "AUX"};
  CHECK(filter_corpus(corpus, policy).kept.size() == 1);
}
