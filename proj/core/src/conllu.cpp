#include "ordolex/conllu.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ordolex/dep_tree.hpp"

namespace ordolex {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
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
  return fields;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Strict non-negative integer parse; anything else is a malformed field.
int parse_field_int(const std::string& s, const char* what, long line_no) {
  if (!all_digits(s) || s.size() > 9) {
    throw ParseError("parse", std::string("malformed ") + what + " field '" + s + "'", line_no);
  }
  return std::stoi(s);
}

// MWT ranges look like "3-4"; empty nodes like "5.1".
bool is_range_or_empty_id(const std::string& id) {
  return id.find('-') != std::string::npos || id.find('.') != std::string::npos;
}

void finish_block(Sentence& current, std::vector<Sentence>& out,
                  const std::string& source_name, long block_start_line) {
  if (current.tokens.empty() && current.comments.empty() && current.raw_ranges.empty()) {
    return;
  }
  if (current.tokens.empty()) {
    throw ParseError("structure", "sentence block has no token lines", block_start_line);
  }
  for (std::size_t i = 0; i < current.tokens.size(); ++i) {
    if (current.tokens[i].position != static_cast<int>(i) + 1) {
      throw ParseError("structure",
                       "token ids are not 1..n (token " + std::to_string(i + 1) +
                           " has id " + std::to_string(current.tokens[i].position) + ")",
                       block_start_line);
    }
  }
  if (current.sent_id.empty()) {
    current.sent_id = source_name + ":" + std::to_string(out.size() + 1);
  }
  current.source_line = block_start_line;
  out.push_back(std::move(current));
  current = Sentence{};
}

}  // namespace

std::vector<Sentence> parse_conllu(std::istream& in, const std::string& source_name) {
  std::vector<Sentence> out;
  Sentence current;
  std::string line;
  long line_no = 0;
  long block_start = 1;
  bool in_block = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line.empty()) {
      finish_block(current, out, source_name, block_start);
      in_block = false;
      continue;
    }
    if (!in_block) {
      block_start = line_no;
      in_block = true;
    }

    if (line[0] == '#') {
      current.comments.push_back(line);
      const std::string key = "# sent_id =";
      if (line.rfind(key, 0) == 0) {
        std::string value = line.substr(key.size());
        std::size_t first = value.find_first_not_of(' ');
        current.sent_id = first == std::string::npos ? "" : value.substr(first);
      }
      continue;
    }

    std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 10) {
      throw ParseError("parse",
                       "expected 10 tab-separated columns, got " + std::to_string(fields.size()),
                       line_no);
    }
    if (is_range_or_empty_id(fields[0])) {
      current.raw_ranges.push_back(line);
      continue;
    }

    Token t;
    t.position = parse_field_int(fields[0], "ID", line_no);
    if (t.position < 1) {
      throw ParseError("parse", "token id must be >= 1", line_no);
    }
    t.form = fields[1];
    t.lemma = fields[2];
    t.upos = fields[3];
    t.head = parse_field_int(fields[6], "HEAD", line_no);
    t.deprel = fields[7];
    current.tokens.push_back(std::move(t));
  }
  finish_block(current, out, source_name, block_start);
  return out;
}

std::vector<Sentence> parse_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("unreadable-input", "cannot open input file: " + path);
  }
  return parse_conllu(in, path);
}

void write_conllu(const Sentence& s, std::ostream& out) {
  out << "# sent_id = " << s.sent_id << "\n";
  for (const Token& t : s.tokens) {
    out << t.position << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << '_'
        << '\t' << '_' << '\t' << t.head << '\t' << t.deprel << '\t' << '_' << '\t' << '_'
        << '\n';
  }
  out << "\n";
}

std::string to_conllu(const std::vector<Sentence>& sentences) {
  std::ostringstream out;
  for (const Sentence& s : sentences) write_conllu(s, out);
  return out.str();
}

FilterResult filter_corpus(const std::vector<Sentence>& sentences, const FilterPolicy& policy) {
  FilterResult result;
  for (const Sentence& s : sentences) {
    try {
      DepTree tree = build_tree(s);
      if (!policy.root_upos_allowed.count(tree.token(tree.root).upos)) {
        result.skiplog.emplace_back(s.sent_id, "root-not-verb");
        continue;
      }
      if (policy.require_projective && !is_projective(tree)) {
        result.skiplog.emplace_back(s.sent_id, "non-projective");
        continue;
      }
      ClauseLayout layout = extract_layout(tree);
      if (layout.n_constituents() < policy.min_preverbal) {
        result.skiplog.emplace_back(s.sent_id, "too-few-preverbal");
        continue;
      }
      if (layout.n_constituents() > 20) {
        // Permutation machinery refuses factorials past 20!.
        result.skiplog.emplace_back(s.sent_id, "too-many-preverbal");
        continue;
      }
      result.kept.push_back(s);
    } catch (const TreeError& e) {
      result.skiplog.emplace_back(s.sent_id, e.code());
    }
  }
  if (static_cast<int>(result.kept.size()) < policy.min_corpus_sentences) {
    result.warnings.push_back("kept " + std::to_string(result.kept.size()) +
                              " sentences, below the advisory minimum of " +
                              std::to_string(policy.min_corpus_sentences));
  }
  return result;
}

const char* kSkiplogTsvHeader = "sent_id\treason";

void write_skiplog(const FilterResult& result, std::ostream& out) {
  out << kSkiplogTsvHeader << "\n";
  for (const auto& [sent_id, reason] : result.skiplog) {
    out << sent_id << '\t' << reason << '\n';
  }
}

}  // namespace ordolex
