#include "ordolex/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ordolex/rank.hpp"
#include "ordolex/rng.hpp"
#include "ordolex/stats.hpp"
#include "ordolex/variants.hpp"

namespace fs = std::filesystem;

namespace ordolex {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("unwritable-output", "cannot write " + path.string());
  out << contents;
}

std::string read_text_file(const fs::path& path, const char* role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(std::string("missing-") + role,
                    std::string(role) + " file not found: " + path.string() +
                        " (run `ordolex variants` first)");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw UsageError("bad-config", "boolean expected for '" + key + "', got '" + value + "'");
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("bad-config", "non-negative integer expected for '" + key + "', got '" +
                                       value + "'");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw UsageError("bad-config", "value out of range for '" + key + "': " + value);
  }
}

}  // namespace

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("bad-config", "cannot open config file: " + path);

  ConfigFile cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw UsageError("bad-config", "expected key=value at " + path + ":" +
                                         std::to_string(line_no));
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    cfg.keys_present.insert(key);

    if (key == "input") {
      for (const std::string& p : split_on(value, ',')) {
        if (!trim(p).empty()) cfg.values.inputs.push_back(trim(p));
      }
    } else if (key == "out") {
      cfg.values.out_dir = value;
    } else if (key == "seed") {
      cfg.values.seed = parse_u64(value, key);
    } else if (key == "cap") {
      cfg.values.cap = parse_u64(value, key);
    } else if (key == "folds") {
      cfg.values.folds = static_cast<int>(parse_u64(value, key));
    } else if (key == "max_n") {
      cfg.values.max_n = static_cast<int>(parse_u64(value, key));
    } else if (key == "threads") {
      cfg.values.threads = static_cast<int>(parse_u64(value, key));
    } else if (key == "count_punct") {
      cfg.values.length.count_punct = parse_bool(value, key);
    } else if (key == "min_preverbal") {
      cfg.values.filter.min_preverbal = static_cast<int>(parse_u64(value, key));
    } else if (key == "require_projective") {
      cfg.values.filter.require_projective = parse_bool(value, key);
    } else if (key == "root_upos") {
      cfg.values.filter.root_upos_allowed.clear();
      for (const std::string& u : split_on(value, ',')) {
        if (!trim(u).empty()) cfg.values.filter.root_upos_allowed.insert(trim(u));
      }
    } else if (key == "min_corpus_sentences") {
      cfg.values.filter.min_corpus_sentences = static_cast<int>(parse_u64(value, key));
    } else {
      throw UsageError("bad-config", "unknown config key '" + key + "' at " + path + ":" +
                                         std::to_string(line_no));
    }
  }
  return cfg;
}

std::optional<std::uint64_t> env_seed() {
  const char* value = std::getenv("ORDOLEX_SEED");
  if (!value || !*value) return std::nullopt;
  return parse_u64(value, "ORDOLEX_SEED");
}

std::optional<std::uint64_t> manifest_seed(const std::string& out_dir) {
  std::ifstream in(fs::path(out_dir) / "manifest.tsv");
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("seed\t", 0) == 0) return parse_u64(line.substr(5), "manifest seed");
  }
  return std::nullopt;
}

std::uint64_t config_hash(const PipelineConfig& c) {
  std::ostringstream canon;
  canon << "seed=" << c.seed << ";cap=" << c.cap << ";folds=" << c.folds
        << ";max_n=" << c.max_n << ";count_punct=" << c.length.count_punct
        << ";min_preverbal=" << c.filter.min_preverbal
        << ";require_projective=" << c.filter.require_projective
        << ";min_corpus_sentences=" << c.filter.min_corpus_sentences << ";root_upos=";
  for (const std::string& u : c.filter.root_upos_allowed) canon << u << ',';
  canon << ";inputs=";
  for (const std::string& i : c.inputs) canon << i << ',';
  return fnv1a64(canon.str());
}

namespace {

void validate_common(const PipelineConfig& c) {
  if (c.out_dir.empty()) throw UsageError("bad-config", "output directory not set");
  if (c.cap < 1) throw UsageError("bad-config", "cap must be at least 1");
  if (c.folds < 2) throw UsageError("bad-config", "folds must be at least 2");
  if (c.max_n < 2) throw UsageError("bad-config", "max_n must be at least 2");
  if (c.threads < 1) throw UsageError("bad-config", "threads must be at least 1");
  if (c.filter.min_preverbal < 1) throw UsageError("bad-config", "min_preverbal must be >= 1");
}

const char* kLayoutTsvHeader =
    "sent_id\tn_constituents\tn_words\tlengths\tright_offsets\thead_deprels\ttotal_dl\t"
    "root_arc_dl";

std::string join_ints(const std::vector<int>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += xs[i];
  }
  return out;
}

struct SentenceBlock {
  std::string variant_rows;
  std::string layout_row;
  std::size_t n_variants = 0;
};

SentenceBlock process_sentence(const Sentence& sentence, const PipelineConfig& config) {
  SentenceBlock block;
  const DepTree tree = build_tree(sentence);
  const ClauseLayout layout = extract_layout(tree, config.length);
  const int n = layout.n_constituents();

  const VariantRecord reference = realize(tree, layout, identity_order(n));
  block.variant_rows += to_tsv_row(reference);
  block.variant_rows.push_back('\n');

  if (n >= 2) {
    Rng rng(stable_seed(config.seed, sentence.sent_id, "variants"));
    for (const Permutation& order : enumerate_or_sample(n, config.cap, rng)) {
      block.variant_rows += to_tsv_row(realize(tree, layout, order));
      block.variant_rows.push_back('\n');
      ++block.n_variants;
    }
  }

  std::vector<int> lengths, offsets;
  std::vector<std::string> deprels;
  for (const Constituent& c : layout.preverbal) {
    lengths.push_back(c.length);
    offsets.push_back(c.right_offset);
    deprels.push_back(c.head_deprel);
  }
  block.layout_row = sentence.sent_id + "\t" + std::to_string(n) + "\t" +
                     std::to_string(layout.n_words) + "\t" + join_ints(lengths, '-') + "\t" +
                     join_ints(offsets, '-') + "\t" + join_strings(deprels, ',') + "\t" +
                     std::to_string(reference.total_dl) + "\t" +
                     std::to_string(reference.root_arc_dl) + "\n";
  return block;
}

std::string manifest_text(const PipelineConfig& c, const VariantsSummary& summary) {
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(config_hash(c)));
  std::ostringstream out;
  out << "key\tvalue\n";
  out << "tool\tordolex\n";
  out << "format\t1\n";
  out << "config_hash\t" << hash_hex << "\n";
  out << "seed\t" << c.seed << "\n";
  out << "cap\t" << c.cap << "\n";
  out << "folds\t" << c.folds << "\n";
  out << "max_n\t" << c.max_n << "\n";
  out << "count_punct\t" << (c.length.count_punct ? 1 : 0) << "\n";
  out << "min_preverbal\t" << c.filter.min_preverbal << "\n";
  out << "require_projective\t" << (c.filter.require_projective ? 1 : 0) << "\n";
  out << "min_corpus_sentences\t" << c.filter.min_corpus_sentences << "\n";
  std::vector<std::string> upos(c.filter.root_upos_allowed.begin(),
                                c.filter.root_upos_allowed.end());
  out << "root_upos\t" << join_strings(upos, ',') << "\n";
  out << "inputs\t" << join_strings(c.inputs, ',') << "\n";
  out << "references\t" << summary.references << "\n";
  out << "variants\t" << summary.variants << "\n";
  out << "skipped\t" << summary.skipped << "\n";
  return out.str();
}

}  // namespace

VariantsSummary cmd_variants(const PipelineConfig& config) {
  validate_common(config);
  if (config.inputs.empty()) throw UsageError("bad-config", "no input files given");
  fs::create_directories(config.out_dir);

  std::vector<Sentence> sentences;
  for (const std::string& path : config.inputs) {
    std::vector<Sentence> parsed = parse_conllu_file(path);
    sentences.insert(sentences.end(), std::make_move_iterator(parsed.begin()),
                     std::make_move_iterator(parsed.end()));
  }

  FilterResult filtered = filter_corpus(sentences, config.filter);
  if (filtered.kept.empty()) {
    throw DataError("no-qualifying-sentences",
                    "no sentences passed the corpus filters (" +
                        std::to_string(filtered.skiplog.size()) + " skipped)");
  }

  // sent_id-sorted output keeps bytes independent of input and thread order.
  std::stable_sort(filtered.kept.begin(), filtered.kept.end(),
                   [](const Sentence& a, const Sentence& b) { return a.sent_id < b.sent_id; });
  std::stable_sort(filtered.skiplog.begin(), filtered.skiplog.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < filtered.kept.size(); ++i) {
    if (filtered.kept[i].sent_id == filtered.kept[i - 1].sent_id) {
      throw DataError("duplicate-sent-id",
                      "sent_id '" + filtered.kept[i].sent_id + "' occurs more than once");
    }
  }

  std::vector<SentenceBlock> blocks(filtered.kept.size());
  const int workers = std::max(1, std::min<int>(config.threads,
                                                static_cast<int>(filtered.kept.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < filtered.kept.size(); ++i) {
      blocks[i] = process_sentence(filtered.kept[i], config);
    }
  } else {
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (filtered.kept.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(filtered.kept.size(), begin + chunk);
      if (begin >= end) break;
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          blocks[i] = process_sentence(filtered.kept[i], config);
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  VariantsSummary summary;
  summary.references = filtered.kept.size();
  summary.skipped = filtered.skiplog.size();
  summary.warnings = filtered.warnings;

  std::string variants_text = std::string(kVariantTsvHeader) + "\n";
  std::string layouts_text = std::string(kLayoutTsvHeader) + "\n";
  for (const SentenceBlock& b : blocks) {
    variants_text += b.variant_rows;
    layouts_text += b.layout_row;
    summary.variants += b.n_variants;
  }

  std::ostringstream skiplog_text;
  write_skiplog(filtered, skiplog_text);

  const fs::path out_dir(config.out_dir);
  write_text_file(out_dir / "variants.tsv", variants_text);
  write_text_file(out_dir / "layouts.tsv", layouts_text);
  write_text_file(out_dir / "skiplog.tsv", skiplog_text.str());
  write_text_file(out_dir / "manifest.tsv", manifest_text(config, summary));
  return summary;
}

std::string format_variants_summary(const VariantsSummary& s) {
  std::ostringstream out;
  out << "Type\tCount\n";
  out << "Reference\t" << s.references << "\n";
  out << "Variant\t" << s.variants << "\n";
  return out.str();
}

// --- stats -----------------------------------------------------------------

namespace {

struct StoredLayout {
  ClauseLayout layout;
  long long total_dl = 0;     // reference order
  long long root_arc_dl = 0;  // reference order
};

// Rebuilds a layout from its persisted row. Positions are synthesized from
// the cumulative lengths; every downstream consumer reads only lengths,
// offsets and deprels.
StoredLayout layout_from_tsv_row(const std::string& line, long line_no) {
  const std::vector<std::string> fields = split_on(line, '\t');
  if (fields.size() != 8) {
    throw DataError("malformed-tsv", "expected 8 tab-separated fields, got " +
                                         std::to_string(fields.size()) + " at row " +
                                         std::to_string(line_no));
  }
  auto parse_int = [&](const std::string& field) {
    if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
      throw DataError("malformed-tsv",
                      "bad integer field '" + field + "' at row " + std::to_string(line_no));
    }
    return std::stoll(field);
  };

  StoredLayout stored;
  stored.layout.sent_id = fields[0];
  const int n = static_cast<int>(parse_int(fields[1]));
  stored.layout.n_words = static_cast<int>(parse_int(fields[2]));
  stored.total_dl = parse_int(fields[6]);
  stored.root_arc_dl = parse_int(fields[7]);

  std::vector<std::string> lengths = n ? split_on(fields[3], '-') : std::vector<std::string>{};
  std::vector<std::string> offsets = n ? split_on(fields[4], '-') : std::vector<std::string>{};
  std::vector<std::string> deprels = n ? split_on(fields[5], ',') : std::vector<std::string>{};
  if (static_cast<int>(lengths.size()) != n || static_cast<int>(offsets.size()) != n ||
      static_cast<int>(deprels.size()) != n) {
    throw DataError("malformed-tsv",
                    "constituent field arity mismatch at row " + std::to_string(line_no));
  }
  int position = 1;
  for (int i = 0; i < n; ++i) {
    Constituent c;
    c.length = static_cast<int>(parse_int(lengths[i]));
    c.right_offset = static_cast<int>(parse_int(offsets[i]));
    c.head_deprel = deprels[i];
    c.begin = position;
    c.end = position + std::max(c.length, 1) - 1;
    c.head_position = c.end - c.right_offset;
    position = c.end + 1;
    stored.layout.preverbal.push_back(std::move(c));
  }
  stored.layout.verb_position = position;
  return stored;
}

std::vector<StoredLayout> read_layouts(const fs::path& out_dir) {
  const std::string text = read_text_file(out_dir / "layouts.tsv", "layouts");
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != kLayoutTsvHeader) {
    throw DataError("malformed-tsv", "layouts.tsv has an unexpected header");
  }
  std::vector<StoredLayout> layouts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    layouts.push_back(layout_from_tsv_row(lines[i], static_cast<long>(i + 1)));
  }
  return layouts;
}

std::vector<VariantRecord> read_variants(const fs::path& out_dir) {
  const std::string text = read_text_file(out_dir / "variants.tsv", "variants");
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || lines[0] != kVariantTsvHeader) {
    throw DataError("malformed-tsv", "variants.tsv has an unexpected header");
  }
  std::vector<VariantRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    records.push_back(variant_from_tsv_row(lines[i], static_cast<long>(i + 1)));
  }
  return records;
}

}  // namespace

void cmd_stats(const PipelineConfig& config) {
  validate_common(config);
  const fs::path out_dir(config.out_dir);
  const std::vector<StoredLayout> stored = read_layouts(out_dir);
  const std::vector<VariantRecord> records = read_variants(out_dir);

  std::unordered_map<std::string, const StoredLayout*> by_id;
  for (const StoredLayout& s : stored) by_id[s.layout.sent_id] = &s;

  std::vector<ClauseLayout> layouts;
  layouts.reserve(stored.size());
  for (const StoredLayout& s : stored) layouts.push_back(s.layout);

  // Per-slot mean constituent lengths, one profile per constituent count.
  std::string fig3 = "n,slot,mean_length,count\n";
  for (int n = 2; n <= config.max_n; ++n) {
    const PositionalProfile profile = positional_mean_lengths(layouts, n);
    if (profile.count == 0) continue;
    for (int slot = 0; slot < n; ++slot) {
      fig3 += std::to_string(n) + "," + std::to_string(slot + 1) + "," +
              fmt_double(profile.mean_lengths[slot]) + "," + std::to_string(profile.count) +
              "\n";
    }
  }

  // Mean normalized dependency length per ordering strategy. Deterministic
  // orders are recomputed from the stored layouts; the sampled variants stand
  // in for the random strategy and seed the least-effort transform, so the
  // band ordering descending <= least_effort <= random <= ascending holds
  // exactly on every corpus.
  std::vector<TaggedVariant> tagged;
  Rng unused_rng(0);
  for (const StoredLayout& s : stored) {
    VariantRecord ref;
    ref.sent_id = s.layout.sent_id;
    ref.n_constituents = s.layout.n_constituents();
    ref.n_words = s.layout.n_words;
    ref.total_dl = s.total_dl;
    ref.root_arc_dl = s.root_arc_dl;
    ref.is_reference = true;
    tagged.push_back({OrderTag::reference, ref});

    for (Strategy strategy : {Strategy::ascending, Strategy::descending}) {
      const Permutation order = strategy_order(s.layout, strategy, unused_rng);
      VariantRecord rec = ref;
      rec.is_reference = false;
      rec.order = order;
      rec.root_arc_dl = root_arc_total(s.layout, order);
      rec.total_dl = s.total_dl - s.root_arc_dl + rec.root_arc_dl;
      tagged.push_back({strategy == Strategy::ascending ? OrderTag::ascending
                                                        : OrderTag::descending,
                        rec});
    }
  }
  for (const VariantRecord& rec : records) {
    if (rec.is_reference) continue;
    auto it = by_id.find(rec.sent_id);
    if (it == by_id.end()) {
      throw DataError("malformed-tsv",
                      "variant references unknown sent_id '" + rec.sent_id + "'");
    }
    const StoredLayout& s = *it->second;
    tagged.push_back({OrderTag::random, rec});

    const Permutation le = least_effort_transform(rec.order, s.layout);
    VariantRecord le_rec = rec;
    le_rec.order = le;
    le_rec.root_arc_dl = root_arc_total(s.layout, le);
    le_rec.total_dl = s.total_dl - s.root_arc_dl + le_rec.root_arc_dl;
    le_rec.cl_last = s.layout.preverbal[le.back()].length;
    tagged.push_back({OrderTag::least_effort, le_rec});
  }

  std::string fig4 = "n,strategy,mean_normalized_dl,count\n";
  for (int n = 2; n <= config.max_n; ++n) {
    for (OrderTag tag : {OrderTag::reference, OrderTag::random, OrderTag::ascending,
                         OrderTag::descending, OrderTag::least_effort}) {
      const std::optional<double> mean = mean_normalized_dl(tagged, tag, n);
      if (!mean) continue;
      long count = 0;
      for (const TaggedVariant& tv : tagged) {
        if (tv.tag == tag && tv.rec.n_constituents == n) ++count;
      }
      fig4 += std::to_string(n) + "," + to_string(tag) + "," + fmt_double(*mean) + "," +
              std::to_string(count) + "\n";
    }
  }

  std::string deprel = "slot,deprel,proportion\n";
  for (SlotSelector slot : {SlotSelector::first, SlotSelector::last}) {
    const auto profile = deprel_position_profile(layouts, slot);
    for (const auto& [name, proportion] : profile) {
      deprel += std::string(slot == SlotSelector::first ? "first" : "last") + "," + name + "," +
                fmt_double(proportion) + "\n";
    }
  }

  write_text_file(out_dir / "fig3.csv", fig3);
  write_text_file(out_dir / "fig4.csv", fig4);
  write_text_file(out_dir / "deprel_profile.csv", deprel);
}

// --- classify ----------------------------------------------------------------

namespace {

struct ModelSpec {
  std::string name;
  std::vector<Feature> features;
};

const std::vector<ModelSpec>& model_specs() {
  static const std::vector<ModelSpec> specs = {
      {"cl_last", {Feature::cl_last}},
      {"total_dl", {Feature::total_dl}},
      {"total_dl+cl_last", {Feature::total_dl, Feature::cl_last}},
  };
  return specs;
}

}  // namespace

void cmd_classify(const PipelineConfig& config) {
  validate_common(config);
  const fs::path out_dir(config.out_dir);
  const std::vector<VariantRecord> records = read_variants(out_dir);

  // Consecutive rows with one sent_id form a group: the reference first,
  // then its variants.
  std::vector<PairRecord> pairs;
  std::size_t i = 0;
  while (i < records.size()) {
    const std::size_t begin = i;
    const std::string& sent_id = records[begin].sent_id;
    while (i < records.size() && records[i].sent_id == sent_id) ++i;
    if (!records[begin].is_reference) {
      throw DataError("malformed-tsv",
                      "group '" + sent_id + "' does not start with a reference row");
    }
    FeatureVector reference{static_cast<double>(records[begin].cl_last),
                            static_cast<double>(records[begin].total_dl)};
    std::vector<FeatureVector> variants;
    for (std::size_t j = begin + 1; j < i; ++j) {
      if (records[j].is_reference) {
        throw DataError("malformed-tsv", "group '" + sent_id + "' has two reference rows");
      }
      variants.push_back({static_cast<double>(records[j].cl_last),
                          static_cast<double>(records[j].total_dl)});
    }
    if (variants.empty()) continue;  // single-constituent sentence, nothing to rank
    std::vector<PairRecord> group = build_pairs(reference, variants, sent_id);
    pairs.insert(pairs.end(), group.begin(), group.end());
  }
  if (pairs.empty()) throw DataError("no-pairs", "no reference/variant pairs to classify");

  const std::uint64_t fold_seed = stable_seed(config.seed, "", "cv-folds");

  std::string coefficients = "model,feature,coef,se,z,p\n";
  std::string accuracy = "model,fold,accuracy\n";
  std::string mcnemar = "model_a,model_b,b,c,p\n";
  std::string diagnostics = "metric,detail,value\n";

  std::vector<CVReport> reports;
  for (const ModelSpec& spec : model_specs()) {
    // Coefficient table: z-scored delta columns over the full pair set.
    Eigen::MatrixXd X(static_cast<long>(pairs.size()), static_cast<long>(spec.features.size()));
    std::vector<std::string> names;
    for (std::size_t col = 0; col < spec.features.size(); ++col) {
      std::vector<double> column;
      column.reserve(pairs.size());
      for (const PairRecord& p : pairs) column.push_back(p.delta.get(spec.features[col]));
      const ZParams z = fit_zscore(column);
      for (std::size_t row = 0; row < pairs.size(); ++row) {
        X(static_cast<long>(row), static_cast<long>(col)) = z.apply(column[row]);
      }
      names.push_back(to_string(spec.features[col]));
    }
    std::vector<int> labels;
    labels.reserve(pairs.size());
    for (const PairRecord& p : pairs) labels.push_back(p.label);

    const ModelFit fit = fit_logistic(X, names, labels);
    for (std::size_t j = 0; j < fit.feature_names.size(); ++j) {
      coefficients += spec.name + "," + fit.feature_names[j] + "," +
                      fmt_double(fit.coefficients(static_cast<long>(j))) + "," +
                      fmt_double(fit.std_errors(static_cast<long>(j))) + "," +
                      fmt_double(fit.z_scores(static_cast<long>(j))) + "," +
                      fmt_double(fit.p_values(static_cast<long>(j))) + "\n";
    }

    const CVReport report = cross_validate(pairs, spec.features, config.folds, fold_seed);
    for (std::size_t fold = 0; fold < report.fold_accuracies.size(); ++fold) {
      accuracy += spec.name + "," + std::to_string(fold + 1) + "," +
                  fmt_double(report.fold_accuracies[fold]) + "\n";
    }
    reports.push_back(report);
  }

  for (std::size_t a = 0; a < reports.size(); ++a) {
    for (std::size_t b = a + 1; b < reports.size(); ++b) {
      long long only_a = 0, only_b = 0;
      for (std::size_t item = 0; item < pairs.size(); ++item) {
        const bool ca = reports[a].per_item_correct[item];
        const bool cb = reports[b].per_item_correct[item];
        if (ca && !cb) ++only_a;
        if (cb && !ca) ++only_b;
      }
      const McNemarResult test = mcnemar_test(only_a, only_b);
      mcnemar += model_specs()[a].name + "," + model_specs()[b].name + "," +
                 std::to_string(only_a) + "," + std::to_string(only_b) + "," +
                 fmt_double(test.p_value) + "\n";
    }
  }

  {
    std::vector<double> d_cl, d_dl;
    for (const PairRecord& p : pairs) {
      d_cl.push_back(p.delta.cl_last);
      d_dl.push_back(p.delta.total_dl);
    }
    diagnostics += "pearson,delta_cl_last~delta_total_dl," +
                   fmt_double(pearson(d_cl, d_dl)) + "\n";

    Eigen::MatrixXd combined(static_cast<long>(pairs.size()), 2);
    const std::vector<double> z_dl = zscore(d_dl), z_cl = zscore(d_cl);
    for (std::size_t row = 0; row < pairs.size(); ++row) {
      combined(static_cast<long>(row), 0) = z_dl[row];
      combined(static_cast<long>(row), 1) = z_cl[row];
    }
    const VifResult v = vif(combined);
    diagnostics += "vif,total_dl," + fmt_double(v.values[0]) + "\n";
    diagnostics += "vif,cl_last," + fmt_double(v.values[1]) + "\n";
    diagnostics += "pairs,count," + std::to_string(pairs.size()) + "\n";
  }

  write_text_file(out_dir / "coefficients.csv", coefficients);
  write_text_file(out_dir / "accuracy.csv", accuracy);
  write_text_file(out_dir / "mcnemar.csv", mcnemar);
  write_text_file(out_dir / "diagnostics.csv", diagnostics);
}

std::string cmd_report(const PipelineConfig& config) {
  validate_common(config);
  const fs::path out_dir(config.out_dir);
  static const char* kReportFiles[] = {"fig3.csv",         "fig4.csv",     "deprel_profile.csv",
                                       "coefficients.csv", "accuracy.csv", "mcnemar.csv",
                                       "diagnostics.csv"};
  std::string report;
  for (const char* name : kReportFiles) {
    const fs::path path = out_dir / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) continue;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    report += std::string("== ") + name + " ==\n" + buffer.str();
    if (!report.empty() && report.back() != '\n') report.push_back('\n');
  }
  if (report.empty()) {
    throw DataError("nothing-to-report",
                    "no CSV outputs under " + config.out_dir + "; run stats/classify first");
  }
  return report;
}

}  // namespace ordolex
