#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordolex/conllu.hpp"
#include "ordolex/dep_tree.hpp"

namespace ordolex {

struct PipelineConfig {
  std::vector<std::string> inputs;  // CoNLL-U files
  std::string out_dir;
  std::uint64_t seed = 1;
  std::uint64_t cap = 120;  // variants per reference sentence
  int folds = 10;
  int max_n = 5;    // largest constituent count aggregated by `stats`
  int threads = 1;  // sentence-level fan-out in `variants`; never changes output bytes
  FilterPolicy filter;
  LengthPolicy length;
};

// Flat key=value config file; '#' starts a comment. Unknown keys are a
// UsageError. Returns which keys were present so CLI flags can override.
struct ConfigFile {
  PipelineConfig values;
  std::set<std::string> keys_present;
};
ConfigFile load_config_file(const std::string& path);

// ORDOLEX_SEED, used when neither a flag nor the config file sets the seed.
std::optional<std::uint64_t> env_seed();

// Seed recorded in out_dir/manifest.tsv by a previous `variants` run, so
// later stages reuse it without re-stating the flag.
std::optional<std::uint64_t> manifest_seed(const std::string& out_dir);

std::uint64_t config_hash(const PipelineConfig& c);

struct VariantsSummary {
  std::size_t references = 0;
  std::size_t variants = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Writes variants.tsv, layouts.tsv, skiplog.tsv and manifest.tsv under
// out_dir, in sent_id-sorted order. Throws DataError("no-qualifying-sentences")
// when the filter keeps nothing.
VariantsSummary cmd_variants(const PipelineConfig& config);

// Reads layouts.tsv + variants.tsv and writes fig3.csv, fig4.csv and
// deprel_profile.csv.
void cmd_stats(const PipelineConfig& config);

// Reads variants.tsv and writes coefficients.csv, accuracy.csv, mcnemar.csv
// and diagnostics.csv for the three models (cl_last, total_dl, combined).
void cmd_classify(const PipelineConfig& config);

// Concatenates the CSVs present under out_dir into one summary string.
std::string cmd_report(const PipelineConfig& config);

// Table-style summary printed by the variants subcommand.
std::string format_variants_summary(const VariantsSummary& s);

}  // namespace ordolex
