// ordolex CLI: variants -> stats/classify -> report over CoNLL-U treebanks.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ordolex/pipeline.hpp"

namespace {

struct Flags {
  std::vector<std::string> inputs;
  std::string out;
  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;
  int folds = 0;
  int max_n = 0;
  int threads = 0;
  bool count_punct = true;
  int min_preverbal = 0;
  std::vector<std::string> root_upos;
  bool require_projective = true;
  int min_corpus_sentences = 0;

  CLI::Option* o_inputs = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_config = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_cap = nullptr;
  CLI::Option* o_folds = nullptr;
  CLI::Option* o_max_n = nullptr;
  CLI::Option* o_threads = nullptr;
  CLI::Option* o_count_punct = nullptr;
  CLI::Option* o_min_preverbal = nullptr;
  CLI::Option* o_root_upos = nullptr;
  CLI::Option* o_require_projective = nullptr;
  CLI::Option* o_min_corpus = nullptr;
};

void add_flags(CLI::App* cmd, Flags& f) {
  f.o_inputs = cmd->add_option("--input,-i", f.inputs, "CoNLL-U input file (repeatable)")
                   ->delimiter(',');
  f.o_out = cmd->add_option("--out,-o", f.out, "output directory");
  f.o_config = cmd->add_option("--config,-c", f.config_path, "key=value config file");
  f.o_seed = cmd->add_option("--seed", f.seed, "global RNG seed");
  f.o_cap = cmd->add_option("--cap", f.cap, "max variants per reference sentence");
  f.o_folds = cmd->add_option("--folds", f.folds, "cross-validation folds");
  f.o_max_n = cmd->add_option("--max-n", f.max_n, "largest constituent count in stats");
  f.o_threads = cmd->add_option("--threads", f.threads, "worker threads for variant generation");
  f.o_count_punct = cmd->add_option("--count-punct", f.count_punct,
                                    "count punctuation as words (1) or not (0)");
  f.o_min_preverbal =
      cmd->add_option("--min-preverbal", f.min_preverbal, "minimum preverbal constituents");
  f.o_root_upos = cmd->add_option("--root-upos", f.root_upos, "allowed root UPOS tags")
                      ->delimiter(',');
  f.o_require_projective = cmd->add_option("--require-projective", f.require_projective,
                                           "skip non-projective sentences (1) or keep (0)");
  f.o_min_corpus = cmd->add_option("--min-corpus-sentences", f.min_corpus_sentences,
                                   "advisory corpus-size warning threshold");
}

// defaults < config file < flags; the seed additionally falls back to
// ORDOLEX_SEED and then to the manifest of a previous variants run.
ordolex::PipelineConfig resolve(const Flags& f) {
  ordolex::PipelineConfig config;
  bool file_has_seed = false;
  if (f.o_config->count() > 0) {
    ordolex::ConfigFile file = ordolex::load_config_file(f.config_path);
    config = file.values;
    file_has_seed = file.keys_present.count("seed") > 0;
  }
  if (f.o_inputs->count() > 0) config.inputs = f.inputs;
  if (f.o_out->count() > 0) config.out_dir = f.out;
  if (f.o_cap->count() > 0) config.cap = f.cap;
  if (f.o_folds->count() > 0) config.folds = f.folds;
  if (f.o_max_n->count() > 0) config.max_n = f.max_n;
  if (f.o_threads->count() > 0) config.threads = f.threads;
  if (f.o_count_punct->count() > 0) config.length.count_punct = f.count_punct;
  if (f.o_min_preverbal->count() > 0) config.filter.min_preverbal = f.min_preverbal;
  if (f.o_require_projective->count() > 0) {
    config.filter.require_projective = f.require_projective;
  }
  if (f.o_min_corpus->count() > 0) config.filter.min_corpus_sentences = f.min_corpus_sentences;
  if (f.o_root_upos->count() > 0) {
    config.filter.root_upos_allowed.clear();
    for (const std::string& u : f.root_upos) config.filter.root_upos_allowed.insert(u);
  }

  if (f.o_seed->count() > 0) {
    config.seed = f.seed;
  } else if (!file_has_seed) {
    if (auto env = ordolex::env_seed()) {
      config.seed = *env;
    } else if (auto recorded = ordolex::manifest_seed(config.out_dir)) {
      config.seed = *recorded;
    }
  }
  return config;
}

int dispatch(const std::string& command, const Flags& flags) {
  const ordolex::PipelineConfig config = resolve(flags);
  if (command == "variants") {
    const ordolex::VariantsSummary summary = ordolex::cmd_variants(config);
    for (const std::string& warning : summary.warnings) {
      std::cerr << "warning: " << warning << "\n";
    }
    std::cout << ordolex::format_variants_summary(summary);
    return 0;
  }
  if (command == "stats") {
    ordolex::cmd_stats(config);
    std::cout << "wrote fig3.csv fig4.csv deprel_profile.csv\n";
    return 0;
  }
  if (command == "classify") {
    ordolex::cmd_classify(config);
    std::cout << "wrote coefficients.csv accuracy.csv mcnemar.csv diagnostics.csv\n";
    return 0;
  }
  if (command == "report") {
    std::cout << ordolex::cmd_report(config);
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordolex: constituent-order and dependency-length analysis for SOV treebanks"};
  app.require_subcommand(1);

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"variants", "generate reference + counterfactual variant tables"},
      {"stats", "aggregate ordering statistics to CSV"},
      {"classify", "fit ranking models and cross-validate"},
      {"report", "concatenate the CSV outputs"},
  };
  std::vector<Flags> flags(commands.size());
  std::vector<CLI::App*> subcommands;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    subcommands.push_back(app.add_subcommand(commands[i].first, commands[i].second));
    add_flags(subcommands[i], flags[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::size_t index = 0;
  while (subcommands[index] != chosen) ++index;

  try {
    return dispatch(chosen->get_name(), flags[index]);
  } catch (const ordolex::UsageError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const ordolex::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
