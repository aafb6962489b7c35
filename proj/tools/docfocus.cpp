// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "docfocus/democorpus.hpp"
#include "docfocus/error.hpp"
#include "docfocus/mixer.hpp"
#include "docfocus/pipeline.hpp"

namespace {

using docfocus::ErrorCode;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> limit;
  std::string out;
};

docfocus::PipelineConfig configure(const Flags& f) {
  std::optional<std::filesystem::path> path;
  if (!f.config.empty()) path = f.config;
  docfocus::PipelineConfig c = docfocus::load_config(path, docfocus::process_env());
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (!f.out.empty()) c.out = f.out;
  c.bench.workers = c.workers;
  docfocus::validate(c);
  return c;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::annotator_failure: return 3;
    case ErrorCode::invalid_config:
    case ErrorCode::invalid_argument: return 1;
    default: return 2;
  }
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"docfocus: position-aware document data pipeline and benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", flags.seed, "Global seed (overrides config and environment)");
  app.add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--limit", flags.limit, "Maximum pages or samples per task");
  app.add_option("--out", flags.out, "Output directory");

  auto* ingest = app.add_subcommand("ingest", "Validate the corpus and write a report");
  auto* synth = app.add_subcommand("synth", "Composite figure and color hybrid pages");

  auto* gen = app.add_subcommand("gen", "Generate task samples as JSONL");
  std::vector<std::string> gen_tasks;
  gen->add_option("--task", gen_tasks, "Task name (repeatable); all tasks when absent");

  auto* mix = app.add_subcommand("mix", "Assemble the pre-training mix and SFT subset");
  std::string recipe_path;
  mix->add_option("--recipe", recipe_path, "Recipe JSON (overrides config)")->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "Benchmark build and evaluation");
  bench->require_subcommand(1);
  auto* bench_build = bench->add_subcommand("build", "Build benchmark splits");
  bool with_gold = false;
  bench_build->add_flag("--gold", with_gold, "Also write gold.jsonl predictions");
  auto* bench_eval = bench->add_subcommand("eval", "Score a prediction file");
  std::string pred_path;
  std::optional<std::string> split;
  bench_eval->add_option("--pred", pred_path, "Prediction JSONL")->required()->check(CLI::ExistingFile);
  bench_eval->add_option("--split", split, "Only this split");

  auto* stats = app.add_subcommand("stats", "Corpus and dataset summaries");

  auto* demo = app.add_subcommand("demo-corpus", "Write a synthetic corpus");
  docfocus::DemoCorpusConfig demo_cfg;
  std::string demo_dir;
  demo->add_option("dir", demo_dir, "Target directory")->required();
  demo->add_option("--en-pages", demo_cfg.en_pages);
  demo->add_option("--zh-pages", demo_cfg.zh_pages);
  demo->add_option("--mixed-pages", demo_cfg.mixed_pages);
  demo->add_option("--naturals", demo_cfg.naturals);

  auto* recipe = app.add_subcommand("recipe", "Print the default recipe");
  double recipe_scale = 1.0;
  recipe->add_option("--scale", recipe_scale, "Multiply every count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*demo) {
      demo_cfg.seed = flags.seed.value_or(0);
      demo_cfg.workers = flags.workers.value_or(1);
      const auto files = docfocus::write_demo_corpus(demo_cfg, demo_dir);
      std::cout << files.pages.string() << "\n" << files.naturals.string() << "\n"
                << files.layouts.string() << "\n";
      return 0;
    }
    if (*recipe) {
      print(docfocus::to_json(docfocus::scale_recipe(docfocus::default_recipe(), recipe_scale)));
      return 0;
    }
    docfocus::PipelineConfig config = configure(flags);
    if (!recipe_path.empty()) config.recipe = recipe_path;
    if (*ingest) {
      print(docfocus::run_ingest(config));
    } else if (*synth) {
      print(docfocus::run_synth(config, flags.limit));
    } else if (*gen) {
      std::vector<docfocus::Task> tasks;
      if (gen_tasks.empty()) {
        tasks.assign(docfocus::kAllTasks.begin(), docfocus::kAllTasks.end());
      } else {
        for (const std::string& t : gen_tasks) {
          auto task = docfocus::parse_task(t);
          if (!task) {
            std::cerr << "unknown task: " << t << "\n";
            return 1;
          }
          tasks.push_back(*task);
        }
      }
      print(docfocus::run_gen(config, tasks, flags.limit));
    } else if (*mix) {
      print(docfocus::run_mix(config));
    } else if (*bench_build) {
      print(docfocus::run_bench_build(config, with_gold));
    } else if (*bench_eval) {
      std::cout << docfocus::run_bench_eval(config, pred_path, split).markdown;
    } else if (*stats) {
      print(docfocus::run_stats(config));
    }
    return 0;
  } catch (const docfocus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
