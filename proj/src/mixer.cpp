// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/mixer.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "docfocus/digest.hpp"
#include "docfocus/error.hpp"
#include "docfocus/rng.hpp"
#include "docfocus/taskgen.hpp"

namespace docfocus {

Recipe default_recipe() {
  Recipe r;
  r.counts = {
      {"figure_caption_blip558k", 558'000},
      {"figure_caption_laion_coco", 1'000'000},
      {"infigure_chat", 22'000},
      {"foreground_ocr", 1'000'000},
      {"region_ocr", 1'000'000},
      {"line_ocr", 600'000},
      {"color_ocr", 1'000'000},
      {"region_translation", 500'000},
      {"region_summary", 500'000},
      {"multipage_region_ocr", 400'000},
      {"crosspage_vqa", 400'000},
      {"layout_publaynet", 33'000},
      {"layout_pseudo", 1'000'000},
      {"natural_caption", 500'000},
      {"nlp_alpaca", 52'000},
      {"nlp_baize", 112'000},
      {"nlp_sharegpt", 125'000},
      {"page_ocr", 1'000'000},
      {"page_markdown", 1'000'000},
  };
  return r;
}

Recipe scale_recipe(const Recipe& recipe, double factor) {
  Recipe out = recipe;
  for (auto& [name, count] : out.counts) {
    count = static_cast<std::size_t>(std::floor(static_cast<double>(count) * factor + 0.5));
  }
  return out;
}

std::optional<Task> stream_task(std::string_view stream) {
  if (auto t = parse_task(stream)) return t;
  if (stream.starts_with("figure_caption_")) return Task::figure_caption;
  if (stream.starts_with("layout_")) return Task::layout;
  return std::nullopt;
}

Recipe recipe_from_json(const Json& j) {
  try {
    Recipe r;
    r.seed = j.value("seed", std::uint64_t{0});
    for (const auto& [name, count] : j.at("counts").items()) {
      if (!count.is_number_integer() || count.get<long long>() < 0) {
        fail(ErrorCode::invalid_config, "recipe count for " + name + " must be a non-negative integer");
      }
      r.counts[name] = count.get<std::size_t>();
    }
    if (auto it = j.find("variants"); it != j.end()) {
      for (const auto& [name, list] : it->items()) {
        const auto task = parse_task(name);
        if (!task) fail(ErrorCode::invalid_config, "variants for unknown task " + name);
        r.variants[*task] = list.get<std::vector<std::string>>();
      }
    }
    if (auto it = j.find("sources"); it != j.end()) {
      r.sources = it->get<std::map<std::string, std::string>>();
    }
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::invalid_config, std::string("recipe: ") + e.what());
  }
}

Json to_json(const Recipe& recipe) {
  Json variants = Json::object();
  for (const auto& [task, list] : recipe.variants) variants[std::string(to_string(task))] = list;
  Json j{{"seed", recipe.seed}, {"counts", recipe.counts}, {"variants", variants}};
  if (!recipe.sources.empty()) j["sources"] = recipe.sources;
  return j;
}

Json to_json(const MixManifest& manifest) {
  Json streams = Json::object();
  for (const auto& [name, c] : manifest.streams) {
    streams[name] = {{"target", c.target}, {"achieved", c.achieved}, {"available", c.available}};
  }
  return {{"seed", manifest.seed},
          {"streams", streams},
          {"total", manifest.total},
          {"digest", manifest.digest},
          {"warnings", manifest.warnings}};
}

std::string to_jsonl(const std::vector<Json>& records) {
  std::string out;
  for (const Json& r : records) {
    out += r.dump(-1, ' ', false, Json::error_handler_t::strict);
    out += '\n';
  }
  return out;
}

namespace {

std::string record_id(const Json& record, const std::string& stream) {
  auto it = record.find("id");
  if (it == record.end() || !it->is_string()) {
    fail(ErrorCode::schema_violation, "record without string id in stream " + stream);
  }
  return it->get<std::string>();
}

void finish(MixResult& result, Rng& rng) {
  rng.shuffle(result.records);
  result.manifest.total = result.records.size();
  result.manifest.digest = sha256_hex(to_jsonl(result.records));
}

}  // namespace

MixResult mix(const SourceMap& sources, const Recipe& recipe, std::uint64_t seed) {
  MixResult result;
  result.manifest.seed = seed;
  std::set<std::string> seen;
  for (const auto& [name, target] : recipe.counts) {
    StreamCount& sc = result.manifest.streams[name];
    sc.target = target;
    if (target == 0) continue;
    auto it = sources.find(name);
    if (it == sources.end()) fail(ErrorCode::missing_source, "no source for stream " + name);
    sc.available = it->second.size();
    std::size_t duplicates = 0;
    for (const Json& record : it->second) {
      if (sc.achieved == target) break;
      if (!seen.insert(record_id(record, name)).second) {
        ++duplicates;
        continue;
      }
      result.records.push_back(record);
      ++sc.achieved;
    }
    if (duplicates > 0) {
      result.manifest.warnings.push_back(fmt::format("{}: skipped {} duplicate ids", name, duplicates));
    }
    if (sc.achieved < target) {
      result.manifest.warnings.push_back(
          fmt::format("{}: {} of {} samples available", name, sc.achieved, target));
    }
  }
  Rng rng(seed);
  finish(result, rng);
  return result;
}

MixResult sft_sample(const SourceMap& pretrain, std::size_t k,
                     const std::map<Task, std::vector<std::string>>& variants, std::uint64_t seed) {
  for (const auto& [task, list] : variants) {
    if (list.size() != 10) {
      fail(ErrorCode::invalid_config,
           fmt::format("task {} has {} prompt variants, expected 10", to_string(task), list.size()));
    }
  }
  MixResult result;
  result.manifest.seed = seed;
  Rng rng(seed);
  for (const auto& [name, records] : pretrain) {
    StreamCount& sc = result.manifest.streams[name];
    sc.target = k;
    sc.available = records.size();
    const std::size_t take = std::min(k, records.size());
    if (take < k) {
      result.manifest.warnings.push_back(fmt::format("{}: only {} of {} samples", name, take, k));
    }
    std::vector<std::size_t> picks = rng.sample_indices(records.size(), take);
    std::sort(picks.begin(), picks.end());
    const std::optional<Task> task = stream_task(name);
    for (std::size_t i : picks) {
      const Json& record = records[i];
      if (!task || !record.contains("conversation")) {
        result.records.push_back(record);
        continue;
      }
      ConversationSample s = sample_from_json(record);
      auto vit = variants.find(s.task);
      if (vit == variants.end()) fail(ErrorCode::invalid_config, "no prompt variants for " + std::string(to_string(s.task)));
      for (Turn& t : s.turns) {
        if (t.role != Role::user) continue;
        const PromptSlots slots = extract_slots(s.task, t.text);
        t.text = fill_prompt(vit->second[rng.index(vit->second.size())], slots);
      }
      result.records.push_back(to_json(s));
    }
    sc.achieved = take;
  }
  result.manifest.total = result.records.size();
  result.manifest.digest = sha256_hex(to_jsonl(result.records));
  return result;
}

}  // namespace docfocus
