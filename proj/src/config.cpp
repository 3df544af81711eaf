// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/config.hpp"

#include <charconv>
#include <fstream>

namespace venuerank {

namespace {

std::string trim(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key '" + key + "': bad value '" + value + "'");
  }
  return out;
}

// from_chars for double is unreliable pre-GCC11 for some formats; strtod
// via stod keeps it simple.
double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const double out = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key '" + key + "': bad value '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::kInvalidArgument,
              "config key '" + key + "': bad boolean '" + value + "'");
}

}  // namespace

void apply_config_entry(PipelineConfig* pipeline, SynthConfig* synth,
                        const std::string& key, const std::string& value) {
  if (key == "seed") {
    const auto seed = parse_number<std::uint64_t>(key, value);
    if (pipeline != nullptr) pipeline->seed = seed;
    if (synth != nullptr) synth->seed = seed;
    return;
  }
  if (pipeline != nullptr) {
    if (key == "svm.lambda_reg") {
      pipeline->svm.lambda_reg = parse_double(key, value);
      return;
    }
    if (key == "svm.epochs") {
      pipeline->svm.epochs = parse_number<int>(key, value);
      return;
    }
    if (key == "ltr.trees") {
      pipeline->ltr.n_trees = parse_number<int>(key, value);
      return;
    }
    if (key == "ltr.learning_rate") {
      pipeline->ltr.learning_rate = parse_double(key, value);
      return;
    }
    if (key == "ltr.max_leaves") {
      pipeline->ltr.tree.max_leaves = parse_number<int>(key, value);
      return;
    }
    if (key == "ltr.min_leaf") {
      pipeline->ltr.tree.min_instances_per_leaf = parse_number<int>(key, value);
      return;
    }
    if (key == "ltr.ndcg_cutoff") {
      pipeline->ltr.ndcg_cutoff = parse_number<int>(key, value);
      return;
    }
    if (key == "cv.folds") {
      pipeline->cv_folds = parse_number<int>(key, value);
      return;
    }
    if (key == "metric.cutoff") {
      pipeline->metric_cutoff = parse_number<int>(key, value);
      return;
    }
    if (key == "context.southern_hemisphere") {
      pipeline->hemisphere = parse_bool(key, value) ? Hemisphere::kSouthern
                                                    : Hemisphere::kNorthern;
      return;
    }
    if (key == "run.tag") {
      pipeline->run_tag = value;
      return;
    }
  }
  if (synth != nullptr) {
    if (key == "synth.users") {
      synth->n_users = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.venues") {
      synth->n_venues = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.candidates_per_request") {
      synth->n_candidates_per_request = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.category_vocab") {
      synth->category_vocab_size = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.tag_vocab") {
      synth->tag_vocab_size = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.review_vocab") {
      synth->review_term_vocab_size = parse_number<int>(key, value);
      return;
    }
    if (key == "synth.noise") {
      synth->noise_level = parse_double(key, value);
      return;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
}

void apply_config_file(PipelineConfig* pipeline, SynthConfig* synth,
                       const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  }
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ":" + std::to_string(line_number) +
                      ": expected key=value");
    }
    apply_config_entry(pipeline, synth, trim(entry.substr(0, eq)),
                       trim(entry.substr(eq + 1)));
  }
}

std::string config_keys() {
  return "seed\n"
         "svm.lambda_reg\n"
         "svm.epochs\n"
         "ltr.trees\n"
         "ltr.learning_rate\n"
         "ltr.max_leaves\n"
         "ltr.min_leaf\n"
         "ltr.ndcg_cutoff\n"
         "cv.folds\n"
         "metric.cutoff\n"
         "context.southern_hemisphere\n"
         "run.tag\n"
         "synth.users\n"
         "synth.venues\n"
         "synth.candidates_per_request\n"
         "synth.category_vocab\n"
         "synth.tag_vocab\n"
         "synth.review_vocab\n"
         "synth.noise\n";
}

}  // namespace venuerank
