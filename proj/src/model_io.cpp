// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/model_io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "venuerank/rng.hpp"

namespace venuerank {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'V', 'R', 'M', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void append_u32(std::string* out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out->push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

void append_u64(std::string* out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    out->push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

std::uint32_t read_u32(const std::string& data, std::size_t pos) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<std::uint32_t>(
                 static_cast<unsigned char>(data[pos + static_cast<std::size_t>(i)]))
             << (8 * i);
  }
  return value;
}

std::uint64_t read_u64(const std::string& data, std::size_t pos) {
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) {
    value |= static_cast<std::uint64_t>(
                 static_cast<unsigned char>(data[pos + static_cast<std::size_t>(i)]))
             << (8 * i);
  }
  return value;
}

[[noreturn]] void format_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kModelFormat, path + ": " + what);
}

// ---- json codecs -----------------------------------------------------

json profile_to_json(const FrequencyProfile& profile) {
  json positive = json::array();
  for (const auto& [item, value] : profile.positive) {
    positive.push_back({item, value});
  }
  json negative = json::array();
  for (const auto& [item, value] : profile.negative) {
    negative.push_back({item, value});
  }
  return {{"positive", positive},
          {"negative", negative},
          {"denominator", profile.denominator}};
}

FrequencyProfile profile_from_json(const json& j) {
  FrequencyProfile profile;
  profile.denominator = j.at("denominator").get<std::int64_t>();
  for (const json& entry : j.at("positive")) {
    profile.positive.emplace(entry.at(0).get<std::string>(),
                             entry.at(1).get<double>());
  }
  for (const json& entry : j.at("negative")) {
    profile.negative.emplace(entry.at(0).get<std::string>(),
                             entry.at(1).get<double>());
  }
  return profile;
}

json vocabulary_to_json(const Vocabulary& vocab) {
  json terms = json::array();
  for (const auto& [term, entry] : vocab.terms) {
    terms.push_back({term, entry.index, entry.document_frequency});
  }
  return {{"document_count", vocab.document_count}, {"terms", terms}};
}

Vocabulary vocabulary_from_json(const json& j) {
  Vocabulary vocab;
  vocab.document_count = j.at("document_count").get<std::int64_t>();
  for (const json& entry : j.at("terms")) {
    vocab.terms.emplace(entry.at(0).get<std::string>(),
                        Vocabulary::Entry{entry.at(1).get<std::size_t>(),
                                          entry.at(2).get<std::int64_t>()});
  }
  return vocab;
}

json svm_to_json(const SvmModel& model) {
  return {{"weights", model.weights},
          {"bias", model.bias},
          {"meta",
           {{"epochs", model.meta.epochs},
            {"lambda_reg", model.meta.lambda_reg},
            {"seed", model.meta.seed},
            {"n_pos", model.meta.n_pos},
            {"n_neg", model.meta.n_neg},
            {"negative_free", model.meta.negative_free}}}};
}

SvmModel svm_from_json(const json& j) {
  SvmModel model;
  model.weights = j.at("weights").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  const json& meta = j.at("meta");
  model.meta.epochs = meta.at("epochs").get<int>();
  model.meta.lambda_reg = meta.at("lambda_reg").get<double>();
  model.meta.seed = meta.at("seed").get<std::uint64_t>();
  model.meta.n_pos = meta.at("n_pos").get<std::int64_t>();
  model.meta.n_neg = meta.at("n_neg").get<std::int64_t>();
  model.meta.negative_free = meta.at("negative_free").get<bool>();
  return model;
}

json tree_to_json(const RegressionTree& tree) {
  json nodes = json::array();
  for (const TreeNode& node : tree.nodes) {
    nodes.push_back(
        {node.feature, node.threshold, node.left, node.right, node.value});
  }
  return nodes;
}

RegressionTree tree_from_json(const json& j) {
  RegressionTree tree;
  for (const json& entry : j) {
    tree.nodes.push_back(TreeNode{entry.at(0).get<int>(),
                                  entry.at(1).get<double>(),
                                  entry.at(2).get<int>(),
                                  entry.at(3).get<int>(),
                                  entry.at(4).get<double>()});
  }
  return tree;
}

json ranker_to_json(const LambdaMartModel& model) {
  json trees = json::array();
  for (const RegressionTree& tree : model.trees) {
    trees.push_back(tree_to_json(tree));
  }
  return {{"learning_rate", model.learning_rate},
          {"trees", trees},
          {"training_ndcg", model.training_ndcg},
          {"config",
           {{"n_trees", model.config.n_trees},
            {"learning_rate", model.config.learning_rate},
            {"max_leaves", model.config.tree.max_leaves},
            {"min_instances_per_leaf", model.config.tree.min_instances_per_leaf},
            {"ndcg_cutoff", model.config.ndcg_cutoff},
            {"seed", model.config.seed}}}};
}

LambdaMartModel ranker_from_json(const json& j) {
  LambdaMartModel model;
  model.learning_rate = j.at("learning_rate").get<double>();
  for (const json& tree : j.at("trees")) {
    model.trees.push_back(tree_from_json(tree));
  }
  model.training_ndcg = j.at("training_ndcg").get<std::vector<double>>();
  const json& config = j.at("config");
  model.config.n_trees = config.at("n_trees").get<int>();
  model.config.learning_rate = config.at("learning_rate").get<double>();
  model.config.tree.max_leaves = config.at("max_leaves").get<int>();
  model.config.tree.min_instances_per_leaf =
      config.at("min_instances_per_leaf").get<int>();
  model.config.ndcg_cutoff = config.at("ndcg_cutoff").get<int>();
  model.config.seed = config.at("seed").get<std::uint64_t>();
  return model;
}

json pipeline_config_to_json(const PipelineConfig& config) {
  return {{"seed", config.seed},
          {"svm_lambda_reg", config.svm.lambda_reg},
          {"svm_epochs", config.svm.epochs},
          {"ltr_trees", config.ltr.n_trees},
          {"ltr_learning_rate", config.ltr.learning_rate},
          {"ltr_max_leaves", config.ltr.tree.max_leaves},
          {"ltr_min_leaf", config.ltr.tree.min_instances_per_leaf},
          {"ltr_ndcg_cutoff", config.ltr.ndcg_cutoff},
          {"cv_folds", config.cv_folds},
          {"metric_cutoff", config.metric_cutoff},
          {"southern_hemisphere", config.hemisphere == Hemisphere::kSouthern},
          {"run_tag", config.run_tag}};
}

PipelineConfig pipeline_config_from_json(const json& j) {
  PipelineConfig config;
  config.seed = j.at("seed").get<std::uint64_t>();
  config.svm.lambda_reg = j.at("svm_lambda_reg").get<double>();
  config.svm.epochs = j.at("svm_epochs").get<int>();
  config.ltr.n_trees = j.at("ltr_trees").get<int>();
  config.ltr.learning_rate = j.at("ltr_learning_rate").get<double>();
  config.ltr.tree.max_leaves = j.at("ltr_max_leaves").get<int>();
  config.ltr.tree.min_instances_per_leaf = j.at("ltr_min_leaf").get<int>();
  config.ltr.ndcg_cutoff = j.at("ltr_ndcg_cutoff").get<int>();
  config.cv_folds = j.at("cv_folds").get<int>();
  config.metric_cutoff = j.at("metric_cutoff").get<int>();
  config.hemisphere = j.at("southern_hemisphere").get<bool>()
                          ? Hemisphere::kSouthern
                          : Hemisphere::kNorthern;
  config.run_tag = j.at("run_tag").get<std::string>();
  return config;
}

/// Filesystem-safe user id: alphanumerics, dot, dash and underscore pass
/// through, everything else becomes %XX.
std::string sanitize_id(const std::string& id) {
  std::string out;
  for (const char c : id) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '-' ||
                      c == '_';
    if (safe) {
      out.push_back(c);
    } else {
      char buffer[4];
      std::snprintf(buffer, sizeof(buffer), "%%%02X",
                    static_cast<unsigned char>(c));
      out += buffer;
    }
  }
  return out;
}

}  // namespace

const std::optional<SvmBundle>& UserModels::svm_for(Source source) const {
  switch (source) {
    case Source::kYelp: return svm_yelp;
    case Source::kTripAdvisor: return svm_tripadvisor;
    case Source::kFoursquare: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "no review models for Foursquare");
}

void write_model_file(const std::string& path, const std::string& type,
                      const json& payload) {
  const std::vector<std::uint8_t> cbor = json::to_cbor(payload);

  std::string data;
  data.append(kMagic, sizeof(kMagic));
  append_u32(&data, kFormatVersion);
  append_u32(&data, static_cast<std::uint32_t>(type.size()));
  data += type;
  append_u64(&data, cbor.size());
  data.append(reinterpret_cast<const char*>(cbor.data()), cbor.size());
  append_u64(&data, fnv1a64(data));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

json read_model_file(const std::string& path, const std::string& expected_type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  if (data.size() < sizeof(kMagic) + 4 + 4 + 8 + 8 ||
      data.compare(0, sizeof(kMagic), kMagic, sizeof(kMagic)) != 0) {
    format_fail(path, "not a model file");
  }
  const std::uint32_t version = read_u32(data, 4);
  if (version != kFormatVersion) {
    format_fail(path, "unsupported format version " + std::to_string(version));
  }
  const std::uint32_t type_len = read_u32(data, 8);
  if (data.size() < 12 + type_len + 8 + 8) {
    format_fail(path, "checksum error: truncated file");
  }
  const std::string type = data.substr(12, type_len);
  const std::size_t payload_pos = 12 + type_len + 8;
  const std::uint64_t payload_len = read_u64(data, 12 + type_len);
  if (payload_len > data.size() ||
      data.size() != payload_pos + payload_len + 8) {
    format_fail(path, "checksum error: truncated file");
  }
  const std::uint64_t stored = read_u64(data, payload_pos + payload_len);
  const std::uint64_t actual = fnv1a64(
      std::string_view(data.data(), payload_pos + payload_len));
  if (stored != actual) {
    format_fail(path, "checksum error: file corrupted");
  }
  if (type != expected_type) {
    format_fail(path, "expected a '" + expected_type + "' model, found '" +
                          type + "'");
  }

  const auto begin =
      reinterpret_cast<const std::uint8_t*>(data.data() + payload_pos);
  json payload = json::from_cbor(begin, begin + payload_len, true, false);
  if (payload.is_discarded()) format_fail(path, "undecodable payload");
  return payload;
}

void save_models(const std::string& dir, const TrainedModels& models) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "users", ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create model directory '" + dir + "'");
  }

  json manifest_users = json::array();
  for (const auto& [user_id, user] : models.users) {
    const std::string stem = sanitize_id(user_id);
    manifest_users.push_back({{"user_id", user_id},
                              {"stem", stem},
                              {"has_yelp_svm", user.svm_yelp.has_value()},
                              {"has_tripadvisor_svm",
                               user.svm_tripadvisor.has_value()}});

    json profiles;
    profiles["foursquare_categories"] =
        user.profiles.foursquare_categories
            ? profile_to_json(*user.profiles.foursquare_categories)
            : json();
    profiles["yelp_categories"] =
        user.profiles.yelp_categories
            ? profile_to_json(*user.profiles.yelp_categories)
            : json();
    profiles["taste_tags"] = user.profiles.taste_tags
                                 ? profile_to_json(*user.profiles.taste_tags)
                                 : json();
    write_model_file(
        (fs::path(dir) / "users" / (stem + ".profiles.vrm")).string(),
        "profiles", profiles);

    const auto write_svm = [&](const std::optional<SvmBundle>& bundle,
                               const char* name) {
      if (!bundle) return;
      write_model_file(
          (fs::path(dir) / "users" / (stem + "." + name + ".svm.vrm")).string(),
          "svm",
          {{"vocabulary", vocabulary_to_json(bundle->vocabulary)},
           {"model", svm_to_json(bundle->model)}});
    };
    write_svm(user.svm_yelp, "yelp");
    write_svm(user.svm_tripadvisor, "tripadvisor");
  }

  write_model_file((fs::path(dir) / "ranker.vrm").string(), "ranker",
                   ranker_to_json(models.ranker));
  write_model_file((fs::path(dir) / "manifest.vrm").string(), "manifest",
                   {{"users", manifest_users},
                    {"config", pipeline_config_to_json(models.config)}});
}

TrainedModels load_models(const std::string& dir) {
  namespace fs = std::filesystem;
  TrainedModels models;

  const json manifest =
      read_model_file((fs::path(dir) / "manifest.vrm").string(), "manifest");
  models.config = pipeline_config_from_json(manifest.at("config"));
  models.ranker =
      ranker_from_json(read_model_file((fs::path(dir) / "ranker.vrm").string(),
                                       "ranker"));

  for (const json& entry : manifest.at("users")) {
    const std::string user_id = entry.at("user_id").get<std::string>();
    const std::string stem = entry.at("stem").get<std::string>();
    UserModels user;

    const json profiles = read_model_file(
        (fs::path(dir) / "users" / (stem + ".profiles.vrm")).string(),
        "profiles");
    const auto load_profile =
        [&profiles](const char* key) -> std::optional<FrequencyProfile> {
      const json& j = profiles.at(key);
      if (j.is_null()) return std::nullopt;
      return profile_from_json(j);
    };
    user.profiles.foursquare_categories = load_profile("foursquare_categories");
    user.profiles.yelp_categories = load_profile("yelp_categories");
    user.profiles.taste_tags = load_profile("taste_tags");

    const auto load_svm = [&](const char* name) -> std::optional<SvmBundle> {
      const json j = read_model_file(
          (fs::path(dir) / "users" / (stem + "." + name + ".svm.vrm")).string(),
          "svm");
      SvmBundle bundle;
      bundle.vocabulary = vocabulary_from_json(j.at("vocabulary"));
      bundle.model = svm_from_json(j.at("model"));
      return bundle;
    };
    if (entry.at("has_yelp_svm").get<bool>()) {
      user.svm_yelp = load_svm("yelp");
    }
    if (entry.at("has_tripadvisor_svm").get<bool>()) {
      user.svm_tripadvisor = load_svm("tripadvisor");
    }
    models.users.emplace(user_id, std::move(user));
  }

  return models;
}

}  // namespace venuerank
