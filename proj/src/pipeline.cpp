// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#include "venuerank/pipeline.hpp"

#include <algorithm>

#include "venuerank/context_scoring.hpp"
#include "venuerank/rng.hpp"

namespace venuerank {

UserModels build_user_models(const UserHistory& history, const Catalog& catalog,
                             const SvmConfig& svm_config,
                             std::uint64_t global_seed) {
  UserModels user;
  user.profiles = build_user_profiles(history, catalog);

  const auto train_source =
      [&](Source source) -> std::optional<SvmBundle> {
    try {
      TrainingSet set = assemble_training_set(history, catalog, source);
      SvmConfig config = svm_config;
      config.seed = derive_seed(global_seed,
                                history.user_id + "/" + to_string(source));
      SvmBundle bundle;
      bundle.model =
          train_linear_svm(set.documents, set.vocabulary.size(), config);
      bundle.model.meta.n_pos = set.n_pos;
      bundle.model.meta.n_neg = set.n_neg;
      bundle.model.meta.negative_free = set.negative_free;
      bundle.vocabulary = std::move(set.vocabulary);
      return bundle;
    } catch (const Error& error) {
      if (error.code() == ErrorCode::kTrainingUnderflow ||
          error.code() == ErrorCode::kEmptyCorpus) {
        return std::nullopt;  // feature defaults to 0 + missing flag
      }
      throw;
    }
  };
  user.svm_yelp = train_source(Source::kYelp);
  user.svm_tripadvisor = train_source(Source::kTripAdvisor);
  return user;
}

FeatureVector assemble_features(const UserModels& user,
                                const ContextSignals& context,
                                const VenueRecord& venue,
                                Hemisphere hemisphere) {
  FeatureVector features;

  const CategoryTagScores cats = score_categories_and_tags(user.profiles, venue);
  features.values[kFeatCatFoursquare] = cats.cat_foursquare;
  features.missing[kFeatCatFoursquare] = cats.cat_foursquare_missing;
  features.values[kFeatCatYelp] = cats.cat_yelp;
  features.missing[kFeatCatYelp] = cats.cat_yelp_missing;
  features.values[kFeatTag] = cats.tag;
  features.missing[kFeatTag] = cats.tag_missing;

  const auto review_slot = [&](Source source, int index) {
    const std::optional<SvmBundle>& bundle = user.svm_for(source);
    if (!bundle) {
      features.values[static_cast<std::size_t>(index)] = 0.0;
      features.missing[static_cast<std::size_t>(index)] = true;
      return;
    }
    const ReviewScore score =
        decision_score(bundle->model, bundle->vocabulary, venue, source);
    features.values[static_cast<std::size_t>(index)] = score.value;
    features.missing[static_cast<std::size_t>(index)] = score.missing;
  };
  review_slot(Source::kYelp, kFeatReviewYelp);
  review_slot(Source::kTripAdvisor, kFeatReviewTripAdvisor);

  const SeasonDistributionResult seasons = season_distribution(venue, hemisphere);
  features.values[kFeatSeason] =
      seasons.missing ? 0.0 : season_score(context.season, seasons.dist);
  features.missing[kFeatSeason] = seasons.missing;

  const TravelerDistributionResult travelers = traveler_distribution(venue);
  features.values[kFeatTravel] =
      travelers.missing ? 0.0 : travel_score(context, travelers.dist);
  features.missing[kFeatTravel] = travelers.missing;

  return features;
}

std::vector<RankingInstance> assemble_instances(
    const DatasetBundle& bundle, const std::map<std::string, UserModels>& users,
    const PipelineConfig& config) {
  std::vector<RankingInstance> instances;
  for (const SuggestionRequest& request : bundle.requests) {
    const auto user = users.find(request.user_id);
    if (user == users.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no models for user '" + request.user_id + "'");
    }
    for (const std::string& venue_id : request.candidates) {
      const VenueRecord* venue = bundle.catalog.find(venue_id);
      if (venue == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "candidate '" + venue_id + "' not in catalog");
      }
      RankingInstance instance;
      instance.query_id = request.request_id;
      instance.venue_id = venue_id;
      instance.features = assemble_features(user->second, request.context,
                                            *venue, config.hemisphere);
      instance.label = bundle.qrels.grade(request.request_id, venue_id);
      instances.push_back(std::move(instance));
    }
  }
  return instances;
}

namespace {

std::map<std::string, UserModels> build_all_user_models(
    const DatasetBundle& bundle, const PipelineConfig& config) {
  std::map<std::string, UserModels> users;
  for (const UserHistory& history : bundle.histories) {
    users.emplace(history.user_id,
                  build_user_models(history, bundle.catalog, config.svm,
                                    config.seed));
  }
  return users;
}

}  // namespace

TrainedModels train_pipeline(const DatasetBundle& bundle,
                             const PipelineConfig& config) {
  if (bundle.qrels.empty()) {
    throw Error(ErrorCode::kUntrainableDataset,
                "training requires judgments (qrels.jsonl)");
  }
  TrainedModels models;
  models.config = config;
  models.users = build_all_user_models(bundle, config);
  const std::vector<RankingInstance> instances =
      assemble_instances(bundle, models.users, config);
  models.ranker = train_lambdamart(instances, config.ltr);
  return models;
}

std::vector<RunLine> rank_all(const TrainedModels& models,
                              const DatasetBundle& bundle) {
  std::vector<RunLine> lines;
  for (const SuggestionRequest& request : bundle.requests) {
    const auto user = models.users.find(request.user_id);
    if (user == models.users.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no models for user '" + request.user_id + "'");
    }
    std::vector<RankingInstance> instances;
    instances.reserve(request.candidates.size());
    for (const std::string& venue_id : request.candidates) {
      const VenueRecord* venue = bundle.catalog.find(venue_id);
      if (venue == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "candidate '" + venue_id + "' not in catalog");
      }
      RankingInstance instance;
      instance.query_id = request.request_id;
      instance.venue_id = venue_id;
      instance.features =
          assemble_features(user->second, request.context, *venue,
                            models.config.hemisphere);
      instances.push_back(std::move(instance));
    }
    const std::vector<RankedItem> ranked =
        rank_candidates(models.ranker, instances);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      lines.push_back({request.request_id, static_cast<int>(i) + 1,
                       ranked[i].venue_id, ranked[i].score,
                       models.config.run_tag});
    }
  }
  return lines;
}

EvalResult evaluate_run(const std::vector<RunLine>& run, const QrelSet& qrels,
                        int cutoff) {
  if (run.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty run");
  }
  std::map<std::string, std::vector<std::pair<int, std::string>>> grouped;
  for (const RunLine& line : run) {
    grouped[line.request_id].push_back({line.rank, line.venue_id});
  }
  std::map<std::string, std::vector<std::string>> rankings;
  for (auto& [request_id, entries] : grouped) {
    std::sort(entries.begin(), entries.end());
    std::vector<std::string>& ranking = rankings[request_id];
    ranking.reserve(entries.size());
    for (const auto& [rank, venue_id] : entries) ranking.push_back(venue_id);
  }

  EvalResult result;
  result.cutoff = cutoff;
  for (const auto& [request_id, ranking] : rankings) {
    MetricRecord record;
    record.scope = "query:" + request_id;
    record.cutoff = cutoff;
    record.p_at_k = precision_at_k(ranking, qrels, request_id, cutoff);
    record.reciprocal_rank_or_mrr = reciprocal_rank(ranking, qrels, request_id);
    result.mean_p_at_k += record.p_at_k;
    result.per_query.push_back(std::move(record));
  }
  result.mean_p_at_k /= static_cast<double>(rankings.size());
  result.mean_mrr = mrr(rankings, qrels);
  return result;
}

CrossValidationResult cross_validate_bundle(const DatasetBundle& bundle,
                                            const PipelineConfig& config) {
  if (bundle.qrels.empty()) {
    throw Error(ErrorCode::kUntrainableDataset,
                "cross-validation requires judgments (qrels.jsonl)");
  }
  const std::map<std::string, UserModels> users =
      build_all_user_models(bundle, config);
  const std::vector<RankingInstance> instances =
      assemble_instances(bundle, users, config);
  return cross_validate(instances, config.cv_folds, config.seed, config.ltr,
                        config.metric_cutoff);
}

}  // namespace venuerank
