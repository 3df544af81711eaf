// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 venuerank contributors

#pragma once

#include <map>
#include <string>
#include <vector>

#include "venuerank/config.hpp"
#include "venuerank/dataset_io.hpp"
#include "venuerank/model_io.hpp"

namespace venuerank {

/// Profiles and per-source review classifiers for one user. Sources whose
/// training set underflows are simply left without a model; their features
/// default to zero with the missing flag set.
UserModels build_user_models(const UserHistory& history, const Catalog& catalog,
                             const SvmConfig& svm_config,
                             std::uint64_t global_seed);

/// Packs the seven component scores for one (user, venue, context) into the
/// fixed feature layout, flagging every slot that defaulted for absent data.
FeatureVector assemble_features(const UserModels& user,
                                const ContextSignals& context,
                                const VenueRecord& venue,
                                Hemisphere hemisphere = Hemisphere::kNorthern);

/// Feature vectors for every (request, candidate) pair, grouped by request in
/// file order; labels come from the bundle's judgments (unjudged = 0).
std::vector<RankingInstance> assemble_instances(
    const DatasetBundle& bundle, const std::map<std::string, UserModels>& users,
    const PipelineConfig& config);

/// Full training pass: per-user models, then the ranking ensemble over all
/// requests. Requires judgments in the bundle.
TrainedModels train_pipeline(const DatasetBundle& bundle,
                             const PipelineConfig& config);

/// Ranked run lines for every request in the bundle.
std::vector<RunLine> rank_all(const TrainedModels& models,
                              const DatasetBundle& bundle);

struct EvalResult {
  std::vector<MetricRecord> per_query;
  double mean_p_at_k = 0.0;
  double mean_mrr = 0.0;
  int cutoff = 5;
};

/// Scores an existing run against judgments.
EvalResult evaluate_run(const std::vector<RunLine>& run, const QrelSet& qrels,
                        int cutoff);

/// The evaluation protocol: queries split into folds, per-user models built
/// once from user-local data (they never see judgments), the ranker retrained
/// per fold on the training folds only.
CrossValidationResult cross_validate_bundle(const DatasetBundle& bundle,
                                            const PipelineConfig& config);

}  // namespace venuerank
