#pragma once

#include <optional>
#include <vector>

#include "ontomatch/aggregation.hpp"
#include "ontomatch/alignment.hpp"
#include "ontomatch/evaluation.hpp"
#include "ontomatch/lexical.hpp"
#include "ontomatch/matrix.hpp"
#include "ontomatch/ontology.hpp"
#include "ontomatch/structural.hpp"

namespace ontomatch {

struct PipelineConfig {
    StrategyConfig strategy;
    double threshold = 0.5;
    // Threshold for the preliminary ISub/VDoc alignments that seed GMO;
    // defaults to `threshold`.
    std::optional<double> seed_threshold;
    LexicalParams lexical;
    GmoParams gmo;
    // Replaces the computed structural weights under Strategy::Hscw.
    std::optional<WeightMatrix> weight_override;

    double effective_seed_threshold() const { return seed_threshold.value_or(threshold); }
    // Throws ContractViolation.
    void validate() const;
};

// The three matcher outputs for one ontology pair, independent of strategy.
struct MatcherMatrices {
    SimilarityMatrix isub;
    SimilarityMatrix vdoc;
    SimilarityMatrix gmo;
    Alignment isub_seed;
    Alignment vdoc_seed;
};

MatcherMatrices compute_matchers(const Ontology& ont1, const Ontology& ont2, const PipelineConfig& cfg);

SimilarityMatrix aggregate(const MatcherMatrices& matchers, const Ontology& ont1, const Ontology& ont2,
                           const PipelineConfig& cfg);

struct PipelineResult {
    Alignment alignment;
    SimilarityMatrix matrix;
};

// ISub and VDoc first, their preliminary alignments seed GMO, the three
// matrices are combined per cfg.strategy and the result is extracted at
// cfg.threshold.
PipelineResult run_pipeline(const Ontology& ont1, const Ontology& ont2, const PipelineConfig& cfg);

// F-measure of the two-stage combination under each constant weight, in input
// order. Matcher matrices are computed once.
std::vector<SweepPoint> weight_sweep(const Ontology& ont1, const Ontology& ont2, const Alignment& reference,
                                     const std::vector<double>& weights, double threshold,
                                     const PipelineConfig& base = {});

}  // namespace ontomatch
