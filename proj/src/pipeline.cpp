#include "ontomatch/pipeline.hpp"

#include <array>

#include "ontomatch/errors.hpp"

namespace ontomatch {

void PipelineConfig::validate() const {
    strategy.validate();
    lexical.validate();
    gmo.validate();
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ContractViolation("threshold must lie in [0,1]");
    const double seed = effective_seed_threshold();
    if (!(seed >= 0.0 && seed <= 1.0)) throw ContractViolation("seed threshold must lie in [0,1]");
    if (weight_override) require_unit_range(weight_override->cells(), "weight override");
}

MatcherMatrices compute_matchers(const Ontology& ont1, const Ontology& ont2, const PipelineConfig& cfg) {
    cfg.validate();
    MatcherMatrices out;
    out.isub = isub_matrix(ont1, ont2, cfg.lexical);
    out.vdoc = vdoc_matrix(ont1, ont2, cfg.lexical);
    const double seed_threshold = cfg.effective_seed_threshold();
    out.isub_seed = extract_alignment(out.isub, seed_threshold, ont1.name(), ont2.name());
    out.vdoc_seed = extract_alignment(out.vdoc, seed_threshold, ont1.name(), ont2.name());
    out.gmo = gmo_run(ont1, ont2, {out.isub_seed, out.vdoc_seed}, cfg.gmo);
    return out;
}

SimilarityMatrix aggregate(const MatcherMatrices& m, const Ontology& ont1, const Ontology& ont2,
                           const PipelineConfig& cfg) {
    const std::array<SimilarityMatrix, 3> all = {m.gmo, m.vdoc, m.isub};
    switch (cfg.strategy.strategy) {
        case Strategy::Hscw: {
            if (cfg.weight_override) return twostage_aggregate(m.gmo, m.vdoc, m.isub, *cfg.weight_override);
            return twostage_aggregate(m.gmo, m.vdoc, m.isub, hscw_matrix(ont1, ont2, cfg.strategy));
        }
        case Strategy::Experimental:
            return twostage_aggregate(m.gmo, m.vdoc, m.isub,
                                      constant_weights(m.gmo.rows(), m.gmo.cols(), cfg.strategy.experimental_w));
        case Strategy::Max: return pointwise_aggregate(PointwiseMode::Max, all, cfg.strategy);
        case Strategy::Min: return pointwise_aggregate(PointwiseMode::Min, all, cfg.strategy);
        case Strategy::Average: return pointwise_aggregate(PointwiseMode::Average, all, cfg.strategy);
        case Strategy::Sigmoid: return pointwise_aggregate(PointwiseMode::Sigmoid, all, cfg.strategy);
        case Strategy::Harmony: return harmony_aggregate(all);
    }
    throw ContractViolation("unknown strategy");
}

PipelineResult run_pipeline(const Ontology& ont1, const Ontology& ont2, const PipelineConfig& cfg) {
    const MatcherMatrices matchers = compute_matchers(ont1, ont2, cfg);
    SimilarityMatrix final_matrix = aggregate(matchers, ont1, ont2, cfg);
    Alignment alignment = extract_alignment(final_matrix, cfg.threshold, ont1.name(), ont2.name());
    return {std::move(alignment), std::move(final_matrix)};
}

std::vector<SweepPoint> weight_sweep(const Ontology& ont1, const Ontology& ont2, const Alignment& reference,
                                     const std::vector<double>& weights, double threshold,
                                     const PipelineConfig& base) {
    if (weights.empty()) throw ContractViolation("weight sweep needs at least one weight");
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) throw ContractViolation("sweep weight " + std::to_string(w) + " outside [0,1]");
    }
    PipelineConfig cfg = base;
    cfg.threshold = threshold;
    const MatcherMatrices m = compute_matchers(ont1, ont2, cfg);

    std::vector<SweepPoint> curve;
    curve.reserve(weights.size());
    for (double w : weights) {
        const SimilarityMatrix combined =
            twostage_aggregate(m.gmo, m.vdoc, m.isub, constant_weights(m.gmo.rows(), m.gmo.cols(), w));
        const Alignment found = extract_alignment(combined, threshold, ont1.name(), ont2.name());
        curve.push_back({w, evaluate(found, reference).fmeasure});
    }
    return curve;
}

}  // namespace ontomatch
