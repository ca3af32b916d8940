#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "ontomatch/matrix.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

enum class Strategy { Hscw, Max, Min, Average, Sigmoid, Experimental, Harmony };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
std::span<const Strategy> all_strategies();

struct StrategyConfig {
    Strategy strategy = Strategy::Hscw;
    double experimental_w = 0.5;
    // Homogeneous weight for property and instance pairs under Strategy::Hscw.
    double non_class_w = 0.5;
    double sigmoid_slope = 12.0;
    double sigmoid_center = 0.5;

    // Throws ContractViolation.
    void validate() const;
};

// Normalized differences of the six structural counts of two classes, their
// mean, and the resulting combination weight.
struct StructuralDelta {
    double sup = 0.0;
    double sub = 0.0;
    double depth = 0.0;
    double ins = 0.0;
    double prop = 0.0;
    double sib = 0.0;
    double ave = 0.0;
    double hscw = 1.0;

    bool operator==(const StructuralDelta&) const = default;
};

// |a - b| / (a + b), and 0 when both counts are 0.
double feature_term(std::uint32_t a, std::uint32_t b);

StructuralDelta hscw_pair(const StructuralProfile& p1, const StructuralProfile& p2);

// Class pairs get their structural weight, property and instance pairs get
// cfg.non_class_w, cross-kind pairs get 0.
WeightMatrix hscw_matrix(const Ontology& ont1, const Ontology& ont2, const StrategyConfig& cfg);

// Every same-kind cell set to `w`, cross-kind cells 0.
WeightMatrix constant_weights(const EntityAxis& rows, const EntityAxis& cols, double w);

// Per cell: s1 = w*gmo + (1-w)*vdoc, then w*s1 + (1-w)*isub.
SimilarityMatrix twostage_aggregate(const SimilarityMatrix& gmo, const SimilarityMatrix& vdoc,
                                    const SimilarityMatrix& isub, const WeightMatrix& weights);

enum class PointwiseMode { Max, Min, Average, Sigmoid };

SimilarityMatrix pointwise_aggregate(PointwiseMode mode, std::span<const SimilarityMatrix> matrices,
                                     const StrategyConfig& cfg = {});

// Fraction of cells that are the strict maximum of both their row and their
// column, relative to min(rows, cols).
double harmony_of(const SimilarityMatrix& m);

// Harmony-weighted mean; falls back to the plain mean when every harmony is 0.
SimilarityMatrix harmony_aggregate(std::span<const SimilarityMatrix> matrices);

}  // namespace ontomatch
