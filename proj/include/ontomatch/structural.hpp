#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ontomatch/alignment.hpp"
#include "ontomatch/matrix.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

enum class Relation : std::size_t { SubclassOf, Domain, Range, TypeOf, ValueLink };
inline constexpr std::size_t kRelationCount = 5;

using Edge = std::pair<std::size_t, std::size_t>;

// Typed directed graph over an ontology's entities. Node indices are matrix
// positions (classes, properties, instances).
struct RelationGraph {
    std::vector<std::string> nodes;
    std::vector<EntityKind> kinds;
    std::array<std::vector<Edge>, kRelationCount> edges;

    const std::vector<Edge>& of(Relation r) const { return edges[static_cast<std::size_t>(r)]; }
    std::vector<Edge>& of(Relation r) { return edges[static_cast<std::size_t>(r)]; }
    std::size_t edge_count() const;
};

struct GmoParams {
    std::size_t max_iterations = 100;
    double epsilon = 1e-6;
    double seed_strength = 1.0;

    // Throws ContractViolation.
    void validate() const;
};

RelationGraph build_graph(const Ontology& ont);

// Marks cells that carry a seed value; cell values are the seed confidences.
struct Seed {
    SimilarityMatrix values;
    std::vector<bool> mask;
};

Seed make_seed(const Ontology& ont1, const Ontology& ont2, const std::vector<Alignment>& seeds);

// One propagation step: every matched edge pair passes the similarity of one
// endpoint pair to the other, the result is scaled by its maximum, seeded
// cells are blended towards their seed and cross-kind cells are zeroed.
SimilarityMatrix gmo_step(const SimilarityMatrix& current, const RelationGraph& g1,
                          const RelationGraph& g2, const Seed& seed, const GmoParams& params);

struct GmoResult {
    SimilarityMatrix matrix;
    std::size_t iterations = 0;
    bool converged = false;
};

GmoResult gmo_run_detailed(const Ontology& ont1, const Ontology& ont2,
                           const std::vector<Alignment>& seed_alignments, const GmoParams& params);

SimilarityMatrix gmo_run(const Ontology& ont1, const Ontology& ont2,
                         const std::vector<Alignment>& seed_alignments, const GmoParams& params = {});

}  // namespace ontomatch
