#include "ontomatch/structural.hpp"

#include <algorithm>
#include <cmath>

#include "ontomatch/errors.hpp"

namespace ontomatch {

std::size_t RelationGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& list : edges) n += list.size();
    return n;
}

void GmoParams::validate() const {
    if (max_iterations < 1) throw ContractViolation("gmo max_iterations must be >= 1");
    if (!(epsilon > 0.0)) throw ContractViolation("gmo epsilon must be > 0");
    if (!(seed_strength >= 0.0 && seed_strength <= 1.0)) {
        throw ContractViolation("gmo seed_strength must lie in [0,1]");
    }
}

RelationGraph build_graph(const Ontology& ont) {
    RelationGraph g;
    g.nodes = ont.entity_ids();
    g.kinds.reserve(ont.entity_count());
    for (std::size_t pos = 0; pos < ont.entity_count(); ++pos) g.kinds.push_back(ont.kind_at(pos));

    auto pos = [&](std::string_view id) { return ont.position_of(ont.resolve(id)); };

    for (std::size_t c = 0; c < ont.classes().size(); ++c) {
        for (std::size_t parent : ont.direct_superclasses(c)) {
            g.of(Relation::SubclassOf).emplace_back(c, parent);
        }
    }
    for (std::size_t p = 0; p < ont.properties().size(); ++p) {
        const PropertyDecl& decl = ont.properties()[p];
        const std::size_t node = ont.position_of({EntityKind::Property, p});
        if (decl.domain) g.of(Relation::Domain).emplace_back(node, pos(*decl.domain));
        if (decl.range && decl.kind == PropertyKind::Object) {
            g.of(Relation::Range).emplace_back(node, pos(*decl.range));
        }
    }
    for (std::size_t i = 0; i < ont.instances().size(); ++i) {
        const InstanceDecl& decl = ont.instances()[i];
        const std::size_t node = ont.position_of({EntityKind::Instance, i});
        for (const std::string& type : decl.types) g.of(Relation::TypeOf).emplace_back(node, pos(type));
        for (const PropertyValue& v : decl.values) {
            const PropertyDecl& prop = ont.properties()[ont.resolve(v.property).index];
            if (prop.kind != PropertyKind::Object) continue;
            Edge e{node, pos(v.value)};
            auto& links = g.of(Relation::ValueLink);
            if (std::find(links.begin(), links.end(), e) == links.end()) links.push_back(e);
        }
    }
    return g;
}

Seed make_seed(const Ontology& ont1, const Ontology& ont2, const std::vector<Alignment>& seeds) {
    Seed seed{SimilarityMatrix(EntityAxis::of(ont1), EntityAxis::of(ont2)), {}};
    seed.mask.assign(seed.values.row_count() * seed.values.col_count(), false);
    for (const Alignment& alignment : seeds) {
        for (const Correspondence& c : alignment.pairs()) {
            auto a = ont1.find(c.e1);
            auto b = ont2.find(c.e2);
            if (!a || !b) {
                throw UnknownEntityError("seed correspondence (" + c.e1 + ", " + c.e2 +
                                         ") refers to an unknown entity");
            }
            const std::size_t r = ont1.position_of(*a);
            const std::size_t col = ont2.position_of(*b);
            double& cell = seed.values(r, col);
            cell = std::max(cell, c.sim);
            seed.mask[r * seed.values.col_count() + col] = true;
        }
    }
    return seed;
}

SimilarityMatrix gmo_step(const SimilarityMatrix& current, const RelationGraph& g1,
                          const RelationGraph& g2, const Seed& seed, const GmoParams& params) {
    const std::size_t rows = g1.nodes.size();
    const std::size_t cols = g2.nodes.size();
    if (current.row_count() != rows || current.col_count() != cols ||
        seed.values.row_count() != rows || seed.values.col_count() != cols ||
        seed.mask.size() != rows * cols) {
        throw ShapeMismatchError("gmo_step: matrix shape does not match the graphs");
    }

    SimilarityMatrix raw(current.rows(), current.cols());
    for (std::size_t r = 0; r < kRelationCount; ++r) {
        for (const auto& [from1, to1] : g1.edges[r]) {
            for (const auto& [from2, to2] : g2.edges[r]) {
                raw(from1, from2) += current(to1, to2);
                raw(to1, to2) += current(from1, from2);
            }
        }
    }

    double peak = 0.0;
    for (double v : raw.cells()) peak = std::max(peak, v);
    if (peak > 0.0) {
        for (double& v : raw.cells()) v /= peak;
    }

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double& cell = raw(i, j);
            if (g1.kinds[i] != g2.kinds[j]) {
                cell = 0.0;
            } else if (seed.mask[i * cols + j]) {
                cell = std::lerp(cell, seed.values(i, j), params.seed_strength);
            }
        }
    }
    return raw;
}

GmoResult gmo_run_detailed(const Ontology& ont1, const Ontology& ont2,
                           const std::vector<Alignment>& seed_alignments, const GmoParams& params) {
    params.validate();
    const RelationGraph g1 = build_graph(ont1);
    const RelationGraph g2 = build_graph(ont2);
    const Seed seed = make_seed(ont1, ont2, seed_alignments);

    GmoResult result{seed.values, 0, false};
    for (std::size_t r = 0; r < result.matrix.row_count(); ++r) {
        for (std::size_t c = 0; c < result.matrix.col_count(); ++c) {
            if (!result.matrix.same_kind(r, c)) result.matrix(r, c) = 0.0;
        }
    }
    while (result.iterations < params.max_iterations) {
        SimilarityMatrix next = gmo_step(result.matrix, g1, g2, seed, params);
        ++result.iterations;
        double delta = 0.0;
        auto prev = result.matrix.cells();
        auto now = next.cells();
        for (std::size_t k = 0; k < now.size(); ++k) delta = std::max(delta, std::abs(now[k] - prev[k]));
        result.matrix = std::move(next);
        if (delta < params.epsilon) {
            result.converged = true;
            break;
        }
    }
    return result;
}

SimilarityMatrix gmo_run(const Ontology& ont1, const Ontology& ont2,
                         const std::vector<Alignment>& seed_alignments, const GmoParams& params) {
    return gmo_run_detailed(ont1, ont2, seed_alignments, params).matrix;
}

}  // namespace ontomatch
