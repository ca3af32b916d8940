#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ontomatch/errors.hpp"
#include "ontomatch/structural.hpp"
#include "gmo_oracle.hpp"
#include "test_support.hpp"

using namespace ontomatch;
using ontomatch::fixtures::classes_only;
using ontomatch::fixtures::Grid;
using ontomatch::fixtures::gmo_oracle;

namespace {

Alignment random_seed(std::mt19937_64& rng, const Ontology& o1, const Ontology& o2) {
    std::vector<Correspondence> pairs;
    std::vector<bool> used(o2.entity_count(), false);
    std::uniform_real_distribution<double> conf(0.3, 1.0);
    for (std::size_t i = 0; i < o1.entity_count(); ++i) {
        if (std::bernoulli_distribution(0.4)(rng)) continue;
        for (std::size_t j = 0; j < o2.entity_count(); ++j) {
            if (!used[j] && o1.kind_at(i) == o2.kind_at(j) && std::bernoulli_distribution(0.5)(rng)) {
                used[j] = true;
                pairs.push_back({o1.id_at(i), o2.id_at(j), conf(rng)});
                break;
            }
        }
    }
    return Alignment(o1.name(), o2.name(), pairs);
}

std::size_t row_argmax(const SimilarityMatrix& m, std::size_t r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < m.col_count(); ++c) {
        if (m(r, c) > m(r, best)) best = c;
    }
    return best;
}

}  // namespace

TEST(BuildGraph, Examples) {
    const RelationGraph one = build_graph(classes_only("o", {{"C", {}}}));
    EXPECT_EQ(one.nodes.size(), 1u);
    EXPECT_EQ(one.edge_count(), 0u);

    const RelationGraph chain = build_graph(classes_only("o", {{"A", {"B"}}, {"B", {}}}));
    EXPECT_EQ(chain.nodes, (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(chain.of(Relation::SubclassOf), (std::vector<Edge>{{0, 1}}));
    EXPECT_EQ(chain.edge_count(), 1u);

    const Ontology inst("o", {{"C", std::nullopt, std::nullopt, {}}},
                        {{"p", std::nullopt, std::nullopt, PropertyKind::Object, std::nullopt, std::nullopt}},
                        {{"i", std::nullopt, std::nullopt, {"C"}, {{"p", "j"}}},
                         {"j", std::nullopt, std::nullopt, {"C"}, {}}});
    const RelationGraph g = build_graph(inst);
    EXPECT_EQ(g.of(Relation::TypeOf), (std::vector<Edge>{{2, 0}, {3, 0}}));
    EXPECT_EQ(g.of(Relation::ValueLink), (std::vector<Edge>{{2, 3}}));
}

TEST(GmoStep, EmptyGraphsZeroSeed) {
    const Ontology o = classes_only("o", {{"A", {}}, {"B", {}}});
    const RelationGraph g = build_graph(o);
    const Seed seed = make_seed(o, o, {});
    const SimilarityMatrix out = gmo_step(seed.values, g, g, seed, {});
    for (double v : out.cells()) EXPECT_EQ(v, 0.0);
}

TEST(GmoStep, TwoNodeChainPropagatesDownwards) {
    const Ontology o1 = classes_only("o1", {{"A", {"B"}}, {"B", {}}});
    const Ontology o2 = classes_only("o2", {{"A2", {"B2"}}, {"B2", {}}});
    const Seed seed = make_seed(o1, o2, {Alignment("o1", "o2", {{"B", "B2", 1.0}})});
    const SimilarityMatrix out = gmo_step(seed.values, build_graph(o1), build_graph(o2), seed, {});
    EXPECT_GT(out(0, 0), out(0, 1));
    EXPECT_EQ(out(1, 1), 1.0);
}

TEST(GmoStep, FullSeedIsReproduced) {
    const Ontology o = fixtures::biblio();
    std::vector<Correspondence> pairs;
    for (const auto& id : o.entity_ids()) pairs.push_back({id, id, 0.75});
    const Seed seed = make_seed(o, o, {Alignment(o.name(), o.name(), pairs)});
    const RelationGraph g = build_graph(o);
    const SimilarityMatrix out = gmo_step(seed.values, g, g, seed, {});
    for (std::size_t i = 0; i < o.entity_count(); ++i) EXPECT_EQ(out(i, i), 0.75);
}

TEST(GmoStep, ShapeMismatch) {
    const Ontology a = classes_only("a", {{"A", {}}});
    const Ontology b = classes_only("b", {{"A", {}}, {"B", {}}});
    const Seed seed = make_seed(a, a, {});
    EXPECT_THROW(gmo_step(seed.values, build_graph(b), build_graph(a), seed, {}), ShapeMismatchError);
}

TEST(GmoRun, SingleClassSeeded) {
    const Ontology o1 = classes_only("o1", {{"C", {}}});
    const Ontology o2 = classes_only("o2", {{"C2", {}}});
    const SimilarityMatrix m = gmo_run(o1, o2, {Alignment("o1", "o2", {{"C", "C2", 1.0}})});
    ASSERT_EQ(m.cells().size(), 1u);
    EXPECT_EQ(m(0, 0), 1.0);
}

TEST(GmoRun, DanglingSeed) {
    const Ontology o = classes_only("o", {{"C", {}}});
    EXPECT_THROW(gmo_run(o, o, {Alignment("o", "o", {{"C", "Missing", 1.0}})}), UnknownEntityError);
}

TEST(GmoRun, FourClassChainConvergesToIsomorphism) {
    const Ontology o1 = classes_only("o1", {{"R", {}}, {"A", {"R"}}, {"B", {"A"}}, {"C", {"B"}}});
    const Ontology o2 = classes_only("o2", {{"R2", {}}, {"A2", {"R2"}}, {"B2", {"A2"}}, {"C2", {"B2"}}});
    const std::vector<Alignment> seeds{Alignment("o1", "o2", {{"R", "R2", 1.0}})};
    const GmoResult result = gmo_run_detailed(o1, o2, seeds, {});
    EXPECT_TRUE(result.converged);
    EXPECT_LE(result.iterations, 50u);
    for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(row_argmax(result.matrix, r), r);

    Grid seed(4, std::vector<double>(4, 0.0));
    std::vector<std::vector<bool>> mask(4, std::vector<bool>(4, false));
    seed[0][0] = 1.0;
    mask[0][0] = true;
    const Grid oracle = gmo_oracle(o1, o2, seed, mask, 1.0, 100, 1e-6);
    for (std::size_t r = 0; r < 4; ++r) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < 4; ++c) {
            if (oracle[r][c] > oracle[r][best]) best = c;
        }
        EXPECT_EQ(best, r);
    }
}

TEST(GmoRun, KindBlocking) {
    const Ontology classes = classes_only("c", {{"A", {}}, {"B", {"A"}}});
    const Ontology instances("i", {{"K", std::nullopt, std::nullopt, {}}}, {},
                             {{"x", std::nullopt, std::nullopt, {"K"}, {}}, {"y", std::nullopt, std::nullopt, {"K"}, {}}});
    const SimilarityMatrix m = gmo_run(classes, instances, {Alignment("c", "i", {{"A", "K", 1.0}})});
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        for (std::size_t c = 0; c < m.col_count(); ++c) {
            if (!m.same_kind(r, c)) EXPECT_EQ(m(r, c), 0.0);
        }
    }
}

TEST(GmoRun, MatchesBruteForceOracle) {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> nc(1, 3), np(0, 1), ni(0, 2);
    for (int round = 0; round < 300; ++round) {
        const Ontology o1 = fixtures::random_ontology(rng, nc(rng), np(rng), ni(rng), "o1");
        const Ontology o2 = fixtures::random_ontology(rng, nc(rng), np(rng), ni(rng), "o2");
        ASSERT_LE(o1.entity_count(), 6u);
        ASSERT_LE(o2.entity_count(), 6u);
        const Alignment seed_a = random_seed(rng, o1, o2);
        GmoParams params;
        params.seed_strength = round % 3 == 0 ? 0.5 : 1.0;

        Grid seed(o1.entity_count(), std::vector<double>(o2.entity_count(), 0.0));
        std::vector<std::vector<bool>> mask(o1.entity_count(), std::vector<bool>(o2.entity_count(), false));
        for (const auto& c : seed_a.pairs()) {
            const std::size_t i = o1.position_of(o1.resolve(c.e1));
            const std::size_t j = o2.position_of(o2.resolve(c.e2));
            seed[i][j] = c.sim;
            mask[i][j] = true;
        }
        const SimilarityMatrix got = gmo_run(o1, o2, {seed_a}, params);
        const Grid want = gmo_oracle(o1, o2, seed, mask, params.seed_strength, 100, 1e-6);
        for (std::size_t i = 0; i < o1.entity_count(); ++i) {
            for (std::size_t j = 0; j < o2.entity_count(); ++j) {
                ASSERT_NEAR(got(i, j), want[i][j], 1e-9) << "round " << round << " cell " << i << "," << j;
            }
        }
    }
}

TEST(GmoRun, BoundedDeterministicAndRenameInvariant) {
    const Ontology ont = fixtures::biblio();
    auto rename = [](const std::string& id) { return "n_" + id; };
    const Ontology other = fixtures::renamed(ont, rename, "other");
    std::vector<Correspondence> pairs, renamed_pairs;
    for (std::size_t c = 0; c < 10; ++c) {
        pairs.push_back({ont.classes()[c].id, ont.classes()[c].id, 0.9});
        renamed_pairs.push_back({rename(ont.classes()[c].id), rename(ont.classes()[c].id), 0.9});
    }
    const SimilarityMatrix m1 = gmo_run(ont, ont, {Alignment("a", "b", pairs)});
    const SimilarityMatrix m2 = gmo_run(ont, ont, {Alignment("a", "b", pairs)});
    const SimilarityMatrix m3 = gmo_run(other, other, {Alignment("a", "b", renamed_pairs)});
    EXPECT_EQ(m1, m2);
    ASSERT_EQ(m1.cells().size(), m3.cells().size());
    for (std::size_t k = 0; k < m1.cells().size(); ++k) {
        EXPECT_EQ(m1.cells()[k], m3.cells()[k]);
        EXPECT_GE(m1.cells()[k], 0.0);
        EXPECT_LE(m1.cells()[k], 1.0);
    }
}

TEST(GmoParams, Validation) {
    GmoParams p;
    EXPECT_NO_THROW(p.validate());
    p.max_iterations = 0;
    EXPECT_THROW(p.validate(), ContractViolation);
    p = {};
    p.epsilon = 0.0;
    EXPECT_THROW(p.validate(), ContractViolation);
    p = {};
    p.seed_strength = 1.5;
    EXPECT_THROW(p.validate(), ContractViolation);
}
