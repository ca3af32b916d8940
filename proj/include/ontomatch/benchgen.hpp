#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ontomatch/alignment.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

enum class RenameMode { Scramble, Random };

struct MutationSpec {
    double rename_fraction = 0.0;
    RenameMode rename_mode = RenameMode::Random;
    bool drop_comments = false;
    bool drop_labels = false;
    double flatten_fraction = 0.0;
    double drop_instances_fraction = 0.0;
    double drop_properties_fraction = 0.0;
    std::uint64_t rng_seed = 0;

    // Throws ContractViolation.
    void validate() const;
    bool operator==(const MutationSpec&) const = default;
};

struct Mutation {
    Ontology ontology;
    // Original entity -> surviving mutated entity, sim 1.
    Alignment reference;
};

// Applies, in order: renaming, label/comment removal, hierarchy flattening
// (selected classes move up to their grandparents), instance and property
// removal. Same input and spec always give the same output.
Mutation mutate(const Ontology& ont, const MutationSpec& spec);

struct SuiteTest {
    std::string group;
    std::string id;
    MutationSpec spec;
    Ontology target;
    Alignment reference;
};

struct Suite {
    std::string name;
    std::uint64_t base_seed = 0;
    Ontology source;
    std::vector<SuiteTest> tests;
};

inline constexpr std::size_t kMinSeedClasses = 10;
inline constexpr std::size_t kMinSeedProperties = 5;
inline constexpr std::size_t kMinSeedInstances = 5;

// 25 tests: identity (group-101), linguistic-only (group-2xx), structural-only
// (group-22x) and their 4x4 combination (group-24x). Throws FormatError when
// the seed ontology is too small.
Suite gen_suite(const Ontology& ont, std::uint64_t base_seed);

// <out>/source.ont.json, <out>/manifest.json and, per test,
// <out>/<group>/<id>/{target.ont.json,reference.align.json}.
void write_suite(const Suite& suite, const std::filesystem::path& out);
Suite read_suite(const std::filesystem::path& dir);

}  // namespace ontomatch
