#include "ontomatch/benchgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ontomatch/errors.hpp"

namespace ontomatch {

using nlohmann::ordered_json;

void MutationSpec::validate() const {
    for (double f : {rename_fraction, flatten_fraction, drop_instances_fraction, drop_properties_fraction}) {
        if (!(f >= 0.0 && f <= 1.0)) throw ContractViolation("mutation fractions must lie in [0,1]");
    }
}

namespace {

// Each mutation stage draws from its own stream so that enabling one stage
// never shifts the choices made by another.
enum class Stage : std::uint32_t { Rename = 1, Flatten = 2, DropInstances = 3, DropProperties = 4 };

std::mt19937_64 stage_rng(std::uint64_t seed, Stage stage) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stage)};
    return std::mt19937_64(seq);
}

std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

// Marks round(fraction * n) of n items, chosen by a partial Fisher-Yates pass.
std::vector<bool> choose(std::size_t n, double fraction, std::mt19937_64& rng) {
    const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        std::swap(order[i], order[i + draw_below(rng, n - i)]);
    }
    std::vector<bool> picked(n, false);
    for (std::size_t i = 0; i < std::min(k, n); ++i) picked[order[i]] = true;
    return picked;
}

std::string random_identifier(std::mt19937_64& rng) {
    static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyz";
    std::string id(8, 'a');
    for (char& ch : id) ch = letters[draw_below(rng, letters.size())];
    return id;
}

std::string scrambled_identifier(const std::string& id, std::mt19937_64& rng) {
    std::string out = id;
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[draw_below(rng, i)]);
    return out;
}

struct Declarations {
    std::vector<ClassDecl> classes;
    std::vector<PropertyDecl> properties;
    std::vector<InstanceDecl> instances;
};

void rename_entities(Declarations& d, const Ontology& ont, const MutationSpec& spec,
                     std::unordered_map<std::string, std::string>& renamed) {
    if (spec.rename_fraction <= 0.0) return;
    std::mt19937_64 rng = stage_rng(spec.rng_seed, Stage::Rename);
    const std::vector<bool> picked = choose(ont.entity_count(), spec.rename_fraction, rng);

    std::unordered_set<std::string> taken;
    for (const std::string& id : ont.entity_ids()) taken.insert(id);

    for (std::size_t pos = 0; pos < ont.entity_count(); ++pos) {
        if (!picked[pos]) continue;
        const std::string& old_id = ont.id_at(pos);
        std::string fresh;
        if (spec.rename_mode == RenameMode::Random) {
            do {
                fresh = random_identifier(rng);
            } while (taken.count(fresh) != 0);
        } else {
            fresh = scrambled_identifier(old_id, rng);
            for (int attempt = 0; attempt < 8 && taken.count(fresh) != 0; ++attempt) {
                fresh = scrambled_identifier(old_id, rng);
            }
            for (std::size_t suffix = 1; taken.count(fresh) != 0; ++suffix) {
                fresh = scrambled_identifier(old_id, rng) + "_" + std::to_string(suffix);
            }
        }
        taken.insert(fresh);
        renamed.emplace(old_id, std::move(fresh));
    }

    auto map_id = [&](std::string& id) {
        auto it = renamed.find(id);
        if (it != renamed.end()) id = it->second;
    };
    for (ClassDecl& c : d.classes) {
        map_id(c.id);
        for (std::string& s : c.superclasses) map_id(s);
    }
    for (PropertyDecl& p : d.properties) {
        map_id(p.id);
        if (p.domain) map_id(*p.domain);
        if (p.range && p.kind == PropertyKind::Object) map_id(*p.range);
    }
    std::unordered_set<std::string> object_props;
    for (const PropertyDecl& p : ont.properties()) {
        if (p.kind == PropertyKind::Object) object_props.insert(p.id);
    }
    for (InstanceDecl& inst : d.instances) {
        map_id(inst.id);
        for (std::string& t : inst.types) map_id(t);
        for (PropertyValue& v : inst.values) {
            const bool entity_valued = object_props.count(v.property) != 0;
            map_id(v.property);
            if (entity_valued) map_id(v.value);
        }
    }
}

void flatten_hierarchy(Declarations& d, const Ontology& ont, const MutationSpec& spec) {
    if (spec.flatten_fraction <= 0.0) return;
    std::mt19937_64 rng = stage_rng(spec.rng_seed, Stage::Flatten);

    // Only classes with at least one grandparent can move up.
    std::vector<std::size_t> eligible;
    for (std::size_t c = 0; c < ont.classes().size(); ++c) {
        auto parents = ont.direct_superclasses(c);
        if (std::any_of(parents.begin(), parents.end(),
                        [&](std::size_t p) { return !ont.direct_superclasses(p).empty(); })) {
            eligible.push_back(c);
        }
    }
    const std::vector<bool> picked = choose(eligible.size(), spec.flatten_fraction, rng);

    // Grandparents come from the original hierarchy, so the outcome does not
    // depend on the order in which selected classes are processed.
    for (std::size_t k = 0; k < eligible.size(); ++k) {
        if (!picked[k]) continue;
        const std::size_t c = eligible[k];
        std::vector<std::string> lifted;
        for (std::size_t parent : ont.direct_superclasses(c)) {
            auto grandparents = ont.direct_superclasses(parent);
            if (grandparents.empty()) {
                // Keep a root parent rather than detaching the class entirely.
                lifted.push_back(d.classes[parent].id);
            }
            for (std::size_t g : grandparents) lifted.push_back(d.classes[g].id);
        }
        std::vector<std::string> unique;
        for (std::string& id : lifted) {
            if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(std::move(id));
        }
        d.classes[c].superclasses = std::move(unique);
    }
}

void drop_entities(Declarations& d, const MutationSpec& spec) {
    std::unordered_set<std::string> dropped_instances;
    if (spec.drop_instances_fraction > 0.0) {
        std::mt19937_64 rng = stage_rng(spec.rng_seed, Stage::DropInstances);
        const std::vector<bool> picked = choose(d.instances.size(), spec.drop_instances_fraction, rng);
        std::vector<InstanceDecl> kept;
        for (std::size_t i = 0; i < d.instances.size(); ++i) {
            if (picked[i]) {
                dropped_instances.insert(d.instances[i].id);
            } else {
                kept.push_back(std::move(d.instances[i]));
            }
        }
        d.instances = std::move(kept);
    }

    std::unordered_set<std::string> dropped_properties;
    if (spec.drop_properties_fraction > 0.0) {
        std::mt19937_64 rng = stage_rng(spec.rng_seed, Stage::DropProperties);
        const std::vector<bool> picked = choose(d.properties.size(), spec.drop_properties_fraction, rng);
        std::vector<PropertyDecl> kept;
        for (std::size_t p = 0; p < d.properties.size(); ++p) {
            if (picked[p]) {
                dropped_properties.insert(d.properties[p].id);
            } else {
                kept.push_back(std::move(d.properties[p]));
            }
        }
        d.properties = std::move(kept);
    }

    if (dropped_instances.empty() && dropped_properties.empty()) return;
    std::unordered_set<std::string> object_props;
    for (const PropertyDecl& p : d.properties) {
        if (p.kind == PropertyKind::Object) object_props.insert(p.id);
    }
    for (InstanceDecl& inst : d.instances) {
        std::erase_if(inst.values, [&](const PropertyValue& v) {
            if (dropped_properties.count(v.property) != 0) return true;
            return object_props.count(v.property) != 0 && dropped_instances.count(v.value) != 0;
        });
    }
}

}  // namespace

Mutation mutate(const Ontology& ont, const MutationSpec& spec) {
    spec.validate();
    Declarations d{ont.classes(), ont.properties(), ont.instances()};

    std::unordered_map<std::string, std::string> renamed;
    rename_entities(d, ont, spec, renamed);

    if (spec.drop_labels || spec.drop_comments) {
        auto strip = [&](auto& decl) {
            if (spec.drop_labels) decl.label.reset();
            if (spec.drop_comments) decl.comment.reset();
        };
        for (auto& c : d.classes) strip(c);
        for (auto& p : d.properties) strip(p);
        for (auto& i : d.instances) strip(i);
    }

    flatten_hierarchy(d, ont, spec);
    drop_entities(d, spec);

    Ontology mutated(ont.name(), std::move(d.classes), std::move(d.properties), std::move(d.instances));

    std::vector<Correspondence> pairs;
    for (const std::string& original : ont.entity_ids()) {
        auto it = renamed.find(original);
        const std::string& now = it == renamed.end() ? original : it->second;
        if (mutated.find(now)) pairs.push_back({original, now, 1.0, std::string(kEquivalence)});
    }
    Alignment reference(ont.name(), mutated.name(), std::move(pairs));
    return {std::move(mutated), std::move(reference)};
}

// ---------------------------------------------------------------------------
// Suites

namespace {

constexpr std::array<int, 4> kLevels = {2, 4, 6, 8};

Ontology with_name(const Ontology& ont, std::string name) {
    return Ontology(std::move(name), ont.classes(), ont.properties(), ont.instances());
}

MutationSpec linguistic(int level) {
    MutationSpec spec;
    spec.rename_fraction = level / 10.0;
    spec.rename_mode = RenameMode::Random;
    spec.drop_labels = true;
    spec.drop_comments = true;
    return spec;
}

MutationSpec structural(int level) {
    MutationSpec spec;
    spec.flatten_fraction = level / 10.0;
    spec.drop_instances_fraction = level / 10.0;
    spec.drop_properties_fraction = level / 10.0;
    return spec;
}

ordered_json spec_to_json(const MutationSpec& s) {
    ordered_json j;
    j["rename_fraction"] = s.rename_fraction;
    j["rename_mode"] = s.rename_mode == RenameMode::Random ? "random" : "scramble";
    j["drop_comments"] = s.drop_comments;
    j["drop_labels"] = s.drop_labels;
    j["flatten_fraction"] = s.flatten_fraction;
    j["drop_instances_fraction"] = s.drop_instances_fraction;
    j["drop_properties_fraction"] = s.drop_properties_fraction;
    j["rng_seed"] = s.rng_seed;
    return j;
}

MutationSpec spec_from_json(const nlohmann::json& j) {
    try {
        MutationSpec s;
        s.rename_fraction = j.at("rename_fraction").get<double>();
        const std::string mode = j.at("rename_mode").get<std::string>();
        if (mode == "random") {
            s.rename_mode = RenameMode::Random;
        } else if (mode == "scramble") {
            s.rename_mode = RenameMode::Scramble;
        } else {
            throw SchemaError("unknown rename_mode '" + mode + "'");
        }
        s.drop_comments = j.at("drop_comments").get<bool>();
        s.drop_labels = j.at("drop_labels").get<bool>();
        s.flatten_fraction = j.at("flatten_fraction").get<double>();
        s.drop_instances_fraction = j.at("drop_instances_fraction").get<double>();
        s.drop_properties_fraction = j.at("drop_properties_fraction").get<double>();
        s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad mutation spec in manifest: ") + e.what());
    }
}

}  // namespace

Suite gen_suite(const Ontology& ont, std::uint64_t base_seed) {
    if (ont.classes().size() < kMinSeedClasses || ont.properties().size() < kMinSeedProperties ||
        ont.instances().size() < kMinSeedInstances) {
        throw FormatError("seed ontology '" + ont.name() + "' needs at least " +
                          std::to_string(kMinSeedClasses) + " classes, " +
                          std::to_string(kMinSeedProperties) + " properties and " +
                          std::to_string(kMinSeedInstances) + " instances");
    }

    struct Plan {
        std::string group;
        std::string id;
        MutationSpec spec;
    };
    std::vector<Plan> plans;
    plans.push_back({"group-101", "101", MutationSpec{}});
    for (int level : kLevels) plans.push_back({"group-2xx", "202-" + std::to_string(level), linguistic(level)});
    for (int level : kLevels) plans.push_back({"group-22x", "221-" + std::to_string(level), structural(level)});
    for (int lex : kLevels) {
        for (int str : kLevels) {
            MutationSpec spec = linguistic(lex);
            const MutationSpec s = structural(str);
            spec.flatten_fraction = s.flatten_fraction;
            spec.drop_instances_fraction = s.drop_instances_fraction;
            spec.drop_properties_fraction = s.drop_properties_fraction;
            plans.push_back({"group-24x", "248-" + std::to_string(lex) + "-" + std::to_string(str), spec});
        }
    }

    Suite suite{ont.name(), base_seed, ont, {}};
    for (std::size_t index = 0; index < plans.size(); ++index) {
        Plan& plan = plans[index];
        plan.spec.rng_seed = base_seed + index;
        Mutation m = mutate(ont, plan.spec);
        std::string target_name = ont.name() + "-" + plan.id;
        Alignment reference(ont.name(), target_name, m.reference.pairs());
        suite.tests.push_back({plan.group, plan.id, plan.spec, with_name(m.ontology, target_name),
                               std::move(reference)});
    }
    return suite;
}

void write_suite(const Suite& suite, const std::filesystem::path& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create '" + out.string() + "': " + ec.message());

    save_ontology(suite.source, out / "source.ont.json");
    ordered_json manifest;
    manifest["suite"] = suite.name;
    manifest["base_seed"] = suite.base_seed;
    manifest["source"] = "source.ont.json";
    manifest["tests"] = ordered_json::array();
    for (const SuiteTest& test : suite.tests) {
        const fs::path rel = fs::path(test.group) / test.id;
        fs::create_directories(out / rel, ec);
        if (ec) throw IoError("cannot create '" + (out / rel).string() + "': " + ec.message());
        save_ontology(test.target, out / rel / "target.ont.json");
        write_alignment(test.reference, out / rel / "reference.align.json");

        ordered_json entry;
        entry["group"] = test.group;
        entry["id"] = test.id;
        entry["target"] = (rel / "target.ont.json").generic_string();
        entry["reference"] = (rel / "reference.align.json").generic_string();
        entry["spec"] = spec_to_json(test.spec);
        manifest["tests"].push_back(std::move(entry));
    }
    write_text_file(out / "manifest.json", manifest.dump(2) + "\n");
}

Suite read_suite(const std::filesystem::path& dir) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid suite manifest: ") + e.what());
    }
    try {
        Suite suite{manifest.at("suite").get<std::string>(), manifest.at("base_seed").get<std::uint64_t>(),
                    load_ontology(dir / manifest.at("source").get<std::string>()), {}};
        for (const auto& entry : manifest.at("tests")) {
            suite.tests.push_back({entry.at("group").get<std::string>(), entry.at("id").get<std::string>(),
                                   spec_from_json(entry.at("spec")),
                                   load_ontology(dir / entry.at("target").get<std::string>()),
                                   read_alignment(dir / entry.at("reference").get<std::string>())});
        }
        return suite;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid suite manifest: ") + e.what());
    }
}

}  // namespace ontomatch
