#include "ontomatch/alignment.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "ontomatch/errors.hpp"

namespace ontomatch {

using nlohmann::json;
using nlohmann::ordered_json;

Alignment::Alignment(std::string onto1, std::string onto2, std::vector<Correspondence> pairs)
    : onto1_(std::move(onto1)), onto2_(std::move(onto2)), pairs_(std::move(pairs)) {
    std::unordered_set<std::string> left;
    std::unordered_set<std::string> right;
    for (const Correspondence& c : pairs_) {
        if (!(c.sim >= 0.0 && c.sim <= 1.0)) {
            throw AlignmentFormatError("similarity " + std::to_string(c.sim) + " of (" + c.e1 +
                                       ", " + c.e2 + ") outside [0,1]");
        }
        if (c.relation != kEquivalence) {
            throw AlignmentFormatError("unsupported relation '" + c.relation + "'");
        }
        if (!left.insert(c.e1).second) {
            throw AlignmentFormatError("entity '" + c.e1 + "' appears in two correspondences");
        }
        if (!right.insert(c.e2).second) {
            throw AlignmentFormatError("entity '" + c.e2 + "' appears in two correspondences");
        }
    }
}

std::set<std::pair<std::string, std::string>> Alignment::entity_pairs() const {
    std::set<std::pair<std::string, std::string>> out;
    for (const Correspondence& c : pairs_) out.emplace(c.e1, c.e2);
    return out;
}

bool Alignment::contains(std::string_view e1, std::string_view e2) const {
    return std::any_of(pairs_.begin(), pairs_.end(),
                       [&](const Correspondence& c) { return c.e1 == e1 && c.e2 == e2; });
}

bool Alignment::equivalent(const Alignment& other) const {
    if (onto1_ != other.onto1_ || onto2_ != other.onto2_ || size() != other.size()) return false;
    auto key = [](const Correspondence& c) { return std::tie(c.e1, c.e2, c.sim, c.relation); };
    auto sorted = [&](std::vector<Correspondence> v) {
        std::sort(v.begin(), v.end(),
                  [&](const auto& a, const auto& b) { return key(a) < key(b); });
        return v;
    };
    return sorted(pairs_) == sorted(other.pairs_);
}

SimilarityMatrix pairwise_matrix(const PairScorer& scorer, const Ontology& ont1,
                                 const Ontology& ont2) {
    SimilarityMatrix out(EntityAxis::of(ont1), EntityAxis::of(ont2));
    for (std::size_t r = 0; r < out.row_count(); ++r) {
        for (std::size_t c = 0; c < out.col_count(); ++c) {
            if (!out.same_kind(r, c)) continue;
            double v = scorer(r, c);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ContractViolation("scorer returned " + std::to_string(v) + " for (" +
                                        out.rows().ids[r] + ", " + out.cols().ids[c] + ")");
            }
            out(r, c) = v;
        }
    }
    return out;
}

Alignment extract_alignment(const SimilarityMatrix& sim, double threshold, std::string onto1,
                            std::string onto2) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ContractViolation("threshold " + std::to_string(threshold) + " outside [0,1]");
    }
    struct Cell {
        double value;
        std::size_t row;
        std::size_t col;
    };
    std::vector<Cell> candidates;
    for (std::size_t r = 0; r < sim.row_count(); ++r) {
        for (std::size_t c = 0; c < sim.col_count(); ++c) {
            if (sim.same_kind(r, c) && sim(r, c) >= threshold) candidates.push_back({sim(r, c), r, c});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Cell& a, const Cell& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });

    std::vector<bool> row_used(sim.row_count(), false);
    std::vector<bool> col_used(sim.col_count(), false);
    std::vector<Correspondence> pairs;
    for (const Cell& cell : candidates) {
        if (row_used[cell.row] || col_used[cell.col]) continue;
        row_used[cell.row] = true;
        col_used[cell.col] = true;
        pairs.push_back({sim.rows().ids[cell.row], sim.cols().ids[cell.col], cell.value,
                         std::string(kEquivalence)});
    }
    return Alignment(std::move(onto1), std::move(onto2), std::move(pairs));
}

std::string serialize_alignment(const Alignment& alignment) {
    std::vector<Correspondence> pairs = alignment.pairs();
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::tie(a.e1, a.e2) < std::tie(b.e1, b.e2);
    });
    ordered_json root;
    root["onto1"] = alignment.onto1();
    root["onto2"] = alignment.onto2();
    root["pairs"] = ordered_json::array();
    for (const Correspondence& c : pairs) {
        ordered_json rec;
        rec["e1"] = c.e1;
        rec["e2"] = c.e2;
        rec["sim"] = c.sim;
        rec["relation"] = c.relation;
        root["pairs"].push_back(std::move(rec));
    }
    return root.dump(2) + "\n";
}

namespace {

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError("alignment record missing '" + std::string(key) + "'");
    return *it;
}

std::string string_field(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_string()) throw SchemaError("alignment field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SchemaError("unknown key '" + key + "' in alignment");
        }
    }
}

}  // namespace

Alignment parse_alignment(std::string_view source) {
    json root;
    try {
        root = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < source.size(); ++i) {
            if (source[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SyntaxError("invalid JSON", line, column);
    }
    if (!root.is_object()) throw SchemaError("alignment document must be an object");
    only_keys(root, {"onto1", "onto2", "pairs"});
    const json& pairs = field(root, "pairs");
    if (!pairs.is_array()) throw SchemaError("alignment 'pairs' must be an array");

    std::vector<Correspondence> out;
    for (const json& rec : pairs) {
        if (!rec.is_object()) throw SchemaError("alignment record must be an object");
        only_keys(rec, {"e1", "e2", "sim", "relation"});
        const json& sim = field(rec, "sim");
        if (!sim.is_number()) throw SchemaError("alignment field 'sim' must be a number");
        out.push_back({string_field(rec, "e1"), string_field(rec, "e2"), sim.get<double>(),
                       string_field(rec, "relation")});
    }
    return Alignment(string_field(root, "onto1"), string_field(root, "onto2"), std::move(out));
}

void write_alignment(const Alignment& alignment, const std::filesystem::path& path) {
    write_text_file(path, serialize_alignment(alignment));
}

Alignment read_alignment(const std::filesystem::path& path) {
    return parse_alignment(read_text_file(path));
}

}  // namespace ontomatch
