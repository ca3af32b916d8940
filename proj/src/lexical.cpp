#include "ontomatch/lexical.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>

#include "ontomatch/alignment.hpp"
#include "ontomatch/errors.hpp"

namespace ontomatch {

void LexicalParams::validate() const {
    if (!(isub_diff_p > 0.0 && isub_diff_p <= 1.0)) {
        throw ContractViolation("isub_diff_p must lie in (0,1]");
    }
    for (double w : {winkler_scale, vdoc_name_w, vdoc_label_w, vdoc_comment_w, vdoc_neighbor_w}) {
        if (!(w >= 0.0)) throw ContractViolation("lexical weights must be non-negative");
    }
}

namespace {

constexpr std::array<std::string_view, 20> kStopwords = {
    "the", "a",  "an", "of",   "in", "on",   "for", "to",   "and",  "or",
    "is",  "are", "by", "with", "at", "from", "as",  "that", "this", "be"};

// Bytes >= 0x80 belong to multi-byte UTF-8 sequences and stay inside tokens.
bool is_word_byte(unsigned char ch) { return std::isalnum(ch) != 0 || ch >= 0x80; }
bool is_lower(unsigned char ch) { return ch >= 'a' && ch <= 'z'; }
bool is_upper(unsigned char ch) { return ch >= 'A' && ch <= 'Z'; }

std::string lowercase(std::string_view text) {
    std::string out(text);
    for (char& ch : out) {
        if (is_upper(static_cast<unsigned char>(ch))) ch = static_cast<char>(ch - 'A' + 'a');
    }
    return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            std::string token = lowercase(current);
            if (std::find(kStopwords.begin(), kStopwords.end(), token) == kStopwords.end()) {
                tokens.push_back(std::move(token));
            }
            current.clear();
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto ch = static_cast<unsigned char>(text[i]);
        if (!is_word_byte(ch)) {
            flush();
            continue;
        }
        if (is_upper(ch) && i > 0 && is_lower(static_cast<unsigned char>(text[i - 1]))) flush();
        current.push_back(static_cast<char>(ch));
    }
    flush();
    return tokens;
}

std::string_view local_name(std::string_view id) {
    auto cut = id.find_last_of("#/:");
    if (cut == std::string_view::npos || cut + 1 == id.size()) return id;
    return id.substr(cut + 1);
}

// ---------------------------------------------------------------------------
// ISub

namespace {

struct Substring {
    std::size_t pos1 = 0;
    std::size_t pos2 = 0;
    std::size_t length = 0;
};

// Longest common substring; ties go to the earliest start in `a`, then `b`.
Substring longest_common_substring(const std::string& a, const std::string& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    // run[i][j] = length of the common prefix of a[i..] and b[j..]
    std::vector<std::size_t> run((n + 1) * (m + 1), 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return run[i * (m + 1) + j]; };
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : 0;
        }
    }
    Substring best;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (at(i, j) > best.length) best = {i, j, at(i, j)};
        }
    }
    return best;
}

}  // namespace

double isub_score(std::string_view s1, std::string_view s2, const LexicalParams& params) {
    std::string a = lowercase(s1);
    std::string b = lowercase(s2);
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.5;
    if (a == b) return 1.0;
    // Canonical argument order keeps substring tie-breaking symmetric.
    if (b.size() < a.size() || (b.size() == a.size() && b < a)) std::swap(a, b);

    const double len1 = static_cast<double>(a.size());
    const double len2 = static_cast<double>(b.size());

    std::size_t prefix = 0;
    while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;

    std::size_t common = 0;
    for (;;) {
        Substring best = longest_common_substring(a, b);
        if (best.length < 2) break;
        common += best.length;
        a.erase(best.pos1, best.length);
        b.erase(best.pos2, best.length);
    }

    const double comm = 2.0 * static_cast<double>(common) / (len1 + len2);
    const double unmatched1 = (len1 - static_cast<double>(common)) / len1;
    const double unmatched2 = (len2 - static_cast<double>(common)) / len2;
    const double p = params.isub_diff_p;
    const double diff = unmatched1 * unmatched2 /
                        (p + (1.0 - p) * (unmatched1 + unmatched2 - unmatched1 * unmatched2));
    const double prefix_len = static_cast<double>(std::min<std::size_t>(prefix, params.winkler_prefix_cap));
    const double winkler = prefix_len * params.winkler_scale * (1.0 - comm);

    const double raw = comm - diff + winkler;
    return std::clamp((raw + 1.0) / 2.0, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Virtual documents

namespace {

// Local description of one entity, kept as an ordered list of contributions so
// that accumulation order never depends on declaration order elsewhere.
std::vector<std::pair<std::string, double>> local_description(const Ontology& ont, EntityRef ref,
                                                              const LexicalParams& params) {
    std::vector<std::pair<std::string, double>> out;
    auto push = [&](std::string_view text, double weight) {
        if (weight <= 0.0) return;
        for (std::string& token : tokenize(text)) out.emplace_back(std::move(token), weight);
    };
    push(local_name(ont.id_of(ref)), params.vdoc_name_w);
    if (auto label = ont.label_of(ref)) push(*label, params.vdoc_label_w);
    if (auto comment = ont.comment_of(ref)) push(*comment, params.vdoc_comment_w);
    return out;
}

VirtualDocument document_at(const Ontology& ont, std::size_t position, const LexicalParams& params) {
    const EntityRef ref = ont.entity_at(position);
    VirtualDocument doc;
    doc.owner = ont.id_of(ref);
    for (auto& [token, w] : local_description(ont, ref, params)) doc.tokens[token] += w;

    if (params.vdoc_neighbor_w > 0.0) {
        std::vector<std::size_t> neighbors = ont.neighbors(position);
        std::sort(neighbors.begin(), neighbors.end(), [&](std::size_t x, std::size_t y) {
            return ont.id_at(x) < ont.id_at(y);
        });
        for (std::size_t n : neighbors) {
            for (auto& [token, w] : local_description(ont, ont.entity_at(n), params)) {
                doc.tokens[token] += params.vdoc_neighbor_w * w;
            }
        }
    }
    std::erase_if(doc.tokens, [](const auto& kv) { return !(kv.second > 0.0); });
    return doc;
}

}  // namespace

VirtualDocument build_virtual_document(const Ontology& ont, std::string_view entity_id,
                                       const LexicalParams& params) {
    return document_at(ont, ont.position_of(ont.resolve(entity_id)), params);
}

IdfTable build_idf(const std::vector<VirtualDocument>& docs) {
    std::map<std::string, std::size_t> df;
    for (const VirtualDocument& d : docs) {
        for (const auto& [token, _] : d.tokens) ++df[token];
    }
    const double n = static_cast<double>(docs.size());
    IdfTable idf;
    for (const auto& [token, count] : df) {
        idf.emplace(token, std::log1p(n / static_cast<double>(count)));
    }
    return idf;
}

double vdoc_score(const VirtualDocument& d1, const VirtualDocument& d2, const IdfTable& idf) {
    auto idf_of = [&](const std::string& token) {
        auto it = idf.find(token);
        if (it == idf.end()) throw ContractViolation("token '" + token + "' has no idf entry");
        return it->second;
    };
    double norm1 = 0.0;
    for (const auto& [token, w] : d1.tokens) {
        double x = w * idf_of(token);
        norm1 += x * x;
    }
    double norm2 = 0.0;
    for (const auto& [token, w] : d2.tokens) {
        double x = w * idf_of(token);
        norm2 += x * x;
    }
    if (norm1 == 0.0 || norm2 == 0.0) return 0.0;

    double dot = 0.0;
    auto it1 = d1.tokens.begin();
    auto it2 = d2.tokens.begin();
    while (it1 != d1.tokens.end() && it2 != d2.tokens.end()) {
        if (it1->first < it2->first) {
            ++it1;
        } else if (it2->first < it1->first) {
            ++it2;
        } else {
            double idf_t = idf_of(it1->first);
            dot += (it1->second * idf_t) * (it2->second * idf_t);
            ++it1;
            ++it2;
        }
    }
    return std::clamp(dot / std::sqrt(norm1 * norm2), 0.0, 1.0);
}

SimilarityMatrix isub_matrix(const Ontology& ont1, const Ontology& ont2, const LexicalParams& params) {
    params.validate();
    return pairwise_matrix(
        [&](std::size_t r, std::size_t c) {
            EntityRef a = ont1.entity_at(r);
            EntityRef b = ont2.entity_at(c);
            double score = isub_score(local_name(ont1.id_of(a)), local_name(ont2.id_of(b)), params);
            auto la = ont1.label_of(a);
            auto lb = ont2.label_of(b);
            if (la && lb) score = std::max(score, isub_score(*la, *lb, params));
            return score;
        },
        ont1, ont2);
}

SimilarityMatrix vdoc_matrix(const Ontology& ont1, const Ontology& ont2, const LexicalParams& params) {
    params.validate();
    std::vector<VirtualDocument> docs;
    docs.reserve(ont1.entity_count() + ont2.entity_count());
    for (std::size_t i = 0; i < ont1.entity_count(); ++i) docs.push_back(document_at(ont1, i, params));
    for (std::size_t j = 0; j < ont2.entity_count(); ++j) docs.push_back(document_at(ont2, j, params));
    const IdfTable idf = build_idf(docs);
    const std::size_t offset = ont1.entity_count();
    return pairwise_matrix(
        [&](std::size_t r, std::size_t c) { return vdoc_score(docs[r], docs[offset + c], idf); },
        ont1, ont2);
}

}  // namespace ontomatch
