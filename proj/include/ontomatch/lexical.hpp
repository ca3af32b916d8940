#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ontomatch/matrix.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

struct LexicalParams {
    double isub_diff_p = 0.6;
    unsigned winkler_prefix_cap = 4;
    double winkler_scale = 0.1;
    double vdoc_name_w = 1.0;
    double vdoc_label_w = 0.8;
    double vdoc_comment_w = 0.3;
    double vdoc_neighbor_w = 0.2;

    // Throws ContractViolation.
    void validate() const;
};

// Splits on non-alphanumeric characters and lower->upper case boundaries,
// lowercases, and drops stopwords.
std::vector<std::string> tokenize(std::string_view text);

// Last segment of an identifier after '#', '/' or ':'.
std::string_view local_name(std::string_view id);

// String metric in [0,1]: commonality minus difference plus a Winkler prefix
// bonus, mapped from [-1,1] to [0,1]. Case-insensitive and symmetric.
double isub_score(std::string_view s1, std::string_view s2, const LexicalParams& params = {});

struct VirtualDocument {
    std::string owner;
    std::map<std::string, double> tokens;

    bool operator==(const VirtualDocument&) const = default;
};

VirtualDocument build_virtual_document(const Ontology& ont, std::string_view entity_id,
                                       const LexicalParams& params = {});

using IdfTable = std::map<std::string, double>;

// idf(t) = ln(1 + N / df(t)) over the given documents.
IdfTable build_idf(const std::vector<VirtualDocument>& docs);

// Cosine of the idf-weighted vectors; 0 if either vector is zero. Throws
// ContractViolation if a token has no idf entry.
double vdoc_score(const VirtualDocument& d1, const VirtualDocument& d2, const IdfTable& idf);

// Kind-blocked matrices over both ontologies' entities.
SimilarityMatrix isub_matrix(const Ontology& ont1, const Ontology& ont2,
                             const LexicalParams& params = {});
SimilarityMatrix vdoc_matrix(const Ontology& ont1, const Ontology& ont2,
                             const LexicalParams& params = {});

}  // namespace ontomatch
