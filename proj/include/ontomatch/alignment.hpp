#pragma once

#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontomatch/matrix.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

inline constexpr std::string_view kEquivalence = "=";

struct Correspondence {
    std::string e1;
    std::string e2;
    double sim = 1.0;
    std::string relation{kEquivalence};

    bool operator==(const Correspondence&) const = default;
};

// One-to-one set of equivalence correspondences between two ontologies.
class Alignment {
public:
    Alignment() = default;
    // Throws AlignmentFormatError on a repeated entity, a sim outside [0,1] or
    // a relation other than "=".
    Alignment(std::string onto1, std::string onto2, std::vector<Correspondence> pairs);

    const std::string& onto1() const noexcept { return onto1_; }
    const std::string& onto2() const noexcept { return onto2_; }
    const std::vector<Correspondence>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

    std::set<std::pair<std::string, std::string>> entity_pairs() const;
    bool contains(std::string_view e1, std::string_view e2) const;

    // Same ontology names and the same correspondences, ignoring order.
    bool equivalent(const Alignment& other) const;

    bool operator==(const Alignment&) const = default;

private:
    std::string onto1_;
    std::string onto2_;
    std::vector<Correspondence> pairs_;
};

// Per-pair scorer over matrix positions (row entity of ont1, column entity of
// ont2); only invoked on same-kind pairs.
using PairScorer = std::function<double(std::size_t row, std::size_t col)>;

SimilarityMatrix pairwise_matrix(const PairScorer& scorer, const Ontology& ont1,
                                 const Ontology& ont2);

// Greedy descending one-to-one extraction. Cells are visited by value
// (descending), then row, then column; a cell is kept when it is >= threshold,
// joins two entities of the same kind and both its row and column are unused.
Alignment extract_alignment(const SimilarityMatrix& sim, double threshold, std::string onto1,
                            std::string onto2);

std::string serialize_alignment(const Alignment& alignment);
Alignment parse_alignment(std::string_view source);
void write_alignment(const Alignment& alignment, const std::filesystem::path& path);
Alignment read_alignment(const std::filesystem::path& path);

}  // namespace ontomatch
