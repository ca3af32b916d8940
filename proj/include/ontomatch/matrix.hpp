#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ontomatch/errors.hpp"
#include "ontomatch/ontology.hpp"

namespace ontomatch {

// One side of an entity matrix: identifiers and kinds in ontology layout
// order.
struct EntityAxis {
    std::vector<std::string> ids;
    std::vector<EntityKind> kinds;

    static EntityAxis of(const Ontology& ont);
    std::size_t size() const noexcept { return ids.size(); }
    bool operator==(const EntityAxis&) const = default;
};

// Dense row-major |entities(o)| x |entities(o')| grid with cells in [0,1].
// The tag keeps similarity and weight matrices apart at compile time.
template <class Tag>
class EntityMatrix {
public:
    EntityMatrix() = default;
    EntityMatrix(EntityAxis rows, EntityAxis cols, double fill = 0.0)
        : rows_(std::move(rows)), cols_(std::move(cols)),
          cells_(rows_.size() * cols_.size(), fill) {}

    const EntityAxis& rows() const noexcept { return rows_; }
    const EntityAxis& cols() const noexcept { return cols_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    std::size_t col_count() const noexcept { return cols_.size(); }

    double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_.size() + c]; }
    double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_.size() + c]; }

    double at(std::size_t r, std::size_t c) const {
        if (r >= row_count() || c >= col_count()) throw ShapeMismatchError("cell out of range");
        return (*this)(r, c);
    }

    std::span<const double> cells() const noexcept { return cells_; }
    std::span<double> cells() noexcept { return cells_; }

    bool same_kind(std::size_t r, std::size_t c) const { return rows_.kinds[r] == cols_.kinds[c]; }

    bool same_shape(const auto& other) const {
        return rows_ == other.rows() && cols_ == other.cols();
    }

    bool operator==(const EntityMatrix&) const = default;

private:
    EntityAxis rows_;
    EntityAxis cols_;
    std::vector<double> cells_;
};

struct SimilarityTag {};
struct WeightTag {};

using SimilarityMatrix = EntityMatrix<SimilarityTag>;
// Cell (i,j) is the weight given to the structural side of each combination
// step; the complementary side receives 1 - cell.
using WeightMatrix = EntityMatrix<WeightTag>;

// Throws ShapeMismatchError unless every matrix shares the first one's axes.
template <class First, class... Rest>
void require_same_shape(const First& first, const Rest&... rest) {
    if (!(first.same_shape(rest) && ...)) {
        throw ShapeMismatchError("matrix shapes differ");
    }
}

// Throws ContractViolation if any cell lies outside [0,1] or is NaN.
void require_unit_range(std::span<const double> cells, const char* what);

}  // namespace ontomatch
