#include "ontomatch/matrix.hpp"

namespace ontomatch {

EntityAxis EntityAxis::of(const Ontology& ont) {
    EntityAxis axis;
    axis.ids = ont.entity_ids();
    axis.kinds.reserve(ont.entity_count());
    for (std::size_t pos = 0; pos < ont.entity_count(); ++pos) axis.kinds.push_back(ont.kind_at(pos));
    return axis;
}

void require_unit_range(std::span<const double> cells, const char* what) {
    for (double v : cells) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ContractViolation(std::string(what) + ": value " + std::to_string(v) +
                                    " outside [0,1]");
        }
    }
}

}  // namespace ontomatch
