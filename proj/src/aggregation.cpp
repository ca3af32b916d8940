#include "ontomatch/aggregation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "ontomatch/errors.hpp"

namespace ontomatch {

namespace {

constexpr std::array<Strategy, 7> kStrategies = {Strategy::Hscw,    Strategy::Max,
                                                 Strategy::Min,     Strategy::Average,
                                                 Strategy::Sigmoid, Strategy::Experimental,
                                                 Strategy::Harmony};

void require_unit(double w, const char* what) {
    if (!(w >= 0.0 && w <= 1.0)) throw ContractViolation(std::string(what) + " must lie in [0,1]");
}

void zero_cross_kind(SimilarityMatrix& m) {
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        for (std::size_t c = 0; c < m.col_count(); ++c) {
            if (!m.same_kind(r, c)) m(r, c) = 0.0;
        }
    }
}

void require_inputs(std::span<const SimilarityMatrix> matrices) {
    if (matrices.size() < 2) throw ContractViolation("aggregation needs at least two matrices");
    for (const SimilarityMatrix& m : matrices.subspan(1)) require_same_shape(matrices.front(), m);
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Hscw: return "hscw";
        case Strategy::Max: return "max";
        case Strategy::Min: return "min";
        case Strategy::Average: return "average";
        case Strategy::Sigmoid: return "sigmoid";
        case Strategy::Experimental: return "experimental";
        case Strategy::Harmony: return "harmony";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : kStrategies) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::span<const Strategy> all_strategies() { return kStrategies; }

void StrategyConfig::validate() const {
    require_unit(experimental_w, "experimental_w");
    require_unit(non_class_w, "non_class_w");
    if (!(sigmoid_slope > 0.0)) throw ContractViolation("sigmoid_slope must be > 0");
    if (!std::isfinite(sigmoid_center)) throw ContractViolation("sigmoid_center must be finite");
}

double feature_term(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t total = std::uint64_t{a} + b;
    if (total == 0) return 0.0;
    const std::uint32_t gap = a > b ? a - b : b - a;
    return static_cast<double>(gap) / static_cast<double>(total);
}

StructuralDelta hscw_pair(const StructuralProfile& p1, const StructuralProfile& p2) {
    StructuralDelta d;
    d.sup = feature_term(p1.sup, p2.sup);
    d.sub = feature_term(p1.sub, p2.sub);
    d.depth = feature_term(p1.depth, p2.depth);
    d.ins = feature_term(p1.ins, p2.ins);
    d.prop = feature_term(p1.prop, p2.prop);
    d.sib = feature_term(p1.sib, p2.sib);
    d.ave = (d.sup + d.sub + d.depth + d.ins + d.prop + d.sib) / 6.0;
    d.hscw = 1.0 - d.ave;
    return d;
}

WeightMatrix hscw_matrix(const Ontology& ont1, const Ontology& ont2, const StrategyConfig& cfg) {
    cfg.validate();
    std::vector<StructuralProfile> profiles1;
    std::vector<StructuralProfile> profiles2;
    for (std::size_t c = 0; c < ont1.classes().size(); ++c) profiles1.push_back(structural_profile(ont1, c));
    for (std::size_t c = 0; c < ont2.classes().size(); ++c) profiles2.push_back(structural_profile(ont2, c));

    WeightMatrix w = constant_weights(EntityAxis::of(ont1), EntityAxis::of(ont2), cfg.non_class_w);
    for (std::size_t i = 0; i < profiles1.size(); ++i) {
        for (std::size_t j = 0; j < profiles2.size(); ++j) {
            w(i, j) = hscw_pair(profiles1[i], profiles2[j]).hscw;
        }
    }
    return w;
}

WeightMatrix constant_weights(const EntityAxis& rows, const EntityAxis& cols, double w) {
    require_unit(w, "weight");
    WeightMatrix out(rows, cols);
    for (std::size_t r = 0; r < out.row_count(); ++r) {
        for (std::size_t c = 0; c < out.col_count(); ++c) {
            if (out.same_kind(r, c)) out(r, c) = w;
        }
    }
    return out;
}

SimilarityMatrix twostage_aggregate(const SimilarityMatrix& gmo, const SimilarityMatrix& vdoc,
                                    const SimilarityMatrix& isub, const WeightMatrix& weights) {
    require_same_shape(gmo, vdoc, isub, weights);
    SimilarityMatrix out(gmo.rows(), gmo.cols());
    auto g = gmo.cells();
    auto v = vdoc.cells();
    auto s = isub.cells();
    auto w = weights.cells();
    auto o = out.cells();
    // std::lerp is exact at w = 0 and w = 1 and stays within its endpoints.
    for (std::size_t k = 0; k < o.size(); ++k) {
        const double first = std::lerp(v[k], g[k], w[k]);
        o[k] = std::lerp(s[k], first, w[k]);
    }
    return out;
}

SimilarityMatrix pointwise_aggregate(PointwiseMode mode, std::span<const SimilarityMatrix> matrices,
                                     const StrategyConfig& cfg) {
    require_inputs(matrices);
    if (mode == PointwiseMode::Sigmoid) cfg.validate();
    const SimilarityMatrix& first = matrices.front();
    SimilarityMatrix out(first.rows(), first.cols());
    auto o = out.cells();
    const double n = static_cast<double>(matrices.size());

    auto sigmoid = [&](double x) {
        return 1.0 / (1.0 + std::exp(-cfg.sigmoid_slope * (x - cfg.sigmoid_center)));
    };

    for (std::size_t k = 0; k < o.size(); ++k) {
        double acc = 0.0;
        switch (mode) {
            case PointwiseMode::Max:
                acc = 0.0;
                for (const auto& m : matrices) acc = std::max(acc, m.cells()[k]);
                break;
            case PointwiseMode::Min:
                acc = 1.0;
                for (const auto& m : matrices) acc = std::min(acc, m.cells()[k]);
                break;
            case PointwiseMode::Average:
                for (const auto& m : matrices) acc += m.cells()[k];
                acc /= n;
                break;
            case PointwiseMode::Sigmoid:
                for (const auto& m : matrices) acc += sigmoid(m.cells()[k]);
                acc /= n;
                break;
        }
        o[k] = std::clamp(acc, 0.0, 1.0);
    }
    zero_cross_kind(out);
    return out;
}

double harmony_of(const SimilarityMatrix& m) {
    const std::size_t rows = m.row_count();
    const std::size_t cols = m.col_count();
    if (rows == 0 || cols == 0) throw ContractViolation("harmony of an empty matrix");

    // Column of the strict row maximum (or npos on ties), and likewise per column.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> row_arg(rows, npos);
    for (std::size_t r = 0; r < rows; ++r) {
        double best = m(r, 0);
        std::size_t arg = 0;
        bool unique = true;
        for (std::size_t c = 1; c < cols; ++c) {
            if (m(r, c) > best) {
                best = m(r, c);
                arg = c;
                unique = true;
            } else if (m(r, c) == best) {
                unique = false;
            }
        }
        if (unique) row_arg[r] = arg;
    }
    std::vector<std::size_t> col_arg(cols, npos);
    for (std::size_t c = 0; c < cols; ++c) {
        double best = m(0, c);
        std::size_t arg = 0;
        bool unique = true;
        for (std::size_t r = 1; r < rows; ++r) {
            if (m(r, c) > best) {
                best = m(r, c);
                arg = r;
                unique = true;
            } else if (m(r, c) == best) {
                unique = false;
            }
        }
        if (unique) col_arg[c] = arg;
    }
    std::size_t hits = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (row_arg[r] != npos && col_arg[row_arg[r]] == r) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::min(rows, cols));
}

SimilarityMatrix harmony_aggregate(std::span<const SimilarityMatrix> matrices) {
    require_inputs(matrices);
    std::vector<double> harmony;
    double total = 0.0;
    for (const auto& m : matrices) {
        harmony.push_back(harmony_of(m));
        total += harmony.back();
    }
    if (total == 0.0) return pointwise_aggregate(PointwiseMode::Average, matrices);

    const SimilarityMatrix& first = matrices.front();
    SimilarityMatrix out(first.rows(), first.cols());
    auto o = out.cells();
    for (std::size_t k = 0; k < o.size(); ++k) {
        double acc = 0.0;
        for (std::size_t m = 0; m < matrices.size(); ++m) acc += harmony[m] * matrices[m].cells()[k];
        o[k] = std::clamp(acc / total, 0.0, 1.0);
    }
    return out;
}

}  // namespace ontomatch
