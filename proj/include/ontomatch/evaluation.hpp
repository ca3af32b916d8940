#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ontomatch/alignment.hpp"

namespace ontomatch {

struct EvaluationReport {
    double precision = 0.0;
    double recall = 0.0;
    double fmeasure = 0.0;
    double alpha = 1.0;
    std::size_t found = 0;
    std::size_t reference = 0;
    std::size_t correct = 0;
};

// Matches correspondences by entity pair only; F = (1+a)PR / (aP + R).
EvaluationReport evaluate(const Alignment& found, const Alignment& reference, double alpha = 1.0);

// Fixed-point decimal with `digits` places, ties rounded to even.
std::string format_decimal(double value, int digits = 4);

struct SuiteRecord {
    std::string suite;
    std::string test;
    std::string strategy;
    Alignment found;
    Alignment reference;
};

// Metrics CSV: one row per (suite, test, strategy) and per-strategy mean rows
// (test "__mean__") after each suite's data rows.
std::string evaluate_suite(std::vector<SuiteRecord> records, double alpha = 1.0);

struct SweepPoint {
    double weight = 0.0;
    double fmeasure = 0.0;

    bool operator==(const SweepPoint&) const = default;
};

std::string format_sweep_csv(const std::vector<SweepPoint>& points);

// Parses "start:stop:step" into start, start+step, ... up to stop (inclusive,
// within half a step). Throws ContractViolation.
std::vector<double> parse_weight_range(const std::string& spec);

}  // namespace ontomatch
