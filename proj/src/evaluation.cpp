#include "ontomatch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "ontomatch/errors.hpp"

namespace ontomatch {

EvaluationReport evaluate(const Alignment& found, const Alignment& reference, double alpha) {
    if (!(alpha > 0.0)) throw ContractViolation("alpha must be > 0");
    EvaluationReport report;
    report.alpha = alpha;
    report.found = found.size();
    report.reference = reference.size();

    const auto expected = reference.entity_pairs();
    for (const auto& pair : found.entity_pairs()) report.correct += expected.count(pair);

    const auto ratio = [](std::size_t num, std::size_t den, std::size_t other) {
        if (den == 0) return other == 0 ? 1.0 : 0.0;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    report.precision = ratio(report.correct, report.found, report.reference);
    report.recall = ratio(report.correct, report.reference, report.found);

    const double p = report.precision;
    const double r = report.recall;
    report.fmeasure = (p == 0.0 && r == 0.0) ? 0.0 : (1.0 + alpha) * p * r / (alpha * p + r);
    return report;
}

std::string format_decimal(double value, int digits) {
    // glibc printf rounds the exact binary value, so exact ties go to even.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string out(buf);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string evaluate_suite(std::vector<SuiteRecord> records, double alpha) {
    if (records.empty()) throw ContractViolation("evaluate_suite needs at least one record");
    for (const SuiteRecord& rec : records) {
        if (rec.found.onto1() != rec.reference.onto1() || rec.found.onto2() != rec.reference.onto2()) {
            throw ContractViolation("test '" + rec.test + "' compares alignments of different ontology pairs");
        }
    }
    std::sort(records.begin(), records.end(), [](const SuiteRecord& a, const SuiteRecord& b) {
        return std::tie(a.suite, a.test, a.strategy) < std::tie(b.suite, b.test, b.strategy);
    });

    std::ostringstream csv;
    csv << "suite,test,strategy,precision,recall,fmeasure\n";
    auto row = [&](const std::string& suite, const std::string& test, const std::string& strategy,
                   double p, double r, double f) {
        csv << suite << ',' << test << ',' << strategy << ',' << format_decimal(p) << ','
            << format_decimal(r) << ',' << format_decimal(f) << '\n';
    };

    struct Sums {
        double p = 0.0, r = 0.0, f = 0.0;
        std::size_t n = 0;
    };
    std::size_t begin = 0;
    while (begin < records.size()) {
        const std::string& suite = records[begin].suite;
        std::map<std::string, Sums> means;
        std::size_t end = begin;
        for (; end < records.size() && records[end].suite == suite; ++end) {
            const SuiteRecord& rec = records[end];
            EvaluationReport rep = evaluate(rec.found, rec.reference, alpha);
            row(suite, rec.test, rec.strategy, rep.precision, rep.recall, rep.fmeasure);
            Sums& s = means[rec.strategy];
            s.p += rep.precision;
            s.r += rep.recall;
            s.f += rep.fmeasure;
            ++s.n;
        }
        for (const auto& [strategy, s] : means) {
            const double n = static_cast<double>(s.n);
            row(suite, "__mean__", strategy, s.p / n, s.r / n, s.f / n);
        }
        begin = end;
    }
    return csv.str();
}

std::string format_sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream csv;
    csv << "weight,fmeasure\n";
    for (const SweepPoint& p : points) csv << format_decimal(p.weight) << ',' << format_decimal(p.fmeasure) << '\n';
    return csv.str();
}

std::vector<double> parse_weight_range(const std::string& spec) {
    auto number = [&](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() || !std::isfinite(v)) {
            throw ContractViolation("invalid number '" + text + "' in weight range '" + spec + "'");
        }
        return v;
    };

    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);

    std::vector<double> out;
    if (parts.size() == 1) {
        out.push_back(number(parts[0]));
    } else if (parts.size() == 3) {
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const double step = number(parts[2]);
        if (!(step > 0.0) || stop < start) {
            throw ContractViolation("weight range '" + spec + "' needs start <= stop and step > 0");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
        for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    } else {
        throw ContractViolation("weight range must be 'start:stop:step' or a single value");
    }
    for (double w : out) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ContractViolation("weight " + std::to_string(w) + " outside [0,1]");
        }
    }
    return out;
}

}  // namespace ontomatch
