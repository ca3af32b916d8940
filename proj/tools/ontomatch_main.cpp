// ontomatch: match ontologies, evaluate alignments, generate and run
// benchmark suites.
//
//   ontomatch match a.ont.json b.ont.json --strategy hscw --out found.align.json
//   ontomatch eval found.align.json reference.align.json
//   ontomatch gen seed.ont.json --seed 42 --out suite/
//   ontomatch bench suite/ --strategies hscw,max,average --out results.csv
//   ontomatch sweep a.ont.json b.ont.json reference.align.json --out sweep.csv
//
// Exit codes: 0 success, 1 usage error, 2 input-format error, 3 contract
// violation.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ontomatch/aggregation.hpp"
#include "ontomatch/alignment.hpp"
#include "ontomatch/benchgen.hpp"
#include "ontomatch/errors.hpp"
#include "ontomatch/evaluation.hpp"
#include "ontomatch/ontology.hpp"
#include "ontomatch/pipeline.hpp"

namespace {

using namespace ontomatch;

constexpr int kUsageError = 1;
constexpr int kFormatError = 2;
constexpr int kContractError = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Strategy> parse_strategy_list(const std::string& text) {
    std::vector<Strategy> out;
    std::stringstream ss(text);
    for (std::string name; std::getline(ss, name, ',');) {
        auto s = parse_strategy(name);
        if (!s) throw UsageError("unknown strategy '" + name + "'");
        out.push_back(*s);
    }
    if (out.empty()) throw UsageError("--strategies needs at least one strategy");
    return out;
}

struct MatchArgs {
    std::string onto1, onto2, out;
    std::string strategy = "hscw";
    double threshold = 0.5;
    std::optional<double> seed_threshold;
    double experimental_w = 0.5;
    double non_class_w = 0.5;
    double sigmoid_slope = 12.0;
    double sigmoid_center = 0.5;
    std::size_t gmo_iters = 100;
    double gmo_eps = 1e-6;
};

int run_match(const MatchArgs& a) {
    auto strategy = parse_strategy(a.strategy);
    if (!strategy) throw UsageError("unknown strategy '" + a.strategy + "'");
    PipelineConfig cfg;
    cfg.strategy.strategy = *strategy;
    cfg.strategy.experimental_w = a.experimental_w;
    cfg.strategy.non_class_w = a.non_class_w;
    cfg.strategy.sigmoid_slope = a.sigmoid_slope;
    cfg.strategy.sigmoid_center = a.sigmoid_center;
    cfg.threshold = a.threshold;
    cfg.seed_threshold = a.seed_threshold;
    cfg.gmo.max_iterations = a.gmo_iters;
    cfg.gmo.epsilon = a.gmo_eps;

    const Ontology o1 = load_ontology(a.onto1);
    const Ontology o2 = load_ontology(a.onto2);
    write_alignment(run_pipeline(o1, o2, cfg).alignment, a.out);
    return 0;
}

int run_eval(const std::string& found_path, const std::string& reference_path, double alpha) {
    const EvaluationReport r = evaluate(read_alignment(found_path), read_alignment(reference_path), alpha);
    std::cout << format_decimal(r.precision) << ' ' << format_decimal(r.recall) << ' '
              << format_decimal(r.fmeasure) << '\n';
    return 0;
}

int run_gen(const std::string& source, std::uint64_t seed, const std::string& out) {
    write_suite(gen_suite(load_ontology(source), seed), out);
    return 0;
}

int run_bench(const std::string& dir, const std::string& strategies, double threshold, const std::string& out) {
    const std::vector<Strategy> chosen = parse_strategy_list(strategies);
    const Suite suite = read_suite(dir);
    PipelineConfig cfg;
    cfg.threshold = threshold;

    std::vector<SuiteRecord> records;
    for (const SuiteTest& test : suite.tests) {
        const MatcherMatrices matchers = compute_matchers(suite.source, test.target, cfg);
        for (Strategy s : chosen) {
            PipelineConfig run = cfg;
            run.strategy.strategy = s;
            const SimilarityMatrix combined = aggregate(matchers, suite.source, test.target, run);
            records.push_back({test.group, test.id, std::string(to_string(s)),
                               extract_alignment(combined, threshold, suite.source.name(), test.target.name()),
                               test.reference});
        }
    }
    write_text_file(out, evaluate_suite(std::move(records)));
    return 0;
}

int run_sweep(const std::string& o1_path, const std::string& o2_path, const std::string& reference_path,
              const std::string& weights, double threshold, const std::string& out) {
    std::vector<double> grid;
    try {
        grid = parse_weight_range(weights);
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
    const Ontology o1 = load_ontology(o1_path);
    const Ontology o2 = load_ontology(o2_path);
    const Alignment reference = read_alignment(reference_path);
    write_text_file(out, format_sweep_csv(weight_sweep(o1, o2, reference, grid, threshold)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology matching with structural combination weights"};
    app.require_subcommand(1);

    MatchArgs match;
    auto* match_cmd = app.add_subcommand("match", "Align two ontologies");
    match_cmd->add_option("onto1", match.onto1, "First ontology (.ont.json)")->required();
    match_cmd->add_option("onto2", match.onto2, "Second ontology (.ont.json)")->required();
    match_cmd->add_option("--strategy", match.strategy,
                          "hscw|max|min|average|sigmoid|experimental|harmony")
        ->required();
    match_cmd->add_option("--threshold", match.threshold, "Extraction threshold")->check(CLI::Range(0.0, 1.0));
    match_cmd->add_option("--seed-threshold", match.seed_threshold, "Threshold of the GMO seed alignments")
        ->check(CLI::Range(0.0, 1.0));
    match_cmd->add_option("--experimental-w", match.experimental_w)->check(CLI::Range(0.0, 1.0));
    match_cmd->add_option("--non-class-w", match.non_class_w)->check(CLI::Range(0.0, 1.0));
    match_cmd->add_option("--sigmoid-slope", match.sigmoid_slope)->check(CLI::PositiveNumber);
    match_cmd->add_option("--sigmoid-center", match.sigmoid_center);
    match_cmd->add_option("--gmo-iters", match.gmo_iters)->check(CLI::PositiveNumber);
    match_cmd->add_option("--gmo-eps", match.gmo_eps)->check(CLI::PositiveNumber);
    match_cmd->add_option("--out", match.out, "Output alignment (.align.json)")->required();

    std::string found_path, reference_path;
    double alpha = 1.0;
    auto* eval_cmd = app.add_subcommand("eval", "Precision, recall and F-measure of an alignment");
    eval_cmd->add_option("found", found_path)->required();
    eval_cmd->add_option("reference", reference_path)->required();
    eval_cmd->add_option("--alpha", alpha)->check(CLI::PositiveNumber);

    std::string gen_source, gen_out;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark suite from a seed ontology");
    gen_cmd->add_option("source", gen_source)->required();
    gen_cmd->add_option("--seed", gen_seed)->required();
    gen_cmd->add_option("--out", gen_out)->required();

    std::string bench_dir, bench_strategies, bench_out;
    double bench_threshold = 0.5;
    auto* bench_cmd = app.add_subcommand("bench", "Run strategies over a generated suite");
    bench_cmd->add_option("suite", bench_dir)->required();
    bench_cmd->add_option("--strategies", bench_strategies)->required();
    bench_cmd->add_option("--threshold", bench_threshold)->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--out", bench_out)->required();

    std::string sweep_o1, sweep_o2, sweep_ref, sweep_out, sweep_weights = "0.0:1.0:0.1";
    double sweep_threshold = 0.5;
    auto* sweep_cmd = app.add_subcommand("sweep", "F-measure over constant combination weights");
    sweep_cmd->add_option("onto1", sweep_o1)->required();
    sweep_cmd->add_option("onto2", sweep_o2)->required();
    sweep_cmd->add_option("reference", sweep_ref)->required();
    sweep_cmd->add_option("--weights", sweep_weights, "start:stop:step");
    sweep_cmd->add_option("--threshold", sweep_threshold)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--out", sweep_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*match_cmd) return run_match(match);
        if (*eval_cmd) return run_eval(found_path, reference_path, alpha);
        if (*gen_cmd) return run_gen(gen_source, gen_seed, gen_out);
        if (*bench_cmd) return run_bench(bench_dir, bench_strategies, bench_threshold, bench_out);
        if (*sweep_cmd) return run_sweep(sweep_o1, sweep_o2, sweep_ref, sweep_weights, sweep_threshold, sweep_out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kFormatError;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return kContractError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kContractError;
    }
    return kUsageError;
}
