// sudoku-rate: command-line front end for the difficulty-rating library.
//
//   sudoku-rate rate CORPUS [--format json|csv] [--starts N] [--seed S] ...
//   sudoku-rate solve PUZZLE --method strategies|nishio-heuristic|nishio-random|sat
//   sudoku-rate encode PUZZLE --max|--min [--annotate]
//   sudoku-rate bins METRICS.csv
//   sudoku-rate correlate METRICS.csv [--label-column rank] [--metric-column cycles4_mean]
//
// Exit codes: 0 success, 1 rejected input or failed operation, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sudoku/sudoku.hpp"

namespace {

using namespace sudoku;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::ios_base::failure("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct RateOptions {
    std::string corpus;
    std::string input_format = "auto";
    std::string format = "json";
    int starts = 50;
    std::uint64_t seed = 0;
    std::vector<int> strategies = {2, 4};
    std::string bins = "fit";
    int workers = 1;
    bool skip_uniqueness = false;
    std::string out;
    std::string histograms;
};

int run_rate(const RateOptions& o) {
    dataset::CorpusFormat format = dataset::guess_format(o.corpus);
    if (o.input_format == "lines") format = dataset::CorpusFormat::Lines;
    if (o.input_format == "csv") format = dataset::CorpusFormat::Csv;

    const dataset::CorpusLoad load = dataset::load_corpus(o.corpus, format, !o.skip_uniqueness);

    dataset::RateConfig cfg;
    cfg.starts = o.starts;
    cfg.seed_base = o.seed;
    cfg.strategy_counts = o.strategies;
    cfg.workers = o.workers;
    cfg.uniqueness_checked = !o.skip_uniqueness;
    if (o.bins != "fit") cfg.bins = dataset::ConfiguredBins{rating::load_bin_config(o.bins), o.bins};

    dataset::RatingReport report = dataset::rate_corpus(load.records, cfg);
    report.rejects.insert(report.rejects.begin(), load.rejects.begin(), load.rejects.end());

    Sink sink(o.out);
    dataset::emit_report(report, sink.stream(),
                         o.format == "csv" ? dataset::ReportFormat::Csv : dataset::ReportFormat::Json);
    if (!o.histograms.empty()) {
        std::ofstream h(o.histograms);
        if (!h) throw std::ios_base::failure("cannot open histogram file " + o.histograms);
        dataset::emit_histograms(report, h);
    }
    for (const auto& r : report.rejects) {
        std::cerr << "rejected " << r.id << (r.line ? " (line " + std::to_string(r.line) + ")" : "") << ": " << r.kind
                  << ": " << r.message << '\n';
    }
    return report.rejects.empty() ? kExitOk : kExitReject;
}

struct SolveOptions {
    std::string puzzle;
    std::string method = "nishio-heuristic";
    int strategies = 4;
    std::uint64_t seed = 0;
    bool trace = false;
};

void print_grid(std::ostream& os, const Grid& g) {
    for (int r = 0; r < 9; ++r) {
        if (r % 3 == 0 && r > 0) os << "------+-------+------\n";
        for (int c = 0; c < 9; ++c) {
            if (c % 3 == 0 && c > 0) os << "| ";
            const int d = g.at(r * 9 + c);
            os << (d == 0 ? '.' : static_cast<char>('0' + d)) << ' ';
        }
        os << '\n';
    }
}

int run_solve(const SolveOptions& o) {
    const Grid grid = parse_grid(o.puzzle);
    std::ostream& out = std::cout;

    if (o.method == "sat") {
        const auto a = sat::sat_solve(sat::encode_minimum(grid));
        if (!a) {
            std::cerr << "unsatisfiable\n";
            return kExitReject;
        }
        const Grid solution = sat::decode_assignment(*a);
        out << render_grid(solution) << '\n';
        if (o.trace) print_grid(std::cerr, solution);
        return kExitOk;
    }

    if (o.method == "strategies") {
        const StrategyObserver observer = [&](StrategyId id, const State& before, const State& after) {
            const int placed = before.grid.empty_count() - after.grid.empty_count();
            const int removed = before.candidates.total() - after.candidates.total() - 0;
            if (placed > 0 || removed > 0) {
                std::cerr << to_string(id) << ": placed " << placed << ", candidates removed " << removed << '\n';
            }
        };
        const StrategySolve r = solve_by_strategies(grid, o.strategies, o.trace ? &observer : nullptr);
        out << render_grid(r.state.grid) << '\n';
        std::cerr << (r.solved ? "solved" : "stalled") << " after " << r.cycles << " cycles\n";
        return r.solved ? kExitOk : kExitReject;
    }

    NishioHooks hooks;
    if (o.trace) {
        hooks.on_event = [](const NishioEvent& e) {
            switch (e.kind) {
                case NishioEvent::Kind::Guess:
                    std::cerr << "cycle " << e.cycles << ": assume " << e.digit << " at (" << e.cell.row << ", "
                              << e.cell.col << "), depth " << e.depth << '\n';
                    break;
                case NishioEvent::Kind::Backtrack:
                    std::cerr << "cycle " << e.cycles << ": contradiction, eliminate " << e.digit << " at ("
                              << e.cell.row << ", " << e.cell.col << "), depth " << e.depth << '\n';
                    break;
                case NishioEvent::Kind::Solved:
                    std::cerr << "cycle " << e.cycles << ": solved\n";
                    break;
            }
        };
    }
    NishioRun run;
    if (o.method == "nishio-heuristic") {
        run = heuristic_nishio(grid, o.strategies, &hooks);
    } else if (o.method == "nishio-random") {
        run = randomized_nishio(grid, o.strategies, o.seed, &hooks);
    } else {
        throw CLI::ValidationError("--method", "unknown method " + o.method);
    }
    out << render_grid(run.solution) << '\n';
    std::cerr << "cycles " << run.cycles << ", guesses " << run.guesses << ", backtracks " << run.backtracks << '\n';
    return kExitOk;
}

struct EncodeOptions {
    std::string puzzle;
    bool maximum = false;
    bool minimum = false;
    bool annotate = false;
    std::string out;
};

int run_encode(const EncodeOptions& o) {
    const Grid grid = parse_grid(o.puzzle);
    const sat::CnfFormula f = o.maximum ? sat::encode_maximum(grid) : sat::encode_minimum(grid);
    if (!o.maximum) {
        try {
            const auto d = sat::clause_length_distribution(f);
            std::cerr << "short " << d.short_pct << "%, medium " << d.medium_pct << "%, long " << d.long_pct
                      << "% of " << d.total << " at-least-one clauses\n";
        } catch (const DegenerateDistribution& e) {
            std::cerr << "warning: DegenerateDistribution: " << e.what() << '\n';
        }
    }
    Sink sink(o.out);
    sat::export_dimacs(f, sink.stream(), o.annotate);
    return kExitOk;
}

struct BinsOptions {
    std::string metrics;
    std::string cycles_column;
    std::string short_column = "short_pct";
};

std::map<std::string, std::vector<std::string>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open metrics file " + path);
    return dataset::read_metrics_table(in);
}

// Highest cyclesK_mean column present.
std::string default_cycles_column(const std::map<std::string, std::vector<std::string>>& table) {
    for (int k = 4; k >= 2; --k) {
        const std::string name = dataset::metric_name_cycles(k);
        if (table.contains(name)) return name;
    }
    throw ParseError("metrics file has no cyclesK_mean column");
}

int run_bins(const BinsOptions& o) {
    const auto table = read_table(o.metrics);
    const std::string cycles = o.cycles_column.empty() ? default_cycles_column(table) : o.cycles_column;
    const rating::BinConfig cfg{
        rating::equal_count_bins(dataset::numeric_column(table, cycles), rating::Direction::Ascending),
        rating::equal_count_bins(dataset::numeric_column(table, o.short_column), rating::Direction::Descending)};
    std::cout << "# fitted on " << o.metrics << " (" << cycles << ", " << o.short_column << ")\n";
    std::cout << rating::format_bin_config(cfg);
    return kExitOk;
}

struct CorrelateOptions {
    std::string metrics;
    std::string label_column = "rank";
    std::string metric_column;
    std::string group_column = "website";
};

int run_correlate(const CorrelateOptions& o) {
    const auto table = read_table(o.metrics);
    const std::string metric_col = o.metric_column.empty() ? default_cycles_column(table) : o.metric_column;
    const auto labels = dataset::numeric_column(table, o.label_column);
    const auto metric = dataset::numeric_column(table, metric_col);

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
    const auto g = table.find(o.group_column);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string key = g == table.end() ? "" : g->second[i];
        groups[key].first.push_back(labels[i]);
        groups[key].second.push_back(metric[i]);
    }
    groups["*"] = {labels, metric};
    std::cout << "group,metric,n,rho\n";
    int status = kExitOk;
    for (const auto& [key, v] : groups) {
        std::cout << key << ',' << metric_col << ',' << v.first.size() << ',';
        try {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", rating::spearman_rho(v.first, v.second));
            std::cout << buf << '\n';
        } catch (const UndefinedCorrelation& e) {
            std::cout << '\n';
            std::cerr << "group '" << key << "': " << e.what() << '\n';
            status = kExitReject;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sudoku difficulty rating toolkit"};
    app.require_subcommand(1);

    RateOptions rate;
    auto* rate_cmd = app.add_subcommand("rate", "rate every puzzle of a corpus and emit a report");
    rate_cmd->add_option("corpus", rate.corpus, "puzzle file (lines or CSV)")->required();
    rate_cmd->add_option("--input-format", rate.input_format, "corpus format")
        ->check(CLI::IsMember({"auto", "lines", "csv"}));
    rate_cmd->add_option("--format", rate.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    rate_cmd->add_option("--starts", rate.starts, "randomized Nishio runs per puzzle")->check(CLI::PositiveNumber);
    rate_cmd->add_option("--seed", rate.seed, "seed base");
    rate_cmd->add_option("--strategies", rate.strategies, "strategy counts, e.g. 2,4")
        ->delimiter(',')
        ->check(CLI::Range(2, 4));
    rate_cmd->add_option("--bins", rate.bins, "'fit' or a bin-range config file");
    rate_cmd->add_option("--workers", rate.workers, "worker threads")->check(CLI::PositiveNumber);
    rate_cmd->add_flag("--skip-uniqueness", rate.skip_uniqueness, "skip the unique-solution check on ingest");
    rate_cmd->add_option("--out", rate.out, "report path (default stdout)");
    rate_cmd->add_option("--emit-histograms", rate.histograms, "write width-1 histograms as CSV");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve one puzzle");
    solve_cmd->add_option("puzzle", solve.puzzle, "81-character puzzle")->required();
    solve_cmd->add_option("--method", solve.method, "solver")
        ->check(CLI::IsMember({"strategies", "nishio-heuristic", "nishio-random", "sat"}));
    solve_cmd->add_option("--strategies", solve.strategies, "number of human strategies")->check(CLI::Range(2, 4));
    solve_cmd->add_option("--seed", solve.seed, "seed for nishio-random");
    solve_cmd->add_flag("--trace", solve.trace, "print solver steps to stderr");

    EncodeOptions encode;
    auto* encode_cmd = app.add_subcommand("encode", "export the SAT encoding as DIMACS CNF");
    encode_cmd->add_option("puzzle", encode.puzzle, "81-character puzzle")->required();
    auto* max_flag = encode_cmd->add_flag("--max", encode.maximum, "maximum encoding");
    auto* min_flag = encode_cmd->add_flag("--min", encode.minimum, "minimum (candidate) encoding, the default");
    max_flag->excludes(min_flag);
    encode_cmd->add_flag("--annotate", encode.annotate, "precede each clause with a 'c kind' comment");
    encode_cmd->add_option("--out", encode.out, "output path (default stdout)");

    BinsOptions bins;
    auto* bins_cmd = app.add_subcommand("bins", "fit equal-count bins from a metrics CSV");
    bins_cmd->add_option("metrics", bins.metrics, "CSV report or metrics table")->required();
    bins_cmd->add_option("--cycles-column", bins.cycles_column, "cycle metric column");
    bins_cmd->add_option("--short-column", bins.short_column, "short-clause percentage column");

    CorrelateOptions corr;
    auto* corr_cmd = app.add_subcommand("correlate", "Spearman correlation between labels and a metric");
    corr_cmd->add_option("metrics", corr.metrics, "CSV report or metrics table")->required();
    corr_cmd->add_option("--label-column", corr.label_column, "ordinal label column");
    corr_cmd->add_option("--metric-column", corr.metric_column, "metric column");
    corr_cmd->add_option("--group-column", corr.group_column, "column grouping rows, e.g. website");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*rate_cmd) return run_rate(rate);
        if (*solve_cmd) return run_solve(solve);
        if (*encode_cmd) return run_encode(encode);
        if (*bins_cmd) return run_bins(bins);
        if (*corr_cmd) return run_correlate(corr);
    } catch (const sudoku::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << '\n';
        return kExitReject;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitReject;
    }
    return kExitUsage;
}
