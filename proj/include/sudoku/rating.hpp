#pragma once

// Difficulty aggregation: equal-count three-bin classifier, Spearman rank
// correlation, percentage solved by strategies alone and per-level summaries.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "board.hpp"
#include "errors.hpp"
#include "nishio.hpp"
#include "strategies.hpp"

namespace sudoku::rating {

enum class Category { UniversalEasy = 0, UniversalMedium = 1, UniversalHard = 2 };

inline const char* to_string(Category c) {
    switch (c) {
        case Category::UniversalEasy: return "Universal Easy";
        case Category::UniversalMedium: return "Universal Medium";
        case Category::UniversalHard: return "Universal Hard";
    }
    return "?";
}

// Ascending: larger values are harder (cycles). Descending: larger values are
// easier (short-clause percentage).
enum class Direction { Ascending, Descending };

inline const char* to_string(Direction d) { return d == Direction::Ascending ? "ascending" : "descending"; }

// Four edges read Easy -> Medium -> Hard: [e0, e1) [e1, e2) [e2, e3] along the
// axis direction. Values on an internal edge belong to the harder bin.
struct BinRanges {
    std::array<double, 4> edges{};
    Direction direction = Direction::Ascending;

    friend bool operator==(const BinRanges&, const BinRanges&) = default;
};

namespace detail {

// Smallest observed value v with at least `need` values strictly below v.
inline std::optional<double> first_value_with_below(const std::vector<double>& sorted, std::size_t need) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        if (i >= need) return sorted[i];
    }
    return std::nullopt;
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace detail

// Boundaries at the 1/3 and 2/3 empirical quantiles: the smallest observed
// values with at least ceil(N/3) (resp. ceil(2N/3)) values before them along
// the axis. Outer edges are the observed extremes.
inline BinRanges equal_count_bins(std::span<const double> values, Direction direction = Direction::Ascending) {
    if (values.empty()) throw DegenerateBinning("no values to bin");
    const double sign = direction == Direction::Ascending ? 1.0 : -1.0;
    std::vector<double> sorted;
    sorted.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) throw DegenerateBinning("non-finite value");
        sorted.push_back(sign * v);
    }
    std::sort(sorted.begin(), sorted.end());
    std::size_t n_distinct = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) n_distinct += sorted[i] != sorted[i - 1];
    if (n_distinct < 3) throw DegenerateBinning("fewer than 3 distinct values");

    const std::size_t n = sorted.size();
    const auto lower = detail::first_value_with_below(sorted, detail::ceil_div(n, 3));
    const auto upper = detail::first_value_with_below(sorted, detail::ceil_div(2 * n, 3));
    if (!lower || !upper || *lower == *upper) throw DegenerateBinning("ties leave a bin empty");

    BinRanges b;
    b.direction = direction;
    b.edges = {sign * sorted.front(), sign * *lower, sign * *upper, sign * sorted.back()};
    return b;
}

inline BinRanges equal_count_bins(const std::vector<double>& values, Direction direction = Direction::Ascending) {
    return equal_count_bins(std::span<const double>(values), direction);
}

// Values beyond the outer edges clamp to the nearest extreme category.
inline Category classify_value(double v, const BinRanges& b) {
    if (b.direction == Direction::Ascending) {
        if (v < b.edges[1]) return Category::UniversalEasy;
        if (v < b.edges[2]) return Category::UniversalMedium;
        return Category::UniversalHard;
    }
    if (v > b.edges[1]) return Category::UniversalEasy;
    if (v > b.edges[2]) return Category::UniversalMedium;
    return Category::UniversalHard;
}

struct LevelCategories {
    Category by_mean;
    Category by_median;
};

inline LevelCategories classify_level(double mean, double median, const BinRanges& b) {
    return {classify_value(mean, b), classify_value(median, b)};
}

// Average (fractional) ranks, 1-based.
inline std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

// Pearson correlation of the average-rank vectors.
inline double spearman_rho(std::span<const double> labels, std::span<const double> metric) {
    if (labels.size() != metric.size()) throw std::invalid_argument("spearman_rho: length mismatch");
    if (labels.size() < 2) throw UndefinedCorrelation("need at least two observations");
    const auto rx = average_ranks(labels);
    const auto ry = average_ranks(metric);
    const double n = static_cast<double>(rx.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("a ranked vector has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double spearman_rho(const std::vector<double>& labels, const std::vector<double>& metric) {
    return spearman_rho(std::span<const double>(labels), std::span<const double>(metric));
}

inline double percent_solved_by_strategies(std::span<const Grid> puzzles, int strategy_count) {
    if (puzzles.empty()) throw std::invalid_argument("percent_solved_by_strategies: empty corpus");
    std::size_t solved = 0;
    for (const Grid& g : puzzles) solved += solve_by_strategies(g, strategy_count).solved;
    return 100.0 * static_cast<double>(solved) / static_cast<double>(puzzles.size());
}

inline double percent_solved_by_strategies(const std::vector<Grid>& puzzles, int strategy_count) {
    return percent_solved_by_strategies(std::span<const Grid>(puzzles), strategy_count);
}

// Per-puzzle metric values feeding a level summary.
struct PuzzleMetrics {
    std::map<int, CycleStats> cycles;        // randomized Nishio, by strategy count
    std::map<int, long> heuristic_cycles;    // heuristic Nishio, by strategy count
    double short_pct = 0.0;
    std::array<double, 10> clause_pct{};     // P_1..P_9
    std::map<int, bool> solved_by;           // strategies alone, k = 2, 3, 4
};

struct Aggregate {
    double mean = 0.0;
    double median = 0.0;
};

inline Aggregate aggregate(const std::vector<double>& v) { return {mean_of(v), median_of(v)}; }

struct LevelSummary {
    std::string website;
    std::string level;
    int rank_index = 0;
    std::size_t puzzles = 0;
    std::map<int, Aggregate> cycles;         // per strategy count, over per-puzzle means
    std::map<int, Aggregate> heuristic_cycles;
    Aggregate short_pct;
    std::map<int, double> pct_solved_by;     // k = 2, 3, 4
    std::optional<LevelCategories> cycle_category;
    std::optional<Category> clause_category;  // from the mean short-clause percentage
    bool right_skewed = false;                // mean > median of the primary cycle metric
};

// `primary_count` selects which strategy count drives the cycle category.
inline LevelSummary summarize_level(std::span<const PuzzleMetrics> puzzles, std::string website, std::string level,
                                    int rank_index, int primary_count, const std::optional<BinRanges>& cycle_bins,
                                    const std::optional<BinRanges>& clause_bins) {
    if (puzzles.empty()) throw std::invalid_argument("summarize_level: empty level");
    LevelSummary s;
    s.website = std::move(website);
    s.level = std::move(level);
    s.rank_index = rank_index;
    s.puzzles = puzzles.size();

    std::map<int, std::vector<double>> cyc, heur;
    std::vector<double> shorts;
    std::map<int, std::size_t> solved;
    for (const PuzzleMetrics& m : puzzles) {
        for (const auto& [k, st] : m.cycles) cyc[k].push_back(st.mean);
        for (const auto& [k, c] : m.heuristic_cycles) heur[k].push_back(static_cast<double>(c));
        shorts.push_back(m.short_pct);
        for (const auto& [k, ok] : m.solved_by) solved[k] += ok;
    }
    for (auto& [k, v] : cyc) s.cycles[k] = aggregate(v);
    for (auto& [k, v] : heur) s.heuristic_cycles[k] = aggregate(v);
    s.short_pct = aggregate(shorts);
    for (const auto& [k, n] : solved) {
        s.pct_solved_by[k] = 100.0 * static_cast<double>(n) / static_cast<double>(puzzles.size());
    }
    if (const auto it = s.cycles.find(primary_count); it != s.cycles.end()) {
        s.right_skewed = it->second.mean > it->second.median;
        if (cycle_bins) s.cycle_category = classify_level(it->second.mean, it->second.median, *cycle_bins);
    }
    if (clause_bins) s.clause_category = classify_value(s.short_pct.mean, *clause_bins);
    return s;
}

// Bin-range configuration: `key = value` lines, '#' comments.
//   cycles.direction = ascending
//   cycles.edges = 1.30, 3.48, 6.52, 98.14
//   short_pct.direction = descending
//   short_pct.edges = 100, 22.6, 17.6, 0
struct BinConfig {
    BinRanges cycles;
    BinRanges short_pct;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline void check_monotone(const BinRanges& b, const std::string& name) {
    for (int i = 0; i + 1 < 4; ++i) {
        const bool ok = b.direction == Direction::Ascending ? b.edges[i] <= b.edges[i + 1] : b.edges[i] >= b.edges[i + 1];
        if (!ok) throw ConfigError(name + ": edges are not monotone in the stated direction");
    }
}

}  // namespace detail

inline BinConfig parse_bin_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value: " + t);
        kv[detail::trim(t.substr(0, eq))] = detail::trim(t.substr(eq + 1));
    }
    const auto read = [&](const std::string& name) {
        BinRanges b;
        const auto dir = kv.find(name + ".direction");
        const auto edges = kv.find(name + ".edges");
        if (dir == kv.end() || edges == kv.end()) throw ConfigError("missing " + name + ".direction or .edges");
        if (dir->second == "ascending") {
            b.direction = Direction::Ascending;
        } else if (dir->second == "descending") {
            b.direction = Direction::Descending;
        } else {
            throw ConfigError(name + ".direction must be ascending or descending");
        }
        std::string edge_text = edges->second;
        std::replace(edge_text.begin(), edge_text.end(), ',', ' ');
        std::istringstream es(edge_text);
        for (double& e : b.edges) {
            if (!(es >> e)) throw ConfigError(name + ".edges needs four numbers");
        }
        double extra = 0;
        if (es >> extra) throw ConfigError(name + ".edges needs exactly four numbers");
        detail::check_monotone(b, name);
        return b;
    };
    return {read("cycles"), read("short_pct")};
}

inline BinConfig load_bin_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open bin config: " + path);
    return parse_bin_config(in);
}

inline std::string format_bin_config(const BinConfig& c) {
    std::ostringstream os;
    os.precision(17);
    const auto put = [&](const char* name, const BinRanges& b) {
        os << name << ".direction = " << to_string(b.direction) << '\n';
        os << name << ".edges = " << b.edges[0] << ", " << b.edges[1] << ", " << b.edges[2] << ", " << b.edges[3]
           << '\n';
    };
    put("cycles", c.cycles);
    put("short_pct", c.short_pct);
    return os.str();
}

}  // namespace sudoku::rating
