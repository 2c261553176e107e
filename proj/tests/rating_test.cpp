#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sudoku/rating.hpp"
#include "support.hpp"

using namespace sudoku;
using namespace sudoku::rating;
namespace ts = testing_support;

namespace {

std::array<int, 3> bin_counts(const std::vector<double>& v, const BinRanges& b) {
    std::array<int, 3> c{};
    for (double x : v) ++c[static_cast<int>(classify_value(x, b))];
    return c;
}

BinConfig reference_bins() { return load_bin_config(ts::config_path("reference-bins.cfg")); }

std::vector<double> iota_values(int lo, int hi) {
    std::vector<double> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// Textbook Spearman for inputs without ties: 1 - 6 sum d^2 / (n (n^2 - 1)).
double spearman_no_ties(const std::vector<double>& a, const std::vector<double>& b) {
    const auto rank = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            int below = 0;
            for (double x : v) below += x < v[i];
            r[i] = below + 1;
        }
        return r;
    };
    const auto ra = rank(a);
    const auto rb = rank(b);
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    const double n = static_cast<double>(a.size());
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST(EqualCountBins, ExactThirds) {
    const auto v = iota_values(1, 9);
    const BinRanges b = equal_count_bins(v);
    EXPECT_EQ(b.edges, (std::array<double, 4>{1, 4, 7, 9}));
    EXPECT_EQ(bin_counts(v, b), (std::array<int, 3>{3, 3, 3}));
}

TEST(EqualCountBins, TenValuesDifferByAtMostOne) {
    const auto v = iota_values(1, 10);
    const auto c = bin_counts(v, equal_count_bins(v));
    EXPECT_LE(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()), 1);
    EXPECT_EQ(c[0] + c[1] + c[2], 10);
}

TEST(EqualCountBins, CountsDifferByAtMostOneForEverySize) {
    for (int n = 3; n <= 60; ++n) {
        const auto v = iota_values(1, n);
        const auto c = bin_counts(v, equal_count_bins(v));
        EXPECT_LE(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()), 1) << n;
    }
}

TEST(EqualCountBins, NineHundredNinetyNine) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> v(999);
    for (double& x : v) x = u(rng);
    EXPECT_EQ(bin_counts(v, equal_count_bins(v)), (std::array<int, 3>{333, 333, 333}));
}

TEST(EqualCountBins, RightSkewWidensToTheRight) {
    std::mt19937_64 rng(8);
    std::exponential_distribution<double> e(0.1);
    std::vector<double> v(600);
    for (double& x : v) x = 1.0 + e(rng);
    const auto b = equal_count_bins(v);
    EXPECT_LT(b.edges[1] - b.edges[0], b.edges[2] - b.edges[1]);
    EXPECT_LT(b.edges[2] - b.edges[1], b.edges[3] - b.edges[2]);
}

TEST(EqualCountBins, DescendingMirrorsAscending) {
    const auto v = iota_values(1, 9);
    const BinRanges b = equal_count_bins(v, Direction::Descending);
    EXPECT_EQ(b.edges, (std::array<double, 4>{9, 6, 3, 1}));
    EXPECT_EQ(classify_value(9, b), Category::UniversalEasy);
    EXPECT_EQ(classify_value(6, b), Category::UniversalMedium);
    EXPECT_EQ(classify_value(1, b), Category::UniversalHard);
}

TEST(EqualCountBins, DegenerateInputs) {
    EXPECT_THROW(equal_count_bins(std::vector<double>{}), DegenerateBinning);
    EXPECT_THROW(equal_count_bins(std::vector<double>{1, 1, 2, 2}), DegenerateBinning);
    EXPECT_THROW(equal_count_bins(std::vector<double>{1, 1, 1, 1, 1, 1, 2, 3}), DegenerateBinning);
}

TEST(EqualCountBins, ScaleEquivariant) {
    std::mt19937_64 rng(12);
    std::lognormal_distribution<double> d(1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> v(50 + t);
        for (double& x : v) x = d(rng);
        const double k = 0.5 + static_cast<double>(t);
        std::vector<double> scaled;
        for (double x : v) scaled.push_back(x * k);
        const auto a = equal_count_bins(v);
        const auto b = equal_count_bins(scaled);
        for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(b.edges[i], a.edges[i] * k);
        for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(classify_value(v[i], a), classify_value(scaled[i], b));
    }
}

TEST(EqualCountBins, OrderIndependent) {
    std::mt19937_64 rng(13);
    std::vector<double> v(200);
    std::uniform_int_distribution<int> u(1, 40);
    for (double& x : v) x = u(rng);
    const auto a = equal_count_bins(v, Direction::Descending);
    for (int t = 0; t < 10; ++t) {
        std::shuffle(v.begin(), v.end(), rng);
        EXPECT_EQ(equal_count_bins(v, Direction::Descending), a);
    }
}

TEST(ClassifyValue, ReferenceCycleBins) {
    const auto bins = reference_bins().cycles;
    EXPECT_EQ(classify_value(2.0, bins), Category::UniversalEasy);
    EXPECT_EQ(classify_value(3.48, bins), Category::UniversalMedium);
    EXPECT_EQ(classify_value(6.52, bins), Category::UniversalHard);
    EXPECT_EQ(classify_value(1074.92, bins), Category::UniversalHard);
    EXPECT_EQ(classify_value(0.5, bins), Category::UniversalEasy);
}

TEST(ClassifyValue, ReferenceClauseBins) {
    const auto bins = reference_bins().short_pct;
    EXPECT_EQ(classify_value(20.0, bins), Category::UniversalMedium);
    EXPECT_EQ(classify_value(30.0, bins), Category::UniversalEasy);
    EXPECT_EQ(classify_value(22.6, bins), Category::UniversalMedium);
    EXPECT_EQ(classify_value(17.6, bins), Category::UniversalHard);
    EXPECT_EQ(classify_value(5.0, bins), Category::UniversalHard);
}

TEST(ClassifyValue, MonotoneAlongAxis) {
    const auto cfg = reference_bins();
    for (double v = 0; v < 120; v += 0.25) {
        EXPECT_LE(classify_value(v, cfg.cycles), classify_value(v + 0.25, cfg.cycles));
        EXPECT_GE(classify_value(v, cfg.short_pct), classify_value(v + 0.25, cfg.short_pct));
    }
}

TEST(ClassifyLevel, TableMeans) {
    const auto bins = reference_bins().cycles;
    EXPECT_EQ(classify_level(13.18, 13.18, bins).by_mean, Category::UniversalHard);
    EXPECT_EQ(classify_level(1.61, 1.61, bins).by_mean, Category::UniversalEasy);
    const auto straddle = classify_level(4.0, 3.0, bins);
    EXPECT_EQ(straddle.by_mean, Category::UniversalMedium);
    EXPECT_EQ(straddle.by_median, Category::UniversalEasy);
}

TEST(Spearman, MonotoneInputs) {
    const auto up = iota_values(1, 20);
    auto down = up;
    std::reverse(down.begin(), down.end());
    EXPECT_DOUBLE_EQ(spearman_rho(up, up), 1.0);
    EXPECT_DOUBLE_EQ(spearman_rho(up, down), -1.0);
}

TEST(Spearman, TiedLabels) {
    // Ranks (1.5, 1.5, 3.5, 3.5) against (1, 2, 3, 4): covariance 4, variances
    // 4 and 5, so rho = 4 / sqrt(20).
    const double rho = spearman_rho(std::vector<double>{1, 1, 2, 2}, std::vector<double>{1, 2, 3, 4});
    EXPECT_NEAR(rho, 0.894, 0.001);
    EXPECT_NEAR(rho, 4.0 / std::sqrt(20.0), 1e-12);
}

TEST(Spearman, MatchesClosedFormWithoutTies) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n;
    for (int t = 0; t < 30; ++t) {
        std::vector<double> a(25), b(25);
        for (double& x : a) x = n(rng);
        for (double& x : b) x = n(rng);
        EXPECT_NEAR(spearman_rho(a, b), spearman_no_ties(a, b), 1e-12);
    }
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> a(30), b(30);
        for (double& x : a) x = std::round(u(rng));
        for (double& x : b) x = u(rng);
        std::vector<double> ta, tb;
        for (double x : a) ta.push_back(std::exp(x) + 3.0);
        for (double x : b) tb.push_back(-1.0 / x);
        const double rho = spearman_rho(a, b);
        EXPECT_LT(std::abs(spearman_rho(ta, b) - rho), 1e-9);
        EXPECT_LT(std::abs(spearman_rho(a, tb) - rho), 1e-9);
    }
}

TEST(Spearman, UndefinedCases) {
    EXPECT_THROW(spearman_rho(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), UndefinedCorrelation);
    EXPECT_THROW(spearman_rho(std::vector<double>{1}, std::vector<double>{1}), UndefinedCorrelation);
    EXPECT_THROW(spearman_rho(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
}

TEST(PercentSolved, SinglesCorpusIsFullAtTwo) {
    std::vector<Grid> grids;
    for (const auto& p : ts::corpus_puzzles(ts::data_path("singles30.txt"))) grids.push_back(parse_grid(p));
    EXPECT_DOUBLE_EQ(percent_solved_by_strategies(grids, 2), 100.0);
}

TEST(PercentSolved, UltraHardIsZeroAtFour) {
    std::vector<Grid> grids;
    for (const auto& p : {ts::kPlatinumBlonde, ts::kGoldenNugget, ts::kEasterMonster}) grids.push_back(parse_grid(p));
    EXPECT_DOUBLE_EQ(percent_solved_by_strategies(grids, 4), 0.0);
}

TEST(PercentSolved, MonotoneInK) {
    std::vector<Grid> grids;
    for (const auto& p : ts::corpus_puzzles(ts::data_path("mixed100.csv"))) grids.push_back(parse_grid(p));
    const double p2 = percent_solved_by_strategies(grids, 2);
    const double p3 = percent_solved_by_strategies(grids, 3);
    const double p4 = percent_solved_by_strategies(grids, 4);
    EXPECT_LE(p2, p3);
    EXPECT_LE(p3, p4);
}

namespace {

PuzzleMetrics metrics_with(double cycles4, double short_pct, bool solved2) {
    PuzzleMetrics m;
    m.cycles[4].mean = cycles4;
    m.cycles[4].median = cycles4;
    m.heuristic_cycles[4] = static_cast<long>(cycles4);
    m.short_pct = short_pct;
    m.solved_by = {{2, solved2}, {3, solved2}, {4, true}};
    return m;
}

}  // namespace

TEST(SummarizeLevel, SinglePuzzle) {
    const std::vector<PuzzleMetrics> ms = {metrics_with(5.0, 30.0, true)};
    const auto s = summarize_level(ms, "site", "easy", 1, 4, reference_bins().cycles, reference_bins().short_pct);
    EXPECT_DOUBLE_EQ(s.cycles.at(4).mean, s.cycles.at(4).median);
    EXPECT_EQ(s.cycle_category->by_mean, Category::UniversalMedium);
    EXPECT_EQ(*s.clause_category, Category::UniversalEasy);
    EXPECT_FALSE(s.right_skewed);
}

TEST(SummarizeLevel, TwoPuzzles) {
    const std::vector<PuzzleMetrics> ms = {metrics_with(2.0, 30.0, true), metrics_with(4.0, 20.0, false)};
    const auto s = summarize_level(ms, "site", "mid", 2, 4, std::nullopt, std::nullopt);
    EXPECT_DOUBLE_EQ(s.cycles.at(4).mean, 3.0);
    EXPECT_DOUBLE_EQ(s.cycles.at(4).median, 3.0);
    EXPECT_DOUBLE_EQ(s.pct_solved_by.at(2), 50.0);
    EXPECT_DOUBLE_EQ(s.pct_solved_by.at(4), 100.0);
    EXPECT_FALSE(s.cycle_category.has_value());
}

TEST(SummarizeLevel, SixtyPuzzlesMatchRecomputation) {
    std::mt19937_64 rng(77);
    std::exponential_distribution<double> e(0.2);
    std::uniform_real_distribution<double> u(5.0, 40.0);
    std::vector<PuzzleMetrics> ms;
    for (int i = 0; i < 60; ++i) ms.push_back(metrics_with(1.0 + e(rng), u(rng), i % 3 == 0));
    const auto s = summarize_level(ms, "site", "hard", 3, 4, reference_bins().cycles, reference_bins().short_pct);

    // Second pass: Kahan sum and nth_element median.
    double sum = 0, comp = 0, ssum = 0;
    std::vector<double> cyc;
    int solved2 = 0;
    for (const auto& m : ms) {
        const double y = m.cycles.at(4).mean - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        ssum += m.short_pct;
        cyc.push_back(m.cycles.at(4).mean);
        solved2 += m.solved_by.at(2);
    }
    std::nth_element(cyc.begin(), cyc.begin() + 29, cyc.end());
    const double lo = cyc[29];
    const double hi = *std::min_element(cyc.begin() + 30, cyc.end());
    EXPECT_NEAR(s.cycles.at(4).mean, sum / 60.0, 1e-9);
    EXPECT_NEAR(s.cycles.at(4).median, 0.5 * (lo + hi), 1e-12);
    EXPECT_NEAR(s.short_pct.mean, ssum / 60.0, 1e-9);
    EXPECT_NEAR(s.pct_solved_by.at(2), 100.0 * solved2 / 60.0, 1e-12);
    EXPECT_EQ(s.right_skewed, s.cycles.at(4).mean > s.cycles.at(4).median);
    EXPECT_LE(s.pct_solved_by.at(2), s.pct_solved_by.at(3));
    EXPECT_LE(s.pct_solved_by.at(3), s.pct_solved_by.at(4));
}

TEST(BinConfigFile, ReferenceRanges) {
    const auto cfg = reference_bins();
    EXPECT_EQ(cfg.cycles.direction, Direction::Ascending);
    EXPECT_EQ(cfg.cycles.edges, (std::array<double, 4>{1.30, 3.48, 6.52, 98.14}));
    EXPECT_EQ(cfg.short_pct.direction, Direction::Descending);
    EXPECT_EQ(cfg.short_pct.edges, (std::array<double, 4>{100, 22.6, 17.6, 0}));
}

TEST(BinConfigFile, FormatRoundTrips) {
    const auto cfg = reference_bins();
    std::istringstream in(format_bin_config(cfg));
    const auto back = parse_bin_config(in);
    EXPECT_EQ(back.cycles, cfg.cycles);
    EXPECT_EQ(back.short_pct, cfg.short_pct);
}

TEST(BinConfigFile, Malformed) {
    std::istringstream missing("cycles.direction = ascending\n");
    EXPECT_THROW(parse_bin_config(missing), ConfigError);
    std::istringstream backwards(
        "cycles.direction = ascending\ncycles.edges = 4, 3, 2, 1\n"
        "short_pct.direction = descending\nshort_pct.edges = 4, 3, 2, 1\n");
    EXPECT_THROW(parse_bin_config(backwards), ConfigError);
    std::istringstream three(
        "cycles.direction = ascending\ncycles.edges = 1, 2, 3\n"
        "short_pct.direction = descending\nshort_pct.edges = 4, 3, 2, 1\n");
    EXPECT_THROW(parse_bin_config(three), ConfigError);
}
