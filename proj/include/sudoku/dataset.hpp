#pragma once

// Corpus ingestion, batch rating and report emission.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include <json.hpp>

#include "board.hpp"
#include "errors.hpp"
#include "nishio.hpp"
#include "rating.hpp"
#include "sat.hpp"
#include "strategies.hpp"

namespace sudoku::dataset {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct PuzzleRecord {
    std::string id;
    Grid grid;
    std::optional<std::string> website;
    std::optional<std::string> level;
    std::optional<int> rank_index;  // present iff level is present
};

struct Reject {
    std::string id;
    std::size_t line = 0;  // 0 when not tied to an input line
    std::string kind;
    std::string message;
};

struct CorpusLoad {
    std::vector<PuzzleRecord> records;
    std::vector<Reject> rejects;
};

enum class CorpusFormat { Lines, Csv };

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(rating::detail::trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline std::optional<int> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    try {
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

// Rejects puzzles without exactly one solution.
inline void check_unique(const Grid& g) {
    const int n = sat::count_solutions(sat::encode_minimum(g), 2);
    if (n == 0) throw UnsatisfiablePuzzle("puzzle has no solution");
    if (n > 1) throw NonUniqueSolution("puzzle has more than one solution");
}

inline std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace detail

// Lines format: one 81-character puzzle per line with an optional trailing
// ",label" field. An integer label is its own rank; other labels are ranked by
// order of first appearance. CSV format: header naming columns among
// id,puzzle,website,level,rank. Blank lines and '#' lines are skipped.
inline CorpusLoad load_corpus(std::istream& in, CorpusFormat format, bool check_uniqueness = true) {
    CorpusLoad out;
    std::map<std::string, int> columns;
    std::map<std::string, int> label_ranks;
    std::set<std::string> ids;
    std::size_t data_lines = 0;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = rating::detail::trim(line);
        if (t.empty() || t[0] == '#') continue;

        if (format == CorpusFormat::Csv && !header_seen) {
            const auto names = detail::split_csv(t);
            for (std::size_t i = 0; i < names.size(); ++i) columns[names[i]] = static_cast<int>(i);
            if (!columns.contains("puzzle")) throw ParseError("CSV header must contain a 'puzzle' column");
            header_seen = true;
            continue;
        }
        ++data_lines;

        PuzzleRecord rec;
        rec.id = "line" + std::to_string(lineno);
        std::string puzzle_text;
        try {
            if (format == CorpusFormat::Lines) {
                const auto comma = t.find(',');
                puzzle_text = t.substr(0, comma);
                if (comma != std::string::npos) {
                    const std::string label = rating::detail::trim(t.substr(comma + 1));
                    if (!label.empty()) {
                        rec.level = label;
                        if (const auto r = detail::parse_int(label)) {
                            rec.rank_index = *r;
                        } else {
                            const auto [it, inserted] =
                                label_ranks.emplace(label, static_cast<int>(label_ranks.size()) + 1);
                            rec.rank_index = it->second;
                        }
                    }
                }
            } else {
                const auto fields = detail::split_csv(t);
                const auto get = [&](const char* name) -> std::optional<std::string> {
                    const auto it = columns.find(name);
                    if (it == columns.end() || static_cast<std::size_t>(it->second) >= fields.size()) return std::nullopt;
                    if (fields[static_cast<std::size_t>(it->second)].empty()) return std::nullopt;
                    return fields[static_cast<std::size_t>(it->second)];
                };
                if (auto id = get("id")) rec.id = *id;
                puzzle_text = get("puzzle").value_or("");
                rec.website = get("website");
                rec.level = get("level");
                if (auto r = get("rank")) {
                    rec.rank_index = detail::parse_int(*r);
                    if (!rec.rank_index) throw ParseError("rank must be an integer");
                }
                if (rec.level.has_value() != rec.rank_index.has_value()) {
                    throw ParseError("level and rank must be given together");
                }
            }
            if (!ids.insert(rec.id).second) throw ParseError("duplicate id " + rec.id);
            rec.grid = parse_grid(puzzle_text);
            if (check_uniqueness) detail::check_unique(rec.grid);
            out.records.push_back(std::move(rec));
        } catch (const Error& e) {
            out.rejects.push_back({rec.id, lineno, e.kind(), e.what()});
        }
    }
    if (data_lines == 0) throw EmptyCorpus("corpus contains no puzzles");
    return out;
}

inline CorpusLoad load_corpus(const std::string& path, CorpusFormat format, bool check_uniqueness = true) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus: " + path);
    return load_corpus(in, format, check_uniqueness);
}

inline CorpusFormat guess_format(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? CorpusFormat::Csv : CorpusFormat::Lines;
}

struct FitBins {};
struct ConfiguredBins {
    rating::BinConfig bins;
    std::string source;  // e.g. the config path
};

struct RateConfig {
    int starts = 50;
    std::uint64_t seed_base = 0;
    std::vector<int> strategy_counts = {2, 4};
    std::variant<FitBins, ConfiguredBins> bins = FitBins{};
    int workers = 1;
    bool uniqueness_checked = true;  // recorded in metadata only
};

// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed base for one puzzle and strategy count; depends on the puzzle's
// position in the corpus, never on the worker that rates it.
inline std::uint64_t derive_seed(std::uint64_t seed_base, std::size_t puzzle_index, int strategy_count) {
    return mix64(seed_base ^ mix64((static_cast<std::uint64_t>(puzzle_index) << 3) | static_cast<std::uint64_t>(strategy_count)));
}

struct PuzzleRow {
    PuzzleRecord record;
    rating::PuzzleMetrics metrics;
    sat::ClauseLengthDistribution distribution;
    std::optional<rating::Category> cycle_category;
    std::optional<rating::Category> clause_category;
};

struct Correlation {
    std::string website;
    std::string metric;
    std::size_t n = 0;
    std::optional<double> rho;
    std::string note;
};

struct RatingReport {
    int starts = 0;
    std::uint64_t seed_base = 0;
    std::vector<int> strategy_counts;
    int primary_count = 4;
    std::string bin_source;
    bool uniqueness_checked = true;
    std::optional<rating::BinConfig> bins;
    std::string bins_note;

    std::vector<PuzzleRow> rows;
    std::vector<rating::LevelSummary> levels;
    std::vector<Correlation> correlations;
    std::vector<Reject> rejects;
};

inline rating::PuzzleMetrics measure_puzzle(const Grid& g, std::size_t index, const RateConfig& cfg,
                                            sat::ClauseLengthDistribution& dist) {
    rating::PuzzleMetrics m;
    dist = sat::clause_length_distribution(sat::encode_minimum(g));
    m.short_pct = dist.short_pct;
    m.clause_pct = dist.percent;
    for (int k = 2; k <= 4; ++k) m.solved_by[k] = solve_by_strategies(g, k).solved;
    for (int k : cfg.strategy_counts) {
        m.cycles[k] = nishio_human_cycles(g, k, cfg.starts, derive_seed(cfg.seed_base, index, k));
        m.heuristic_cycles[k] = heuristic_nishio(g, k).cycles;
    }
    return m;
}

inline std::string metric_name_cycles(int k) { return "cycles" + std::to_string(k) + "_mean"; }

// Runs the whole pipeline over the records. Per-record failures land in the
// rejects list; the batch continues.
inline RatingReport rate_corpus(const std::vector<PuzzleRecord>& records, const RateConfig& cfg_in) {
    RateConfig cfg = cfg_in;
    std::sort(cfg.strategy_counts.begin(), cfg.strategy_counts.end());
    cfg.strategy_counts.erase(std::unique(cfg.strategy_counts.begin(), cfg.strategy_counts.end()),
                              cfg.strategy_counts.end());
    if (cfg.strategy_counts.empty()) throw std::invalid_argument("at least one strategy count is required");
    for (int k : cfg.strategy_counts) check_strategy_count(k);
    if (cfg.starts < 1) throw std::invalid_argument("starts must be positive");

    RatingReport report;
    report.starts = cfg.starts;
    report.seed_base = cfg.seed_base;
    report.strategy_counts = cfg.strategy_counts;
    report.primary_count = cfg.strategy_counts.back();
    report.uniqueness_checked = cfg.uniqueness_checked;

    struct Slot {
        std::optional<PuzzleRow> row;
        std::optional<Reject> reject;
    };
    std::vector<Slot> slots(records.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                PuzzleRow row{records[i], {}, {}, std::nullopt, std::nullopt};
                row.metrics = measure_puzzle(records[i].grid, i, cfg, row.distribution);
                slots[i].row = std::move(row);
            } catch (const Error& e) {
                slots[i].reject = Reject{records[i].id, 0, e.kind(), e.what()};
            }
        }
    };
    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(std::max<std::size_t>(records.size(), 1))));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& s : slots) {
        if (s.row) report.rows.push_back(std::move(*s.row));
        if (s.reject) report.rejects.push_back(std::move(*s.reject));
    }

    const int primary = report.primary_count;
    if (const auto* configured = std::get_if<ConfiguredBins>(&cfg.bins)) {
        report.bins = configured->bins;
        report.bin_source = configured->source;
    } else {
        report.bin_source = "fit";
        std::vector<double> cyc, shorts;
        for (const auto& r : report.rows) {
            cyc.push_back(r.metrics.cycles.at(primary).mean);
            shorts.push_back(r.metrics.short_pct);
        }
        try {
            if (report.rows.empty()) throw DegenerateBinning("no rated puzzles");
            report.bins = rating::BinConfig{rating::equal_count_bins(cyc, rating::Direction::Ascending),
                                            rating::equal_count_bins(shorts, rating::Direction::Descending)};
        } catch (const DegenerateBinning& e) {
            report.bins_note = e.what();
        }
    }
    if (report.bins) {
        for (auto& r : report.rows) {
            r.cycle_category = rating::classify_value(r.metrics.cycles.at(primary).mean, report.bins->cycles);
            r.clause_category = rating::classify_value(r.metrics.short_pct, report.bins->short_pct);
        }
    }

    // Levels and correlations exist only for labelled puzzles.
    using LevelKey = std::tuple<std::string, int, std::string>;
    std::map<LevelKey, std::vector<rating::PuzzleMetrics>> levels;
    std::map<std::string, std::vector<const PuzzleRow*>> by_site;
    for (const auto& r : report.rows) {
        if (!r.record.level) continue;
        const std::string site = r.record.website.value_or("");
        levels[{site, *r.record.rank_index, *r.record.level}].push_back(r.metrics);
        by_site[site].push_back(&r);
    }
    const std::optional<rating::BinRanges> cycle_bins =
        report.bins ? std::optional(report.bins->cycles) : std::nullopt;
    const std::optional<rating::BinRanges> clause_bins =
        report.bins ? std::optional(report.bins->short_pct) : std::nullopt;
    for (const auto& [key, metrics] : levels) {
        report.levels.push_back(rating::summarize_level(metrics, std::get<0>(key), std::get<2>(key), std::get<1>(key),
                                                        primary, cycle_bins, clause_bins));
    }
    for (const auto& [site, rows] : by_site) {
        std::vector<double> labels;
        for (const auto* r : rows) labels.push_back(static_cast<double>(*r->record.rank_index));
        const auto correlate = [&](const std::string& name, auto metric_of) {
            std::vector<double> metric;
            for (const auto* r : rows) metric.push_back(metric_of(*r));
            Correlation c{site, name, rows.size(), std::nullopt, ""};
            try {
                c.rho = rating::spearman_rho(labels, metric);
            } catch (const UndefinedCorrelation& e) {
                c.note = e.what();
            }
            report.correlations.push_back(std::move(c));
        };
        correlate("short_pct", [](const PuzzleRow& r) { return r.metrics.short_pct; });
        for (int k : report.strategy_counts) {
            correlate(metric_name_cycles(k), [k](const PuzzleRow& r) { return r.metrics.cycles.at(k).mean; });
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Emission. Each table row is built once as an ordered JSON object; the CSV
// rendering walks the same object, so both formats carry identical values.
// Table values are rounded to two decimals; "full_" fields keep full precision.

using Json = nlohmann::ordered_json;

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

namespace detail {

inline void put_real(Json& row, Json& full, const std::string& name, double v) {
    row[name] = round2(v);
    full[name] = v;
}

inline Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

inline Json category_json(const std::optional<rating::Category>& c) {
    return c ? Json(rating::to_string(*c)) : Json(nullptr);
}

inline Json bins_json(const rating::BinRanges& b) {
    return Json{{"direction", rating::to_string(b.direction)}, {"edges", b.edges}};
}

// Flattens nested {"full": {...}} into "full_<name>" keys for tabular output.
inline Json flatten(const Json& row) {
    Json flat = Json::object();
    for (const auto& [k, v] : row.items()) {
        if (k == "full") continue;
        flat[k] = v;
    }
    if (row.contains("full")) {
        for (const auto& [k, v] : row["full"].items()) flat["full_" + k] = v;
    }
    return flat;
}

}  // namespace detail

inline Json puzzle_row_json(const PuzzleRow& r, const std::vector<int>& counts) {
    Json row, full;
    row["id"] = r.record.id;
    row["puzzle"] = render_grid(r.record.grid);
    row["website"] = detail::optional_string(r.record.website);
    row["level"] = detail::optional_string(r.record.level);
    row["rank"] = r.record.rank_index ? Json(*r.record.rank_index) : Json(nullptr);
    row["givens"] = r.record.grid.given_count();
    for (int k : counts) {
        const auto& st = r.metrics.cycles.at(k);
        detail::put_real(row, full, "cycles" + std::to_string(k) + "_mean", st.mean);
        detail::put_real(row, full, "cycles" + std::to_string(k) + "_median", st.median);
        row["heuristic" + std::to_string(k) + "_cycles"] = r.metrics.heuristic_cycles.at(k);
    }
    detail::put_real(row, full, "short_pct", r.distribution.short_pct);
    detail::put_real(row, full, "medium_pct", r.distribution.medium_pct);
    detail::put_real(row, full, "long_pct", r.distribution.long_pct);
    row["at_least_one_clauses"] = r.distribution.total;
    for (int k = 2; k <= 4; ++k) row["solved_by_" + std::to_string(k)] = r.metrics.solved_by.at(k);
    row["cycle_category"] = detail::category_json(r.cycle_category);
    row["clause_category"] = detail::category_json(r.clause_category);
    row["full"] = full;
    return row;
}

inline Json level_row_json(const rating::LevelSummary& s) {
    Json row, full;
    row["website"] = s.website;
    row["level"] = s.level;
    row["rank"] = s.rank_index;
    row["puzzles"] = s.puzzles;
    for (const auto& [k, a] : s.cycles) {
        detail::put_real(row, full, "cycles" + std::to_string(k) + "_mean", a.mean);
        detail::put_real(row, full, "cycles" + std::to_string(k) + "_median", a.median);
    }
    for (const auto& [k, a] : s.heuristic_cycles) {
        detail::put_real(row, full, "heuristic" + std::to_string(k) + "_mean", a.mean);
        detail::put_real(row, full, "heuristic" + std::to_string(k) + "_median", a.median);
    }
    detail::put_real(row, full, "short_pct_mean", s.short_pct.mean);
    detail::put_real(row, full, "short_pct_median", s.short_pct.median);
    for (const auto& [k, p] : s.pct_solved_by) detail::put_real(row, full, "pct_solved_by_" + std::to_string(k), p);
    row["cycle_category_mean"] =
        s.cycle_category ? Json(rating::to_string(s.cycle_category->by_mean)) : Json(nullptr);
    row["cycle_category_median"] =
        s.cycle_category ? Json(rating::to_string(s.cycle_category->by_median)) : Json(nullptr);
    row["clause_category"] = detail::category_json(s.clause_category);
    row["right_skewed"] = s.right_skewed;
    row["full"] = full;
    return row;
}

inline Json correlation_row_json(const Correlation& c) {
    Json row, full;
    row["website"] = c.website;
    row["metric"] = c.metric;
    row["n"] = c.n;
    if (c.rho) {
        detail::put_real(row, full, "rho", *c.rho);
    } else {
        row["rho"] = nullptr;
        full["rho"] = nullptr;
    }
    row["note"] = c.note;
    row["full"] = full;
    return row;
}

inline Json reject_row_json(const Reject& r) {
    return Json{{"id", r.id}, {"line", r.line}, {"kind", r.kind}, {"message", r.message}};
}

inline Json metadata_json(const RatingReport& r) {
    Json m;
    m["toolkit"] = "sudoku-rating";
    m["version"] = kToolkitVersion;
    m["rng"] = Rng::kAlgorithm;
    m["seed_derivation"] = "splitmix64(seed_base ^ splitmix64(index << 3 | strategy_count)) + start";
    m["seed_base"] = r.seed_base;
    m["starts"] = r.starts;
    m["strategy_counts"] = r.strategy_counts;
    m["primary_strategy_count"] = r.primary_count;
    m["bin_source"] = r.bin_source;
    m["uniqueness_checked"] = r.uniqueness_checked;
    m["puzzles_rated"] = r.rows.size();
    m["rejects"] = r.rejects.size();
    return m;
}

inline Json report_json(const RatingReport& r) {
    Json j;
    j["metadata"] = metadata_json(r);
    if (r.bins) {
        j["bins"] = Json{{"cycles", detail::bins_json(r.bins->cycles)}, {"short_pct", detail::bins_json(r.bins->short_pct)}};
    } else {
        j["bins"] = nullptr;
        j["bins_note"] = r.bins_note;
    }
    j["puzzles"] = Json::array();
    for (const auto& row : r.rows) j["puzzles"].push_back(puzzle_row_json(row, r.strategy_counts));
    const bool labelled = !r.levels.empty();
    if (labelled) {
        j["levels"] = Json::array();
        for (const auto& s : r.levels) j["levels"].push_back(level_row_json(s));
        j["correlations"] = Json::array();
        for (const auto& c : r.correlations) j["correlations"].push_back(correlation_row_json(c));
    }
    j["rejects"] = Json::array();
    for (const auto& x : r.rejects) j["rejects"].push_back(reject_row_json(x));
    return j;
}

namespace detail {

inline std::string csv_cell(const std::string& key, const Json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, key.rfind("full_", 0) == 0 ? "%.17g" : "%.2f", v.get<double>());
        return buf;
    }
    if (v.is_string()) return sanitize(v.get<std::string>());
    return sanitize(v.dump());
}

inline void csv_table(std::ostream& out, const std::string& title, const std::vector<Json>& rows) {
    out << "# " << title << '\n';
    if (rows.empty()) return;
    const Json first = flatten(rows.front());
    bool head = true;
    for (const auto& [k, v] : first.items()) {
        out << (head ? "" : ",") << k;
        head = false;
    }
    out << '\n';
    for (const Json& row : rows) {
        const Json flat = flatten(row);
        head = true;
        for (const auto& [k, v] : flat.items()) {
            out << (head ? "" : ",") << csv_cell(k, v);
            head = false;
        }
        out << '\n';
    }
}

}  // namespace detail

enum class ReportFormat { Json, Csv };

// CSV layout: "# key: value" metadata lines, then the puzzle table, then the
// level, correlation and reject tables, each introduced by a "# <name>" line
// and separated by blank lines.
inline void emit_report(const RatingReport& r, std::ostream& out, ReportFormat format) {
    const Json j = report_json(r);
    if (format == ReportFormat::Json) {
        out << j.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : j["metadata"].items()) {
            out << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
        if (r.bins) {
            out << "# bins.cycles: " << j["bins"]["cycles"].dump() << '\n';
            out << "# bins.short_pct: " << j["bins"]["short_pct"].dump() << '\n';
        } else {
            out << "# bins: none (" << r.bins_note << ")\n";
        }
        const auto rows_of = [&](const char* key) {
            std::vector<Json> v;
            if (j.contains(key)) {
                for (const auto& x : j[key]) v.push_back(x);
            }
            return v;
        };
        detail::csv_table(out, "puzzles", rows_of("puzzles"));
        if (j.contains("levels")) {
            out << '\n';
            detail::csv_table(out, "levels", rows_of("levels"));
            out << '\n';
            detail::csv_table(out, "correlations", rows_of("correlations"));
        }
        out << '\n';
        detail::csv_table(out, "rejects", rows_of("rejects"));
    }
    if (!out) throw std::ios_base::failure("failed writing report");
}

inline std::string emit_report(const RatingReport& r, ReportFormat format) {
    std::ostringstream os;
    emit_report(r, os, format);
    return os.str();
}

// Width-1 histograms of the primary cycle metric and of the short-clause
// percentage. Rows: metric,bin_start,bin_end,count.
inline void emit_histograms(const RatingReport& r, std::ostream& out) {
    out << "metric,bin_start,bin_end,count\n";
    const auto hist = [&](const std::string& name, const std::vector<double>& values) {
        std::map<long, std::size_t> counts;
        for (double v : values) ++counts[static_cast<long>(std::floor(v))];
        if (counts.empty()) return;
        for (long b = counts.begin()->first; b <= counts.rbegin()->first; ++b) {
            const auto it = counts.find(b);
            out << name << ',' << b << ',' << b + 1 << ',' << (it == counts.end() ? 0 : it->second) << '\n';
        }
    };
    std::vector<double> cyc, shorts;
    for (const auto& row : r.rows) {
        cyc.push_back(row.metrics.cycles.at(r.primary_count).mean);
        shorts.push_back(row.distribution.short_pct);
    }
    hist(metric_name_cycles(r.primary_count), cyc);
    hist("short_pct", shorts);
}

// Reads the first table of a CSV report (or any headed CSV) as
// column -> values. Lines starting with '#' are skipped; the table ends at
// the first blank line after its header.
inline std::map<std::string, std::vector<std::string>> read_metrics_table(std::istream& in) {
    std::map<std::string, std::vector<std::string>> table;
    std::vector<std::string> header;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') continue;
        if (rating::detail::trim(line).empty()) {
            if (!header.empty()) break;
            continue;
        }
        const auto fields = detail::split_csv(line);
        if (header.empty()) {
            header = fields;
            for (const auto& h : header) table[h];
            continue;
        }
        if (fields.size() != header.size()) throw ParseError("row width does not match header: " + line);
        for (std::size_t i = 0; i < fields.size(); ++i) table[header[i]].push_back(fields[i]);
    }
    if (header.empty()) throw ParseError("metrics file has no header");
    return table;
}

inline std::vector<double> numeric_column(const std::map<std::string, std::vector<std::string>>& table,
                                          const std::string& name) {
    const auto it = table.find(name);
    if (it == table.end()) throw ParseError("no column named " + name);
    std::vector<double> out;
    for (const auto& s : it->second) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw ParseError("non-numeric value '" + s + "' in column " + name);
        }
    }
    return out;
}

}  // namespace sudoku::dataset
