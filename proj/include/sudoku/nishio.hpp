#pragma once

// Nishio (trial and error) interleaved with the human strategies.
//
// Both solvers share one engine: strategy cycles run to a fixpoint; when the
// state stalls a cell and digit are assumed and pushed on a guess stack; on a
// contradiction the most recent guess is undone and its digit eliminated,
// and an exhausted cell propagates the contradiction to the previous guess.
// Every cycle executed, including those on branches that later fail, is
// counted.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "board.hpp"
#include "strategies.hpp"

namespace sudoku {

// Seeded mt19937_64 with an unbiased bounded draw. std::uniform_int_distribution
// is implementation-defined, so bounded draws are done here to keep runs
// identical across standard libraries.
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64 (rejection-sampled bounded draws)";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

private:
    std::mt19937_64 engine_;
};

struct GuessFrame {
    Cell cell;
    int digit = 0;
    State saved;             // state just before the guess, always Open
    CandidateSet untried;    // candidates of `cell` not yet tried at this level
};

struct NishioRun {
    bool solved = false;
    long cycles = 0;
    int guesses = 0;
    int backtracks = 0;
    int max_depth = 0;
    std::optional<std::uint64_t> seed;  // empty for heuristic runs
    int strategy_count = 4;
    Grid solution;

    friend bool operator==(const NishioRun&, const NishioRun&) = default;
};

struct NishioEvent {
    enum class Kind { Guess, Backtrack, Solved };
    Kind kind = Kind::Guess;
    Cell cell;
    int digit = 0;
    int depth = 0;
    long cycles = 0;
};

struct NishioHooks {
    StrategyObserver on_strategy;                        // after each strategy application
    std::function<void(const NishioEvent&)> on_event;    // guesses, backtracks, completion
    std::function<void(const GuessFrame&, const State& restored)> on_restore;
};

struct Choice {
    int index = 0;
    int digit = 0;
};

// Number of empty cells holding each digit as a candidate; index 0 unused.
inline std::array<int, 10> candidate_occurrence_counts(const CandidateGrid& c) {
    std::array<int, 10> counts{};
    for (int i = 0; i < kCells; ++i) c.at(i).for_each([&](int d) { ++counts[d]; });
    return counts;
}

// Minimum remaining values, ties broken by the largest sum of occurrence
// counts over the cell's candidates, then row-major position. The digit with
// the highest occurrence count is assumed first, ties to the smaller digit.
inline Choice heuristic_choice(const State& s) {
    const auto counts = candidate_occurrence_counts(s.candidates);
    int best = -1;
    int best_size = 10;
    int best_sum = -1;
    for (int i = 0; i < kCells; ++i) {
        if (!s.grid.empty(i)) continue;
        const CandidateSet set = s.candidates.at(i);
        int sum = 0;
        set.for_each([&](int d) { sum += counts[d]; });
        if (set.size() < best_size || (set.size() == best_size && sum > best_sum)) {
            best = i;
            best_size = set.size();
            best_sum = sum;
        }
    }
    int digit = 0;
    s.candidates.at(best).for_each([&](int d) {
        if (digit == 0 || counts[d] > counts[digit]) digit = d;
    });
    return {best, digit};
}

// Uniform over empty cells, then uniform over that cell's candidates.
inline Choice random_choice(const State& s, Rng& rng) {
    std::array<int, kCells> empties{};
    int n = 0;
    for (int i = 0; i < kCells; ++i) {
        if (s.grid.empty(i)) empties[n++] = i;
    }
    const int index = empties[rng.below(static_cast<std::uint64_t>(n))];
    std::array<int, 9> digits{};
    int m = 0;
    s.candidates.at(index).for_each([&](int d) { digits[m++] = d; });
    return {index, digits[rng.below(static_cast<std::uint64_t>(m))]};
}

namespace detail {

template <typename Chooser>
NishioRun run_nishio(const Grid& grid, int strategy_count, Chooser&& choose, const NishioHooks* hooks) {
    check_strategy_count(strategy_count);
    NishioRun run;
    run.strategy_count = strategy_count;

    const StrategyObserver* observer = (hooks != nullptr && hooks->on_strategy) ? &hooks->on_strategy : nullptr;
    const auto emit = [&](NishioEvent::Kind kind, Cell cell, int digit, int depth) {
        if (hooks != nullptr && hooks->on_event) hooks->on_event({kind, cell, digit, depth, run.cycles});
    };

    State state(grid);
    std::vector<GuessFrame> stack;
    stack.reserve(kCells);

    for (;;) {
        while (state.status() == GridStatus::Open) {
            const StrategyOutcome o = run_strategy_cycle(state, strategy_count, observer);
            ++run.cycles;
            if (!o.progressed()) break;
        }

        switch (state.status()) {
            case GridStatus::Solved:
                run.solved = true;
                run.solution = state.grid;
                emit(NishioEvent::Kind::Solved, Cell{}, 0, static_cast<int>(stack.size()));
                return run;

            case GridStatus::Contradicted: {
                for (;;) {
                    if (stack.empty()) throw UnsatisfiablePuzzle("guess tree exhausted without a solution");
                    GuessFrame frame = std::move(stack.back());
                    stack.pop_back();
                    ++run.backtracks;
                    state = frame.saved;
                    state.eliminate(frame.cell, frame.digit);
                    if (hooks != nullptr && hooks->on_restore) hooks->on_restore(frame, state);
                    emit(NishioEvent::Kind::Backtrack, frame.cell, frame.digit, static_cast<int>(stack.size()));
                    if (!state.candidates.at(frame.cell.index()).empty()) break;
                }
                break;
            }

            case GridStatus::Open: {
                const Choice c = choose(state);
                GuessFrame frame{Cell::at(c.index), c.digit, state, state.candidates.at(c.index)};
                frame.untried.erase(c.digit);
                stack.push_back(std::move(frame));
                ++run.guesses;
                run.max_depth = std::max(run.max_depth, static_cast<int>(stack.size()));
                emit(NishioEvent::Kind::Guess, Cell::at(c.index), c.digit, static_cast<int>(stack.size()));
                state.place(c.index, c.digit);
                break;
            }
        }
    }
}

}  // namespace detail

inline NishioRun randomized_nishio(const Grid& grid, int strategy_count, std::uint64_t seed,
                                   const NishioHooks* hooks = nullptr) {
    Rng rng(seed);
    NishioRun run = detail::run_nishio(
        grid, strategy_count, [&](const State& s) { return random_choice(s, rng); }, hooks);
    run.seed = seed;
    return run;
}

inline NishioRun heuristic_nishio(const Grid& grid, int strategy_count, const NishioHooks* hooks = nullptr) {
    return detail::run_nishio(grid, strategy_count, heuristic_choice, hooks);
}

struct CycleStats {
    double mean = 0.0;
    double median = 0.0;
    std::vector<NishioRun> runs;
};

inline double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Randomized runs with seeds seed_base, seed_base + 1, ..., seed_base + starts - 1.
inline CycleStats nishio_human_cycles(const Grid& grid, int strategy_count, int starts = 50,
                                      std::uint64_t seed_base = 0) {
    if (starts < 1) throw std::invalid_argument("starts must be positive");
    CycleStats stats;
    stats.runs.reserve(static_cast<std::size_t>(starts));
    std::vector<double> cycles;
    cycles.reserve(static_cast<std::size_t>(starts));
    for (int i = 0; i < starts; ++i) {
        stats.runs.push_back(randomized_nishio(grid, strategy_count, seed_base + static_cast<std::uint64_t>(i)));
        cycles.push_back(static_cast<double>(stats.runs.back().cycles));
    }
    stats.mean = mean_of(cycles);
    stats.median = median_of(std::move(cycles));
    return stats;
}

}  // namespace sudoku
