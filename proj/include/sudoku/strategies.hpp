#pragma once

// The four human strategies (naked singles, hidden singles, naked twins,
// x-wing) and the fixed-order cycle that applies them. Every strategy
// mutates the state in place and runs to its own fixpoint before returning.

#include <array>
#include <functional>
#include <numeric>

#include "board.hpp"

namespace sudoku {

enum class StrategyId { NakedSingles = 1, HiddenSingles = 2, NakedTwins = 3, XWing = 4 };

inline constexpr std::array<StrategyId, 4> kStrategyOrder = {StrategyId::NakedSingles, StrategyId::HiddenSingles,
                                                             StrategyId::NakedTwins, StrategyId::XWing};

inline const char* to_string(StrategyId id) {
    switch (id) {
        case StrategyId::NakedSingles: return "naked-singles";
        case StrategyId::HiddenSingles: return "hidden-singles";
        case StrategyId::NakedTwins: return "naked-twins";
        case StrategyId::XWing: return "x-wing";
    }
    return "?";
}

struct StrategyOutcome {
    int placements = 0;
    int eliminations = 0;

    bool progressed() const { return placements + eliminations > 0; }

    StrategyOutcome& operator+=(const StrategyOutcome& o) {
        placements += o.placements;
        eliminations += o.eliminations;
        return *this;
    }
};

// Iteration order used while scanning. Results do not depend on it for
// states consistent with a solution; it is exposed so tests can check that.
struct ScanOrder {
    std::array<int, kCells> cells{};
    std::array<int, kUnits> units{};
    std::array<int, 9> digits{};

    static ScanOrder row_major() {
        ScanOrder o;
        std::iota(o.cells.begin(), o.cells.end(), 0);
        std::iota(o.units.begin(), o.units.end(), 0);
        std::iota(o.digits.begin(), o.digits.end(), 1);
        return o;
    }
};

inline const ScanOrder& default_scan_order() {
    static const ScanOrder order = ScanOrder::row_major();
    return order;
}

namespace detail {

// Places and reports whether every peer still has a candidate left.
inline bool place_checked(State& s, int index, int digit) {
    s.place(index, digit);
    for (int p : peers_of(index)) {
        if (s.grid.empty(p) && s.candidates.at(p).empty()) return false;
    }
    return true;
}

// Eliminates and reports whether the cell still has a candidate left.
inline bool eliminate_checked(State& s, int index, int digit, StrategyOutcome& out) {
    if (s.eliminate(index, digit)) ++out.eliminations;
    return !s.candidates.at(index).empty();
}

}  // namespace detail

inline StrategyOutcome apply_naked_singles(State& s, const ScanOrder& order = default_scan_order()) {
    StrategyOutcome out;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i : order.cells) {
            if (!s.grid.empty(i) || s.candidates.at(i).size() != 1) continue;
            ++out.placements;
            changed = true;
            if (!detail::place_checked(s, i, s.candidates.at(i).first())) return out;
        }
    }
    return out;
}

inline StrategyOutcome apply_hidden_singles(State& s, const ScanOrder& order = default_scan_order()) {
    StrategyOutcome out;
    for (bool changed = true; changed;) {
        changed = false;
        for (int u : order.units) {
            for (int d : order.digits) {
                int where = -1;
                int count = 0;
                for (int i : unit_cells(u)) {
                    if (s.grid.empty(i) && s.candidates.at(i).contains(d)) {
                        where = i;
                        ++count;
                    }
                }
                if (count != 1) continue;
                ++out.placements;
                changed = true;
                if (!detail::place_checked(s, where, d)) return out;
            }
        }
    }
    return out;
}

// A pair of cells in one unit holding the same two candidates, with no third
// cell of that unit holding exactly that pair, removes both digits from the
// rest of that unit. Units are processed independently.
inline StrategyOutcome apply_naked_twins(State& s, const ScanOrder& order = default_scan_order()) {
    StrategyOutcome out;
    for (bool changed = true; changed;) {
        changed = false;
        for (int u : order.units) {
            const auto& cells = unit_cells(u);
            for (int a = 0; a < 9; ++a) {
                const int ia = cells[a];
                const CandidateSet pair = s.candidates.at(ia);
                if (!s.grid.empty(ia) || pair.size() != 2) continue;
                int partner = -1;
                int matches = 0;
                for (int b = 0; b < 9; ++b) {
                    if (b == a) continue;
                    if (s.grid.empty(cells[b]) && s.candidates.at(cells[b]) == pair) {
                        partner = cells[b];
                        ++matches;
                    }
                }
                if (matches != 1 || partner < ia) continue;
                for (int i : cells) {
                    if (i == ia || i == partner || !s.grid.empty(i)) continue;
                    bool alive = true;
                    pair.for_each([&](int d) {
                        const int before = out.eliminations;
                        alive = detail::eliminate_checked(s, i, d, out) && alive;
                        changed = changed || out.eliminations != before;
                    });
                    if (!alive) return out;
                }
            }
        }
    }
    return out;
}

namespace detail {

// One direction of x-wing. `line_cell(line, pos)` maps (line, position along
// line) to a flat index; rows use (r, c) and columns use (c, r).
template <typename LineCell>
bool x_wing_pass(State& s, int digit, LineCell line_cell, StrategyOutcome& out, bool& changed) {
    std::array<std::uint16_t, 9> positions{};
    for (int line = 0; line < 9; ++line) {
        for (int pos = 0; pos < 9; ++pos) {
            const int i = line_cell(line, pos);
            if (s.grid.empty(i) && s.candidates.at(i).contains(digit)) positions[line] |= static_cast<std::uint16_t>(1U << pos);
        }
    }
    for (int l1 = 0; l1 < 9; ++l1) {
        if (std::popcount(positions[l1]) != 2) continue;
        for (int l2 = l1 + 1; l2 < 9; ++l2) {
            if (positions[l2] != positions[l1]) continue;
            for (int pos = 0; pos < 9; ++pos) {
                if (!((positions[l1] >> pos) & 1U)) continue;
                for (int line = 0; line < 9; ++line) {
                    if (line == l1 || line == l2) continue;
                    const int i = line_cell(line, pos);
                    if (!s.grid.empty(i)) continue;
                    const int before = out.eliminations;
                    const bool alive = eliminate_checked(s, i, digit, out);
                    if (out.eliminations != before) {
                        changed = true;
                        positions[line] &= static_cast<std::uint16_t>(~(1U << pos));
                    }
                    if (!alive) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

// Row-based and column-based x-wing for every digit.
inline StrategyOutcome apply_x_wing(State& s, const ScanOrder& order = default_scan_order()) {
    StrategyOutcome out;
    const auto by_row = [](int line, int pos) { return line * 9 + pos; };
    const auto by_col = [](int line, int pos) { return pos * 9 + line; };
    for (bool changed = true; changed;) {
        changed = false;
        for (int d : order.digits) {
            if (!detail::x_wing_pass(s, d, by_row, out, changed)) return out;
            if (!detail::x_wing_pass(s, d, by_col, out, changed)) return out;
        }
    }
    return out;
}

inline StrategyOutcome apply_strategy(StrategyId id, State& s, const ScanOrder& order = default_scan_order()) {
    switch (id) {
        case StrategyId::NakedSingles: return apply_naked_singles(s, order);
        case StrategyId::HiddenSingles: return apply_hidden_singles(s, order);
        case StrategyId::NakedTwins: return apply_naked_twins(s, order);
        case StrategyId::XWing: return apply_x_wing(s, order);
    }
    return {};
}

// Called after each strategy application with the state before and after it.
using StrategyObserver = std::function<void(StrategyId, const State& before, const State& after)>;

inline void check_strategy_count(int count) {
    if (count < 2 || count > 4) throw std::invalid_argument("strategy count must be 2, 3 or 4");
}

// One cycle: the first `strategy_count` strategies in rank order, each to its
// own fixpoint. Stops early once the state is solved or contradicted.
inline StrategyOutcome run_strategy_cycle(State& s, int strategy_count, const StrategyObserver* observer = nullptr) {
    check_strategy_count(strategy_count);
    StrategyOutcome total;
    if (s.status() != GridStatus::Open) return total;
    for (int k = 0; k < strategy_count; ++k) {
        const StrategyId id = kStrategyOrder[k];
        if (observer != nullptr && *observer) {
            const State before = s;
            total += apply_strategy(id, s);
            (*observer)(id, before, s);
        } else {
            total += apply_strategy(id, s);
        }
        if (s.status() != GridStatus::Open) break;
    }
    return total;
}

struct StrategySolve {
    State state;
    bool solved = false;
    int cycles = 0;
};

// Repeats cycles until solved, contradicted or a cycle makes no progress.
// No guessing.
inline StrategySolve solve_by_strategies(const Grid& grid, int strategy_count,
                                         const StrategyObserver* observer = nullptr) {
    check_strategy_count(strategy_count);
    StrategySolve r{State(grid), false, 0};
    while (r.state.status() == GridStatus::Open) {
        const StrategyOutcome o = run_strategy_cycle(r.state, strategy_count, observer);
        ++r.cycles;
        if (!o.progressed()) break;
    }
    r.solved = r.state.status() == GridStatus::Solved;
    return r;
}

}  // namespace sudoku
