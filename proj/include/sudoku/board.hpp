#pragma once

// Core 9x9 puzzle representation: grid of digits, per-cell candidate sets,
// placement with peer elimination and solve status.
//
// All public interfaces speak 1-based (row, col) coordinates; storage is a
// flat row-major array indexed 0..80.

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace sudoku {

inline constexpr int kSize = 9;
inline constexpr int kCells = 81;
inline constexpr int kUnits = 27;

struct Cell {
    int row = 1;  // 1..9
    int col = 1;  // 1..9

    constexpr bool valid() const { return row >= 1 && row <= 9 && col >= 1 && col <= 9; }
    constexpr int index() const { return (row - 1) * kSize + (col - 1); }
    constexpr int box() const { return 3 * ((row - 1) / 3) + (col - 1) / 3 + 1; }

    static constexpr Cell at(int index) { return Cell{index / kSize + 1, index % kSize + 1}; }

    friend constexpr bool operator==(Cell, Cell) = default;
};

// Subset of {1..9} stored as a 9-bit mask (bit d-1 set iff d is a member).
class CandidateSet {
public:
    constexpr CandidateSet() = default;
    static constexpr CandidateSet all() { return CandidateSet(0x1FF); }
    static constexpr CandidateSet from_mask(std::uint16_t mask) { return CandidateSet(mask & 0x1FF); }
    static constexpr CandidateSet of(std::initializer_list<int> digits) {
        CandidateSet s;
        for (int d : digits) s.insert(d);
        return s;
    }

    constexpr bool contains(int digit) const { return (bits_ >> (digit - 1)) & 1U; }
    constexpr void insert(int digit) { bits_ |= static_cast<std::uint16_t>(1U << (digit - 1)); }
    constexpr bool erase(int digit) {
        const bool had = contains(digit);
        bits_ &= static_cast<std::uint16_t>(~(1U << (digit - 1)));
        return had;
    }
    constexpr void clear() { bits_ = 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint16_t mask() const { return bits_; }

    // Smallest member; undefined on an empty set.
    constexpr int first() const { return std::countr_zero(bits_) + 1; }

    template <typename F>
    constexpr void for_each(F&& f) const {
        for (std::uint16_t b = bits_; b != 0; b &= static_cast<std::uint16_t>(b - 1)) f(std::countr_zero(b) + 1);
    }

    friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

private:
    constexpr explicit CandidateSet(std::uint16_t bits) : bits_(bits) {}
    std::uint16_t bits_ = 0;
};

namespace detail {

struct Topology {
    // units 0..8 rows, 9..17 columns, 18..26 boxes; cells listed row-major
    std::array<std::array<int, 9>, kUnits> units{};
    std::array<std::array<int, 20>, kCells> peers{};
    std::array<std::array<int, 3>, kCells> units_of{};
};

constexpr Topology make_topology() {
    Topology t;
    for (int i = 0; i < kCells; ++i) {
        const Cell c = Cell::at(i);
        t.units_of[i] = {c.row - 1, 9 + c.col - 1, 18 + c.box() - 1};
    }
    std::array<int, kUnits> fill{};
    for (int i = 0; i < kCells; ++i) {
        for (int u : t.units_of[i]) t.units[u][fill[u]++] = i;
    }
    for (int i = 0; i < kCells; ++i) {
        const Cell a = Cell::at(i);
        int n = 0;
        for (int j = 0; j < kCells; ++j) {
            if (j == i) continue;
            const Cell b = Cell::at(j);
            if (a.row == b.row || a.col == b.col || a.box() == b.box()) t.peers[i][n++] = j;
        }
    }
    return t;
}

inline constexpr Topology kTopology = make_topology();

}  // namespace detail

// Cells (flat indices) of unit u; 0..8 rows, 9..17 columns, 18..26 boxes.
constexpr const std::array<int, 9>& unit_cells(int unit) { return detail::kTopology.units[unit]; }
// The 20 cells sharing a row, column or box with the given cell.
constexpr const std::array<int, 20>& peers_of(int index) { return detail::kTopology.peers[index]; }
constexpr const std::array<int, 3>& units_of(int index) { return detail::kTopology.units_of[index]; }

class Grid {
public:
    Grid() = default;

    // 0 means empty.
    int at(Cell c) const { return cells_[c.index()]; }
    int at(int index) const { return cells_[index]; }
    bool is_given(Cell c) const { return given_[c.index()]; }
    bool is_given(int index) const { return given_[index]; }
    bool empty(int index) const { return cells_[index] == 0; }

    void set(int index, int digit, bool given = false) {
        cells_[index] = static_cast<std::uint8_t>(digit);
        given_[index] = given && digit != 0;
    }
    void set(Cell c, int digit, bool given = false) { set(c.index(), digit, given); }

    int given_count() const {
        int n = 0;
        for (bool g : given_) n += g;
        return n;
    }
    int empty_count() const {
        int n = 0;
        for (auto v : cells_) n += (v == 0);
        return n;
    }
    bool complete() const { return empty_count() == 0; }

    // No digit repeated within any row, column or box.
    bool valid() const {
        for (int u = 0; u < kUnits; ++u) {
            unsigned seen = 0;
            for (int i : unit_cells(u)) {
                if (cells_[i] == 0) continue;
                const unsigned bit = 1U << cells_[i];
                if (seen & bit) return false;
                seen |= bit;
            }
        }
        return true;
    }

    const std::array<std::uint8_t, kCells>& digits() const { return cells_; }
    bool same_digits(const Grid& other) const { return cells_ == other.cells_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::array<std::uint8_t, kCells> cells_{};
    std::array<bool, kCells> given_{};
};

class CandidateGrid {
public:
    CandidateSet& at(int index) { return sets_[index]; }
    CandidateSet& at(Cell c) { return sets_[c.index()]; }
    CandidateSet at(int index) const { return sets_[index]; }
    CandidateSet at(Cell c) const { return sets_[c.index()]; }

    int total() const {
        int n = 0;
        for (auto s : sets_) n += s.size();
        return n;
    }

    friend bool operator==(const CandidateGrid&, const CandidateGrid&) = default;

private:
    std::array<CandidateSet, kCells> sets_{};
};

enum class GridStatus { Solved, Contradicted, Open };

inline const char* to_string(GridStatus s) {
    switch (s) {
        case GridStatus::Solved: return "solved";
        case GridStatus::Contradicted: return "contradicted";
        case GridStatus::Open: return "open";
    }
    return "?";
}

inline Grid parse_grid(std::string_view text) {
    std::string compact;
    compact.reserve(kCells);
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        compact.push_back(ch);
    }
    if (compact.size() != kCells) {
        throw ParseError("expected 81 cells, got " + std::to_string(compact.size()));
    }
    Grid g;
    for (int i = 0; i < kCells; ++i) {
        const char ch = compact[i];
        if (ch == '.' || ch == '0') continue;
        if (ch < '1' || ch > '9') {
            throw ParseError(std::string("illegal character '") + ch + "' at position " + std::to_string(i + 1));
        }
        g.set(i, ch - '0', true);
    }
    if (!g.valid()) throw InvalidPuzzle("a digit repeats within a row, column or box");
    return g;
}

inline std::string render_grid(const Grid& g) {
    std::string out(kCells, '.');
    for (int i = 0; i < kCells; ++i) {
        if (g.at(i) != 0) out[i] = static_cast<char>('0' + g.at(i));
    }
    return out;
}

inline CandidateGrid compute_candidates(const Grid& g) {
    std::array<CandidateSet, kUnits> used{};
    for (int u = 0; u < kUnits; ++u) {
        for (int i : unit_cells(u)) {
            if (g.at(i) != 0) used[u].insert(g.at(i));
        }
    }
    CandidateGrid cg;
    for (int i = 0; i < kCells; ++i) {
        if (g.at(i) != 0) continue;
        std::uint16_t taken = 0;
        for (int u : units_of(i)) taken |= used[u].mask();
        cg.at(i) = CandidateSet::from_mask(static_cast<std::uint16_t>(~taken));
    }
    return cg;
}

// Grid plus its working candidate sets; the unit every strategy and solver
// operates on.
struct State {
    Grid grid;
    CandidateGrid candidates;

    State() = default;
    explicit State(const Grid& g) : grid(g), candidates(compute_candidates(g)) {}
    State(const Grid& g, const CandidateGrid& c) : grid(g), candidates(c) {}

    // Fills the cell and removes the digit from every peer. Throws
    // IllegalPlacement when the cell is filled or the digit is not a candidate.
    void place(int index, int digit) {
        if (grid.at(index) != 0 || !candidates.at(index).contains(digit)) {
            const Cell c = Cell::at(index);
            throw IllegalPlacement("digit " + std::to_string(digit) + " is not a candidate of (" +
                                   std::to_string(c.row) + ", " + std::to_string(c.col) + ")");
        }
        grid.set(index, digit);
        candidates.at(index).clear();
        for (int p : peers_of(index)) candidates.at(p).erase(digit);
    }
    void place(Cell c, int digit) { place(c.index(), digit); }

    // Returns true when the digit was present.
    bool eliminate(int index, int digit) { return candidates.at(index).erase(digit); }
    bool eliminate(Cell c, int digit) { return eliminate(c.index(), digit); }

    GridStatus status() const {
        bool full = true;
        for (int i = 0; i < kCells; ++i) {
            if (grid.at(i) != 0) continue;
            if (candidates.at(i).empty()) return GridStatus::Contradicted;
            full = false;
        }
        if (full) return grid.valid() ? GridStatus::Solved : GridStatus::Contradicted;
        return GridStatus::Open;
    }

    friend bool operator==(const State&, const State&) = default;
};

// Value-semantics wrappers matching the state-in / state-out contract.
inline State place_digit(State s, Cell cell, int digit) {
    s.place(cell, digit);
    return s;
}

inline CandidateGrid eliminate_candidate(CandidateGrid c, Cell cell, int digit) {
    c.at(cell.index()).erase(digit);
    return c;
}

inline GridStatus grid_status(const Grid& g, const CandidateGrid& c) { return State(g, c).status(); }

}  // namespace sudoku
