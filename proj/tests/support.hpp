#pragma once

// Test-side oracles and fixtures. Nothing here calls into the library's
// solvers, so results can be compared against them independently.

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

inline const std::string kPlatinumBlonde =
    ".......12........3..23..4....18....5.6..7.8.......9.....85.....9...4.5..47...6...";
inline const std::string kGoldenNugget =
    ".......39.....1..5..3.5.8....8.9...6.7...2...1..4.......9.8..5..2....6..4..7.....";
inline const std::string kEasterMonster =
    "1.......2.9.4...5...6...7...5.9.3.......7.......85..4.7.....6...3...9.8...2.....1";
inline const std::string kEscargot =
    "1....7.9..3..2...8..96..5....53..9...1..8...26....4...3......1..4......7..7...3..";

// Classic newspaper-grade puzzle solved by singles.
inline const std::string kEasy =
    "..3.2.6..9..3.5..1..18.64....81.29..7.......8..67.82....26.95..8..2.3..9..5.1.3..";
inline const std::string kEasySolution =
    "483921657967345821251876493548132976729564138136798245372689514814253769695417382";

inline std::array<int, 81> digits_of(const std::string& s) {
    std::array<int, 81> g{};
    for (int i = 0; i < 81; ++i) g[i] = (s[i] == '.' || s[i] == '0') ? 0 : s[i] - '0';
    return g;
}

inline std::string text_of(const std::array<int, 81>& g) {
    std::string s(81, '.');
    for (int i = 0; i < 81; ++i) {
        if (g[i] != 0) s[i] = static_cast<char>('0' + g[i]);
    }
    return s;
}

inline bool conflicts(const std::array<int, 81>& g, int i, int d) {
    const int r = i / 9;
    const int c = i % 9;
    for (int k = 0; k < 9; ++k) {
        if (g[r * 9 + k] == d || g[k * 9 + c] == d) return true;
    }
    const int br = r / 3 * 3;
    const int bc = c / 3 * 3;
    for (int dr = 0; dr < 3; ++dr) {
        for (int dc = 0; dc < 3; ++dc) {
            if (g[(br + dr) * 9 + bc + dc] == d) return true;
        }
    }
    return false;
}

// Plain backtracking over cells in row-major order with a fewest-options pick.
class BruteForce {
public:
    explicit BruteForce(std::array<int, 81> g) : g_(g) {}

    int count(int cap = 2) {
        found_ = 0;
        cap_ = cap;
        search();
        return found_;
    }
    const std::optional<std::array<int, 81>>& first() const { return first_; }

private:
    bool search() {
        int best = -1;
        int best_n = 10;
        for (int i = 0; i < 81; ++i) {
            if (g_[i] != 0) continue;
            int n = 0;
            for (int d = 1; d <= 9; ++d) n += conflicts(g_, i, d) ? 0 : 1;
            if (n < best_n) {
                best = i;
                best_n = n;
            }
        }
        if (best < 0) {
            if (!first_) first_ = g_;
            return ++found_ >= cap_;
        }
        for (int d = 1; d <= 9; ++d) {
            if (conflicts(g_, best, d)) continue;
            g_[best] = d;
            if (search()) return true;
        }
        g_[best] = 0;
        return false;
    }

    std::array<int, 81> g_;
    std::optional<std::array<int, 81>> first_;
    int found_ = 0;
    int cap_ = 2;
};

inline std::optional<std::string> brute_solve(const std::string& puzzle) {
    BruteForce b(digits_of(puzzle));
    if (b.count(1) == 0) return std::nullopt;
    return text_of(*b.first());
}

inline int brute_count(const std::string& puzzle, int cap = 2) { return BruteForce(digits_of(puzzle)).count(cap); }

inline bool valid_solution(const std::string& s) {
    if (s.size() != 81) return false;
    const auto g = digits_of(s);
    for (int i = 0; i < 81; ++i) {
        if (g[i] < 1 || g[i] > 9) return false;
        auto copy = g;
        copy[i] = 0;
        if (conflicts(copy, i, g[i])) return false;
    }
    return true;
}

// Puzzle strings from a corpus file: first field after an optional CSV header.
inline std::vector<std::string> corpus_puzzles(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    std::string line;
    bool csv = path.size() > 4 && path.substr(path.size() - 4) == ".csv";
    bool header = csv;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        if (csv) std::getline(ss, field, ',');
        out.push_back(field);
    }
    return out;
}

inline std::string data_path(const std::string& name) { return std::string(SUDOKU_DATA_DIR) + "/" + name; }
inline std::string config_path(const std::string& name) { return std::string(SUDOKU_CONFIG_DIR) + "/" + name; }

// Blanks `holes` random cells of a solved grid.
inline std::string random_puzzle(std::mt19937_64& rng, const std::string& solution, int holes) {
    std::string s = solution;
    std::vector<int> idx(81);
    for (int i = 0; i < 81; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int k = 0; k < holes; ++k) s[idx[k]] = '.';
    return s;
}

// Relabels digits and swaps bands/stacks/rows to get a different valid grid.
inline std::string shuffled_solution(std::mt19937_64& rng, const std::string& base = kEasySolution) {
    std::array<int, 10> perm{};
    std::array<int, 9> d{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(d.begin(), d.end(), rng);
    for (int k = 0; k < 9; ++k) perm[k + 1] = d[k];
    auto lines = [&] {
        std::array<int, 9> out{};
        std::array<int, 3> bands{0, 1, 2};
        std::shuffle(bands.begin(), bands.end(), rng);
        for (int b = 0; b < 3; ++b) {
            std::array<int, 3> inner{0, 1, 2};
            std::shuffle(inner.begin(), inner.end(), rng);
            for (int k = 0; k < 3; ++k) out[b * 3 + k] = bands[b] * 3 + inner[k];
        }
        return out;
    };
    const auto rows = lines();
    const auto cols = lines();
    const auto g = digits_of(base);
    std::array<int, 81> out{};
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 9; ++c) out[r * 9 + c] = perm[g[rows[r] * 9 + cols[c]]];
    }
    return text_of(out);
}

}  // namespace testing_support
