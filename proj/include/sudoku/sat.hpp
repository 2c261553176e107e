#pragma once

// SAT view of a puzzle: maximum and minimum (candidate-pruned) encodings,
// clause length statistics, DIMACS import/export and a small complete DPLL
// solver used as the correctness oracle and uniqueness check.
//
// Variable C(x, y, z) ("cell (x, y) holds digit z") has DIMACS index
// 81(x-1) + 9(y-1) + z in [1, 729].

#include <algorithm>
#include <array>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "board.hpp"

namespace sudoku::sat {

inline constexpr int kVariables = 729;

enum class ClauseKind {
    AtLeastOneCell,
    AtLeastOneRow,
    AtLeastOneCol,
    AtLeastOneBox,
    AtMostOneCell,
    AtMostOneRow,
    AtMostOneCol,
    AtMostOneBox,
    Given,
};

inline const char* to_string(ClauseKind k) {
    switch (k) {
        case ClauseKind::AtLeastOneCell: return "at-least-one-cell";
        case ClauseKind::AtLeastOneRow: return "at-least-one-row";
        case ClauseKind::AtLeastOneCol: return "at-least-one-col";
        case ClauseKind::AtLeastOneBox: return "at-least-one-box";
        case ClauseKind::AtMostOneCell: return "at-most-one-cell";
        case ClauseKind::AtMostOneRow: return "at-most-one-row";
        case ClauseKind::AtMostOneCol: return "at-most-one-col";
        case ClauseKind::AtMostOneBox: return "at-most-one-box";
        case ClauseKind::Given: return "given";
    }
    return "?";
}

inline std::optional<ClauseKind> clause_kind_from_string(std::string_view s) {
    for (int k = 0; k <= static_cast<int>(ClauseKind::Given); ++k) {
        if (s == to_string(static_cast<ClauseKind>(k))) return static_cast<ClauseKind>(k);
    }
    return std::nullopt;
}

constexpr bool is_at_least_one(ClauseKind k) { return k <= ClauseKind::AtLeastOneBox; }
constexpr bool is_at_most_one(ClauseKind k) { return k >= ClauseKind::AtMostOneCell && k <= ClauseKind::AtMostOneBox; }
constexpr bool is_sub_group_at_most_one(ClauseKind k) {
    return k == ClauseKind::AtMostOneRow || k == ClauseKind::AtMostOneCol || k == ClauseKind::AtMostOneBox;
}

struct Literal {
    int x = 1;  // row
    int y = 1;  // column
    int z = 1;  // digit
    bool negated = false;

    constexpr int variable() const { return 81 * (x - 1) + 9 * (y - 1) + z; }
    constexpr int dimacs() const { return negated ? -variable() : variable(); }

    static constexpr Literal from_dimacs(int lit) {
        const int v = (lit < 0 ? -lit : lit) - 1;
        return Literal{v / 81 + 1, (v / 9) % 9 + 1, v % 9 + 1, lit < 0};
    }
    static constexpr Literal positive(int index, int digit) {
        const Cell c = Cell::at(index);
        return Literal{c.row, c.col, digit, false};
    }
    static constexpr Literal negative(int index, int digit) {
        Literal l = positive(index, digit);
        l.negated = true;
        return l;
    }

    friend constexpr bool operator==(Literal, Literal) = default;
};

struct Clause {
    std::vector<Literal> literals;
    ClauseKind kind = ClauseKind::Given;
};

enum class Encoding { Maximum, Minimum };

struct CnfFormula {
    std::vector<Clause> clauses;
    int variable_count = kVariables;
    Encoding encoding = Encoding::Maximum;

    std::size_t count(ClauseKind k) const {
        return static_cast<std::size_t>(
            std::count_if(clauses.begin(), clauses.end(), [k](const Clause& c) { return c.kind == k; }));
    }

    template <typename Pred>
    CnfFormula filtered(Pred keep) const {
        CnfFormula out{{}, variable_count, encoding};
        for (const Clause& c : clauses) {
            if (keep(c)) out.clauses.push_back(c);
        }
        return out;
    }
};

namespace detail {

inline void add_at_most_one(CnfFormula& f, const std::vector<Literal>& positives, ClauseKind kind) {
    for (std::size_t a = 0; a < positives.size(); ++a) {
        for (std::size_t b = a + 1; b < positives.size(); ++b) {
            Literal la = positives[a];
            Literal lb = positives[b];
            la.negated = lb.negated = true;
            f.clauses.push_back({{la, lb}, kind});
        }
    }
}

inline ClauseKind at_least_kind(int unit) {
    return unit < 9 ? ClauseKind::AtLeastOneRow : unit < 18 ? ClauseKind::AtLeastOneCol : ClauseKind::AtLeastOneBox;
}
inline ClauseKind at_most_kind(int unit) {
    return unit < 9 ? ClauseKind::AtMostOneRow : unit < 18 ? ClauseKind::AtMostOneCol : ClauseKind::AtMostOneBox;
}

// One positive unit clause per filled cell.
inline void add_given_clauses(CnfFormula& f, const Grid& g) {
    for (int i = 0; i < kCells; ++i) {
        if (g.at(i) != 0) f.clauses.push_back({{Literal::positive(i, g.at(i))}, ClauseKind::Given});
    }
}

inline void check_maximum_counts(const CnfFormula& f, int filled) {
    std::size_t at_least = 0;
    for (auto k : {ClauseKind::AtLeastOneCell, ClauseKind::AtLeastOneRow, ClauseKind::AtLeastOneCol,
                   ClauseKind::AtLeastOneBox}) {
        at_least += f.count(k);
    }
    bool ok = at_least == 324 && f.count(ClauseKind::Given) == static_cast<std::size_t>(filled) &&
              f.clauses.size() == 11988 + static_cast<std::size_t>(filled);
    for (auto k : {ClauseKind::AtMostOneCell, ClauseKind::AtMostOneRow, ClauseKind::AtMostOneCol,
                   ClauseKind::AtMostOneBox}) {
        ok = ok && f.count(k) == 2916;
    }
    if (!ok) throw std::logic_error("maximum encoding clause counts violated");
}

}  // namespace detail

// All 324 at-least-one clauses, 4 x 2916 pairwise at-most-one clauses and one
// unit clause per filled cell.
inline CnfFormula encode_maximum(const Grid& g) {
    CnfFormula f;
    f.encoding = Encoding::Maximum;
    f.clauses.reserve(11988 + kCells);

    for (int i = 0; i < kCells; ++i) {
        Clause c{{}, ClauseKind::AtLeastOneCell};
        for (int z = 1; z <= 9; ++z) c.literals.push_back(Literal::positive(i, z));
        f.clauses.push_back(std::move(c));
    }
    for (int u = 0; u < kUnits; ++u) {
        for (int z = 1; z <= 9; ++z) {
            Clause c{{}, detail::at_least_kind(u)};
            for (int i : unit_cells(u)) c.literals.push_back(Literal::positive(i, z));
            f.clauses.push_back(std::move(c));
        }
    }
    for (int i = 0; i < kCells; ++i) {
        std::vector<Literal> lits;
        for (int z = 1; z <= 9; ++z) lits.push_back(Literal::positive(i, z));
        detail::add_at_most_one(f, lits, ClauseKind::AtMostOneCell);
    }
    for (int u = 0; u < kUnits; ++u) {
        for (int z = 1; z <= 9; ++z) {
            std::vector<Literal> lits;
            for (int i : unit_cells(u)) lits.push_back(Literal::positive(i, z));
            detail::add_at_most_one(f, lits, detail::at_most_kind(u));
        }
    }
    detail::add_given_clauses(f, g);
    detail::check_maximum_counts(f, kCells - g.empty_count());
    return f;
}

// Clauses restricted to current candidates: only empty cells and only
// (sub-group, digit) pairs whose digit is still missing from the sub-group.
// Filled cells contribute unit clauses. Throws EmptyCandidateCell when an
// empty cell, or a missing digit of some sub-group, has nowhere to go.
inline CnfFormula encode_minimum(const Grid& g) {
    const CandidateGrid cand = compute_candidates(g);
    CnfFormula f;
    f.encoding = Encoding::Minimum;

    for (int i = 0; i < kCells; ++i) {
        if (!g.empty(i)) continue;
        if (cand.at(i).empty()) {
            const Cell c = Cell::at(i);
            throw EmptyCandidateCell("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                                     ") has no candidates");
        }
        Clause c{{}, ClauseKind::AtLeastOneCell};
        cand.at(i).for_each([&](int z) { c.literals.push_back(Literal::positive(i, z)); });
        f.clauses.push_back(std::move(c));
    }

    std::vector<std::pair<int, std::vector<Literal>>> groups;  // (unit, candidate positions of a missing digit)
    for (int u = 0; u < kUnits; ++u) {
        CandidateSet placed;
        for (int i : unit_cells(u)) {
            if (!g.empty(i)) placed.insert(g.at(i));
        }
        for (int z = 1; z <= 9; ++z) {
            if (placed.contains(z)) continue;
            std::vector<Literal> lits;
            for (int i : unit_cells(u)) {
                if (g.empty(i) && cand.at(i).contains(z)) lits.push_back(Literal::positive(i, z));
            }
            if (lits.empty()) {
                throw EmptyCandidateCell("digit " + std::to_string(z) + " has no candidate position in " +
                                         (u < 9 ? "row " : u < 18 ? "column " : "box ") +
                                         std::to_string(u % 9 + 1));
            }
            f.clauses.push_back({lits, detail::at_least_kind(u)});
            groups.emplace_back(u, std::move(lits));
        }
    }

    for (int i = 0; i < kCells; ++i) {
        if (!g.empty(i)) continue;
        std::vector<Literal> lits;
        cand.at(i).for_each([&](int z) { lits.push_back(Literal::positive(i, z)); });
        detail::add_at_most_one(f, lits, ClauseKind::AtMostOneCell);
    }
    for (const auto& [u, lits] : groups) detail::add_at_most_one(f, lits, detail::at_most_kind(u));

    detail::add_given_clauses(f, g);
    return f;
}

// Percentages of at-least-one clauses (unit given clauses included) by length.
struct ClauseLengthDistribution {
    std::array<double, 10> percent{};   // index k = 1..9
    std::array<std::size_t, 10> frequency{};
    std::size_t total = 0;
    double short_pct = 0.0;    // k = 1, 2
    double medium_pct = 0.0;   // k = 3, 4, 5
    double long_pct = 0.0;     // k = 6..9
};

inline ClauseLengthDistribution clause_length_distribution(const CnfFormula& f) {
    ClauseLengthDistribution d;
    std::size_t non_given = 0;
    for (const Clause& c : f.clauses) {
        if (!is_at_least_one(c.kind) && c.kind != ClauseKind::Given) continue;
        const std::size_t k = c.literals.size();
        if (k < 1 || k > 9) throw std::logic_error("at-least-one clause length outside 1..9");
        ++d.frequency[k];
        ++d.total;
        if (c.kind != ClauseKind::Given) ++non_given;
    }
    if (non_given == 0) throw DegenerateDistribution("no at-least-one clauses beyond the given digits");
    for (int k = 1; k <= 9; ++k) {
        d.percent[k] = 100.0 * static_cast<double>(d.frequency[k]) / static_cast<double>(d.total);
    }
    d.short_pct = d.percent[1] + d.percent[2];
    d.medium_pct = d.percent[3] + d.percent[4] + d.percent[5];
    d.long_pct = d.percent[6] + d.percent[7] + d.percent[8] + d.percent[9];
    return d;
}

// Index 1..variables; entry 0 unused. Variables the search leaves free are false.
using Assignment = std::vector<bool>;

// Complete DPLL search: two-watched-literal unit propagation, chronological
// backtracking, branching on the first free literal of the shortest
// unsatisfied clause. No clause learning.
class DpllSolver {
public:
    explicit DpllSolver(int variables) : variables_(variables), value_(static_cast<std::size_t>(variables) + 1, -1) {
        watches_.resize(2 * (static_cast<std::size_t>(variables) + 1));
    }

    void add_clause(std::vector<int> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
            if (lits[i] == -lits[i + 1]) return;  // tautology
        }
        for (int l : lits) {
            if (l == 0 || std::abs(l) > variables_) throw std::invalid_argument("literal out of range");
        }
        if (lits.empty()) {
            trivially_unsat_ = true;
            return;
        }
        if (lits.size() == 1) {
            units_.push_back(lits[0]);
            return;
        }
        const int id = static_cast<int>(clauses_.size());
        watches_[watch_index(lits[0])].push_back(id);
        watches_[watch_index(lits[1])].push_back(id);
        clauses_.push_back(std::move(lits));
    }

    // Single use: the solver keeps its final assignment state.
    std::optional<Assignment> solve() {
        if (trivially_unsat_) return std::nullopt;
        for (int u : units_) {
            if (is_false(u)) return std::nullopt;
            if (!is_true(u)) assign(u);
        }
        for (;;) {
            if (!propagate()) {
                if (!backtrack()) return std::nullopt;
                continue;
            }
            const int lit = pick_branch();
            if (lit == 0) break;
            decisions_.push_back({lit, false});
            level_start_.push_back(trail_.size());
            assign(lit);
        }
        Assignment a(static_cast<std::size_t>(variables_) + 1, false);
        for (int v = 1; v <= variables_; ++v) a[v] = value_[v] == 1;
        return a;
    }

    std::size_t decisions() const { return decision_count_; }

private:
    struct Decision {
        int lit;
        bool flipped;
    };

    static std::size_t watch_index(int lit) {
        return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
    }
    bool is_true(int lit) const { return value_[std::abs(lit)] == (lit > 0 ? 1 : 0); }
    bool is_false(int lit) const { return value_[std::abs(lit)] == (lit > 0 ? 0 : 1); }
    void assign(int lit) {
        value_[std::abs(lit)] = lit > 0 ? 1 : 0;
        trail_.push_back(lit);
    }

    bool propagate() {
        while (head_ < trail_.size()) {
            const int falsified = -trail_[head_++];
            auto& list = watches_[watch_index(falsified)];
            std::size_t keep = 0;
            for (std::size_t w = 0; w < list.size(); ++w) {
                const int id = list[w];
                auto& c = clauses_[static_cast<std::size_t>(id)];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (is_true(c[0])) {
                    list[keep++] = id;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (!is_false(c[k])) {
                        std::swap(c[1], c[k]);
                        watches_[watch_index(c[1])].push_back(id);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                list[keep++] = id;
                if (is_false(c[0])) {
                    for (std::size_t r = w + 1; r < list.size(); ++r) list[keep++] = list[r];
                    list.resize(keep);
                    return false;
                }
                assign(c[0]);
            }
            list.resize(keep);
        }
        return true;
    }

    // Undo to the newest decision not yet flipped and take its other branch.
    bool backtrack() {
        while (!decisions_.empty()) {
            const Decision d = decisions_.back();
            decisions_.pop_back();
            const std::size_t start = level_start_.back();
            level_start_.pop_back();
            while (trail_.size() > start) {
                value_[std::abs(trail_.back())] = -1;
                trail_.pop_back();
            }
            head_ = trail_.size();
            if (!d.flipped) {
                decisions_.push_back({-d.lit, true});
                level_start_.push_back(trail_.size());
                assign(-d.lit);
                return true;
            }
        }
        return false;
    }

    int pick_branch() {
        int best_lit = 0;
        std::size_t best_free = SIZE_MAX;
        for (const auto& c : clauses_) {
            std::size_t free_count = 0;
            int first_free = 0;
            bool satisfied = false;
            for (int l : c) {
                if (is_true(l)) {
                    satisfied = true;
                    break;
                }
                if (!is_false(l)) {
                    if (first_free == 0) first_free = l;
                    ++free_count;
                }
            }
            if (satisfied || free_count == 0) continue;
            if (free_count < best_free) {
                best_free = free_count;
                best_lit = first_free;
                if (best_free == 2) break;
            }
        }
        if (best_lit != 0) ++decision_count_;
        return best_lit;
    }

    int variables_;
    std::vector<signed char> value_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> units_;
    std::vector<int> trail_;
    std::vector<std::size_t> level_start_;
    std::vector<Decision> decisions_;
    std::size_t head_ = 0;
    std::size_t decision_count_ = 0;
    bool trivially_unsat_ = false;
};

// Clause list in DIMACS integer form, as read from or written to a file.
struct DimacsFormula {
    int variables = kVariables;
    std::vector<std::vector<int>> clauses;
};

inline DimacsFormula to_dimacs(const CnfFormula& f) {
    DimacsFormula d{f.variable_count, {}};
    d.clauses.reserve(f.clauses.size());
    for (const Clause& c : f.clauses) {
        std::vector<int> lits;
        lits.reserve(c.literals.size());
        for (const Literal& l : c.literals) lits.push_back(l.dimacs());
        d.clauses.push_back(std::move(lits));
    }
    return d;
}

inline std::optional<Assignment> sat_solve(const DimacsFormula& d) {
    DpllSolver solver(d.variables);
    for (const auto& c : d.clauses) solver.add_clause(c);
    return solver.solve();
}

inline std::optional<Assignment> sat_solve(const CnfFormula& f) { return sat_solve(to_dimacs(f)); }

inline Grid decode_assignment(const Assignment& a) {
    if (a.size() < static_cast<std::size_t>(kVariables) + 1) throw std::invalid_argument("assignment too short");
    Grid g;
    for (int i = 0; i < kCells; ++i) {
        int digit = 0;
        for (int z = 1; z <= 9; ++z) {
            if (!a[static_cast<std::size_t>(Literal::positive(i, z).variable())]) continue;
            const Cell c = Cell::at(i);
            if (digit != 0) {
                throw MultipleDigitsInCell("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                                           ") holds more than one digit");
            }
            digit = z;
        }
        if (digit == 0) {
            const Cell c = Cell::at(i);
            throw NoDigitInCell("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) + ") holds no digit");
        }
        g.set(i, digit);
    }
    return g;
}

// 0, 1, or `cap` meaning "at least cap". Each found solution is excluded by
// a blocking clause before searching again.
inline int count_solutions(const CnfFormula& f, int cap = 2) {
    DimacsFormula d = to_dimacs(f);
    std::vector<bool> mentioned(static_cast<std::size_t>(d.variables) + 1, false);
    for (const auto& c : d.clauses) {
        for (int l : c) mentioned[static_cast<std::size_t>(std::abs(l))] = true;
    }
    int found = 0;
    while (found < cap) {
        const auto a = sat_solve(d);
        if (!a) break;
        ++found;
        std::vector<int> block;
        for (int v = 1; v <= d.variables; ++v) {
            if (mentioned[static_cast<std::size_t>(v)] && (*a)[static_cast<std::size_t>(v)]) block.push_back(-v);
        }
        if (block.empty()) break;
        d.clauses.push_back(std::move(block));
    }
    return found;
}

// Standard DIMACS CNF. With `annotate`, each clause is preceded by a
// "c kind <name>" comment line.
inline void export_dimacs(const CnfFormula& f, std::ostream& out, bool annotate = false) {
    out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        if (annotate) out << "c kind " << to_string(c.kind) << '\n';
        for (const Literal& l : c.literals) out << l.dimacs() << ' ';
        out << "0\n";
    }
    if (!out) throw std::ios_base::failure("failed writing DIMACS output");
}

inline std::string export_dimacs(const CnfFormula& f, bool annotate = false) {
    std::ostringstream os;
    export_dimacs(f, os, annotate);
    return os.str();
}

inline DimacsFormula parse_dimacs(std::istream& in) {
    DimacsFormula d{0, {}};
    std::string line;
    bool header = false;
    std::size_t expected = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            ls >> p >> cnf >> d.variables >> expected;
            if (cnf != "cnf" || !ls) throw ParseError("malformed DIMACS header: " + line);
            header = true;
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        int lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                d.clauses.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
        if (!ls.eof()) throw ParseError("non-integer token in DIMACS clause line: " + line);
    }
    if (!current.empty()) throw ParseError("unterminated final clause");
    if (!header) throw ParseError("missing DIMACS header");
    if (d.clauses.size() != expected) throw ParseError("clause count does not match header");
    return d;
}

}  // namespace sudoku::sat
