#pragma once

#include <stdexcept>
#include <string>

namespace sudoku {

// Every failure raised by the library derives from Error so callers that
// batch over many puzzles can catch a single type and record the reason.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    // Stable short name ("ParseError", "InvalidPuzzle", ...) used in reject lists.
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SUDOKU_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

SUDOKU_DEFINE_ERROR(ParseError);
SUDOKU_DEFINE_ERROR(InvalidPuzzle);
SUDOKU_DEFINE_ERROR(IllegalPlacement);
SUDOKU_DEFINE_ERROR(UnsatisfiablePuzzle);
SUDOKU_DEFINE_ERROR(NonUniqueSolution);
SUDOKU_DEFINE_ERROR(EmptyCandidateCell);
SUDOKU_DEFINE_ERROR(DegenerateDistribution);
SUDOKU_DEFINE_ERROR(MultipleDigitsInCell);
SUDOKU_DEFINE_ERROR(NoDigitInCell);
SUDOKU_DEFINE_ERROR(DegenerateBinning);
SUDOKU_DEFINE_ERROR(UndefinedCorrelation);
SUDOKU_DEFINE_ERROR(EmptyCorpus);
SUDOKU_DEFINE_ERROR(ConfigError);

#undef SUDOKU_DEFINE_ERROR

}  // namespace sudoku
