// ============================================================================
// intentlog/problems.hpp — finite decision-problem semilattices
// ============================================================================
//
// A problems model is a finite set P of opaque problem ids, a fusion
// operation + (idempotent, commutative, associative, total) and a solution
// assignment mapping atoms to upward-closed subsets of P.  Parthood is
// derived: a <= b iff a + b = b.
//
// The assignment extends from atoms to the whole propositional core two
// ways:
//   solvesRecursive — the defining clauses, computed literally
//                       (s(T) = P, s(~f) = s(f), s(f|g) = s(f) n s(g),
//                        s(f&g) = { a+b : a in s(f), b in s(g) });
//   solvesFast      — the derived characterization: a solves f iff a solves
//                       every atom of f (vacuously true when f has none).
// The two must agree on every valid model; property tests pin the equality.
// ============================================================================

#ifndef INTENTLOG_PROBLEMS_HPP
#define INTENTLOG_PROBLEMS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentlog/formula.hpp"

namespace intentlog {

// A broken model law, with the witnesses that break it.
struct Violation {
    std::string law;                     // e.g. "fusion-associativity"
    std::vector<std::string> witnesses;  // offending names, in law-specific order
    std::string detail;                  // human-readable one-liner

    std::string format() const;
};

struct ProblemsModel {
    // Problem ids in declaration order; names are the identities.
    std::vector<std::string> problems;

    // Dense fusion table, fusion[i * problems.size() + j] = index of i + j.
    // kUnset marks entries absent from the source (a totality violation).
    std::vector<std::uint32_t> fusion;

    // Atom name -> sorted list of problem indices solving it.
    std::map<std::string, std::vector<std::uint32_t>> solvesAtoms;

    static constexpr std::uint32_t kUnset = UINT32_MAX;

    std::size_t size() const noexcept { return problems.size(); }
    std::optional<std::uint32_t> problemIndex(std::string_view name) const;
    std::uint32_t fuseIdx(std::uint32_t a, std::uint32_t b) const;
    bool leqIdx(std::uint32_t a, std::uint32_t b) const;
    bool atomSolvedByIdx(const std::string& atom, std::uint32_t a) const;
};

// Builds an (unvalidated) model from name-level tables.  `fusionPairs` keys
// are unordered; idempotent entries may be omitted and are defaulted.
// Conflicting duplicate entries or unknown names throw FormatError.
ProblemsModel makeProblemsModel(
    std::vector<std::string> problems,
    const std::vector<std::tuple<std::string, std::string, std::string>>& fusionPairs,
    const std::map<std::string, std::vector<std::string>>& solves);

// Checks every model law; returns all violations found (empty = ok).
std::vector<Violation> validate(const ProblemsModel& pm);

// a <= b iff a + b = b.  Throws UnknownProblem.
bool leq(const ProblemsModel& pm, std::string_view a, std::string_view b);

// Fold of fusion over a nonempty set; order-independent.  Throws EmptyFusion
// / UnknownProblem.
std::string fuseAll(const ProblemsModel& pm, const std::vector<std::string>& set);

// The full solution set of a core formula, as an indicator vector over
// problem indices, computed by the defining clauses.  Throws LayeringError.
std::vector<bool> solutionSet(const ProblemsModel& pm, const Formula& core);

bool solvesRecursive(const ProblemsModel& pm, std::string_view a, const Formula& core);
bool solvesFast(const ProblemsModel& pm, std::string_view a, const Formula& core);

// Index-level variant used on hot paths.
bool solvesFastIdx(const ProblemsModel& pm, std::uint32_t a, const Formula& core);

// Replaces every atom's solve set by its <=-upward closure (in place).
void closeSolvesUpward(ProblemsModel& pm);

}  // namespace intentlog

#endif  // INTENTLOG_PROBLEMS_HPP
