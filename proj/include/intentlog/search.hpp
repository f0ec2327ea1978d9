// ============================================================================
// intentlog/search.hpp — bounded countermodel enumeration
// ============================================================================
//
// Enumerates problem-sensitive models in a fixed canonical order and returns
// the first one falsifying a formula.  Problems are the nonempty subsets of
// a generator set with fusion = union, so every candidate is a valid
// semilattice and upward closure of the solve sets is enforced by
// construction.  Canonical order: world count ascending, generator count
// ascending, then valuation / relation / solve-set / assignment encodings
// ascending, then world position.  Identical bounds always yield the
// identical first countermodel.
//
// A seeded random mode (randomModel / randomProblemsModel) generates valid
// models for property testing; with `mooreFusion` the problems come from a
// random intersection-closed set family instead of a full powerset, which
// also covers semilattices that no union table realizes.
// ============================================================================

#ifndef INTENTLOG_SEARCH_HPP
#define INTENTLOG_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "intentlog/formula.hpp"
#include "intentlog/kripke.hpp"

namespace intentlog {

struct SearchBounds {
    int maxWorlds = 2;
    int maxGenerators = 2;
    std::vector<std::string> atoms;       // empty = use vars of the query
    std::uint64_t seed = 0;               // randomized mode only
    std::uint64_t budget = 1'000'000;     // candidate models examined
};

struct Countermodel {
    KripkeModel model;
    std::string world;  // where the formula fails
};

// First countermodel in canonical order, or nullopt once the bounded space
// is exhausted.  Throws ResourceLimit when the budget runs out first.
std::optional<Countermodel> findCountermodel(const Formula& phi, const SearchBounds& b);

// Randomized diversity mode: samples `samples` random valid models within
// the bounds (seeded by b.seed) instead of enumerating; with `mooreFusion`
// the sampled fusion tables go beyond the powerset family.  Deterministic
// for a fixed seed.
std::optional<Countermodel> findCountermodelRandom(const Formula& phi,
                                                   const SearchBounds& b,
                                                   std::uint64_t samples,
                                                   bool mooreFusion = true);

// One refuted closure principle.  For rule-form principles the premise of
// the rule is a propositional validity; `premiseNote` records the reading.
struct PrincipleRefutation {
    std::string id;
    std::string premiseNote;
    Formula instance = Formula::top();
    std::optional<Countermodel> witness;
};

struct ClosureReport {
    std::vector<PrincipleRefutation> principles;
    bool allRefuted() const;
};

// Searches countermodels for canonical instances of the four closure
// principles (logical entailment, necessary entailment, logical
// equivalence, necessary equivalence).  Needs at least two atoms in the
// bounds (defaults to p, q when none are given).
ClosureReport refuteClosurePrinciples(const SearchBounds& b);

// ── Random valid models (property testing / diversity mode) ─────────────────

struct RandomModelParams {
    int maxWorlds = 4;
    int maxGenerators = 3;
    std::vector<std::string> atoms = {"p", "q", "r"};
    bool mooreFusion = false;  // intersection-closed families instead of powersets
};

ProblemsModel randomProblemsModel(std::mt19937_64& rng, const RandomModelParams& p);
KripkeModel randomModel(std::mt19937_64& rng, const RandomModelParams& p);

}  // namespace intentlog

#endif  // INTENTLOG_SEARCH_HPP
