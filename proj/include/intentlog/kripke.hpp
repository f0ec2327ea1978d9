// ============================================================================
// intentlog/kripke.hpp — problem-sensitive models and satisfaction
// ============================================================================
//
// A model bundles a finite world set, a serial conative relation, a
// valuation, a problems model, and a world->problem assignment.  Truth:
//
//   atoms / ~ / | / &   classically from the valuation
//   # f                 true at w iff f is true at every world (global)
//   I a                 true at w iff every R-successor of w satisfies a
//                       and the world's assigned problem solves a
//
// Atoms absent from the model's declared set evaluate as false everywhere
// and solve no problem; a strict caller can reject them up front via
// undeclaredAtoms().
//
// Model files are single JSON documents:
//
//   { "worlds":    ["w", ...],
//     "relation":  [["w","v"], ...],
//     "atoms":     ["p", ...],
//     "valuation": {"p": ["w", ...], ...},           // omitted atom = empty
//     "problems":  ["a", ...],
//     "fusion":    {"a|b": "c", ...},                // key x|y, x <= y lex;
//                                                    // idempotent pairs optional
//     "solves":    {"p": ["a", ...], ...},
//     "assignment": {"w": "a", ...} }
// ============================================================================

#ifndef INTENTLOG_KRIPKE_HPP
#define INTENTLOG_KRIPKE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentlog/formula.hpp"
#include "intentlog/problems.hpp"

namespace intentlog {

struct KripkeModel {
    std::vector<std::string> worlds;
    std::vector<std::vector<std::uint32_t>> successors;  // sorted per world
    std::vector<std::string> atoms;                      // declared atoms
    std::map<std::string, std::vector<std::uint32_t>> valuation;  // sorted worlds
    ProblemsModel problems;
    std::vector<std::uint32_t> assignment;  // world index -> problem index

    static constexpr std::uint32_t kUnset = UINT32_MAX;

    std::optional<std::uint32_t> worldIndex(std::string_view name) const;
    bool atomTrueAt(const std::string& atom, std::uint32_t w) const;
};

// All frame/model invariants plus the embedded problems-model laws.
std::vector<Violation> validateModel(const KripkeModel& m);

// Satisfaction at a named world.  Throws UnknownWorld; the model is assumed
// valid.  Evaluation memoizes per subformula within the call.
bool eval(const KripkeModel& m, std::string_view world, const Formula& phi);

// {w : phi true at w}, as sorted world indices / as names.
std::vector<std::uint32_t> extensionIdx(const KripkeModel& m, const Formula& phi);
std::vector<std::string> extension(const KripkeModel& m, const Formula& phi);

// True iff phi holds at every world.
bool validOnModel(const KripkeModel& m, const Formula& phi);

// Atoms of phi that the model does not declare (strict mode rejects these).
std::vector<std::string> undeclaredAtoms(const KripkeModel& m, const Formula& phi);

// ── Model files ─────────────────────────────────────────────────────────────

struct LoadOptions {
    bool closeUpward = false;  // upward-close each solves set before validating
};

struct LoadResult {
    KripkeModel model;
    std::vector<Violation> violations;  // empty = model is valid
    bool ok() const noexcept { return violations.empty(); }
};

// Parses + validates a model document.  Structural problems (bad JSON, bad
// types, unknown names) throw FormatError; law violations are returned.
LoadResult loadModel(const std::string& jsonText, const LoadOptions& opts = {});
LoadResult loadModelFile(const std::string& path, const LoadOptions& opts = {});

// Serializes in the file format above (canonical: sorted keys, idempotent
// fusion pairs omitted).
std::string saveModel(const KripkeModel& m);

}  // namespace intentlog

#endif  // INTENTLOG_KRIPKE_HPP
