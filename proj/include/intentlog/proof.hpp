// ============================================================================
// intentlog/proof.hpp — Hilbert-style derivation checking
// ============================================================================
//
// The proof system: all propositional tautologies (modal subformulas
// abstracted as letters) with modus ponens, the S5 basis K + T + 5 with
// necessitation for "#", and five intention axioms matched as schemas:
//
//   Ax1   I T
//   Ax2   I f -> I f*                 (f* = the canonical tautology over vars(f))
//   Ax3   I f -> ~I ~f
//   Ax4   (I f & I g) <-> I (f & g)
//   Ax5   #(g -> f) -> ((I g & I f*) -> I f)
//
// Schema matching is structural: any formulas may instantiate the
// metavariables; I-arguments stay in the core by construction.
//
// Derivation files are plain text, one step per line:
//
//   <index>. <formula> ; <justification>
//
// with justification one of: premise, taut, ax1..ax5, s5k, s5t, s55,
// mp <i> <j>, nec <i>.  Blank lines and lines starting with "//" are
// skipped.  In "mp i j", line i is the antecedent and line j the
// implication.  Necessitation applies only to lines derived without
// premises.
// ============================================================================

#ifndef INTENTLOG_PROOF_HPP
#define INTENTLOG_PROOF_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intentlog/formula.hpp"

namespace intentlog {

struct Justification {
    enum class Kind : std::uint8_t {
        Premise, Taut, Ax1, Ax2, Ax3, Ax4, Ax5, S5K, S5T, S5Five, MP, Nec
    };
    Kind kind = Kind::Taut;
    std::uint32_t ref1 = 0;  // MP: antecedent line; Nec: source line
    std::uint32_t ref2 = 0;  // MP: implication line

    bool operator==(const Justification&) const = default;
};

std::string justificationToString(const Justification& j);

struct DerivationLine {
    std::uint32_t index = 0;
    Formula formula = Formula::top();
    Justification just;
};

struct Derivation {
    std::vector<DerivationLine> lines;
};

struct CheckFailure {
    std::uint32_t line = 0;  // 0 when the derivation as a whole is at fault
    std::string reason;      // short stable code, e.g. "MP shape"
    std::string detail;
};

// nullopt = derivation checks out.
using CheckResult = std::optional<CheckFailure>;

// True iff phi is an instance of the given axiom schema (Ax1..S5Five).
bool matchesAxiom(const Formula& phi, Justification::Kind ax);

// Truth-table tautology check with maximal modal subformulas and atoms as
// letters.  Throws ResourceLimit beyond 20 distinct letters.
bool isTautology(const Formula& phi);

// Checks every line and that the final line equals `goal`.
CheckResult checkDerivation(const Derivation& d, const std::vector<Formula>& premises,
                            const Formula& goal);

// Built-in checked derivations (premise-free); names describe the schema
// instances they establish.
std::vector<std::pair<std::string, Derivation>> cannedLemmas();

// Text form (see header comment).  Throws FormatError on malformed lines.
Derivation parseDerivation(std::string_view text);
std::string printDerivation(const Derivation& d);

}  // namespace intentlog

#endif  // INTENTLOG_PROOF_HPP
