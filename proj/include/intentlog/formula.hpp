// ============================================================================
// intentlog/formula.hpp — formulas of the two-layer intention language
// ============================================================================
//
// The language has a propositional core (T, atoms, ~, |, &) and two
// modalities on top of it: "#" (necessity, applicable to anything) and "I"
// (intention, applicable to core formulas only).  Trees are immutable and
// structurally shared; copying a Formula copies a pointer.
//
// Implication and biconditional are surface sugar and never appear in a
// stored tree:  a -> b  is  ~a | b,  a <-> b  is  (a -> b) & (b -> a).
// Bottom is the abbreviation ~T; T itself is a primitive constant.
//
// ASCII surface grammar (parse/print):
//
//   formula := iff
//   iff     := imp ("<->" imp)*          (left-assoc)
//   imp     := or ("->" or)*             (right-assoc)
//   or      := and ("|" and)*            (left-assoc)
//   and     := unary ("&" unary)*        (left-assoc)
//   unary   := "~" unary | "#" unary | "I" unary | atomic
//   atomic  := "T" | IDENT | "(" formula ")"
//
// IDENT is [A-Za-z][A-Za-z0-9_]*; the words "T" and "I" are reserved.
// ============================================================================

#ifndef INTENTLOG_FORMULA_HPP
#define INTENTLOG_FORMULA_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace intentlog {

class Formula {
public:
    enum class Kind : std::uint8_t { Top, Atom, Not, Or, And, Nec, Intend };

    // ── Constructors ────────────────────────────────────────────────────
    static Formula top();
    static Formula atom(std::string name);       // validates the identifier
    static Formula neg(Formula f);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula nec(Formula f);
    static Formula intend(Formula core);         // throws LayeringError
    static Formula bottom();                     // ~T

    // Sugar; desugared immediately.
    static Formula impl(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);

    // ── Accessors ───────────────────────────────────────────────────────
    Kind kind() const noexcept;
    const std::string& atomName() const;   // Atom nodes only
    Formula child() const;                 // unary nodes; left() of binary
    Formula left() const;
    Formula right() const;

    // True when the formula lies in the propositional core (no # / I).
    bool isCore() const noexcept;

    // Structural equality / ordering (total order: kind, then payload).
    bool operator==(const Formula& other) const noexcept;
    std::strong_ordering operator<=>(const Formula& other) const noexcept;

    // Stable identity of the underlying node; distinct for structurally
    // equal but separately built trees.  Used for per-query memo tables.
    const void* nodeId() const noexcept;

    struct Node;  // opaque; defined in formula.cpp
    using NodeP = std::shared_ptr<const Node>;

private:
    explicit Formula(NodeP n) : node_(std::move(n)) {}
    NodeP node_;
};

// Parses the surface grammar above.  Throws SyntaxError / LayeringError.
Formula parse(std::string_view text);

// Minimal-parenthesis printer; parse(print(f)) == f structurally.
std::string print(const Formula& f);

// Atoms occurring in f, sorted lexicographically, no duplicates.
std::vector<std::string> vars(const Formula& f);

// The canonical tautology over vars(f): the conjunction of (p | ~p) in
// lexicographic atom order, right-associated; T when vars(f) is empty.
// Depends on f only through vars(f).
Formula overline(const Formula& f);

// True iff `name` is a valid atom identifier and not a reserved word.
bool isValidAtomName(std::string_view name) noexcept;

}  // namespace intentlog

#endif  // INTENTLOG_FORMULA_HPP
