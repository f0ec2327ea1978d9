#include "intentlog/proof.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "intentlog/errors.hpp"

namespace intentlog {

namespace {

// Implication / biconditional are stored in desugared form; destructure them.
struct Impl {
    Formula ante;
    Formula cons;
};

std::optional<Impl> asImpl(const Formula& f) {
    if (f.kind() == Formula::Kind::Or && f.left().kind() == Formula::Kind::Not) {
        return Impl{f.left().child(), f.right()};
    }
    return std::nullopt;
}

struct Iff {
    Formula lhs;
    Formula rhs;
};

std::optional<Iff> asIff(const Formula& f) {
    if (f.kind() != Formula::Kind::And) return std::nullopt;
    auto fwd = asImpl(f.left());
    auto bwd = asImpl(f.right());
    if (!fwd || !bwd) return std::nullopt;
    if (!(fwd->ante == bwd->cons) || !(fwd->cons == bwd->ante)) return std::nullopt;
    return Iff{fwd->ante, fwd->cons};
}

std::optional<Formula> asIntendArg(const Formula& f) {
    if (f.kind() == Formula::Kind::Intend) return f.child();
    return std::nullopt;
}

}  // namespace

bool matchesAxiom(const Formula& phi, Justification::Kind ax) {
    using K = Justification::Kind;
    switch (ax) {
        case K::Ax1:
            return phi == Formula::intend(Formula::top());
        case K::Ax2: {
            auto imp = asImpl(phi);
            if (!imp) return false;
            auto a = asIntendArg(imp->ante);
            auto b = asIntendArg(imp->cons);
            return a && b && *b == overline(*a);
        }
        case K::Ax3: {
            auto imp = asImpl(phi);
            if (!imp) return false;
            auto a = asIntendArg(imp->ante);
            if (!a) return false;
            if (imp->cons.kind() != Formula::Kind::Not) return false;
            auto b = asIntendArg(imp->cons.child());
            return b && b->kind() == Formula::Kind::Not && b->child() == *a;
        }
        case K::Ax4: {
            auto iff = asIff(phi);
            if (!iff) return false;
            if (iff->lhs.kind() != Formula::Kind::And) return false;
            auto a = asIntendArg(iff->lhs.left());
            auto b = asIntendArg(iff->lhs.right());
            auto c = asIntendArg(iff->rhs);
            return a && b && c && c->kind() == Formula::Kind::And &&
                   c->left() == *a && c->right() == *b;
        }
        case K::Ax5: {
            auto outer = asImpl(phi);
            if (!outer) return false;
            if (outer->ante.kind() != Formula::Kind::Nec) return false;
            auto necImp = asImpl(outer->ante.child());
            if (!necImp) return false;  // #(g -> f)
            auto inner = asImpl(outer->cons);
            if (!inner) return false;
            if (inner->ante.kind() != Formula::Kind::And) return false;
            auto g = asIntendArg(inner->ante.left());
            auto ov = asIntendArg(inner->ante.right());
            auto f = asIntendArg(inner->cons);
            return g && ov && f && *g == necImp->ante && *f == necImp->cons &&
                   *ov == overline(*f);
        }
        case K::S5K: {
            auto outer = asImpl(phi);
            if (!outer) return false;
            if (outer->ante.kind() != Formula::Kind::Nec) return false;
            auto necImp = asImpl(outer->ante.child());
            if (!necImp) return false;
            auto inner = asImpl(outer->cons);
            if (!inner) return false;
            return inner->ante.kind() == Formula::Kind::Nec &&
                   inner->cons.kind() == Formula::Kind::Nec &&
                   inner->ante.child() == necImp->ante &&
                   inner->cons.child() == necImp->cons;
        }
        case K::S5T: {
            auto imp = asImpl(phi);
            if (!imp) return false;
            return imp->ante.kind() == Formula::Kind::Nec &&
                   imp->ante.child() == imp->cons;
        }
        case K::S5Five: {
            auto imp = asImpl(phi);
            if (!imp) return false;
            if (imp->ante.kind() != Formula::Kind::Not) return false;
            Formula notNec = imp->ante;  // ~#f
            if (notNec.child().kind() != Formula::Kind::Nec) return false;
            return imp->cons.kind() == Formula::Kind::Nec &&
                   imp->cons.child() == notNec;
        }
        default:
            return false;
    }
}

// ── Tautology checking ──────────────────────────────────────────────────────

namespace {

constexpr std::size_t kMaxLetters = 20;

void collectLetters(const Formula& f, std::map<Formula, std::size_t>& letters) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return;
        case Formula::Kind::Atom:
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            letters.try_emplace(f, letters.size());
            return;
        case Formula::Kind::Not:
            collectLetters(f.child(), letters);
            return;
        case Formula::Kind::Or:
        case Formula::Kind::And:
            collectLetters(f.left(), letters);
            collectLetters(f.right(), letters);
            return;
    }
}

bool evalSkeleton(const Formula& f, const std::map<Formula, std::size_t>& letters,
                  std::uint32_t row) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return true;
        case Formula::Kind::Atom:
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            return (row >> letters.at(f)) & 1u;
        case Formula::Kind::Not:
            return !evalSkeleton(f.child(), letters, row);
        case Formula::Kind::Or:
            return evalSkeleton(f.left(), letters, row) ||
                   evalSkeleton(f.right(), letters, row);
        case Formula::Kind::And:
            return evalSkeleton(f.left(), letters, row) &&
                   evalSkeleton(f.right(), letters, row);
    }
    return false;
}

}  // namespace

bool isTautology(const Formula& phi) {
    std::map<Formula, std::size_t> letters;
    collectLetters(phi, letters);
    if (letters.size() > kMaxLetters) {
        throw ResourceLimit("tautology check letter count", kMaxLetters);
    }
    const std::uint32_t rows = 1u << letters.size();
    for (std::uint32_t row = 0; row < rows; ++row) {
        if (!evalSkeleton(phi, letters, row)) return false;
    }
    return true;
}

// ── Derivation checking ─────────────────────────────────────────────────────

CheckResult checkDerivation(const Derivation& d, const std::vector<Formula>& premises,
                            const Formula& goal) {
    using K = Justification::Kind;
    if (d.lines.empty()) return CheckFailure{0, "no lines", "the derivation is empty"};

    std::vector<bool> dependsOnPremise(d.lines.size(), false);
    for (std::size_t i = 0; i < d.lines.size(); ++i) {
        const DerivationLine& ln = d.lines[i];
        if (ln.index != i + 1) {
            return CheckFailure{ln.index, "index sequence",
                                "expected index " + std::to_string(i + 1)};
        }
        auto lineAt = [&](std::uint32_t ref) -> const DerivationLine* {
            if (ref < 1 || ref > i) return nullptr;
            return &d.lines[ref - 1];
        };
        switch (ln.just.kind) {
            case K::Premise: {
                bool listed = std::any_of(premises.begin(), premises.end(),
                                          [&](const Formula& p) { return p == ln.formula; });
                if (!listed) {
                    return CheckFailure{ln.index, "premise not listed",
                                        "formula is not among the given premises"};
                }
                dependsOnPremise[i] = true;
                break;
            }
            case K::Taut:
                if (!isTautology(ln.formula)) {
                    return CheckFailure{ln.index, "not a tautology",
                                        "formula is falsifiable at the letter level"};
                }
                break;
            case K::MP: {
                const DerivationLine* minor = lineAt(ln.just.ref1);
                const DerivationLine* major = lineAt(ln.just.ref2);
                if (!minor || !major) {
                    return CheckFailure{ln.index, "bad reference",
                                        "mp must cite strictly earlier lines"};
                }
                auto imp = asImpl(major->formula);
                if (!imp) {
                    return CheckFailure{ln.index, "MP shape",
                                        "cited major premise is not an implication"};
                }
                if (!(imp->ante == minor->formula) || !(imp->cons == ln.formula)) {
                    return CheckFailure{ln.index, "MP shape",
                                        "implication does not link the cited line to this one"};
                }
                dependsOnPremise[i] =
                    dependsOnPremise[ln.just.ref1 - 1] || dependsOnPremise[ln.just.ref2 - 1];
                break;
            }
            case K::Nec: {
                const DerivationLine* src = lineAt(ln.just.ref1);
                if (!src) {
                    return CheckFailure{ln.index, "bad reference",
                                        "nec must cite a strictly earlier line"};
                }
                if (!(ln.formula == Formula::nec(src->formula))) {
                    return CheckFailure{ln.index, "necessitation shape",
                                        "formula is not # of the cited line"};
                }
                if (dependsOnPremise[ln.just.ref1 - 1]) {
                    return CheckFailure{ln.index, "necessitation over premise",
                                        "cited line depends on a premise"};
                }
                break;
            }
            default:
                if (!matchesAxiom(ln.formula, ln.just.kind)) {
                    return CheckFailure{ln.index, "axiom mismatch",
                                        "formula is not an instance of " +
                                            justificationToString(ln.just)};
                }
                break;
        }
    }
    if (!(d.lines.back().formula == goal)) {
        return CheckFailure{d.lines.back().index, "goal mismatch",
                            "final line differs from the stated goal"};
    }
    return std::nullopt;
}

// ── Canned derivations ──────────────────────────────────────────────────────

namespace {

Justification just(Justification::Kind k, std::uint32_t r1 = 0, std::uint32_t r2 = 0) {
    return Justification{k, r1, r2};
}

Derivation buildDerivation(
    const std::vector<std::pair<const char*, Justification>>& steps) {
    Derivation d;
    std::uint32_t idx = 1;
    for (const auto& [text, j] : steps) {
        d.lines.push_back({idx++, parse(text), j});
    }
    return d;
}

}  // namespace

std::vector<std::pair<std::string, Derivation>> cannedLemmas() {
    using K = Justification::Kind;
    std::vector<std::pair<std::string, Derivation>> out;

    // The canonical tautology over a conjunction's atoms is itself the
    // conjunction of the per-atom tautologies, so the biconditional is
    // reflexive-strength.
    out.emplace_back("overline_conj_split", buildDerivation({
        {"I ((p | ~p) & (q | ~q)) <-> I ((p | ~p) & (q | ~q))", just(K::Taut)},
    }));

    // Shrinking the atom set weakens the canonical tautology claim.
    out.emplace_back("overline_monotone", buildDerivation({
        {"(I (p | ~p) & I (q | ~q)) <-> I ((p | ~p) & (q | ~q))", just(K::Ax4)},
        {"((I (p | ~p) & I (q | ~q)) <-> I ((p | ~p) & (q | ~q))) -> "
         "(I ((p | ~p) & (q | ~q)) -> I (p | ~p))", just(K::Taut)},
        {"I ((p | ~p) & (q | ~q)) -> I (p | ~p)", just(K::MP, 1, 2)},
    }));

    // Intentions agglomerate over disjunction.
    out.emplace_back("disjunction_agglomeration", buildDerivation({
        {"p -> (p | q)", just(K::Taut)},
        {"#(p -> (p | q))", just(K::Nec, 1)},
        {"#(p -> (p | q)) -> ((I p & I ((p | ~p) & (q | ~q))) -> I (p | q))",
         just(K::Ax5)},
        {"(I p & I q) <-> I (p & q)", just(K::Ax4)},
        {"I (p & q) -> I ((p | ~p) & (q | ~q))", just(K::Ax2)},
        {"(I p & I ((p | ~p) & (q | ~q))) -> I (p | q)", just(K::MP, 2, 3)},
        {"((I p & I q) <-> I (p & q)) -> ((I (p & q) -> I ((p | ~p) & (q | ~q))) -> "
         "(((I p & I ((p | ~p) & (q | ~q))) -> I (p | q)) -> ((I p & I q) -> I (p | q))))",
         just(K::Taut)},
        {"(I (p & q) -> I ((p | ~p) & (q | ~q))) -> "
         "(((I p & I ((p | ~p) & (q | ~q))) -> I (p | q)) -> ((I p & I q) -> I (p | q)))",
         just(K::MP, 4, 7)},
        {"((I p & I ((p | ~p) & (q | ~q))) -> I (p | q)) -> ((I p & I q) -> I (p | q))",
         just(K::MP, 5, 8)},
        {"(I p & I q) -> I (p | q)", just(K::MP, 6, 9)},
    }));

    return out;
}

// ── Text form ───────────────────────────────────────────────────────────────

std::string justificationToString(const Justification& j) {
    using K = Justification::Kind;
    switch (j.kind) {
        case K::Premise: return "premise";
        case K::Taut: return "taut";
        case K::Ax1: return "ax1";
        case K::Ax2: return "ax2";
        case K::Ax3: return "ax3";
        case K::Ax4: return "ax4";
        case K::Ax5: return "ax5";
        case K::S5K: return "s5k";
        case K::S5T: return "s5t";
        case K::S5Five: return "s55";
        case K::MP:
            return "mp " + std::to_string(j.ref1) + " " + std::to_string(j.ref2);
        case K::Nec: return "nec " + std::to_string(j.ref1);
    }
    return "?";
}

namespace {

Justification parseJustification(const std::string& text, std::size_t lineNo) {
    using K = Justification::Kind;
    std::istringstream in(text);
    std::string word;
    if (!(in >> word)) {
        throw FormatError("derivation line " + std::to_string(lineNo) +
                          ": missing justification");
    }
    auto noArgs = [&](K k) {
        std::string extra;
        if (in >> extra) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": unexpected argument '" + extra + "'");
        }
        return Justification{k, 0, 0};
    };
    if (word == "premise") return noArgs(K::Premise);
    if (word == "taut") return noArgs(K::Taut);
    if (word == "ax1") return noArgs(K::Ax1);
    if (word == "ax2") return noArgs(K::Ax2);
    if (word == "ax3") return noArgs(K::Ax3);
    if (word == "ax4") return noArgs(K::Ax4);
    if (word == "ax5") return noArgs(K::Ax5);
    if (word == "s5k") return noArgs(K::S5K);
    if (word == "s5t") return noArgs(K::S5T);
    if (word == "s55") return noArgs(K::S5Five);
    if (word == "mp") {
        std::uint32_t i = 0, j = 0;
        if (!(in >> i >> j)) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": mp needs two line numbers");
        }
        return Justification{K::MP, i, j};
    }
    if (word == "nec") {
        std::uint32_t i = 0;
        if (!(in >> i)) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": nec needs a line number");
        }
        return Justification{K::Nec, i, 0};
    }
    throw FormatError("derivation line " + std::to_string(lineNo) +
                      ": unknown justification '" + word + "'");
}

}  // namespace

Derivation parseDerivation(std::string_view text) {
    Derivation d;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line.compare(first, 2, "//") == 0) continue;

        std::size_t dot = line.find('.', first);
        if (dot == std::string::npos) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": missing '.' after the index");
        }
        std::uint32_t index = 0;
        try {
            index = static_cast<std::uint32_t>(
                std::stoul(line.substr(first, dot - first)));
        } catch (const std::exception&) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": bad index");
        }
        std::size_t semi = line.find(';', dot);
        if (semi == std::string::npos) {
            throw FormatError("derivation line " + std::to_string(lineNo) +
                              ": missing ';' before the justification");
        }
        Formula f = parse(line.substr(dot + 1, semi - dot - 1));
        Justification j = parseJustification(line.substr(semi + 1), lineNo);
        d.lines.push_back({index, std::move(f), j});
    }
    return d;
}

std::string printDerivation(const Derivation& d) {
    std::string out;
    for (const DerivationLine& ln : d.lines) {
        out += std::to_string(ln.index);
        out += ". ";
        out += print(ln.formula);
        out += " ; ";
        out += justificationToString(ln.just);
        out += "\n";
    }
    return out;
}

}  // namespace intentlog
