#include "intentlog/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "intentlog/errors.hpp"

namespace intentlog {

struct Formula::Node {
    Kind kind;
    std::string atom;  // Atom nodes only
    NodeP lhs;         // unary child / binary left
    NodeP rhs;         // binary right
    bool core;         // no Nec/Intend anywhere below
};

namespace {

Formula::NodeP makeNode(Formula::Kind k, std::string atom, Formula::NodeP l,
                        Formula::NodeP r, bool core) {
    return std::make_shared<const Formula::Node>(
        Formula::Node{k, std::move(atom), std::move(l), std::move(r), core});
}

const Formula::NodeP& topNode() {
    static const Formula::NodeP n =
        makeNode(Formula::Kind::Top, "", nullptr, nullptr, true);
    return n;
}

}  // namespace

bool isValidAtomName(std::string_view name) noexcept {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return name != "T" && name != "I";
}

Formula Formula::top() { return Formula(topNode()); }

Formula Formula::atom(std::string name) {
    if (!isValidAtomName(name)) {
        throw Error("invalid atom name: '" + name + "'");
    }
    return Formula(makeNode(Kind::Atom, std::move(name), nullptr, nullptr, true));
}

Formula Formula::neg(Formula f) {
    bool core = f.node_->core;
    return Formula(makeNode(Kind::Not, "", std::move(f.node_), nullptr, core));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
    bool core = lhs.node_->core && rhs.node_->core;
    return Formula(
        makeNode(Kind::Or, "", std::move(lhs.node_), std::move(rhs.node_), core));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
    bool core = lhs.node_->core && rhs.node_->core;
    return Formula(
        makeNode(Kind::And, "", std::move(lhs.node_), std::move(rhs.node_), core));
}

Formula Formula::nec(Formula f) {
    return Formula(makeNode(Kind::Nec, "", std::move(f.node_), nullptr, false));
}

Formula Formula::intend(Formula core) {
    if (!core.node_->core) {
        throw LayeringError(
            "intention takes a core formula; argument contains a modality");
    }
    return Formula(makeNode(Kind::Intend, "", std::move(core.node_), nullptr, false));
}

Formula Formula::bottom() { return neg(top()); }

Formula Formula::impl(Formula lhs, Formula rhs) {
    return disj(neg(std::move(lhs)), std::move(rhs));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
    return conj(impl(lhs, rhs), impl(rhs, lhs));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::atomName() const { return node_->atom; }

Formula Formula::child() const { return left(); }

Formula Formula::left() const { return Formula(node_->lhs); }

Formula Formula::right() const { return Formula(node_->rhs); }

bool Formula::isCore() const noexcept { return node_->core; }

const void* Formula::nodeId() const noexcept { return node_.get(); }

namespace {

int cmpNodes(const Formula::Node* a, const Formula::Node* b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case Formula::Kind::Top:
            return 0;
        case Formula::Kind::Atom:
            return a->atom.compare(b->atom) < 0   ? -1
                   : a->atom.compare(b->atom) > 0 ? 1
                                                  : 0;
        case Formula::Kind::Not:
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            return cmpNodes(a->lhs.get(), b->lhs.get());
        case Formula::Kind::Or:
        case Formula::Kind::And: {
            int c = cmpNodes(a->lhs.get(), b->lhs.get());
            if (c != 0) return c;
            return cmpNodes(a->rhs.get(), b->rhs.get());
        }
    }
    return 0;
}

}  // namespace

bool Formula::operator==(const Formula& other) const noexcept {
    return cmpNodes(node_.get(), other.node_.get()) == 0;
}

std::strong_ordering Formula::operator<=>(const Formula& other) const noexcept {
    int c = cmpNodes(node_.get(), other.node_.get());
    return c < 0    ? std::strong_ordering::less
           : c > 0  ? std::strong_ordering::greater
                    : std::strong_ordering::equal;
}

// ── vars / overline ─────────────────────────────────────────────────────────

namespace {

void collectVars(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return;
        case Formula::Kind::Atom:
            out.insert(f.atomName());
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            collectVars(f.child(), out);
            return;
        case Formula::Kind::Or:
        case Formula::Kind::And:
            collectVars(f.left(), out);
            collectVars(f.right(), out);
            return;
    }
}

}  // namespace

std::vector<std::string> vars(const Formula& f) {
    std::set<std::string> s;
    collectVars(f, s);
    return {s.begin(), s.end()};
}

Formula overline(const Formula& f) {
    std::vector<std::string> vs = vars(f);
    if (vs.empty()) return Formula::top();
    auto excluded = [](const std::string& name) {
        Formula p = Formula::atom(name);
        return Formula::disj(p, Formula::neg(p));
    };
    // Right-associated conjunction in lexicographic atom order.
    Formula acc = excluded(vs.back());
    for (auto it = vs.rbegin() + 1; it != vs.rend(); ++it) {
        acc = Formula::conj(excluded(*it), std::move(acc));
    }
    return acc;
}

// ── Parser ──────────────────────────────────────────────────────────────────

namespace {

enum class Tok : std::uint8_t {
    End, LParen, RParen, Tilde, Hash, Amp, Bar, Arrow, DArrow, Top, IntendOp, Ident
};

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::size_t tokPos = 0;
    std::string ident;

    void advance() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        tokPos = pos;
        if (pos >= text.size()) {
            tok = Tok::End;
            return;
        }
        char c = text[pos];
        switch (c) {
            case '(': tok = Tok::LParen; ++pos; return;
            case ')': tok = Tok::RParen; ++pos; return;
            case '~': tok = Tok::Tilde; ++pos; return;
            case '#': tok = Tok::Hash; ++pos; return;
            case '&': tok = Tok::Amp; ++pos; return;
            case '|': tok = Tok::Bar; ++pos; return;
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    tok = Tok::Arrow;
                    pos += 2;
                    return;
                }
                throw SyntaxError(pos, "'->'");
            case '<':
                if (pos + 2 < text.size() && text[pos + 1] == '-' &&
                    text[pos + 2] == '>') {
                    tok = Tok::DArrow;
                    pos += 3;
                    return;
                }
                throw SyntaxError(pos, "'<->'");
            default:
                break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                    text[pos] == '_')) {
                ++pos;
            }
            ident.assign(text.substr(start, pos - start));
            if (ident == "T") {
                tok = Tok::Top;
            } else if (ident == "I") {
                tok = Tok::IntendOp;
            } else {
                tok = Tok::Ident;
            }
            return;
        }
        throw SyntaxError(pos, "a formula token");
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(std::string_view text) {
        lex.text = text;
        lex.advance();
    }

    Formula parseFormula() { return parseIff(); }

    Formula parseIff() {
        Formula f = parseImp();
        while (lex.tok == Tok::DArrow) {
            lex.advance();
            Formula g = parseImp();
            f = Formula::iff(std::move(f), std::move(g));
        }
        return f;
    }

    Formula parseImp() {
        Formula f = parseOr();
        if (lex.tok != Tok::Arrow) return f;
        lex.advance();
        Formula g = parseImp();  // right-assoc
        return Formula::impl(std::move(f), std::move(g));
    }

    Formula parseOr() {
        Formula f = parseAnd();
        while (lex.tok == Tok::Bar) {
            lex.advance();
            Formula g = parseAnd();
            f = Formula::disj(std::move(f), std::move(g));
        }
        return f;
    }

    Formula parseAnd() {
        Formula f = parseUnary();
        while (lex.tok == Tok::Amp) {
            lex.advance();
            Formula g = parseUnary();
            f = Formula::conj(std::move(f), std::move(g));
        }
        return f;
    }

    Formula parseUnary() {
        switch (lex.tok) {
            case Tok::Tilde: {
                lex.advance();
                return Formula::neg(parseUnary());
            }
            case Tok::Hash: {
                lex.advance();
                return Formula::nec(parseUnary());
            }
            case Tok::IntendOp: {
                std::size_t at = lex.tokPos;
                lex.advance();
                Formula arg = parseUnary();
                if (!arg.isCore()) {
                    throw LayeringError(
                        "I at offset " + std::to_string(at) +
                        " takes a core formula; argument contains a modality");
                }
                return Formula::intend(std::move(arg));
            }
            default:
                return parseAtomic();
        }
    }

    Formula parseAtomic() {
        switch (lex.tok) {
            case Tok::Top:
                lex.advance();
                return Formula::top();
            case Tok::Ident: {
                Formula f = Formula::atom(lex.ident);
                lex.advance();
                return f;
            }
            case Tok::LParen: {
                lex.advance();
                Formula f = parseFormula();
                if (lex.tok != Tok::RParen) throw SyntaxError(lex.tokPos, "')'");
                lex.advance();
                return f;
            }
            default:
                throw SyntaxError(lex.tokPos, "'T', an identifier, or '('");
        }
    }
};

}  // namespace

Formula parse(std::string_view text) {
    Parser p(text);
    Formula f = p.parseFormula();
    if (p.lex.tok != Tok::End) throw SyntaxError(p.lex.tokPos, "end of input");
    return f;
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

// Precedence levels of the stored connectives (no sugar in trees).
constexpr int kPrecOr = 1;
constexpr int kPrecAnd = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecAtomic = 4;

int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Or: return kPrecOr;
        case Formula::Kind::And: return kPrecAnd;
        case Formula::Kind::Not:
        case Formula::Kind::Nec:
        case Formula::Kind::Intend: return kPrecUnary;
        default: return kPrecAtomic;
    }
}

void printRec(const Formula& f, int minPrec, std::string& out) {
    int prec = precedence(f.kind());
    bool parens = prec < minPrec;
    if (parens) out += '(';
    switch (f.kind()) {
        case Formula::Kind::Top:
            out += 'T';
            break;
        case Formula::Kind::Atom:
            out += f.atomName();
            break;
        case Formula::Kind::Not:
            out += '~';
            printRec(f.child(), kPrecUnary, out);
            break;
        case Formula::Kind::Nec:
            out += '#';
            printRec(f.child(), kPrecUnary, out);
            break;
        case Formula::Kind::Intend:
            out += "I ";
            printRec(f.child(), kPrecUnary, out);
            break;
        case Formula::Kind::Or:
            printRec(f.left(), kPrecOr, out);  // left-assoc chain
            out += " | ";
            printRec(f.right(), kPrecAnd, out);
            break;
        case Formula::Kind::And:
            printRec(f.left(), kPrecAnd, out);
            out += " & ";
            printRec(f.right(), kPrecUnary, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
    std::string out;
    printRec(f, 0, out);
    return out;
}

}  // namespace intentlog
