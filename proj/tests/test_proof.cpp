#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "intentlog/errors.hpp"
#include "intentlog/kripke.hpp"
#include "intentlog/proof.hpp"
#include "support/generators.hpp"

using namespace intentlog;

namespace {

const std::string kDataDir = INTENTLOG_DATA_DIR;
using K = Justification::Kind;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

CheckResult checkPremiseFree(const Derivation& d) {
    REQUIRE_FALSE(d.lines.empty());
    return checkDerivation(d, {}, d.lines.back().formula);
}

}  // namespace

TEST_CASE("matchesAxiom: stated instances") {
    CHECK(matchesAxiom(parse("I T"), K::Ax1));
    CHECK_FALSE(matchesAxiom(parse("I p"), K::Ax1));
    CHECK(matchesAxiom(parse("I p -> I (p | ~p)"), K::Ax2));
    CHECK_FALSE(matchesAxiom(parse("I p -> I (q | ~q)"), K::Ax2));
    CHECK(matchesAxiom(parse("I (p & q) -> I ((p | ~p) & (q | ~q))"), K::Ax2));
    CHECK(matchesAxiom(parse("I T -> I T"), K::Ax2));  // overline of T is T
    CHECK(matchesAxiom(parse("I p -> ~I ~p"), K::Ax3));
    CHECK(matchesAxiom(parse("(I p & I q) <-> I (p & q)"), K::Ax4));
    CHECK_FALSE(matchesAxiom(parse("(I p & I q) <-> I (q & p)"), K::Ax4));
    CHECK(matchesAxiom(
        parse("#(p -> (p | q)) -> ((I p & I ((p | ~p) & (q | ~q))) -> I (p | q))"),
        K::Ax5));
    CHECK(matchesAxiom(parse("#(p -> q) -> (#p -> #q)"), K::S5K));
    CHECK(matchesAxiom(parse("#I p -> I p"), K::S5T));
    CHECK(matchesAxiom(parse("~#p -> #~#p"), K::S5Five));
    CHECK_FALSE(matchesAxiom(parse("#p -> #~#p"), K::S5Five));
}

TEST_CASE("matchesAxiom: instance detection is structural, not textual") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        Formula f = testgen::randomCore(rng, 4);
        Formula g = testgen::randomCore(rng, 4);
        CHECK(matchesAxiom(Formula::impl(Formula::intend(f),
                                         Formula::intend(overline(f))),
                           K::Ax2));
        CHECK(matchesAxiom(
            Formula::iff(Formula::conj(Formula::intend(f), Formula::intend(g)),
                         Formula::intend(Formula::conj(f, g))),
            K::Ax4));
        Formula full = testgen::randomFull(rng, 4);
        CHECK(matchesAxiom(Formula::impl(Formula::nec(full), full), K::S5T));
    }
}

TEST_CASE("isTautology") {
    CHECK(isTautology(parse("p | ~p")));
    CHECK(isTautology(parse("I p | ~I p")));
    CHECK_FALSE(isTautology(parse("I p -> I q")));
    CHECK_FALSE(isTautology(parse("p")));
    CHECK(isTautology(parse("T")));
    CHECK_FALSE(isTautology(parse("~T")));
    // #p -> p is NOT propositionally valid: the letters are independent.
    CHECK_FALSE(isTautology(parse("#p -> p")));

    Formula wide = Formula::atom("x1");
    for (int i = 2; i <= 21; ++i) {
        wide = Formula::disj(wide, Formula::atom("x" + std::to_string(i)));
    }
    CHECK_THROWS_AS(isTautology(wide), ResourceLimit);
}

TEST_CASE("isTautology agrees with one-world model validity on atomic letters") {
    std::mt19937_64 rng(72);
    const std::vector<std::string> atoms = {"p", "q", "r"};
    for (int i = 0; i < 120; ++i) {
        Formula f = testgen::randomCore(rng, 4, atoms);
        bool allValuations = true;
        for (std::uint32_t bits = 0; bits < 8; ++bits) {
            KripkeModel m;
            m.worlds = {"w"};
            m.successors = {{0}};
            m.atoms = atoms;
            for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
                m.valuation[atoms[ai]] =
                    (bits >> ai) & 1 ? std::vector<std::uint32_t>{0}
                                     : std::vector<std::uint32_t>{};
            }
            m.problems = makeProblemsModel({"a"}, {}, {});
            m.assignment = {0};
            allValuations = allValuations && validOnModel(m, f);
        }
        CHECK(isTautology(f) == allValuations);
    }
}

TEST_CASE("canned lemmas check and match the shipped files") {
    auto lemmas = cannedLemmas();
    REQUIRE(lemmas.size() == 3);
    for (const auto& [name, d] : lemmas) {
        INFO(name);
        CHECK_FALSE(checkPremiseFree(d).has_value());
        Derivation fromFile =
            parseDerivation(slurp(kDataDir + "/derivations/" + name + ".drv"));
        REQUIRE(fromFile.lines.size() == d.lines.size());
        for (std::size_t i = 0; i < d.lines.size(); ++i) {
            CHECK(fromFile.lines[i].formula == d.lines[i].formula);
            CHECK(fromFile.lines[i].just == d.lines[i].just);
        }
        // The text form round-trips through the parser.
        Derivation reparsed = parseDerivation(printDerivation(d));
        CHECK_FALSE(checkPremiseFree(reparsed).has_value());
    }
}

TEST_CASE("an explicit derivation: intending a conjunction settles its tautology") {
    Derivation d;
    d.lines.push_back({1, parse("(I p & I q) <-> I (p & q)"), {K::Ax4, 0, 0}});
    d.lines.push_back({2, parse("I (p & q) -> I ((p | ~p) & (q | ~q))"), {K::Ax2, 0, 0}});
    CHECK_FALSE(checkDerivation(d, {}, parse("I (p & q) -> I ((p | ~p) & (q | ~q))"))
                    .has_value());
}

TEST_CASE("checkDerivation failure modes") {
    Derivation broken = parseDerivation(slurp(kDataDir + "/derivations/broken_mp.drv"));
    CheckResult res = checkDerivation(broken, {}, parse("q"));
    REQUIRE(res.has_value());
    CHECK(res->line == 2);
    CHECK(res->reason == "MP shape");

    CheckResult empty = checkDerivation(Derivation{}, {}, parse("p"));
    REQUIRE(empty.has_value());
    CHECK(empty->reason == "no lines");

    Derivation gap;
    gap.lines.push_back({1, parse("p | ~p"), {K::Taut, 0, 0}});
    gap.lines.push_back({3, parse("q | ~q"), {K::Taut, 0, 0}});
    CheckResult gapRes = checkDerivation(gap, {}, parse("q | ~q"));
    REQUIRE(gapRes.has_value());
    CHECK(gapRes->reason == "index sequence");

    Derivation wrongGoal;
    wrongGoal.lines.push_back({1, parse("p | ~p"), {K::Taut, 0, 0}});
    CheckResult goalRes = checkDerivation(wrongGoal, {}, parse("q | ~q"));
    REQUIRE(goalRes.has_value());
    CHECK(goalRes->reason == "goal mismatch");

    Derivation fwdRef;
    fwdRef.lines.push_back({1, parse("q"), {K::MP, 1, 2}});
    CheckResult fwdRes = checkDerivation(fwdRef, {}, parse("q"));
    REQUIRE(fwdRes.has_value());
    CHECK(fwdRes->reason == "bad reference");

    Derivation notTaut;
    notTaut.lines.push_back({1, parse("p"), {K::Taut, 0, 0}});
    CheckResult tautRes = checkDerivation(notTaut, {}, parse("p"));
    REQUIRE(tautRes.has_value());
    CHECK(tautRes->reason == "not a tautology");
}

TEST_CASE("premises flow and gate necessitation") {
    std::vector<Formula> premises = {parse("p"), parse("p -> q")};
    Derivation d;
    d.lines.push_back({1, parse("p"), {K::Premise, 0, 0}});
    d.lines.push_back({2, parse("p -> q"), {K::Premise, 0, 0}});
    d.lines.push_back({3, parse("q"), {K::MP, 1, 2}});
    CHECK_FALSE(checkDerivation(d, premises, parse("q")).has_value());

    Derivation necOverPremise = d;
    necOverPremise.lines.push_back({4, parse("#q"), {K::Nec, 3, 0}});
    CheckResult res = checkDerivation(necOverPremise, premises, parse("#q"));
    REQUIRE(res.has_value());
    CHECK(res->line == 4);
    CHECK(res->reason == "necessitation over premise");

    Derivation unlisted;
    unlisted.lines.push_back({1, parse("r"), {K::Premise, 0, 0}});
    CheckResult unlistedRes = checkDerivation(unlisted, premises, parse("r"));
    REQUIRE(unlistedRes.has_value());
    CHECK(unlistedRes->reason == "premise not listed");

    // Necessitation over a theorem line stays fine.
    Derivation okNec;
    okNec.lines.push_back({1, parse("p | ~p"), {K::Taut, 0, 0}});
    okNec.lines.push_back({2, parse("#(p | ~p)"), {K::Nec, 1, 0}});
    CHECK_FALSE(checkDerivation(okNec, premises, parse("#(p | ~p)")).has_value());
}

TEST_CASE("derivation text form: errors and round trip") {
    CHECK_THROWS_AS(parseDerivation("1 p ; taut"), FormatError);
    CHECK_THROWS_AS(parseDerivation("1. p taut"), FormatError);
    CHECK_THROWS_AS(parseDerivation("1. p ; zap"), FormatError);
    CHECK_THROWS_AS(parseDerivation("1. p ; mp 1"), FormatError);
    CHECK_THROWS_AS(parseDerivation("x. p ; taut"), FormatError);
    CHECK(parseDerivation("// comment\n\n").lines.empty());
    Derivation d = parseDerivation("1. p -> p | q ; taut\n2. #(p -> p | q) ; nec 1\n");
    REQUIRE(d.lines.size() == 2);
    CHECK(d.lines[1].just == Justification{K::Nec, 1, 0});
}

TEST_CASE("premise-free conclusions are valid on random models") {
    std::mt19937_64 rng(73);
    auto lemmas = cannedLemmas();
    for (int trial = 0; trial < 500; ++trial) {
        KripkeModel m = testgen::randomValidModel(rng);
        for (const auto& [name, d] : lemmas) {
            INFO(name);
            CHECK(validOnModel(m, d.lines.back().formula));
        }
    }
}

TEST_CASE("exhaustive single-justification mutations are all rejected") {
    auto lemmas = cannedLemmas();
    std::size_t mutations = 0;
    for (const auto& [name, d] : lemmas) {
        for (std::size_t li = 0; li < d.lines.size(); ++li) {
            std::vector<Justification> candidates;
            for (K k : {K::Premise, K::Taut, K::Ax1, K::Ax2, K::Ax3, K::Ax4, K::Ax5,
                        K::S5K, K::S5T, K::S5Five}) {
                candidates.push_back({k, 0, 0});
            }
            for (std::uint32_t i = 1; i <= li; ++i) {
                candidates.push_back({K::Nec, i, 0});
                for (std::uint32_t j = 1; j <= li; ++j) {
                    candidates.push_back({K::MP, i, j});
                }
            }
            for (const Justification& cand : candidates) {
                if (cand == d.lines[li].just) continue;
                Derivation mutated = d;
                mutated.lines[li].just = cand;
                CheckResult res = checkPremiseFree(mutated);
                INFO(name, " line ", li + 1, " -> ", justificationToString(cand));
                REQUIRE(res.has_value());
                CHECK(res->line == mutated.lines[li].index);
                ++mutations;
            }
        }
    }
    CHECK(mutations > 200);
}
