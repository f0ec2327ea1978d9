#include <doctest.h>

#include <random>

#include "intentlog/errors.hpp"
#include "intentlog/search.hpp"
#include "support/generators.hpp"

using namespace intentlog;

TEST_CASE("countermodel to necessary-equivalence closure at one world") {
    SearchBounds b;
    b.maxWorlds = 1;
    b.maxGenerators = 2;
    b.atoms = {"p", "q"};
    Formula target = parse("#(p <-> q) -> (I p -> I q)");
    auto found = findCountermodel(target, b);
    REQUIRE(found.has_value());
    const KripkeModel& m = found->model;
    CHECK(validateModel(m).empty());
    CHECK_FALSE(eval(m, found->world, target));
    CHECK(m.worlds.size() == 1);
    // Same structure as the refutation in the one-point split model:
    // coextensional atoms, the assigned problem solves p but not q.
    CHECK(m.valuation.at("p") == m.valuation.at("q"));
    auto w = m.worldIndex(found->world);
    REQUIRE(w.has_value());
    CHECK(solvesFastIdx(m.problems, m.assignment[*w], parse("p")));
    CHECK_FALSE(solvesFastIdx(m.problems, m.assignment[*w], parse("q")));
}

TEST_CASE("no countermodel to the consistency axiom") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    CHECK_FALSE(findCountermodel(parse("I p -> ~I ~p"), b).has_value());
    CHECK_FALSE(findCountermodel(parse("I T"), b).has_value());
}

TEST_CASE("countermodel to entailment closure") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    auto found = findCountermodel(parse("I p -> I (p | q)"), b);
    REQUIRE(found.has_value());
    auto w = found->model.worldIndex(found->world);
    REQUIRE(w.has_value());
    CHECK(solvesFastIdx(found->model.problems, found->model.assignment[*w], parse("p")));
    CHECK_FALSE(
        solvesFastIdx(found->model.problems, found->model.assignment[*w], parse("q")));
}

TEST_CASE("search is deterministic") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    Formula target = parse("#(p <-> q) -> (I p -> I q)");
    auto first = findCountermodel(target, b);
    auto second = findCountermodel(target, b);
    REQUIRE(first.has_value());
    REQUIRE(second.has_value());
    CHECK(first->world == second->world);
    CHECK(saveModel(first->model) == saveModel(second->model));
}

TEST_CASE("budget exhaustion raises ResourceLimit") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    b.budget = 3;
    CHECK_THROWS_AS(findCountermodel(parse("I p -> ~I ~p"), b), ResourceLimit);
}

TEST_CASE("all four closure principles are refuted within small bounds") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    b.atoms = {"p", "q"};
    ClosureReport report = refuteClosurePrinciples(b);
    REQUIRE(report.principles.size() == 4);
    CHECK(report.allRefuted());
    for (const PrincipleRefutation& r : report.principles) {
        INFO(r.id);
        REQUIRE(r.witness.has_value());
        CHECK(validateModel(r.witness->model).empty());
        CHECK_FALSE(eval(r.witness->model, r.witness->world, r.instance));
        // The axiom-form principles fall in a single-world model already.
        if (r.id == "closure-under-necessary-entailment" ||
            r.id == "closure-under-necessary-equivalence") {
            CHECK(r.witness->model.worlds.size() == 1);
            CHECK(r.witness->model.problems.size() <= 3);
        }
        if (r.id == "closure-under-logical-equivalence") {
            CHECK(eval(r.witness->model, r.witness->world,
                       parse("I (p | ~p) & ~I (q | ~q)")));
        }
    }
}

TEST_CASE("randomized diversity mode finds witnesses and is seed-deterministic") {
    SearchBounds b;
    b.maxWorlds = 2;
    b.maxGenerators = 2;
    b.atoms = {"p", "q"};
    b.seed = 7;
    Formula target = parse("#(p <-> q) -> (I p -> I q)");
    auto first = findCountermodelRandom(target, b, 10'000);
    REQUIRE(first.has_value());
    CHECK(validateModel(first->model).empty());
    CHECK_FALSE(eval(first->model, first->world, target));
    auto second = findCountermodelRandom(target, b, 10'000);
    REQUIRE(second.has_value());
    CHECK(saveModel(first->model) == saveModel(second->model));
    CHECK(first->world == second->world);
    // Sampling cannot refute a sound axiom either.
    CHECK_FALSE(findCountermodelRandom(parse("I p -> ~I ~p"), b, 2'000).has_value());
}

TEST_CASE("random models validate, in both fusion modes") {
    std::mt19937_64 rng(91);
    RandomModelParams powerset;
    RandomModelParams moore;
    moore.mooreFusion = true;
    for (int i = 0; i < 200; ++i) {
        CHECK(validateModel(randomModel(rng, powerset)).empty());
        CHECK(validateModel(randomModel(rng, moore)).empty());
    }
}

TEST_CASE("random models survive a file round trip") {
    std::mt19937_64 rng(93);
    for (int i = 0; i < 40; ++i) {
        KripkeModel m = testgen::randomValidModel(rng);
        LoadResult again = loadModel(saveModel(m));
        REQUIRE(again.ok());
        CHECK(saveModel(again.model) == saveModel(m));
    }
}

TEST_CASE("moore mode reaches fusion tables no powerset provides") {
    // A diamond: three incomparable mid elements whose pairwise fusions all
    // land on the same top; impossible with fusion = union of nonempty sets.
    std::mt19937_64 rng(92);
    bool sawNonDistributive = false;
    RandomModelParams moore;
    moore.mooreFusion = true;
    moore.maxGenerators = 3;
    for (int i = 0; i < 400 && !sawNonDistributive; ++i) {
        ProblemsModel pm = randomProblemsModel(rng, moore);
        const std::uint32_t n = static_cast<std::uint32_t>(pm.size());
        for (std::uint32_t a = 0; a < n && !sawNonDistributive; ++a) {
            for (std::uint32_t b = 0; b < n && !sawNonDistributive; ++b) {
                for (std::uint32_t c = 0; c < n; ++c) {
                    if (a == b || b == c || a == c) continue;
                    std::uint32_t ab = pm.fuseIdx(a, b);
                    if (ab == a || ab == b) continue;
                    if (pm.fuseIdx(a, c) == ab && pm.fuseIdx(b, c) == ab &&
                        c != ab && !pm.leqIdx(c, a) && !pm.leqIdx(c, b)) {
                        sawNonDistributive = true;
                        break;
                    }
                }
            }
        }
    }
    CHECK(sawNonDistributive);
}
