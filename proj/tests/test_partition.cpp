#include <doctest.h>

#include <random>
#include <string>

#include "intentlog/errors.hpp"
#include "intentlog/partition.hpp"
#include "support/generators.hpp"

using namespace intentlog;

namespace {

const std::string kDataDir = INTENTLOG_DATA_DIR;

KripkeModel loadData(const std::string& rel) {
    LoadResult res = loadModelFile(kDataDir + rel);
    REQUIRE(res.ok());
    return std::move(res.model);
}

// Three worlds with chosen extensions for p and q.
KripkeModel threeWorlds() {
    LoadResult res = loadModel(R"({
      "worlds": ["w1", "w2", "w3"],
      "relation": [["w1","w1"],["w2","w2"],["w3","w3"]],
      "atoms": ["p", "q"],
      "valuation": {"p": ["w1","w2"], "q": ["w1","w3"]},
      "problems": ["a"], "fusion": {}, "solves": {"p": ["a"]},
      "assignment": {"w1":"a","w2":"a","w3":"a"}
    })");
    REQUIRE(res.ok());
    return std::move(res.model);
}

Partition mk(std::vector<std::vector<std::uint32_t>> cells) {
    return Partition::fromCells(std::move(cells));
}

// Random partition of {0..n-1} via random cell labels.
Partition randomPartition(std::mt19937_64& rng, std::uint32_t n) {
    std::uniform_int_distribution<std::uint32_t> label(0, n - 1);
    std::vector<std::vector<std::uint32_t>> buckets(n);
    for (std::uint32_t w = 0; w < n; ++w) buckets[label(rng)].push_back(w);
    std::vector<Partition::Cell> cells;
    for (auto& b : buckets) {
        if (!b.empty()) cells.push_back(std::move(b));
    }
    return Partition::fromCells(std::move(cells));
}

}  // namespace

TEST_CASE("Partition: canonicalization and validation") {
    Partition p = mk({{2, 1}, {0}});
    CHECK(p.cells() == std::vector<Partition::Cell>{{0}, {1, 2}});
    CHECK(p.domain() == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(p == mk({{0}, {1, 2}}));
    CHECK_THROWS_AS(mk({{0}, {}}), Error);
    CHECK_THROWS_AS(mk({{0, 1}, {1, 2}}), Error);
    CHECK(p.cellOf(2) == 1);
    CHECK_THROWS_AS(p.cellOf(7), DomainMismatch);
}

TEST_CASE("subjectMatter: defining clauses") {
    KripkeModel m = threeWorlds();
    CHECK(subjectMatter(m, Formula::top()) == Partition::trivial(3));
    CHECK(subjectMatter(m, parse("p")) == mk({{0, 1}, {2}}));
    CHECK(subjectMatter(m, parse("~p")) == subjectMatter(m, parse("p")));
    // Intersections of the p-split and the q-split.
    CHECK(subjectMatter(m, parse("p & q")) == mk({{0}, {1}, {2}}));
    CHECK(subjectMatter(m, parse("p | q")) == subjectMatter(m, parse("p & q")));
    CHECK_THROWS_AS(subjectMatter(m, parse("# p")), LayeringError);
    CHECK_THROWS_AS(subjectMatter(m, parse("I p")), LayeringError);
}

TEST_CASE("subjectMatter: two-world atomic split") {
    LoadResult res = loadModel(R"({
      "worlds": ["w1", "w2"], "relation": [["w1","w1"],["w2","w2"]],
      "atoms": ["p"], "valuation": {"p": ["w1"]},
      "problems": ["a"], "fusion": {}, "solves": {},
      "assignment": {"w1":"a","w2":"a"}
    })");
    REQUIRE(res.ok());
    CHECK(subjectMatter(res.model, parse("p")) == mk({{0}, {1}}));
}

TEST_CASE("smParthood") {
    Partition coarse = mk({{0, 1}, {2}});
    Partition fine = mk({{0}, {1}, {2}});
    CHECK(smParthood(coarse, coarse));
    CHECK(smParthood(coarse, fine));
    CHECK_FALSE(smParthood(fine, coarse));
    CHECK_THROWS_AS(smParthood(coarse, mk({{0, 1}})), DomainMismatch);
}

TEST_CASE("smParthood is a preorder") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        Partition a = randomPartition(rng, 5);
        Partition b = randomPartition(rng, 5);
        Partition c = randomPartition(rng, 5);
        CHECK(smParthood(a, a));
        if (smParthood(a, b) && smParthood(b, c)) CHECK(smParthood(a, c));
    }
}

TEST_CASE("isPartialSolution") {
    Partition q = mk({{0, 1}, {2}});
    CHECK(isPartialSolution({0, 1}, q));    // a cell
    CHECK(isPartialSolution({0, 1, 2}, q)); // the whole domain
    CHECK(isPartialSolution({}, q));        // the empty union
    CHECK_FALSE(isPartialSolution({0}, q));
    CHECK_THROWS_AS(isPartialSolution({9}, q), DomainMismatch);
}

TEST_CASE("bgIntends basics") {
    KripkeModel m = threeWorlds();
    Partition q = mk({{0}, {1}, {2}});
    CHECK(bgIntends(m, {0}, q, Formula::top()));
    CHECK(bgIntends(m, {0}, Partition::trivial(3), Formula::top()));
    CHECK_THROWS_AS(bgIntends(m, {}, q, Formula::top()), EmptyConativeSet);
    CHECK_THROWS_AS(bgIntends(m, {0}, mk({{0}, {1}}), Formula::top()),
                    DomainMismatch);
    // con outside the extension blocks intention.
    CHECK_FALSE(bgIntends(m, {2}, q, parse("p")));
    CHECK(bgIntends(m, {0, 1}, q, parse("p")));
}

TEST_CASE("both partition accounts are blind to coextensional atoms") {
    KripkeModel m = loadData("/models/hyperintensional_witness.json");
    Partition q = piOfProblem(m, "a");
    const std::vector<std::uint32_t> con = {0};
    CHECK(bgIntends(m, con, q, parse("p")) == bgIntends(m, con, q, parse("q")));
    CHECK(bgIntendsFirstProposal(m, con, q, parse("p")) ==
          bgIntendsFirstProposal(m, con, q, parse("q")));
    // The semilattice semantics does separate them on the same model.
    CHECK(eval(m, "w", parse("I p")));
    CHECK_FALSE(eval(m, "w", parse("I q")));
}

TEST_CASE("bgIntendsFirstProposal basics") {
    KripkeModel m = threeWorlds();
    Partition q = mk({{0, 1}, {2}});
    CHECK(bgIntendsFirstProposal(m, {0}, q, Formula::top()));  // [[T]] = W
    CHECK(bgIntendsFirstProposal(m, {0, 1}, q, parse("p")));   // [[p]] is a cell
    CHECK_FALSE(bgIntendsFirstProposal(m, {0}, q, parse("p & q")));  // {w1} is no union
}

TEST_CASE("piOfProblem") {
    KripkeModel m = threeWorlds();
    // a solves only p; worlds agree on p iff both or neither satisfy it.
    CHECK(piOfProblem(m, "a") == mk({{0, 1}, {2}}));
    CHECK_THROWS_AS(piOfProblem(m, "zz"), UnknownProblem);

    // A problem solving no atoms yields the trivial partition.
    LoadResult res = loadModel(R"({
      "worlds": ["w1", "w2", "w3"],
      "relation": [["w1","w1"],["w2","w2"],["w3","w3"]],
      "atoms": ["p"], "valuation": {"p": ["w1"]},
      "problems": ["a", "b"], "fusion": {"a|b": "b"},
      "solves": {"p": ["b"]},
      "assignment": {"w1":"a","w2":"a","w3":"a"}
    })");
    REQUIRE(res.ok());
    CHECK(piOfProblem(res.model, "a") == Partition::trivial(3));
    CHECK(piOfProblem(res.model, "b") == mk({{0}, {1, 2}}));
}

TEST_CASE("parthood gap witness: same partitions, incomparable problems") {
    KripkeModel m = loadData("/models/extensional_parthood_gap.json");
    Partition pa = piOfProblem(m, "a");
    Partition pb = piOfProblem(m, "b");
    CHECK(pa == pb);
    CHECK(smParthood(pa, pb));
    CHECK_FALSE(leq(m.problems, "a", "b"));
    CHECK_FALSE(leq(m.problems, "b", "a"));
}

TEST_CASE("parthood transfers to the agreement partitions") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 60; ++trial) {
        KripkeModel m = testgen::randomValidModel(rng);
        const std::uint32_t n = static_cast<std::uint32_t>(m.problems.size());
        for (std::uint32_t a = 0; a < n; ++a) {
            Partition pa = piOfProblemIdx(m, a);
            for (std::uint32_t b = 0; b < n; ++b) {
                if (m.problems.leqIdx(a, b)) {
                    CHECK(smParthood(pa, piOfProblemIdx(m, b)));
                }
            }
        }
    }
}

TEST_CASE("partition intention is closed under coextensional atoms") {
    // Forcing V(q) := V(p) makes both partition accounts agree on p and q,
    // whatever the conative set and decision problem.
    std::mt19937_64 rng(65);
    for (int trial = 0; trial < 60; ++trial) {
        KripkeModel m = testgen::randomValidModel(rng);
        m.valuation["q"] = m.valuation["p"];
        REQUIRE(validateModel(m).empty());
        const std::uint32_t n = static_cast<std::uint32_t>(m.worlds.size());
        std::uniform_int_distribution<std::uint32_t> pickWorld(0, n - 1);
        std::vector<std::uint32_t> con = {pickWorld(rng)};
        Partition q = piOfProblemIdx(m, m.assignment[con[0]]);
        CHECK(bgIntends(m, con, q, parse("p")) == bgIntends(m, con, q, parse("q")));
        CHECK(bgIntendsFirstProposal(m, con, q, parse("p")) ==
              bgIntendsFirstProposal(m, con, q, parse("q")));
    }
}

TEST_CASE("subject matters are partitions and extensions are cell unions") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 80; ++trial) {
        KripkeModel m = testgen::randomValidModel(rng);
        for (int k = 0; k < 6; ++k) {
            Formula f = testgen::randomCore(rng, 4);
            Partition sm = subjectMatter(m, f);
            CHECK(sm.domain().size() == m.worlds.size());
            CHECK(isPartialSolution(extensionIdx(m, f), sm));
            CHECK(isPartialSolution(extensionIdx(m, Formula::neg(f)), sm));
        }
    }
}

TEST_CASE("solved formulas are defined on the problem's partition") {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 60; ++trial) {
        KripkeModel m = testgen::randomValidModel(rng);
        const std::uint32_t n = static_cast<std::uint32_t>(m.problems.size());
        for (int k = 0; k < 6; ++k) {
            Formula f = testgen::randomCore(rng, 3);
            std::vector<bool> s = solutionSet(m.problems, f);
            for (std::uint32_t a = 0; a < n; ++a) {
                if (s[a]) {
                    CHECK(smParthood(subjectMatter(m, f), piOfProblemIdx(m, a)));
                }
            }
        }
    }
}
