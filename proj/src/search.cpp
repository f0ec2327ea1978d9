#include "intentlog/search.hpp"

#include <algorithm>
#include <set>

#include "intentlog/errors.hpp"

namespace intentlog {

namespace {

constexpr int kMaxEnumWorlds = 6;
constexpr int kMaxEnumGenerators = 4;
constexpr std::size_t kMaxEnumAtoms = 6;

std::string generatorSubsetName(std::uint32_t mask) {
    std::string name;
    for (int bit = 0; bit < 26; ++bit) {
        if (mask & (1u << bit)) name += static_cast<char>('a' + bit);
    }
    return name;
}

// The powerset-of-generators semilattice: problem index i is the nonempty
// subset with mask i + 1; fusion is union.
ProblemsModel powersetProblems(int generators) {
    ProblemsModel pm;
    const std::uint32_t count = (1u << generators) - 1;
    for (std::uint32_t mask = 1; mask <= count; ++mask) {
        pm.problems.push_back(generatorSubsetName(mask));
    }
    pm.fusion.assign(static_cast<std::size_t>(count) * count, 0);
    for (std::uint32_t i = 0; i < count; ++i) {
        for (std::uint32_t j = 0; j < count; ++j) {
            pm.fusion[i * count + j] = ((i + 1) | (j + 1)) - 1;
        }
    }
    return pm;
}

// Subsets of the problem set (as bitmasks over problem indices) that are
// upward closed under the subset order of generator masks, ascending.
std::vector<std::uint32_t> upwardClosedSets(std::uint32_t problemCount) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < (1u << problemCount); ++s) {
        bool closed = true;
        for (std::uint32_t i = 0; i < problemCount && closed; ++i) {
            if (!(s & (1u << i))) continue;
            std::uint32_t maskI = i + 1;
            for (std::uint32_t j = 0; j < problemCount; ++j) {
                std::uint32_t maskJ = j + 1;
                if ((maskI & maskJ) == maskI && !(s & (1u << j))) {
                    closed = false;
                    break;
                }
            }
        }
        if (closed) out.push_back(s);
    }
    return out;
}

std::vector<std::uint32_t> maskToIndices(std::uint32_t mask) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; mask; ++i, mask >>= 1) {
        if (mask & 1u) out.push_back(i);
    }
    return out;
}

}  // namespace

std::optional<Countermodel> findCountermodel(const Formula& phi, const SearchBounds& b) {
    std::vector<std::string> atoms = b.atoms.empty() ? vars(phi) : b.atoms;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

    if (b.maxWorlds < 1 || b.maxGenerators < 1) {
        throw Error("search bounds must allow at least one world and one generator");
    }
    if (b.maxWorlds > kMaxEnumWorlds || b.maxGenerators > kMaxEnumGenerators ||
        atoms.size() > kMaxEnumAtoms) {
        throw ResourceLimit("enumerable search space", b.budget);
    }

    std::uint64_t steps = 0;
    for (int n = 1; n <= b.maxWorlds; ++n) {
        const std::uint32_t worldCount = static_cast<std::uint32_t>(n);
        std::vector<std::string> worlds;
        for (std::uint32_t w = 0; w < worldCount; ++w) {
            worlds.push_back("w" + std::to_string(w + 1));
        }
        for (int g = 1; g <= b.maxGenerators; ++g) {
            ProblemsModel pm = powersetProblems(g);
            const std::uint32_t problemCount = static_cast<std::uint32_t>(pm.size());
            const std::vector<std::uint32_t> upsets = upwardClosedSets(problemCount);

            std::uint64_t valSpace = 1;
            for (std::size_t i = 0; i < atoms.size() * worldCount; ++i) valSpace *= 2;
            const std::uint64_t succChoices = (1u << worldCount) - 1;
            std::uint64_t relSpace = 1;
            for (std::uint32_t w = 0; w < worldCount; ++w) relSpace *= succChoices;
            std::uint64_t solvesSpace = 1;
            for (std::size_t i = 0; i < atoms.size(); ++i) solvesSpace *= upsets.size();
            std::uint64_t assignSpace = 1;
            for (std::uint32_t w = 0; w < worldCount; ++w) assignSpace *= problemCount;

            KripkeModel m;
            m.worlds = worlds;
            m.atoms = atoms;
            m.problems = pm;

            for (std::uint64_t valIdx = 0; valIdx < valSpace; ++valIdx) {
                m.valuation.clear();
                for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
                    std::vector<std::uint32_t> ws;
                    for (std::uint32_t w = 0; w < worldCount; ++w) {
                        if ((valIdx >> (ai * worldCount + w)) & 1u) ws.push_back(w);
                    }
                    m.valuation[atoms[ai]] = std::move(ws);
                }
                for (std::uint64_t relIdx = 0; relIdx < relSpace; ++relIdx) {
                    m.successors.assign(worldCount, {});
                    std::uint64_t rel = relIdx;
                    for (std::uint32_t w = 0; w < worldCount; ++w) {
                        std::uint32_t succMask =
                            static_cast<std::uint32_t>(rel % succChoices) + 1;
                        rel /= succChoices;
                        m.successors[w] = maskToIndices(succMask);
                    }
                    for (std::uint64_t solIdx = 0; solIdx < solvesSpace; ++solIdx) {
                        m.problems.solvesAtoms.clear();
                        std::uint64_t sol = solIdx;
                        for (const std::string& atom : atoms) {
                            std::uint32_t upset = upsets[sol % upsets.size()];
                            sol /= upsets.size();
                            m.problems.solvesAtoms[atom] = maskToIndices(upset);
                        }
                        for (std::uint64_t asgIdx = 0; asgIdx < assignSpace; ++asgIdx) {
                            if (++steps > b.budget) {
                                throw ResourceLimit("countermodel search steps", b.budget);
                            }
                            m.assignment.assign(worldCount, 0);
                            std::uint64_t asg = asgIdx;
                            for (std::uint32_t w = 0; w < worldCount; ++w) {
                                m.assignment[w] =
                                    static_cast<std::uint32_t>(asg % problemCount);
                                asg /= problemCount;
                            }
                            std::vector<std::uint32_t> sat = extensionIdx(m, phi);
                            if (sat.size() == worldCount) continue;
                            std::uint32_t w = 0;
                            while (std::binary_search(sat.begin(), sat.end(), w)) ++w;
                            // Re-check through the public path before returning.
                            if (!validateModel(m).empty() || eval(m, m.worlds[w], phi)) {
                                throw Error("countermodel search produced a bad witness");
                            }
                            return Countermodel{m, m.worlds[w]};
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Countermodel> findCountermodelRandom(const Formula& phi,
                                                   const SearchBounds& b,
                                                   std::uint64_t samples,
                                                   bool mooreFusion) {
    RandomModelParams params;
    params.maxWorlds = b.maxWorlds;
    params.maxGenerators = b.maxGenerators;
    params.atoms = b.atoms.empty() ? vars(phi) : b.atoms;
    params.mooreFusion = mooreFusion;
    std::mt19937_64 rng(b.seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        KripkeModel m = randomModel(rng, params);
        std::vector<std::uint32_t> sat = extensionIdx(m, phi);
        if (sat.size() == m.worlds.size()) continue;
        std::uint32_t w = 0;
        while (std::binary_search(sat.begin(), sat.end(), w)) ++w;
        if (!validateModel(m).empty() || eval(m, m.worlds[w], phi)) {
            throw Error("countermodel search produced a bad witness");
        }
        std::string world = m.worlds[w];
        return Countermodel{std::move(m), std::move(world)};
    }
    return std::nullopt;
}

bool ClosureReport::allRefuted() const {
    return !principles.empty() &&
           std::all_of(principles.begin(), principles.end(),
                       [](const PrincipleRefutation& p) { return p.witness.has_value(); });
}

ClosureReport refuteClosurePrinciples(const SearchBounds& b) {
    SearchBounds bounds = b;
    if (bounds.atoms.empty()) bounds.atoms = {"p", "q"};
    if (bounds.atoms.size() < 2) {
        throw Error("closure-principle refutation needs at least two atoms");
    }
    std::sort(bounds.atoms.begin(), bounds.atoms.end());
    Formula p = Formula::atom(bounds.atoms[0]);
    Formula q = Formula::atom(bounds.atoms[1]);
    Formula tautP = Formula::disj(p, Formula::neg(p));
    Formula tautQ = Formula::disj(q, Formula::neg(q));

    ClosureReport report;
    auto add = [&](std::string id, std::string note, Formula instance) {
        PrincipleRefutation r;
        r.id = std::move(id);
        r.premiseNote = std::move(note);
        r.instance = instance;
        r.witness = findCountermodel(instance, bounds);
        report.principles.push_back(std::move(r));
    };

    add("closure-under-logical-entailment",
        "rule form: the premise 'p -> (p | q)' is a propositional validity "
        "(truth-table checked); the conclusion instance below fails",
        Formula::impl(Formula::intend(p), Formula::intend(Formula::disj(p, q))));

    add("closure-under-necessary-entailment",
        "axiom form, instantiated with atoms",
        Formula::impl(Formula::nec(Formula::impl(p, q)),
                      Formula::impl(Formula::intend(p), Formula::intend(q))));

    add("closure-under-logical-equivalence",
        "rule form: the premise '(p | ~p) <-> (q | ~q)' is a propositional "
        "validity (truth-table checked); the conclusion instance below fails. "
        "The same search bounds also refute the atomic variant in which the "
        "equivalence is forced by giving p and q one valuation (see the "
        "necessary-equivalence witness).",
        Formula::impl(Formula::intend(tautP), Formula::intend(tautQ)));

    add("closure-under-necessary-equivalence",
        "axiom form, instantiated with atoms",
        Formula::impl(Formula::nec(Formula::iff(p, q)),
                      Formula::iff(Formula::intend(p), Formula::intend(q))));

    return report;
}

// ── Random valid models ─────────────────────────────────────────────────────

namespace {

std::uint32_t uniformInt(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

// A random intersection-closed family over `generators` elements, always
// containing the full set.  Fusion maps a pair to the least family member
// containing their union.
std::vector<std::uint32_t> randomMooreFamily(std::mt19937_64& rng, int generators) {
    const std::uint32_t full = (1u << generators) - 1;
    std::set<std::uint32_t> family{full};
    std::uint32_t extras = uniformInt(rng, 1, 1u << generators);
    for (std::uint32_t i = 0; i < extras; ++i) {
        family.insert(uniformInt(rng, 0, full));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> members(family.begin(), family.end());
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (family.insert(members[i] & members[j]).second) grew = true;
            }
        }
    }
    return {family.begin(), family.end()};
}

}  // namespace

ProblemsModel randomProblemsModel(std::mt19937_64& rng, const RandomModelParams& p) {
    const int g = static_cast<int>(uniformInt(rng, 1, static_cast<std::uint32_t>(p.maxGenerators)));
    ProblemsModel pm;
    if (!p.mooreFusion) {
        pm = powersetProblems(g);
    } else {
        std::vector<std::uint32_t> family = randomMooreFamily(rng, g);
        const std::uint32_t count = static_cast<std::uint32_t>(family.size());
        for (std::uint32_t mask : family) {
            pm.problems.push_back(mask == 0 ? "o" : generatorSubsetName(mask));
        }
        pm.fusion.assign(static_cast<std::size_t>(count) * count, 0);
        for (std::uint32_t i = 0; i < count; ++i) {
            for (std::uint32_t j = 0; j < count; ++j) {
                std::uint32_t join = family.back();  // full set is the largest mask
                for (std::uint32_t k = 0; k < count; ++k) {
                    std::uint32_t m = family[k];
                    if ((m & (family[i] | family[j])) == (family[i] | family[j])) {
                        join &= m;
                    }
                }
                auto it = std::lower_bound(family.begin(), family.end(), join);
                pm.fusion[i * count + j] =
                    static_cast<std::uint32_t>(it - family.begin());
            }
        }
    }
    const std::uint32_t count = static_cast<std::uint32_t>(pm.size());
    for (const std::string& atom : p.atoms) {
        std::vector<std::uint32_t> seed;
        for (std::uint32_t a = 0; a < count; ++a) {
            if (uniformInt(rng, 0, 2) == 0) seed.push_back(a);
        }
        pm.solvesAtoms[atom] = std::move(seed);
    }
    closeSolvesUpward(pm);
    return pm;
}

KripkeModel randomModel(std::mt19937_64& rng, const RandomModelParams& p) {
    KripkeModel m;
    m.problems = randomProblemsModel(rng, p);
    const std::uint32_t n = uniformInt(rng, 1, static_cast<std::uint32_t>(p.maxWorlds));
    for (std::uint32_t w = 0; w < n; ++w) m.worlds.push_back("w" + std::to_string(w + 1));
    m.atoms = p.atoms;
    std::sort(m.atoms.begin(), m.atoms.end());
    for (const std::string& atom : m.atoms) {
        std::vector<std::uint32_t> ws;
        for (std::uint32_t w = 0; w < n; ++w) {
            if (uniformInt(rng, 0, 1)) ws.push_back(w);
        }
        m.valuation[atom] = std::move(ws);
    }
    m.successors.assign(n, {});
    for (std::uint32_t w = 0; w < n; ++w) {
        std::uint32_t mask = uniformInt(rng, 1, (1u << n) - 1);
        m.successors[w] = maskToIndices(mask);
    }
    const std::uint32_t problemCount = static_cast<std::uint32_t>(m.problems.size());
    for (std::uint32_t w = 0; w < n; ++w) {
        m.assignment.push_back(uniformInt(rng, 0, problemCount - 1));
    }
    return m;
}

}  // namespace intentlog
