#include "intentlog/problems.hpp"

#include <algorithm>
#include <tuple>

#include "intentlog/errors.hpp"

namespace intentlog {

std::string Violation::format() const {
    std::string out = law;
    if (!witnesses.empty()) {
        out += " [";
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            if (i) out += ", ";
            out += witnesses[i];
        }
        out += "]";
    }
    if (!detail.empty()) {
        out += ": ";
        out += detail;
    }
    return out;
}

std::optional<std::uint32_t> ProblemsModel::problemIndex(std::string_view name) const {
    for (std::uint32_t i = 0; i < problems.size(); ++i) {
        if (problems[i] == name) return i;
    }
    return std::nullopt;
}

std::uint32_t ProblemsModel::fuseIdx(std::uint32_t a, std::uint32_t b) const {
    return fusion[a * problems.size() + b];
}

bool ProblemsModel::leqIdx(std::uint32_t a, std::uint32_t b) const {
    return fuseIdx(a, b) == b;
}

bool ProblemsModel::atomSolvedByIdx(const std::string& atom, std::uint32_t a) const {
    auto it = solvesAtoms.find(atom);
    if (it == solvesAtoms.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), a);
}

ProblemsModel makeProblemsModel(
    std::vector<std::string> problems,
    const std::vector<std::tuple<std::string, std::string, std::string>>& fusionPairs,
    const std::map<std::string, std::vector<std::string>>& solves) {
    ProblemsModel pm;
    pm.problems = std::move(problems);
    const std::size_t n = pm.problems.size();
    pm.fusion.assign(n * n, ProblemsModel::kUnset);

    auto idx = [&](const std::string& name) -> std::uint32_t {
        auto i = pm.problemIndex(name);
        if (!i) throw FormatError("fusion/solves references unknown problem '" + name + "'");
        return *i;
    };

    // Idempotent entries are defaulted; explicit ones may override (and are
    // then caught by validate if inconsistent).
    for (std::uint32_t i = 0; i < n; ++i) pm.fusion[i * n + i] = i;

    for (const auto& [a, b, c] : fusionPairs) {
        std::uint32_t ia = idx(a), ib = idx(b), ic = idx(c);
        for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}}) {
            std::uint32_t& slot = pm.fusion[x * n + y];
            if (slot != ProblemsModel::kUnset && slot != ic && x != y) {
                throw FormatError("conflicting fusion entries for pair '" + a +
                                  "|" + b + "'");
            }
            if (x == y && ic != x) {
                // Explicit non-idempotent diagonal entry: keep it so that
                // validate can report the idempotence violation.
                slot = ic;
            } else if (slot == ProblemsModel::kUnset) {
                slot = ic;
            }
        }
    }

    for (const auto& [atom, names] : solves) {
        std::vector<std::uint32_t> ids;
        ids.reserve(names.size());
        for (const auto& name : names) ids.push_back(idx(name));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        pm.solvesAtoms[atom] = std::move(ids);
    }
    return pm;
}

std::vector<Violation> validate(const ProblemsModel& pm) {
    std::vector<Violation> out;
    const std::size_t n = pm.problems.size();
    const auto& name = pm.problems;

    if (n == 0) {
        out.push_back({"problems-nonempty", {}, "the problem set is empty"});
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (name[i] == name[j]) {
                out.push_back({"problem-uniqueness", {name[i]}, "duplicate problem id"});
            }
        }
    }

    if (pm.fusion.size() != n * n) {
        out.push_back({"fusion-totality", {}, "fusion table has wrong size"});
        return out;  // the pointwise checks below would be meaningless
    }
    bool total = true;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t v = pm.fusion[i * n + j];
            if (v == ProblemsModel::kUnset) {
                out.push_back({"fusion-totality",
                               {name[i], name[j]},
                               "no entry for this pair"});
                total = false;
            } else if (v >= n) {
                out.push_back({"fusion-range", {name[i], name[j]}, "entry out of range"});
                total = false;
            }
        }
    }
    if (!total) return out;

    for (std::uint32_t i = 0; i < n; ++i) {
        if (pm.fuseIdx(i, i) != i) {
            out.push_back({"fusion-idempotence",
                           {name[i]},
                           name[i] + "+" + name[i] + " = " + name[pm.fuseIdx(i, i)]});
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < i; ++j) {
            if (pm.fuseIdx(i, j) != pm.fuseIdx(j, i)) {
                out.push_back({"fusion-commutativity",
                               {name[i], name[j]},
                               "the two orders disagree"});
            }
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t k = 0; k < n; ++k) {
                std::uint32_t lhs = pm.fuseIdx(pm.fuseIdx(i, j), k);
                std::uint32_t rhs = pm.fuseIdx(i, pm.fuseIdx(j, k));
                if (lhs != rhs) {
                    out.push_back({"fusion-associativity",
                                   {name[i], name[j], name[k]},
                                   "(" + name[i] + "+" + name[j] + ")+" + name[k] +
                                       " = " + name[lhs] + " but " + name[i] + "+(" +
                                       name[j] + "+" + name[k] + ") = " + name[rhs]});
                }
            }
        }
    }
    if (!out.empty()) return out;  // upward closure presumes a semilattice

    for (const auto& [atom, set] : pm.solvesAtoms) {
        for (std::uint32_t a : set) {
            if (a >= n) {
                out.push_back({"solves-range", {atom}, "problem index out of range"});
                continue;
            }
            for (std::uint32_t b = 0; b < n; ++b) {
                if (pm.leqIdx(a, b) &&
                    !std::binary_search(set.begin(), set.end(), b)) {
                    out.push_back({"upward-closure",
                                   {atom, name[a], name[b]},
                                   name[a] + " solves " + atom + " and " + name[a] +
                                       " <= " + name[b] + " but " + name[b] +
                                       " does not"});
                }
            }
        }
    }
    return out;
}

bool leq(const ProblemsModel& pm, std::string_view a, std::string_view b) {
    auto ia = pm.problemIndex(a);
    if (!ia) throw UnknownProblem(std::string(a));
    auto ib = pm.problemIndex(b);
    if (!ib) throw UnknownProblem(std::string(b));
    return pm.leqIdx(*ia, *ib);
}

std::string fuseAll(const ProblemsModel& pm, const std::vector<std::string>& set) {
    if (set.empty()) throw EmptyFusion();
    auto acc = pm.problemIndex(set.front());
    if (!acc) throw UnknownProblem(set.front());
    std::uint32_t cur = *acc;
    for (std::size_t i = 1; i < set.size(); ++i) {
        auto next = pm.problemIndex(set[i]);
        if (!next) throw UnknownProblem(set[i]);
        cur = pm.fuseIdx(cur, *next);
    }
    return pm.problems[cur];
}

std::vector<bool> solutionSet(const ProblemsModel& pm, const Formula& core) {
    const std::size_t n = pm.problems.size();
    switch (core.kind()) {
        case Formula::Kind::Top:
            return std::vector<bool>(n, true);
        case Formula::Kind::Atom: {
            std::vector<bool> out(n, false);
            auto it = pm.solvesAtoms.find(core.atomName());
            if (it != pm.solvesAtoms.end()) {
                for (std::uint32_t a : it->second) out[a] = true;
            }
            return out;
        }
        case Formula::Kind::Not:
            return solutionSet(pm, core.child());
        case Formula::Kind::Or: {
            std::vector<bool> l = solutionSet(pm, core.left());
            std::vector<bool> r = solutionSet(pm, core.right());
            for (std::size_t i = 0; i < n; ++i) l[i] = l[i] && r[i];
            return l;
        }
        case Formula::Kind::And: {
            std::vector<bool> l = solutionSet(pm, core.left());
            std::vector<bool> r = solutionSet(pm, core.right());
            std::vector<bool> out(n, false);
            for (std::uint32_t a = 0; a < n; ++a) {
                if (!l[a]) continue;
                for (std::uint32_t b = 0; b < n; ++b) {
                    if (r[b]) out[pm.fuseIdx(a, b)] = true;
                }
            }
            return out;
        }
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            throw LayeringError("solution sets are defined on core formulas only");
    }
    return {};
}

bool solvesRecursive(const ProblemsModel& pm, std::string_view a, const Formula& core) {
    auto ia = pm.problemIndex(a);
    if (!ia) throw UnknownProblem(std::string(a));
    return solutionSet(pm, core)[*ia];
}

bool solvesFastIdx(const ProblemsModel& pm, std::uint32_t a, const Formula& core) {
    if (!core.isCore()) {
        throw LayeringError("solution sets are defined on core formulas only");
    }
    for (const std::string& p : vars(core)) {
        if (!pm.atomSolvedByIdx(p, a)) return false;
    }
    return true;  // vacuously true when the formula has no atoms
}

bool solvesFast(const ProblemsModel& pm, std::string_view a, const Formula& core) {
    auto ia = pm.problemIndex(a);
    if (!ia) throw UnknownProblem(std::string(a));
    return solvesFastIdx(pm, *ia, core);
}

void closeSolvesUpward(ProblemsModel& pm) {
    const std::size_t n = pm.problems.size();
    for (auto& [atom, set] : pm.solvesAtoms) {
        std::vector<bool> in(n, false);
        for (std::uint32_t a : set) {
            if (a < n) in[a] = true;
        }
        for (std::uint32_t a : set) {
            if (a >= n) continue;
            for (std::uint32_t b = 0; b < n; ++b) {
                if (pm.leqIdx(a, b)) in[b] = true;
            }
        }
        std::vector<std::uint32_t> closed;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (in[i]) closed.push_back(i);
        }
        set = std::move(closed);
    }
}

}  // namespace intentlog
