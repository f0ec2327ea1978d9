#include "intentlog/partition.hpp"

#include <algorithm>
#include <set>

#include "intentlog/errors.hpp"

namespace intentlog {

Partition Partition::fromCells(std::vector<Cell> cells) {
    Partition p;
    std::set<std::uint32_t> seen;
    for (Cell& c : cells) {
        if (c.empty()) throw Error("partition: empty cell");
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::uint32_t w : c) {
            if (!seen.insert(w).second) {
                throw Error("partition: cells overlap at " + std::to_string(w));
            }
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.front() < b.front(); });
    p.cells_ = std::move(cells);
    p.domain_.assign(seen.begin(), seen.end());
    return p;
}

Partition Partition::discrete(std::uint32_t domainSize) {
    std::vector<Cell> cells;
    for (std::uint32_t w = 0; w < domainSize; ++w) cells.push_back({w});
    return fromCells(std::move(cells));
}

Partition Partition::trivial(std::uint32_t domainSize) {
    Cell all;
    for (std::uint32_t w = 0; w < domainSize; ++w) all.push_back(w);
    return fromCells({std::move(all)});
}

std::size_t Partition::cellOf(std::uint32_t w) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (std::binary_search(cells_[i].begin(), cells_[i].end(), w)) return i;
    }
    throw DomainMismatch("world " + std::to_string(w) + " not in partition domain");
}

namespace {

std::vector<std::uint32_t> intersect(const Partition::Cell& a, const Partition::Cell& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

Partition combine(const Partition& l, const Partition& r) {
    std::vector<Partition::Cell> cells;
    for (const auto& x : l.cells()) {
        for (const auto& y : r.cells()) {
            auto cell = intersect(x, y);
            if (!cell.empty()) cells.push_back(std::move(cell));
        }
    }
    return Partition::fromCells(std::move(cells));
}

}  // namespace

Partition subjectMatter(const KripkeModel& m, const Formula& core) {
    const std::uint32_t n = static_cast<std::uint32_t>(m.worlds.size());
    switch (core.kind()) {
        case Formula::Kind::Top:
            return Partition::trivial(n);
        case Formula::Kind::Atom: {
            std::vector<std::uint32_t> in = extensionIdx(m, core);
            std::vector<std::uint32_t> out;
            for (std::uint32_t w = 0; w < n; ++w) {
                if (!std::binary_search(in.begin(), in.end(), w)) out.push_back(w);
            }
            std::vector<Partition::Cell> cells;
            if (!in.empty()) cells.push_back(std::move(in));
            if (!out.empty()) cells.push_back(std::move(out));
            return Partition::fromCells(std::move(cells));
        }
        case Formula::Kind::Not:
            return subjectMatter(m, core.child());
        case Formula::Kind::Or:
        case Formula::Kind::And:
            return combine(subjectMatter(m, core.left()),
                           subjectMatter(m, core.right()));
        case Formula::Kind::Nec:
        case Formula::Kind::Intend:
            throw LayeringError("subject matter is defined on core formulas only");
    }
    return Partition::trivial(n);
}

bool smParthood(const Partition& part, const Partition& whole) {
    if (part.domain() != whole.domain()) {
        throw DomainMismatch("partitions range over different world sets");
    }
    // Each cell of `part` must be exactly covered by cells of `whole`:
    // every whole-cell meeting it must be contained in it.
    for (const auto& x : part.cells()) {
        for (const auto& y : whole.cells()) {
            auto common = intersect(x, y);
            if (!common.empty() && common.size() != y.size()) return false;
        }
    }
    return true;
}

bool isPartialSolution(const std::vector<std::uint32_t>& worldSet, const Partition& q) {
    std::vector<std::uint32_t> ws = worldSet;
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    if (!std::includes(q.domain().begin(), q.domain().end(), ws.begin(), ws.end())) {
        throw DomainMismatch("world set is not a subset of the partition domain");
    }
    for (const auto& cell : q.cells()) {
        std::size_t hit = 0;
        for (std::uint32_t w : cell) {
            if (std::binary_search(ws.begin(), ws.end(), w)) ++hit;
        }
        if (hit != 0 && hit != cell.size()) return false;
    }
    return true;
}

namespace {

void checkConAndProblem(const KripkeModel& m, const std::vector<std::uint32_t>& con,
                        const Partition& q) {
    if (con.empty()) throw EmptyConativeSet();
    for (std::uint32_t w : con) {
        if (w >= m.worlds.size()) {
            throw DomainMismatch("conative world out of range");
        }
    }
    if (q.domain().size() != m.worlds.size()) {
        throw DomainMismatch("decision problem does not partition the model's worlds");
    }
}

bool conInside(const std::vector<std::uint32_t>& con,
               const std::vector<std::uint32_t>& ext) {
    for (std::uint32_t w : con) {
        if (!std::binary_search(ext.begin(), ext.end(), w)) return false;
    }
    return true;
}

}  // namespace

bool bgIntends(const KripkeModel& m, const std::vector<std::uint32_t>& con,
               const Partition& q, const Formula& core) {
    checkConAndProblem(m, con, q);
    if (!core.isCore()) throw LayeringError("partition intention takes core formulas");
    std::vector<std::uint32_t> ext = extensionIdx(m, core);
    if (!conInside(con, ext)) return false;
    return smParthood(subjectMatter(m, core), q);
}

bool bgIntendsFirstProposal(const KripkeModel& m,
                            const std::vector<std::uint32_t>& con,
                            const Partition& q, const Formula& core) {
    checkConAndProblem(m, con, q);
    if (!core.isCore()) throw LayeringError("partition intention takes core formulas");
    std::vector<std::uint32_t> ext = extensionIdx(m, core);
    if (!conInside(con, ext)) return false;
    return isPartialSolution(ext, q);
}

Partition piOfProblemIdx(const KripkeModel& m, std::uint32_t problem) {
    if (problem >= m.problems.size()) {
        throw UnknownProblem(std::to_string(problem));
    }
    // Atoms the problem solves, restricted to the model's declared atoms.
    std::vector<const std::vector<std::uint32_t>*> relevant;
    for (const std::string& atom : m.atoms) {
        auto it = m.problems.solvesAtoms.find(atom);
        if (it == m.problems.solvesAtoms.end()) continue;
        if (std::binary_search(it->second.begin(), it->second.end(), problem)) {
            auto vit = m.valuation.find(atom);
            static const std::vector<std::uint32_t> kEmpty;
            relevant.push_back(vit == m.valuation.end() ? &kEmpty : &vit->second);
        }
    }
    const std::uint32_t n = static_cast<std::uint32_t>(m.worlds.size());
    // Group worlds by their truth pattern on the relevant atoms.
    std::map<std::vector<bool>, Partition::Cell> groups;
    for (std::uint32_t w = 0; w < n; ++w) {
        std::vector<bool> pattern;
        pattern.reserve(relevant.size());
        for (const auto* ext : relevant) {
            pattern.push_back(std::binary_search(ext->begin(), ext->end(), w));
        }
        groups[pattern].push_back(w);
    }
    std::vector<Partition::Cell> cells;
    for (auto& [pattern, cell] : groups) cells.push_back(std::move(cell));
    return Partition::fromCells(std::move(cells));
}

Partition piOfProblem(const KripkeModel& m, std::string_view problem) {
    auto i = m.problems.problemIndex(problem);
    if (!i) throw UnknownProblem(std::string(problem));
    return piOfProblemIdx(m, *i);
}

}  // namespace intentlog
