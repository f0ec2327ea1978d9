// ============================================================================
// intentlog/partition.hpp — partition-based (subject-matter) semantics
// ============================================================================
//
// The rival account models a decision problem as a partition of the world
// set.  This module provides:
//
//   subjectMatter   the partition a core formula induces
//                     (sm(T) = {W}; sm(p) splits on p; sm(~f) = sm(f);
//                      sm(f&g) = sm(f|g) = pairwise cell intersections)
//   smParthood      partition parthood: every cell of the part is a union
//                     of cells of the whole
//   bgIntends       intention as "conative set inside the extension, and
//                     the formula's subject matter is part of the problem"
//   bgIntendsFirstProposal
//                   the simpler variant: the extension itself must be a
//                     union of cells (a partial solution)
//   piOfProblem     the extensional characterization of a semilattice
//                     problem: worlds share a cell iff they agree on every
//                     atom the problem solves
//
// Partitions are canonical (cells sorted by least member), so equality is
// structural.
// ============================================================================

#ifndef INTENTLOG_PARTITION_HPP
#define INTENTLOG_PARTITION_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "intentlog/formula.hpp"
#include "intentlog/kripke.hpp"

namespace intentlog {

class Partition {
public:
    using Cell = std::vector<std::uint32_t>;

    // Validates (nonempty, pairwise-disjoint cells) and canonicalizes.
    // Throws Error on a malformed cell family.
    static Partition fromCells(std::vector<Cell> cells);

    // The discrete partition {{0}, ..., {n-1}} and the trivial one {W}.
    static Partition discrete(std::uint32_t domainSize);
    static Partition trivial(std::uint32_t domainSize);

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    // Sorted union of all cells.
    const std::vector<std::uint32_t>& domain() const noexcept { return domain_; }
    // Index of the cell containing w; throws DomainMismatch if absent.
    std::size_t cellOf(std::uint32_t w) const;

    bool operator==(const Partition& other) const noexcept = default;

private:
    std::vector<Cell> cells_;
    std::vector<std::uint32_t> domain_;
};

// sm(phi) over the model's worlds.  Throws LayeringError on modal input.
Partition subjectMatter(const KripkeModel& m, const Formula& core);

// part ⊑ whole: every cell of `part` is a union of cells of `whole`.
// Throws DomainMismatch when the two range over different domains.
bool smParthood(const Partition& part, const Partition& whole);

// worldSet is a union of cells of q (the empty union counts).
bool isPartialSolution(const std::vector<std::uint32_t>& worldSet, const Partition& q);

// Intention per the partition account: con ⊆ [[phi]] and sm(phi) ⊑ q.
// `con` must be a nonempty subset of the model's worlds; q must partition
// exactly the model's worlds.
bool bgIntends(const KripkeModel& m, const std::vector<std::uint32_t>& con,
               const Partition& q, const Formula& core);

// First-proposal variant: con ⊆ [[phi]] and [[phi]] is a partial solution.
bool bgIntendsFirstProposal(const KripkeModel& m,
                            const std::vector<std::uint32_t>& con,
                            const Partition& q, const Formula& core);

// The agreement partition of a problem: u, v share a cell iff they agree on
// every declared atom the problem solves.  Throws UnknownProblem.
Partition piOfProblem(const KripkeModel& m, std::string_view problem);
Partition piOfProblemIdx(const KripkeModel& m, std::uint32_t problem);

}  // namespace intentlog

#endif  // INTENTLOG_PARTITION_HPP
