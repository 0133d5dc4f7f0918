#pragma once

#include "mcw/multicat.hpp"

namespace mcw {

/// True iff the loose part is a discrete opfibration within the bound:
/// exactly one arrow out of every family over every map, equivalently one
/// connected arrow out of every family in total.
bool is_algebra(const Multicat& m, std::size_t bound);

/// Unique-factorization test for a loose arrow within the bound: every
/// loose arrow out of u's domain over a composite base factors uniquely
/// through u.
bool is_opcartesian(const Multicat& m, const LooseArrow& u, std::size_t bound);

/// Searches for an opcartesian arrow out of x over f that stays
/// opcartesian under every reindexing pullback in range.
std::optional<LooseArrow> find_opcartesian(const Multicat& m, const ObjFamily& x,
                                           const FinMap& f, std::size_t bound);

/// Per-(family, map) existence of stably opcartesian arrows; passes iff
/// every instance in range has one.
Report is_representable(const Multicat& m, std::size_t bound);

/// The multicategory of isomorphism classes of the loose part: one arrow
/// out of a class family onto the class of its opcartesian target. For a
/// representable input the result is an algebra.
MulticatPtr burnside(MulticatPtr m, std::size_t bound);

/// A chosen order assignment factoring the multicategory through Tot.
struct PlainLift {
    bool rigid = true;
    /// an arrow fixed by a nontrivial relabeling, when not rigid
    std::optional<std::pair<MultiArrow, FinMap>> stabilizer_witness;
    /// order per arrow over a canonical family in range, when rigid
    std::map<MultiArrow, std::vector<Token>> orders;
    /// the chosen orders glue along every composition in range
    bool glue_ok = false;

    bool lift_found() const { return rigid && glue_ok; }
};

/// Decides rigidity within the bound and, when the symmetric action is
/// free, searches for an order assignment compatible with composition.
PlainLift plain_structure(const Multicat& m, std::size_t bound);

/// The order carried by an arbitrary-index arrow under a lift's
/// equivariant extension.
std::vector<Token> lift_order(const Multicat& m, const PlainLift& lift, const MultiArrow& a);

}  // namespace mcw
