#pragma once

#include "mcw/cartesian.hpp"
#include "mcw/spans.hpp"

namespace mcw {

/// Both covariant-reindexing triangle equations of an algebraic product:
/// folding the witness pair reproduces the identity, and the diagonal
/// reindexing of the identity is the projection after the pulled-back
/// unit.
bool check_algebraic_product(const CartStructure& g, const ProductWitness& w);

std::optional<ProductWitness> find_algebraic_product(const CartStructure& g, const ObjFamily& x,
                                                     const FinMap& f, std::size_t bound);

/// Constructive directions of the product equivalence. Each verifies the
/// constructed data and throws TheoremViolation when the construction
/// cannot be completed on a valid input.
ProductWitness ap_to_up(const CartStructure& g, const ProductWitness& w, std::size_t bound);
LooseArrow ap_to_r(const CartStructure& g, const ProductWitness& w, std::size_t bound);
ProductWitness up_to_ap(const CartStructure& g, const ProductWitness& w, std::size_t bound);
ProductWitness r_to_ap(const CartStructure& g, const ObjFamily& x, const FinMap& f,
                       const LooseArrow& u, std::size_t bound);

struct EquivalenceRow {
    ObjFamily x;
    FinMap f;
    bool algebraic = false;
    bool universal = false;
    bool representable = false;

    bool agree() const { return algebraic == universal && universal == representable; }
};

struct EquivalenceReport {
    std::vector<EquivalenceRow> rows;
    Report report;
};

/// Runs the three independent detectors on every (family, map) in range
/// and reports any disagreement; the equivalence theorem makes agreement
/// an implementation invariant.
EquivalenceReport equivalence_report(const CartStructure& g, std::size_t bound);

}  // namespace mcw
