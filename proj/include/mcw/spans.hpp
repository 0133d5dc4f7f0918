#pragma once

#include "mcw/multicat.hpp"

namespace mcw {

/// An arrow of Span(M) from X to Y: a loose leg into X and a tight leg
/// into Y sharing the apex family, which is the pullback of Y along the
/// tight base.
struct SpanArrow {
    ObjFamily src;      // X
    ObjFamily tgt;      // Y
    FinMap tight_base;  // apex index -> Y index; apex family = pullback of Y
    LooseArrow loose;   // apex family -> X

    ObjFamily apex() const { return loose.dom(); }
    void check(const Multicat& m) const;

    auto operator<=>(const SpanArrow&) const = default;
};

std::string describe(const SpanArrow& s);

/// Relabels the apex onto a canonical index set, minimizing the encoding
/// over all admissible relabelings; two spans are equal in Span(M) iff
/// their canonical forms compare equal.
SpanArrow canonicalize_span(const Multicat& m, const SpanArrow& s);

SpanArrow identity_span(const Multicat& m, const ObjFamily& x);

/// s2 after s1, by pulling the loose base of s2 back along the tight base
/// of s1 and lifting through the discrete fibration; the result is in
/// canonical form.
SpanArrow compose_spans(const Multicat& m, const SpanArrow& s2, const SpanArrow& s1);

/// The witness data of a product of X along f, with the three
/// characterization flags.
struct ProductWitness {
    ObjFamily x;
    FinMap f;  // I -> J
    ObjFamily p;
    LooseArrow pi;                // f*P -> X, vertical
    std::optional<LooseArrow> u;  // X -> P over f
    bool algebraic = false;
    bool universal = false;
    bool representable = false;
};

/// The unique-cell factorization property of (P, pi) against every
/// bounded test pullback.
bool is_universal_product(const Multicat& m, const ObjFamily& x, const FinMap& f,
                          const ObjFamily& p, const LooseArrow& pi, std::size_t bound);

std::optional<ProductWitness> find_universal_product(const Multicat& m, const ObjFamily& x,
                                                     const FinMap& f, std::size_t bound);

/// Universal products at every (X, f) in range; the loose part of Span(M)
/// is then an opfibration. Violations list the failing instances.
Report spanmap_is_opfibration(const Multicat& m, std::size_t bound);

/// Direct opcartesianness of the product span in Span(M), checked against
/// mediating spans with bounded apexes. Used to cross-check the
/// factorization criterion on sampled instances.
bool product_span_is_opcartesian(const Multicat& m, const ProductWitness& w, std::size_t bound);

}  // namespace mcw
