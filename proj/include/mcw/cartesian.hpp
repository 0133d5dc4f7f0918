#pragma once

#include <functional>

#include "mcw/constructions.hpp"
#include "mcw/multicat.hpp"

namespace mcw {

/// Payload of a connected arrow of the enhanced-span multicategory out of
/// X over I: a tight leg g : K -> I together with a connected arrow of the
/// underlying multicategory out of the pullback family g*X.
struct EspanData {
    FinMap tight;
    MultiArrow inner;

    auto operator<=>(const EspanData&) const = default;
};

/// The free cartesian multicategory on M: arrows are enhanced spans,
/// composed by pulling back the loose base against the tight leg and
/// lifting through the discrete fibration. Arrows are kept in a canonical
/// form (the apex relabeled onto a canonical set, minimizing the
/// encoding), which realizes the quotient by apex isomorphism.
class EspanMulticat final : public Multicat {
  public:
    EspanMulticat(MulticatPtr inner, std::size_t apex_bound);

    const FinSet& objects() const override { return inner_->objects(); }
    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override;
    MultiArrow identity(const Token& obj, const Token& index_token) const override;
    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override;
    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override;
    std::string describe() const override;

    const Multicat& inner() const { return *inner_; }
    MulticatPtr inner_ptr() const { return inner_; }
    std::size_t apex_bound() const { return apex_bound_; }

    /// Mints the canonical-form arrow carrying the given enhanced span.
    MultiArrow mint(const ObjFamily& dom, const Token& cod, EspanData data) const;
    const EspanData& payload(const MultiArrow& a) const;

  private:
    MulticatPtr inner_;
    std::size_t apex_bound_;
    mutable std::map<MultiArrow, EspanData> cache_;
    mutable std::map<std::pair<ObjFamily, Token>, std::vector<MultiArrow>> arrows_cache_;
    mutable std::map<std::tuple<ObjFamily, Token, FinMap, MultiArrow>, MultiArrow> mint_cache_;
    mutable std::map<std::pair<MultiArrow, std::map<Token, MultiArrow>>, MultiArrow>
        compose_cache_;
    mutable std::map<std::pair<MultiArrow, FinMap>, MultiArrow> reindex_cache_;
};

MulticatPtr espan(MulticatPtr m, std::size_t apex_bound);

// ---- the monad structure ----

/// eta : M -> espan(M), pairing an arrow with the identity tight leg.
MultiArrow monad_eta(const EspanMulticat& tm, const MultiArrow& arrow);

/// mu : espan(espan(M)) -> espan(M), composing the recorded tight legs.
MultiArrow monad_mu(const EspanMulticat& tm, const EspanMulticat& ttm, const MultiArrow& arrow);

/// The espan functor on morphisms: maps the inner arrow of every enhanced
/// span through `f`.
MultiArrow espan_apply(const EspanMulticat& src, const EspanMulticat& tgt, const MultiArrow& a,
                       const std::function<MultiArrow(const MultiArrow&)>& f);

// ---- cartesian structures ----

/// Covariant reindexing data on a multicategory: the assignment
/// (alpha, f, target family) -> f_! alpha, keyed on the full triangle.
class CartStructure {
  public:
    virtual ~CartStructure() = default;
    virtual const Multicat& host() const = 0;
    virtual MulticatPtr host_ptr() const = 0;
    virtual MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                             const ObjFamily& target) const = 0;
    virtual std::string describe() const = 0;
};

using CartPtr = std::shared_ptr<const CartStructure>;

/// gamma with the precondition checks of the public operation.
MultiArrow covariant_reindex(const CartStructure& g, const MultiArrow& alpha, const FinMap& f,
                             const ObjFamily& target);

/// Covariant reindexing of a loose arrow over a commutative triangle
/// alpha.base = result_base . f, computed fiberwise.
LooseArrow gamma_loose(const CartStructure& g, const LooseArrow& alpha, const FinMap& f,
                       const FinMap& result_base, const ObjFamily& target);

/// An explicit gamma table over canonical instances; lookups relabel
/// through the canonical form.
class TableCartStructure final : public CartStructure {
  public:
    using Key = std::tuple<MultiArrow, FinMap, ObjFamily>;

    TableCartStructure(MulticatPtr host, std::map<Key, MultiArrow> entries);

    const Multicat& host() const override { return *host_; }
    MulticatPtr host_ptr() const override { return host_; }
    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override;
    std::string describe() const override { return "gamma table"; }

    const std::map<Key, MultiArrow>& entries() const { return entries_; }

  private:
    MulticatPtr host_;
    std::map<Key, MultiArrow> entries_;
};

/// Materializes any cartesian structure as a table over canonical
/// instances within the bound.
std::shared_ptr<TableCartStructure> export_gamma(const CartStructure& g, std::size_t bound);

/// Wraps a structure, overriding a single canonical entry; used to inject
/// faults in the test suites.
CartPtr corrupt_gamma(CartPtr inner, const TableCartStructure::Key& key, MultiArrow replacement);

/// The free cartesian structure on an enhanced-span multicategory:
/// covariant reindexing composes into the recorded tight leg.
CartPtr free_cart_structure(MulticatPtr espan_m);

/// For multicategories with at most one arrow per signature (the terminal
/// multicategory and friends): gamma picks the unique arrow.
CartPtr unique_arrow_cart_structure(MulticatPtr m);

/// The cartesian structure of the finite-sets multicategory: precompose
/// with variable duplication and deletion.
CartPtr finset_cart_structure(MulticatPtr finset_m);

// ---- commutative-monoid enrichments ----

/// An addition on every hom-set of a category.
struct CMonEnrichment {
    std::map<std::pair<Token, Token>, CommMonoid> homs;

    const CommMonoid& at(const Token& src, const Token& tgt) const;
    /// monoid laws per hom-set plus bilinearity of composition
    void check(const FinCategory& c) const;
};

/// The cartesian cocartesian multicategory of a CMon-enriched category:
/// covariant reindexing adds along fibers, inserting zeros on empty ones.
std::pair<MulticatPtr, CartPtr> from_cmon_enriched(FinCategory c, CMonEnrichment e);

/// One-object case: the multicategory of a rig with fiberwise sums.
std::pair<MulticatPtr, CartPtr> from_rig(const Rig& r);

/// Recovers the enrichment from a cartesian structure on a cocartesian
/// multicategory (the converse of from_cmon_enriched).
CMonEnrichment extract_enrichment(const CartStructure& g);

/// The free cartesian multicategory with its algebra structure.
std::pair<MulticatPtr, CartPtr> free_cartesian(MulticatPtr m, std::size_t apex_bound);

// ---- law suites ----

/// The four-law suite on connected instances: unit, functoriality,
/// Frobenius, Beck-Chevalley and tailing.
Report check_cartesian_laws(const CartStructure& g, std::size_t bound);

/// The algebra formulation: gamma is a morphism espan(host) -> host and
/// satisfies the unit and multiplication equations.
Report check_cartesian_algebra(const CartStructure& g, std::size_t bound);

/// Runs both formulations, asserts they agree, and merges the reports.
Report check_cartesian(const CartStructure& g, std::size_t bound);

// ---- models ----

/// A candidate strict model: a carrier per object and a function table per
/// canonical arrow.
struct ModelAssignment {
    std::map<Token, FinSet> carriers;
    std::map<Token, std::map<Token, Token>> arrow_tables;  // model_arrow_key -> tuple table
};

Token model_arrow_key(const MultiArrow& a);

/// Verifies the assignment is a morphism of cartesian multicategories into
/// the finite-sets multicategory on the candidate carriers.
Report check_model(const CartStructure& g, const ModelAssignment& model, std::size_t bound);

/// The tautological model of a finite-sets multicategory on its own
/// carriers, restricted to the bound; useful to build golden models.
ModelAssignment tautological_model(const Multicat& finset_m, std::size_t bound);

}  // namespace mcw
