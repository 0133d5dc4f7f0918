#pragma once

#include <optional>

#include "mcw/multicat.hpp"

namespace mcw {

/// A loose arrow of one of the built-in base double props: a mapping
/// carrying the decoration of its kind (fiber orders for Tot, a section
/// for Sec, nothing for Pb and Bij).
struct DecoratedMap {
    FinMap base;
    std::optional<std::map<Token, std::vector<Token>>> fiber_orders;
    std::optional<FinMap> section;

    auto operator<=>(const DecoratedMap&) const = default;
};

/// Computational presentation of a base double prop: admissibility of
/// loose arrows, strict loose composition, cell transport and finite sums.
/// The double prop itself is never enumerated.
class BaseOracle {
  public:
    explicit BaseOracle(BaseKind kind) : kind_(kind) {}

    BaseKind kind() const { return kind_; }

    bool admissible(const DecoratedMap& d) const;
    DecoratedMap identity(const FinSet& s) const;
    /// g after f, gluing decorations.
    DecoratedMap compose(const DecoratedMap& g, const DecoratedMap& f) const;
    /// Transports a loose arrow over cell.bottom backwards along the cell;
    /// the result lies over cell.top.
    DecoratedMap transport(const DecoratedMap& d, const LooseCell& cell) const;
    /// Injection-tagged disjoint union.
    DecoratedMap sum(const std::vector<DecoratedMap>& ds) const;

  private:
    BaseKind kind_;
};

BaseOracle oracle_pb();
BaseOracle oracle_bij();
BaseOracle oracle_tot();
BaseOracle oracle_sec();

/// One of the built-in sum-preserving discrete fibrations between base
/// double props; translation forgets the decoration.
struct BaseMorphism {
    BaseKind src;
    BaseKind tgt;

    DecoratedMap translate(const DecoratedMap& d) const;
};

BaseMorphism morphism_tot_to_pb();
BaseMorphism morphism_bij_to_pb();
BaseMorphism morphism_identity(BaseKind k);

/// The pullback multicategory along a base morphism: for Tot -> Pb this
/// attaches every total order to every arrow, for Bij -> Pb it restricts
/// to the unary arrows, and the identity morphism returns its input.
MulticatPtr base_change(MulticatPtr m, const BaseMorphism& f);

}  // namespace mcw
