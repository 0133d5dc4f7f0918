#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcw/errors.hpp"

namespace mcw {

using Token = std::string;

/// A finite set of opaque string tokens, kept sorted so that equal sets
/// compare equal structurally.
class FinSet {
  public:
    FinSet() = default;
    explicit FinSet(std::vector<Token> elements);

    /// The set {"1", ..., "n"}. Sizes are capped at 9 so that the
    /// lexicographic order of the tokens agrees with the numeric one.
    static FinSet canonical(std::size_t n);

    const std::vector<Token>& elements() const& { return elems_; }
    std::vector<Token> elements() && { return std::move(elems_); }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(const Token& t) const;

    auto operator<=>(const FinSet&) const = default;

  private:
    std::vector<Token> elems_;
};

/// A total mapping between finite sets, stored as an explicit table.
class FinMap {
  public:
    FinMap() = default;
    FinMap(FinSet dom, FinSet cod, std::map<Token, Token> table);

    static FinMap identity(const FinSet& s);
    static FinMap constant(const FinSet& dom, const FinSet& cod, const Token& value);

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }
    const std::map<Token, Token>& table() const { return table_; }

    const Token& operator()(const Token& t) const;

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
    FinMap inverse() const;

    /// Restriction to a subset of the domain (codomain unchanged).
    FinMap restrict(const FinSet& sub) const;

    auto operator<=>(const FinMap&) const = default;

  private:
    FinSet dom_;
    FinSet cod_;
    std::map<Token, Token> table_;
};

/// g after f.
FinMap compose(const FinMap& g, const FinMap& f);

/// { i in dom f | f(i) = j }.
FinSet fiber(const FinMap& f, const Token& j);

/// The canonical pullback square of two maps with a common codomain:
///
///     apex --top--> L
///      |            |
///     left        right
///      v            v
///      I --bottom-> K
///
/// apex = { "(i,l)" | bottom(i) = right(l) }, lexicographically ordered.
struct PbSquare {
    FinMap bottom;  // f : I -> K
    FinMap right;   // g : L -> K
    FinMap top;     // apex -> L
    FinMap left;    // apex -> I
    FinSet apex;

    bool commutes() const;
};

Token pair_token(const Token& i, const Token& l);

PbSquare pullback(const FinMap& f, const FinMap& g);

/// Tagged disjoint union of maps; tokens of the k-th summand become "k:t".
/// The empty list yields the empty map.
FinMap sum(const std::vector<FinMap>& maps);
FinSet sum_set(const std::vector<FinSet>& sets);
Token sum_token(std::size_t k, const Token& t);

/// The diagonal dom f -> apex(pullback(f, f)), i |-> "(i,i)".
FinMap diagonal(const FinMap& f);

/// A map whose fibers carry chosen total orders.
struct OrderedMap {
    FinMap base;
    std::map<Token, std::vector<Token>> fiber_orders;  // one list per cod token

    void check() const;
    auto operator<=>(const OrderedMap&) const = default;
};

/// A map with a chosen section: base(section(j)) = j.
struct SectionedMap {
    FinMap base;
    FinMap section;

    void check() const;
    auto operator<=>(const SectionedMap&) const = default;
};

// Enumeration helpers used throughout the bounded checks.
std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod);
std::vector<FinMap> all_bijections(const FinSet& dom, const FinSet& cod);
std::vector<std::vector<Token>> all_orders(const FinSet& s);

/// The order-preserving bijection onto the canonical set of the same size.
FinMap canonical_relabel(const FinSet& s);

}  // namespace mcw
