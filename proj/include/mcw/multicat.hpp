#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcw/finset.hpp"
#include "mcw/report.hpp"

namespace mcw {

enum class BaseKind { Pb, Bij, Tot, Sec };

std::string to_string(BaseKind k);
BaseKind base_kind_from_string(const std::string& s);

/// A finite family of objects: an index set and a total assignment into the
/// object set of a multicategory.
struct ObjFamily {
    FinSet index;
    std::map<Token, Token> assign;

    ObjFamily() = default;
    ObjFamily(FinSet index, std::map<Token, Token> assign);
    static ObjFamily constant(const FinSet& index, const Token& obj);
    static ObjFamily single(const Token& index_token, const Token& obj);

    const Token& at(const Token& i) const;
    ObjFamily restrict(const FinSet& sub) const;
    /// Precompose with a map sigma : I' -> index; the family over I'.
    ObjFamily reindex(const FinMap& sigma) const;

    auto operator<=>(const ObjFamily&) const = default;
};

/// A connected arrow: finite family domain, single-object codomain.
/// `order` is the fiber order decoration of Tot-based multicategories and
/// stays empty over the other bases.
struct MultiArrow {
    Token name;
    ObjFamily dom;
    Token cod;
    std::vector<Token> order;

    auto operator<=>(const MultiArrow&) const = default;
};

std::string describe(const ObjFamily& f);
std::string describe(const MultiArrow& a);
std::string describe(const FinMap& f);

/// A family of connected arrows indexed by the fibers of a base map; the
/// general loose arrow in connected normal form.
struct LooseArrow {
    FinMap base;                             // f : I -> J
    std::map<Token, MultiArrow> components;  // j -> arrow with dom.index = fiber(f, j)

    ObjFamily dom() const;
    ObjFamily cod() const;
    void check() const;

    auto operator<=>(const LooseArrow&) const = default;
};

std::string describe(const LooseArrow& a);

/// The multicategory interface: connected arrows plus the symmetric action
/// and connected composition. Implementations are immutable and enumerate
/// arrows on demand.
class Multicat {
  public:
    virtual ~Multicat() = default;

    virtual BaseKind base() const { return BaseKind::Pb; }
    virtual const FinSet& objects() const = 0;

    /// All connected arrows dom -> cod, deterministically ordered.
    virtual std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const = 0;
    std::vector<MultiArrow> arrows_from(const ObjFamily& dom) const;

    virtual MultiArrow identity(const Token& obj, const Token& index_token) const = 0;

    /// Contravariant reindexing along a bijection sigma : I' -> I,
    /// I = a.dom.index.
    virtual MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const = 0;

    /// Connected composition: `outer` out of a J-indexed family, `inner`
    /// one arrow per J-token with pairwise disjoint domains.
    virtual MultiArrow compose_conn(const MultiArrow& outer,
                                    const std::map<Token, MultiArrow>& inner) const = 0;

    virtual std::string describe() const = 0;

  protected:
    /// Shared precondition checks for compose_conn.
    void check_composable(const MultiArrow& outer,
                          const std::map<Token, MultiArrow>& inner) const;
};

using MulticatPtr = std::shared_ptr<const Multicat>;

// ---- derived loose-arrow operations ----

LooseArrow identity_loose(const Multicat& m, const ObjFamily& x);

/// Assembles a loose arrow from fiber components, checking the shapes.
LooseArrow make_loose(const FinMap& base, std::map<Token, MultiArrow> components);

/// g after f (f over I -> J, g over J -> K).
LooseArrow compose_loose(const Multicat& m, const LooseArrow& g, const LooseArrow& f);

/// Composes a connected arrow with a loose arrow into its domain family.
MultiArrow compose_conn_loose(const Multicat& m, const MultiArrow& outer,
                              const LooseArrow& inner);

/// A pullback cell used to reindex loose arrows:
///
///     I' --top--> J'
///      |           |
///     left       right
///      v           v
///      I --bottom-> J
///
struct LooseCell {
    FinMap top;
    FinMap left;
    FinMap right;
    FinMap bottom;
    /// set by the canonical constructors, which build pullbacks by
    /// construction; skips re-verification
    bool trusted = false;

    void check() const;  // commutation + pullback universal property
};

/// Contravariant reindexing of a loose arrow over `cell.bottom` along the
/// cell; the result lies over `cell.top`.
LooseArrow reindex_loose(const Multicat& m, const LooseArrow& w, const LooseCell& cell);

/// The canonical cell over w.base induced by a right leg v : J' -> J.
LooseCell canonical_cell(const FinMap& bottom, const FinMap& right);

/// Relabeling cell along domain/codomain bijections (a degenerate pullback).
LooseCell bijective_cell(const FinMap& bottom, const FinMap& dom_bij, const FinMap& cod_bij);

/// Composes an outer arrow over a canonical family with inner arrows
/// listed by canonical position, relabeling the inner domains onto
/// consecutive blocks of one canonical index set.
MultiArrow compose_blockwise(const Multicat& m, const MultiArrow& outer,
                             const std::vector<MultiArrow>& inner_by_position);

// ---- enumeration ----

std::vector<ObjFamily> all_families(const Multicat& m, const FinSet& index);
std::vector<ObjFamily> all_canonical_families(const Multicat& m, std::size_t max_size);
std::vector<LooseArrow> all_loose(const Multicat& m, const ObjFamily& dom, const FinMap& base);
/// Loose arrows out of `dom` over `base` whose codomain family is exactly `cod`.
std::vector<LooseArrow> all_loose_into(const Multicat& m, const ObjFamily& dom,
                                       const FinMap& base, const ObjFamily& cod);

// ---- validation ----

/// Exhaustive bounded check of the multicategory laws: units,
/// associativity, symmetry action functoriality, equivariance of
/// composition under pullback cells, and base-specific decoration laws.
Report validate(const Multicat& m, std::size_t bound);

}  // namespace mcw
