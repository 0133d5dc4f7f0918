#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mcw/fincat.hpp"
#include "mcw/multicat.hpp"

namespace mcw {

/// A finite commutative monoid given by its addition table.
struct CommMonoid {
    FinSet carrier;
    std::map<std::pair<Token, Token>, Token> add;
    Token zero;

    const Token& plus(const Token& a, const Token& b) const;
    Token sum(const std::vector<Token>& xs) const;
    void check() const;  // associative, commutative, unital

    auto operator<=>(const CommMonoid&) const = default;
};

/// A finite rig: two compatible monoid structures with distributivity and
/// an absorbing zero.
struct Rig {
    FinSet elements;
    std::map<std::pair<Token, Token>, Token> add;
    Token zero;
    std::map<std::pair<Token, Token>, Token> mul;
    Token one;

    const Token& plus(const Token& a, const Token& b) const;
    const Token& times(const Token& a, const Token& b) const;
    void check() const;
    CommMonoid additive() const;
    /// The one-object category of the multiplicative monoid.
    FinCategory multiplicative_category() const;
};

Rig rig_zmod(std::size_t n);  // Z/n with the usual + and *
CommMonoid cmon_zmod(std::size_t n);
CommMonoid cmon_bool_or();  // the 2-element idempotent monoid ({0,1}, max)

// ---- built-in multicategories ----

/// The terminal symmetric multicategory: one object, one arrow per family.
MulticatPtr terminal_multicat();

/// The terminal unary multicategory U (one object, one unary arrow).
MulticatPtr unary_theory();

/// The associative-operad multicategory T: arrows over I are the total
/// orders on I.
MulticatPtr tot_multicat();

/// The pointing multicategory: arrows over I are the elements of I.
MulticatPtr sec_multicat();

/// The cocartesian multicategory of a category: arrows are families of
/// concurrent arrows.
MulticatPtr from_category(FinCategory c);

/// The discrete multicategory of a commutative monoid: colors are elements
/// and the unique arrow out of a family targets its sum.
MulticatPtr from_comm_monoid(CommMonoid mon);

/// The one-object multicategory of a rig: arrows are families of elements,
/// composed multiplicatively.
MulticatPtr from_rig_multicat(const Rig& r);

/// Recovers the commutative monoid from a discrete multicategory (the
/// converse of from_comm_monoid); throws if the loose part is not a
/// discrete opfibration on the needed instances.
CommMonoid extract_comm_monoid(const Multicat& m, std::size_t bound);

/// The sub-multicategory of finite sets on named carriers: arrows from a
/// family are all functions out of the product of the carriers.
MulticatPtr finset_multicat(std::map<Token, FinSet> carriers);

/// Product-tuple bookkeeping of the finite-sets multicategory, shared with
/// the model checker. Tuples are assignments index token -> carrier element.
std::vector<std::map<Token, Token>> product_tuples(const std::map<Token, FinSet>& carriers,
                                                   const ObjFamily& fam);
Token tuple_token(const std::map<Token, Token>& entries);

// Introspection of minted arrow payloads; null when the multicategory is
// not of the respective kind.
const FinCategory* category_of(const Multicat& m);
const std::map<Token, Token>* category_payload(const Multicat& m, const MultiArrow& a);
const std::map<Token, FinSet>* carriers_of(const Multicat& m);
const std::map<Token, Token>* fn_table(const Multicat& m, const MultiArrow& a);
const CommMonoid* monoid_of(const Multicat& m);
/// Mints an arrow of a from_category multicategory from a family of
/// category arrows.
MultiArrow mint_category_arrow(const Multicat& m, const ObjFamily& dom, const Token& cod,
                               std::map<Token, Token> entries);
/// Mints an arrow of a finset multicategory from a function table.
MultiArrow mint_function_arrow(const Multicat& m, const ObjFamily& dom, const Token& cod,
                               std::map<Token, Token> table);

// ---- table-backed multicategories ----

struct TableData {
    FinSet objects;
    BaseKind base = BaseKind::Pb;
    std::size_t bound = 3;
    /// Partial tables skip the totality check; a missing entry then raises
    /// BoundExceeded at lookup time.
    bool partial = false;
    struct Stored {
        ObjFamily dom;  // canonical index
        Token cod;
        std::vector<Token> order;
    };
    std::map<Token, Stored> arrows;
    std::map<Token, Token> identities;  // object -> unary arrow id over {"1"}
    // (arrow, images of a canonical permutation) -> arrow
    std::map<std::pair<Token, std::vector<Token>>, Token> symmetry;
    // (outer arrow, inner arrows listed by canonical position) -> composite
    std::map<std::pair<Token, std::vector<Token>>, Token> compose;
};

class TableMulticat : public Multicat {
  public:
    explicit TableMulticat(TableData data);

    BaseKind base() const override { return data_.base; }
    const FinSet& objects() const override { return data_.objects; }
    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override;
    MultiArrow identity(const Token& obj, const Token& index_token) const override;
    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override;
    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override;
    std::string describe() const override;

    const TableData& data() const { return data_; }
    std::size_t table_bound() const { return data_.bound; }

  private:
    MultiArrow derive(const Token& stored, const FinSet& index) const;
    TableData data_;
};

/// Materializes any multicategory as a table up to the bound. Arrow ids are
/// renamed deterministically.
TableData export_table(const Multicat& m, std::size_t bound);

}  // namespace mcw
