#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcw/finset.hpp"

namespace mcw {

/// A finite category: explicit arrow set, identity assignment and a total
/// composition table over composable pairs.
class FinCategory {
  public:
    FinCategory() = default;
    FinCategory(FinSet objects,
                std::map<Token, std::pair<Token, Token>> arrows,  // id -> (src, tgt)
                std::map<Token, Token> identities,                // obj -> arrow id
                std::map<std::pair<Token, Token>, Token> composition);  // (g, f) -> g.f

    const FinSet& objects() const { return objects_; }
    const std::map<Token, std::pair<Token, Token>>& arrows() const { return arrows_; }

    bool has_arrow(const Token& a) const { return arrows_.count(a) != 0; }
    const Token& src(const Token& arrow) const;
    const Token& tgt(const Token& arrow) const;
    const Token& identity(const Token& obj) const;
    /// g after f.
    const Token& compose(const Token& g, const Token& f) const;

    std::vector<Token> hom(const Token& a, const Token& b) const;
    std::vector<Token> arrows_into(const Token& b) const;

    /// Exhaustively checks shape, unit and associativity laws.
    void check() const;

    auto operator<=>(const FinCategory&) const = default;

  private:
    FinSet objects_;
    std::map<Token, std::pair<Token, Token>> arrows_;
    std::map<Token, Token> identities_;
    std::map<std::pair<Token, Token>, Token> composition_;
};

struct FinFunctor {
    FinCategory src;
    FinCategory tgt;
    std::map<Token, Token> object_map;
    std::map<Token, Token> arrow_map;

    const Token& on_object(const Token& o) const;
    const Token& on_arrow(const Token& a) const;

    /// Checks totality and preservation of sources, targets, identities
    /// and composition.
    void check() const;
};

FinFunctor identity_functor(const FinCategory& c);

/// True iff every arrow of the target into the image of an object has
/// exactly one lift with that object as target.
bool is_discrete_fibration(const FinFunctor& f);

// Token encodings for the bounded family construction. Arrow tokens carry
// the target family, which positions and components alone do not determine.
Token fam_object_token(const std::vector<Token>& values);
Token fam_arrow_token(const std::vector<std::size_t>& positions,
                      const std::vector<Token>& components, const Token& target_object);

/// The full subcategory of Fam(C) on families indexed by canonical sets of
/// size <= arity_bound. Objects are value lists, arrows are a reindexing
/// map together with a componentwise arrow family.
FinCategory fam(const FinCategory& c, std::size_t arity_bound);

/// Fam applied to a functor, restricted to the same bound.
FinFunctor fam(const FinFunctor& f, std::size_t arity_bound);

/// A declared finite-sum cocone: an object together with injections from
/// its summands.
struct SumWitness {
    Token sum_obj;
    std::vector<std::pair<Token, Token>> injections;  // (summand, injection arrow)
};

/// Checks the universal property of the cocone by enumeration.
void check_sum_witness(const FinCategory& d, const SumWitness& w);

/// The canonical concatenation sums of fam(C, arity_bound), one witness per
/// ordered pair of families that still fits the bound.
std::vector<SumWitness> fam_sum_witnesses(const FinCategory& c, std::size_t arity_bound);

/// Objects whose hom functor sends every witnessed sum to a sum of hom
/// sets (checked as an injection-induced partition).
std::vector<Token> connected_objects(const FinCategory& d,
                                     const std::vector<SumWitness>& witnesses);

}  // namespace mcw
