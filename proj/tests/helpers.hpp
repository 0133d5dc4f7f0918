#pragma once

#include "mcw/cartesian.hpp"
#include "mcw/multicat.hpp"

namespace mcw::testing {

// the meet-semilattice multicategory of the two-element chain: an arrow
// (x_i) -> c exists iff the meet of the x_i is below c
class MeetChain final : public Multicat {
  public:
    MeetChain() : objs_(std::vector<Token>{"0", "1"}) {}
    const FinSet& objects() const override { return objs_; }
    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (!objs_.contains(cod)) throw StructuralError("meet: unknown object");
        Token meet = "1";
        for (const auto& i : dom.index.elements())
            if (dom.at(i) == "0") meet = "0";
        if (cod == "1" || meet == "0") return {MultiArrow{"le", dom, cod, {}}};
        return {};
    }
    MultiArrow identity(const Token& obj, const Token& t) const override {
        return MultiArrow{"le", ObjFamily::single(t, obj), obj, {}};
    }
    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return MultiArrow{"le", a.dom.reindex(sigma), a.cod, {}};
    }
    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        std::vector<Token> idx;
        std::map<Token, Token> assign;
        for (const auto& [j, a] : inner)
            for (const auto& i : a.dom.index.elements()) {
                idx.push_back(i);
                assign[i] = a.dom.at(i);
            }
        return MultiArrow{"le", ObjFamily(FinSet(std::move(idx)), std::move(assign)),
                          outer.cod, {}};
    }
    std::string describe() const override { return "meet-chain"; }

  private:
    FinSet objs_;
};

inline FinCategory discrete2_category() {
    return FinCategory(FinSet({"A", "B"}),
                       {{"iA", {"A", "A"}}, {"iB", {"B", "B"}}},
                       {{"A", "iA"}, {"B", "iB"}},
                       {{{"iA", "iA"}, "iA"}, {{"iB", "iB"}, "iB"}});
}

// two zero objects: every hom-set is a single arrow, which is also the zero
inline std::pair<FinCategory, CMonEnrichment> zero_pair() {
    std::vector<Token> objs{"Z1", "Z2"};
    std::map<Token, std::pair<Token, Token>> arrows;
    std::map<Token, Token> ids;
    std::map<std::pair<Token, Token>, Token> comp;
    auto name = [](const Token& a, const Token& b) { return "z_" + a + "_" + b; };
    for (const auto& a : objs)
        for (const auto& b : objs) arrows[name(a, b)] = {a, b};
    for (const auto& a : objs) ids[a] = name(a, a);
    for (const auto& a : objs)
        for (const auto& b : objs)
            for (const auto& c : objs) comp[{name(b, c), name(a, b)}] = name(a, c);
    FinCategory cat(FinSet(objs), std::move(arrows), std::move(ids), std::move(comp));
    CMonEnrichment e;
    for (const auto& a : objs)
        for (const auto& b : objs) {
            CommMonoid m;
            m.carrier = FinSet({name(a, b)});
            m.zero = name(a, b);
            m.add[{name(a, b), name(a, b)}] = name(a, b);
            e.homs[{a, b}] = std::move(m);
        }
    return {cat, e};
}

}  // namespace mcw::testing
