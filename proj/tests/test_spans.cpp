#include <doctest.h>

#include "mcw/constructions.hpp"
#include "mcw/spans.hpp"

using namespace mcw;

namespace {

FinCategory chain2() {
    std::map<Token, std::pair<Token, Token>> arrows{
        {"i0", {"0", "0"}}, {"i1", {"1", "1"}}, {"le", {"0", "1"}}};
    std::map<std::pair<Token, Token>, Token> comp{{{"i0", "i0"}, "i0"},
                                                  {{"i1", "i1"}, "i1"},
                                                  {{"le", "i0"}, "le"},
                                                  {{"i1", "le"}, "le"}};
    return FinCategory(FinSet({"0", "1"}), arrows, {{"0", "i0"}, {"1", "i1"}}, comp);
}

FinCategory discrete2() {
    return FinCategory(FinSet({"A", "B"}),
                       {{"iA", {"A", "A"}}, {"iB", {"B", "B"}}},
                       {{"A", "iA"}, {"B", "iB"}},
                       {{{"iA", "iA"}, "iA"}, {{"iB", "iB"}, "iB"}});
}

// the meet-semilattice multicategory of the two-element chain: an arrow
// (x_i) -> c exists iff min(x_i) <= c, i.e. not (all x_i = 1 and c = 0)
class MeetChain final : public Multicat {
  public:
    MeetChain() : objs_(std::vector<Token>{"0", "1"}) {}
    const FinSet& objects() const override { return objs_; }
    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (!objs_.contains(cod)) throw StructuralError("meet: unknown object");
        Token meet = "1";
        for (const auto& i : dom.index.elements())
            if (dom.at(i) == "0") meet = "0";
        if (meet == "0" && cod == "0") return {MultiArrow{"le", dom, cod, {}}};
        if (cod == "1") return {MultiArrow{"le", dom, cod, {}}};
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

}  // namespace

TEST_CASE("span category: units and associativity after canonicalization") {
    auto m = from_category(chain2());
    ObjFamily x(FinSet::canonical(2), {{"1", "0"}, {"2", "1"}});
    ObjFamily y(FinSet::canonical(1), {{"1", "1"}});

    // a nontrivial span x -> y
    FinMap tb = FinMap::constant(FinSet({"a"}), y.index, "1");
    ObjFamily apex = y.reindex(tb);
    auto looses = all_loose_into(*m, apex, FinMap::constant(FinSet({"a"}), x.index, "2"), x);
    REQUIRE(!looses.empty());
    SpanArrow s{x, y, tb, looses[0]};
    s.check(*m);
    auto sc = canonicalize_span(*m, s);

    CHECK(compose_spans(*m, sc, identity_span(*m, x)) == sc);
    CHECK(compose_spans(*m, identity_span(*m, y), sc) == sc);

    // canonicalization is idempotent
    CHECK(canonicalize_span(*m, sc) == sc);

    // associativity over a corpus of small spans
    MeetChain mc;
    ObjFamily one0 = ObjFamily::single("1", "0");
    std::vector<SpanArrow> corpus;
    for (std::size_t na = 0; na <= 2; ++na) {
        FinSet ai = FinSet::canonical(na);
        for (const auto& tb2 : all_maps(ai, one0.index)) {
            ObjFamily af = one0.reindex(tb2);
            for (const auto& lb : all_maps(ai, one0.index))
                for (const auto& lo : all_loose_into(mc, af, lb, one0))
                    corpus.push_back(canonicalize_span(mc, SpanArrow{one0, one0, tb2, lo}));
        }
    }
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (const auto& c : corpus) {
                auto lhs = compose_spans(mc, c, compose_spans(mc, b, a));
                auto rhs = compose_spans(mc, compose_spans(mc, c, b), a);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("universal products in the meet-semilattice multicategory") {
    MeetChain m;
    CHECK(validate(m, 2).passed());

    // product of (0, 1) along 2 -> 1 is the meet 0
    ObjFamily x(FinSet::canonical(2), {{"1", "0"}, {"2", "1"}});
    FinMap f = FinMap::constant(x.index, FinSet({"1"}), "1");
    auto w = find_universal_product(m, x, f, 2);
    REQUIRE(w.has_value());
    CHECK(w->p.at("1") == "0");
    CHECK(w->universal);

    // f = identity: the product is the family itself
    auto wid = find_universal_product(m, x, FinMap::identity(x.index), 2);
    REQUIRE(wid.has_value());
    CHECK(wid->p == x);

    // the whole loose span map is an opfibration
    CHECK(spanmap_is_opfibration(m, 2).passed());

    // direct opcartesianness of the found product spans (cross-check)
    CHECK(product_span_is_opcartesian(m, *w, 2));
}

TEST_CASE("no universal products for discrete cocartesian multicategories") {
    auto m = from_category(discrete2());
    ObjFamily x(FinSet::canonical(2), {{"1", "A"}, {"2", "B"}});
    FinMap f = FinMap::constant(x.index, FinSet({"1"}), "1");
    CHECK_FALSE(find_universal_product(*m, x, f, 2).has_value());
    auto r = spanmap_is_opfibration(*m, 2);
    CHECK_FALSE(r.passed());
    CHECK(!r.violations.empty());
}

TEST_CASE("terminal multicategory has all universal products") {
    CHECK(spanmap_is_opfibration(*terminal_multicat(), 2).passed());
}
