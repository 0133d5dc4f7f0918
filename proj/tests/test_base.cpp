#include <doctest.h>

#include "mcw/base.hpp"
#include "mcw/constructions.hpp"

using namespace mcw;

namespace {

FinMap fmap(std::vector<Token> dom, std::vector<Token> cod, std::map<Token, Token> t) {
    return FinMap(FinSet(std::move(dom)), FinSet(std::move(cod)), std::move(t));
}

std::vector<DecoratedMap> decorated_corpus(const BaseOracle& o, std::size_t max_size) {
    std::vector<DecoratedMap> result;
    for (std::size_t n = 0; n <= max_size; ++n)
        for (std::size_t m = 0; m <= max_size; ++m)
            for (const auto& f : all_maps(FinSet::canonical(n), FinSet::canonical(m))) {
                switch (o.kind()) {
                    case BaseKind::Pb:
                        result.push_back({f, std::nullopt, std::nullopt});
                        break;
                    case BaseKind::Bij:
                        if (f.is_bijective()) result.push_back({f, std::nullopt, std::nullopt});
                        break;
                    case BaseKind::Tot: {
                        // all decorations of f
                        std::vector<std::map<Token, std::vector<Token>>> decos{{}};
                        for (const auto& j : f.cod().elements()) {
                            std::vector<std::map<Token, std::vector<Token>>> next;
                            for (const auto& d : decos)
                                for (const auto& ord : all_orders(fiber(f, j))) {
                                    auto d2 = d;
                                    d2[j] = ord;
                                    next.push_back(std::move(d2));
                                }
                            decos = std::move(next);
                        }
                        for (auto& d : decos) result.push_back({f, std::move(d), std::nullopt});
                        break;
                    }
                    case BaseKind::Sec: {
                        if (!f.is_surjective()) break;
                        std::vector<std::map<Token, Token>> secs{{}};
                        for (const auto& j : f.cod().elements()) {
                            std::vector<std::map<Token, Token>> next;
                            for (const auto& s : secs)
                                for (const auto& i : fiber(f, j).elements()) {
                                    auto s2 = s;
                                    s2[j] = i;
                                    next.push_back(std::move(s2));
                                }
                            secs = std::move(next);
                        }
                        for (auto& s : secs)
                            result.push_back(
                                {f, std::nullopt, FinMap(f.cod(), f.dom(), std::move(s))});
                        break;
                    }
                }
            }
    return result;
}

}  // namespace

TEST_CASE("oracles: loose composition is strictly associative and unital") {
    for (auto oracle : {oracle_pb(), oracle_bij(), oracle_tot(), oracle_sec()}) {
        auto corpus = decorated_corpus(oracle, 2);
        for (const auto& f : corpus) {
            CHECK(oracle.admissible(f));
            CHECK(oracle.compose(f, oracle.identity(f.base.dom())) == f);
            CHECK(oracle.compose(oracle.identity(f.base.cod()), f) == f);
            for (const auto& g : corpus) {
                if (g.base.dom() != f.base.cod()) continue;
                for (const auto& h : corpus) {
                    if (h.base.dom() != g.base.cod()) continue;
                    CHECK(oracle.compose(h, oracle.compose(g, f)) ==
                          oracle.compose(oracle.compose(h, g), f));
                }
            }
        }
    }
}

TEST_CASE("tot oracle: gluing follows the outer fiber order") {
    // f : {a,b,c} -> {x,y}, a,b over x, c over y; outer g : {x,y} -> {*}
    auto f = fmap({"a", "b", "c"}, {"x", "y"}, {{"a", "x"}, {"b", "x"}, {"c", "y"}});
    DecoratedMap df{f, std::map<Token, std::vector<Token>>{{"x", {"a", "b"}}, {"y", {"c"}}},
                    std::nullopt};
    auto g = fmap({"x", "y"}, {"*"}, {{"x", "*"}, {"y", "*"}});
    DecoratedMap dg{g, std::map<Token, std::vector<Token>>{{"*", {"x", "y"}}}, std::nullopt};
    auto glued = oracle_tot().compose(dg, df);
    CHECK(glued.fiber_orders->at("*") == std::vector<Token>{"a", "b", "c"});

    DecoratedMap dg2{g, std::map<Token, std::vector<Token>>{{"*", {"y", "x"}}}, std::nullopt};
    CHECK(oracle_tot().compose(dg2, df).fiber_orders->at("*") ==
          std::vector<Token>{"c", "a", "b"});
}

TEST_CASE("oracles: cell transport commutes with pasting and preserves decorations") {
    for (auto oracle : {oracle_tot(), oracle_sec()}) {
        auto corpus = decorated_corpus(oracle, 2);
        for (const auto& d : corpus) {
            for (std::size_t nv = 0; nv <= 2; ++nv)
                for (const auto& v : all_maps(FinSet::canonical(nv), d.base.cod())) {
                    LooseCell cell = canonical_cell(d.base, v);
                    auto moved = oracle.transport(d, cell);
                    CHECK(oracle.admissible(moved));
                    if (oracle.kind() == BaseKind::Sec)
                        for (const auto& j : moved.base.cod().elements())
                            CHECK(moved.base((*moved.section)(j)) == j);
                    // pasting: transporting twice equals transporting along
                    // the pasted cell
                    for (const auto& w : all_maps(FinSet::canonical(1), v.dom())) {
                        LooseCell cell2 = canonical_cell(moved.base, w);
                        auto twice = oracle.transport(moved, cell2);
                        LooseCell pasted = canonical_cell(d.base, compose(v, w));
                        auto direct = oracle.transport(d, pasted);
                        // identical up to the canonical relabel of corners
                        CHECK(twice.base.dom().size() == direct.base.dom().size());
                        std::map<Token, Token> tab;
                        for (const auto& i : cell2.top.dom().elements())
                            tab[i] = pair_token(cell.left(cell2.left(i)), cell2.top(i));
                        FinMap phi(cell2.top.dom(), pasted.top.dom(), std::move(tab));
                        LooseCell relab =
                            bijective_cell(direct.base, phi, FinMap::identity(direct.base.cod()));
                        // direct transported along the relabeling equals twice
                        auto expect = oracle.transport(direct, relab);
                        CHECK(expect.base == compose(direct.base, phi));
                        if (oracle.kind() == BaseKind::Tot)
                            CHECK(expect.fiber_orders == twice.fiber_orders);
                        if (oracle.kind() == BaseKind::Sec)
                            CHECK(expect.section == twice.section);
                    }
                }
        }
    }
}

TEST_CASE("oracles: tagged sums compose sensibly") {
    auto f = fmap({"1"}, {"*"}, {{"1", "*"}});
    for (auto oracle : {oracle_pb(), oracle_tot(), oracle_sec()}) {
        DecoratedMap d = oracle.identity(f.dom());
        auto s = oracle.sum({d, d});
        CHECK(s.base.dom().size() == 2);
        CHECK(oracle.admissible(s));
    }
    CHECK(oracle_pb().sum({}).base.dom().empty());
}

TEST_CASE("base change along tot attaches every order") {
    auto m = from_category([] {
        std::map<Token, std::pair<Token, Token>> arrows{
            {"iA", {"A", "A"}}, {"iB", {"B", "B"}}, {"u", {"A", "B"}}};
        std::map<std::pair<Token, Token>, Token> comp{{{"iA", "iA"}, "iA"},
                                                      {{"iB", "iB"}, "iB"},
                                                      {{"u", "iA"}, "u"},
                                                      {{"iB", "u"}, "u"}};
        return FinCategory(FinSet({"A", "B"}), arrows, {{"A", "iA"}, {"B", "iB"}}, comp);
    }());
    auto tm = base_change(m, morphism_tot_to_pb());
    CHECK(tm->base() == BaseKind::Tot);
    CHECK(validate(*tm, 2).passed());

    // |I|!-fold multiplicity after attaching orders
    std::size_t fact[4] = {1, 1, 2, 6};
    for (std::size_t n = 0; n <= 3; ++n) {
        FinSet idx = FinSet::canonical(n);
        for (const auto& fam : all_families(*m, idx)) {
            CHECK(tm->arrows_from(fam).size() == fact[n] * m->arrows_from(fam).size());
        }
    }
}

TEST_CASE("base change along bij keeps exactly the unary arrows") {
    auto m = terminal_multicat();
    auto um = base_change(m, morphism_bij_to_pb());
    CHECK(um->base() == BaseKind::Bij);
    CHECK(validate(*um, 3).passed());
    CHECK(um->arrows_from(ObjFamily::single("1", "*")).size() == 1);
    CHECK(um->arrows_from(ObjFamily::constant(FinSet::canonical(2), "*")).empty());
}

TEST_CASE("base change along the identity is the identity") {
    auto m = terminal_multicat();
    CHECK(base_change(m, morphism_identity(BaseKind::Pb)) == m);
}

TEST_CASE("tot base change of the terminal multicategory matches the tot multicat") {
    auto t1 = base_change(terminal_multicat(), morphism_tot_to_pb());
    auto t2 = tot_multicat();
    ObjFamily fam = ObjFamily::constant(FinSet::canonical(3), "*");
    auto a1 = t1->arrows_from(fam);
    auto a2 = t2->arrows_from(fam);
    CHECK(a1.size() == a2.size());
    std::vector<std::vector<Token>> o1, o2;
    for (const auto& a : a1) o1.push_back(a.order);
    for (const auto& a : a2) o2.push_back(a.order);
    std::sort(o1.begin(), o1.end());
    std::sort(o2.begin(), o2.end());
    CHECK(o1 == o2);
}
