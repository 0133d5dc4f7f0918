#include <doctest.h>

#include <algorithm>

#include "mcw/cartesian.hpp"
#include "mcw/represent.hpp"

using namespace mcw;

namespace {

Rig rig_bool() {
    Rig r;
    r.elements = FinSet(std::vector<Token>{"0", "1"});
    r.zero = "0";
    r.one = "1";
    for (Token a : {"0", "1"})
        for (Token b : {"0", "1"}) {
            r.add[{a, b}] = (a == "1" || b == "1") ? "1" : "0";
            r.mul[{a, b}] = (a == "1" && b == "1") ? "1" : "0";
        }
    return r;
}

FinCategory parallel_pair() {
    std::map<Token, std::pair<Token, Token>> arrows{
        {"iA", {"A", "A"}}, {"iB", {"B", "B"}}, {"p", {"A", "B"}}, {"q", {"A", "B"}}};
    std::map<std::pair<Token, Token>, Token> comp{
        {{"iA", "iA"}, "iA"}, {{"iB", "iB"}, "iB"}, {{"p", "iA"}, "p"},
        {{"iB", "p"}, "p"},   {{"q", "iA"}, "q"},   {{"iB", "q"}, "q"}};
    return FinCategory(FinSet({"A", "B"}), arrows, {{"A", "iA"}, {"B", "iB"}}, comp);
}

std::size_t multisets_up_to(std::size_t set_size, std::size_t max_size) {
    // number of multisets of size <= max_size over a set of the given size
    std::size_t total = 0;
    for (std::size_t k = 0; k <= max_size; ++k) {
        // C(set_size + k - 1, k)
        std::size_t num = 1, den = 1;
        for (std::size_t j = 0; j < k; ++j) {
            num *= set_size + k - 1 - j;
            den *= j + 1;
        }
        total += (k == 0) ? 1 : num / den;
    }
    return total;
}

}  // namespace

TEST_CASE("espan of the terminal multicategory counts multiplicities") {
    auto tm = espan(terminal_multicat(), 3);
    ObjFamily one = ObjFamily::single("1", "*");
    // arrows out of a point are apex sizes 0..3
    CHECK(tm->arrows_from(one).size() == 4);
    // composition multiplies multiplicities: 2 . 3 = 6
    auto& es = dynamic_cast<const EspanMulticat&>(*tm);
    auto pick = [&](std::size_t k) {
        for (const auto& a : tm->arrows_from(one))
            if (es.payload(a).tight.dom().size() == k) return a;
        throw std::logic_error("missing multiplicity");
    };
    auto comp = tm->compose_conn(pick(2), {{"1", pick(3)}});
    CHECK(es.payload(comp).tight.dom().size() == 6);

    // arrows over a two-element family: multiplicity pairs within the bound
    ObjFamily two = ObjFamily::constant(FinSet::canonical(2), "*");
    CHECK(tm->arrows_from(two).size() == 10);  // k1 + k2 <= 3

    auto tm2 = espan(terminal_multicat(), 2);
    CHECK(validate(*tm2, 2).status != Report::Status::Fail);
}

TEST_CASE("espan embeds the original arrows along the unit") {
    auto m = from_category(parallel_pair());
    auto tm_ptr = std::make_shared<EspanMulticat>(m, 2);
    ObjFamily fam(FinSet::canonical(2), {{"1", "A"}, {"2", "A"}});
    for (const auto& alpha : m->arrows_from(fam)) {
        MultiArrow e = monad_eta(*tm_ptr, alpha);
        CHECK(tm_ptr->payload(e).inner.dom == alpha.dom);
        CHECK(e.dom == alpha.dom);
        CHECK(e.cod == alpha.cod);
    }
    // eta is injective on these arrows
    std::vector<MultiArrow> images;
    for (const auto& alpha : m->arrows_from(fam)) images.push_back(monad_eta(*tm_ptr, alpha));
    std::sort(images.begin(), images.end());
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
}

TEST_CASE("espan of the unary theory is the pointing multicategory") {
    auto tu = espan(unary_theory(), 3);
    auto sec = sec_multicat();
    for (std::size_t n = 0; n <= 3; ++n) {
        ObjFamily fam = ObjFamily::constant(FinSet::canonical(n), "*");
        CHECK(tu->arrows_from(fam).size() == sec->arrows_from(fam).size());
        CHECK(tu->arrows_from(fam).size() == n);
    }
}

TEST_CASE("monad laws on small instances") {
    for (auto m : {terminal_multicat(), from_category(parallel_pair()), unary_theory()}) {
        auto tm_ptr = std::make_shared<EspanMulticat>(m, 2);
        auto ttm_ptr = std::make_shared<EspanMulticat>(tm_ptr, 2);
        auto tttm_ptr = std::make_shared<EspanMulticat>(ttm_ptr, 2);
        const EspanMulticat& tm = *tm_ptr;
        const EspanMulticat& ttm = *ttm_ptr;
        const EspanMulticat& tttm = *tttm_ptr;

        for (const auto& x : all_canonical_families(*m, 2)) {
            // unit laws on espan arrows
            for (const auto& e : tm.arrows_from(x)) {
                // mu . eta_{TM} = id
                MultiArrow nested = monad_eta(ttm, e);
                CHECK(monad_mu(tm, ttm, nested) == e);
                // mu . espan(eta) = id
                MultiArrow mapped = espan_apply(
                    tm, ttm, e, [&](const MultiArrow& a) { return monad_eta(tm, a); });
                CHECK(monad_mu(tm, ttm, mapped) == e);
            }
            // associativity on triply nested arrows
            for (const auto& e3 : tttm.arrows_from(x)) {
                MultiArrow lhs = monad_mu(tm, ttm, monad_mu(ttm, tttm, e3));
                MultiArrow viaT = espan_apply(tttm, ttm, e3, [&](const MultiArrow& a) {
                    return monad_mu(tm, ttm, a);
                });
                MultiArrow rhs = monad_mu(tm, ttm, viaT);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("rig reindexing: sums along fibers with zeros on empty ones") {
    auto [m, g] = from_rig(rig_zmod(4));
    // alpha = (1 -> b, 2 -> c, 3 -> a), f : 1 |-> 3, 2 |-> 1, 3 |-> 3
    FinSet three = FinSet::canonical(3);
    FinMap f(three, three, {{"1", "3"}, {"2", "1"}, {"3", "3"}});
    ObjFamily fam = ObjFamily::constant(three, "*");
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t c = 0; c < 4; ++c) {
                auto tok = [](std::size_t v) { return std::to_string(v); };
                MultiArrow alpha = mint_category_arrow(
                    *m, fam, "*", {{"1", tok(b)}, {"2", tok(c)}, {"3", tok(a)}});
                MultiArrow moved = covariant_reindex(*g, alpha, f, fam);
                const auto& entries = *category_payload(*m, moved);
                CHECK(entries.at("1") == tok(c));
                CHECK(entries.at("2") == "0");
                CHECK(entries.at("3") == tok((a + b) % 4));
            }
}

TEST_CASE("bijective reindexing is a pure relabeling on rig arrows") {
    auto [m, g] = from_rig(rig_zmod(4));
    FinSet two = FinSet::canonical(2);
    ObjFamily fam = ObjFamily::constant(two, "*");
    FinMap swap(two, two, {{"1", "2"}, {"2", "1"}});
    MultiArrow alpha = mint_category_arrow(*m, fam, "*", {{"1", "3"}, {"2", "1"}});
    MultiArrow moved = covariant_reindex(*g, alpha, swap, fam);
    const auto& entries = *category_payload(*m, moved);
    CHECK(entries.at("1") == "1");
    CHECK(entries.at("2") == "3");
    // coherence with the contravariant action along the inverse
    CHECK(moved == m->reindex(alpha, swap.inverse()));
}

TEST_CASE("duplicating and deleting variables in the finite-sets multicategory") {
    std::map<Token, FinSet> carriers{
        {"A", FinSet({"a0", "a1"})},
        {"B", FinSet({"b0", "b1"})},
        {"C", FinSet({"c0", "c1"})},
        {"D", FinSet({"d0", "d1"})},
    };
    auto m = finset_multicat(carriers);
    auto g = finset_cart_structure(m);

    FinSet three = FinSet::canonical(3);
    // Y = (1 -> B, 2 -> C, 3 -> A), f : 1 |-> 3, 2 |-> 1, 3 |-> 3, X = f*Y
    ObjFamily y(three, {{"1", "B"}, {"2", "C"}, {"3", "A"}});
    FinMap f(three, three, {{"1", "3"}, {"2", "1"}, {"3", "3"}});
    ObjFamily x = y.reindex(f);
    CHECK(x == ObjFamily(three, {{"1", "A"}, {"2", "B"}, {"3", "A"}}));

    for (const auto& alpha : m->arrows(x, "D")) {
        MultiArrow moved = covariant_reindex(*g, alpha, f, y);
        const auto& table_in = *fn_table(*m, alpha);
        const auto& table_out = *fn_table(*m, moved);
        for (const auto& b : carriers.at("B").elements())
            for (const auto& c : carriers.at("C").elements())
                for (const auto& a : carriers.at("A").elements()) {
                    Token lhs = table_out.at(tuple_token({{"1", b}, {"2", c}, {"3", a}}));
                    Token rhs = table_in.at(tuple_token({{"1", a}, {"2", b}, {"3", a}}));
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("the cartesian law suites pass on the rig of booleans and on Z/2") {
    for (auto rig : {rig_zmod(2), rig_bool()}) {
        auto [m, g] = from_rig(rig);
        auto laws = check_cartesian_laws(*g, 2);
        auto alg = check_cartesian_algebra(*g, 2);
        CHECK(laws.passed());
        CHECK(alg.passed());
        CHECK(check_cartesian(*g, 2).passed());
    }
}

TEST_CASE("two rigs with one multiplication but different additions give different structures") {
    auto [m1, g1] = from_rig(rig_zmod(2));
    auto [m2, g2] = from_rig(rig_bool());
    // same multiplicative monoid, so the same multicategory of arrows
    ObjFamily pair = ObjFamily::constant(FinSet::canonical(2), "*");
    CHECK(m1->arrows_from(pair).size() == m2->arrows_from(pair).size());
    // 1 + 1 differs
    MultiArrow ones1 = mint_category_arrow(*m1, pair, "*", {{"1", "1"}, {"2", "1"}});
    MultiArrow ones2 = mint_category_arrow(*m2, pair, "*", {{"1", "1"}, {"2", "1"}});
    FinMap fold = FinMap::constant(FinSet::canonical(2), FinSet({"1"}), "1");
    ObjFamily point = ObjFamily::single("1", "*");
    Token sum1 = category_payload(*m1, g1->gamma(ones1, fold, point))->at("1");
    Token sum2 = category_payload(*m2, g2->gamma(ones2, fold, point))->at("1");
    CHECK(sum1 == "0");
    CHECK(sum2 == "1");
}

TEST_CASE("a corrupted gamma entry is caught by both formulations") {
    auto [m, g] = from_rig(rig_zmod(2));
    // divert (1,1) +-> 0 to (1,1) +-> 1
    ObjFamily pair = ObjFamily::constant(FinSet::canonical(2), "*");
    ObjFamily point = ObjFamily::single("1", "*");
    FinMap fold = FinMap::constant(FinSet::canonical(2), FinSet({"1"}), "1");
    MultiArrow ones = mint_category_arrow(*m, pair, "*", {{"1", "1"}, {"2", "1"}});
    MultiArrow wrong = mint_category_arrow(*m, point, "*", {{"1", "1"}});
    auto bad = corrupt_gamma(g, {ones, fold, point}, wrong);
    auto laws = check_cartesian_laws(*bad, 2);
    auto alg = check_cartesian_algebra(*bad, 2);
    CHECK_FALSE(laws.passed());
    CHECK_FALSE(alg.passed());
    // the frobenius family of laws is among the diagnoses
    bool named = false;
    for (const auto& v : laws.violations)
        if (v.law.rfind("cart-", 0) == 0) named = true;
    CHECK(named);
}

TEST_CASE("free cartesian structure is a lawful algebra") {
    FinCategory discrete2(FinSet({"A", "B"}),
                          {{"iA", {"A", "A"}}, {"iB", {"B", "B"}}},
                          {{"A", "iA"}, {"B", "iB"}},
                          {{{"iA", "iA"}, "iA"}, {{"iB", "iB"}, "iB"}});
    auto [tm, g] = free_cartesian(from_category(discrete2), 2);
    CHECK(check_cartesian(*g, 2).passed());
}

TEST_CASE("free cartesian hom counts match free commutative monoids") {
    auto m = from_category(parallel_pair());
    auto [tm, g] = free_cartesian(m, 3);
    ObjFamily one_a = ObjFamily::single("1", "A");
    // |C(A,B)| = 2, apexes up to 3: multisets of size <= 3 over two arrows
    CHECK(tm->arrows(one_a, "B").size() == multisets_up_to(2, 3));
    // |C(A,A)| = 1
    CHECK(tm->arrows(one_a, "A").size() == multisets_up_to(1, 3));
    ObjFamily one_b = ObjFamily::single("1", "B");
    CHECK(tm->arrows(one_b, "A").size() == multisets_up_to(0, 3));
}

TEST_CASE("free cartesian on the terminal multicategory adds like naturals") {
    auto [tm, g] = free_cartesian(terminal_multicat(), 3);
    const auto& es = dynamic_cast<const EspanMulticat&>(*tm);
    ObjFamily pair = ObjFamily::constant(FinSet::canonical(2), "*");
    ObjFamily point = ObjFamily::single("1", "*");
    FinMap fold = FinMap::constant(FinSet::canonical(2), FinSet({"1"}), "1");
    // find the arrow with multiplicities (1, 2); its fold is multiplicity 3
    for (const auto& a : tm->arrows_from(pair)) {
        const auto& p = es.payload(a);
        if (fiber(p.tight, "1").size() == 1 && fiber(p.tight, "2").size() == 2) {
            MultiArrow folded = g->gamma(a, fold, point);
            CHECK(es.payload(folded).tight.dom().size() == 3);
        }
    }
}

TEST_CASE("commutative monoid enrichment round trip") {
    // a two-object category enriched with boolean homs: hom(X, Y) has two
    // parallel arrows closed under max with the zero arrow
    FinCategory c(FinSet({"X", "Y"}),
                  {{"zXX", {"X", "X"}},
                   {"iX", {"X", "X"}},
                   {"zYY", {"Y", "Y"}},
                   {"iY", {"Y", "Y"}},
                   {"zXY", {"X", "Y"}},
                   {"uXY", {"X", "Y"}}},
                  {{"X", "iX"}, {"Y", "iY"}},
                  {});
    // composition: z's absorb, identities neutral, u.u patterns
    std::map<std::pair<Token, Token>, Token> comp;
    auto set = [&](Token gg, Token ff, Token res) { comp[{gg, ff}] = res; };
    set("iX", "iX", "iX");
    set("iY", "iY", "iY");
    set("zXX", "iX", "zXX");
    set("iX", "zXX", "zXX");
    set("zXX", "zXX", "zXX");
    set("zYY", "iY", "zYY");
    set("iY", "zYY", "zYY");
    set("zYY", "zYY", "zYY");
    set("zXY", "iX", "zXY");
    set("iY", "zXY", "zXY");
    set("uXY", "iX", "uXY");
    set("iY", "uXY", "uXY");
    set("zXY", "zXX", "zXY");
    set("zYY", "zXY", "zXY");
    set("zYY", "uXY", "zXY");
    set("uXY", "zXX", "zXY");
    c = FinCategory(c.objects(), c.arrows(), {{"X", "iX"}, {"Y", "iY"}}, comp);
    c.check();

    CMonEnrichment e;
    auto mon = [&](Token z, Token u) {
        CommMonoid mm;
        mm.carrier = FinSet({z, u});
        mm.zero = z;
        mm.add[{z, z}] = z;
        mm.add[{z, u}] = u;
        mm.add[{u, z}] = u;
        mm.add[{u, u}] = u;
        return mm;
    };
    e.homs[{"X", "X"}] = mon("zXX", "iX");
    e.homs[{"Y", "Y"}] = mon("zYY", "iY");
    e.homs[{"X", "Y"}] = mon("zXY", "uXY");
    CommMonoid empty_hom;
    empty_hom.carrier = FinSet();
    // hom(Y, X) is empty: there is no monoid on it, which the enrichment
    // must reject
    CHECK_THROWS(e.at("Y", "X"));
    // complete the enrichment with a one-element hom by adding an absorbing
    // arrow Y -> X? simpler: the category above has no arrows Y -> X, so
    // enrich only the nonempty homs and expect a failure
    CHECK_THROWS_AS(from_cmon_enriched(c, e), StructuralError);
}

TEST_CASE("one-object enrichment recovers the rig") {
    auto [m, g] = from_rig(rig_zmod(3));
    CMonEnrichment back = extract_enrichment(*g);
    CHECK(back.at("*", "*").add == rig_zmod(3).add);
    CHECK(back.at("*", "*").zero == "0");
}

TEST_CASE("models of the Z/2 theory are Z/2 modules") {
    auto [m, g] = from_rig(rig_zmod(2));
    // the tautological module Z/2 over itself
    ModelAssignment model;
    model.carriers["*"] = FinSet({"0", "1"});
    for (const auto& x : all_canonical_families(*m, 2))
        for (const auto& a : m->arrows_from(x)) {
            const auto& coeffs = *category_payload(*m, a);
            std::map<Token, Token> table;
            for (const auto& tuple : product_tuples(model.carriers, x)) {
                int acc = 0;
                for (const auto& [i, v] : tuple)
                    acc ^= (coeffs.at(i) == "1" && v == "1") ? 1 : 0;
                table[tuple_token(tuple)] = std::to_string(acc);
            }
            model.arrow_tables[model_arrow_key(a)] = std::move(table);
        }
    CHECK(check_model(*g, model, 2).passed());

    // a wrong scalar action is reported
    ModelAssignment broken = model;
    ObjFamily point = ObjFamily::single("1", "*");
    MultiArrow one_arrow = mint_category_arrow(*m, point, "*", {{"1", "1"}});
    auto& t = broken.arrow_tables.at(model_arrow_key(one_arrow));
    for (auto& [k, v] : t) v = (v == "0") ? "1" : "0";
    auto rep = check_model(*g, broken, 2);
    CHECK_FALSE(rep.passed());
}

TEST_CASE("only the singleton carrier models the terminal theory") {
    auto m = terminal_multicat();
    auto g = unique_arrow_cart_structure(m);
    ModelAssignment singleton;
    singleton.carriers["*"] = FinSet({"s"});
    for (const auto& x : all_canonical_families(*m, 2))
        for (const auto& a : m->arrows_from(x)) {
            std::map<Token, Token> table;
            for (const auto& tuple : product_tuples(singleton.carriers, x))
                table[tuple_token(tuple)] = "s";
            singleton.arrow_tables[model_arrow_key(a)] = std::move(table);
        }
    CHECK(check_model(*g, singleton, 2).passed());

    // a two-element carrier cannot satisfy the equations: try the first
    // projection as the binary operation
    ModelAssignment doubled;
    doubled.carriers["*"] = FinSet({"s", "t"});
    for (const auto& x : all_canonical_families(*m, 2))
        for (const auto& a : m->arrows_from(x)) {
            std::map<Token, Token> table;
            for (const auto& tuple : product_tuples(doubled.carriers, x))
                table[tuple_token(tuple)] = tuple.empty() ? Token("s") : tuple.begin()->second;
            doubled.arrow_tables[model_arrow_key(a)] = std::move(table);
        }
    CHECK_FALSE(check_model(*g, doubled, 2).passed());
}

TEST_CASE("coherence of the two reindexings along bijections") {
    auto [m, g] = from_rig(rig_zmod(2));
    for (const auto& x : all_canonical_families(*m, 3))
        for (const auto& alpha : m->arrows_from(x))
            for (const auto& f : all_bijections(x.index, x.index)) {
                MultiArrow lhs = covariant_reindex(*g, alpha, f, x.reindex(f.inverse()));
                MultiArrow rhs = m->reindex(alpha, f.inverse());
                CHECK(lhs == rhs);
            }
}
