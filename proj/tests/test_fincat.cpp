#include <doctest.h>

#include "mcw/fincat.hpp"

using namespace mcw;

namespace {

FinCategory terminal_category() {
    return FinCategory(FinSet({"*"}), {{"id", {"*", "*"}}}, {{"*", "id"}},
                       {{{"id", "id"}, "id"}});
}

FinCategory discrete_category(std::vector<Token> objs) {
    std::map<Token, std::pair<Token, Token>> arrows;
    std::map<Token, Token> ids;
    std::map<std::pair<Token, Token>, Token> comp;
    for (const auto& o : objs) {
        Token i = "id_" + o;
        arrows[i] = {o, o};
        ids[o] = i;
        comp[{i, i}] = i;
    }
    return FinCategory(FinSet(std::move(objs)), std::move(arrows), std::move(ids),
                       std::move(comp));
}

// chain x -> y -> z with the composite filled in
FinCategory chain3() {
    std::map<Token, std::pair<Token, Token>> arrows{
        {"ix", {"x", "x"}}, {"iy", {"y", "y"}}, {"iz", {"z", "z"}},
        {"xy", {"x", "y"}}, {"yz", {"y", "z"}}, {"xz", {"x", "z"}},
    };
    std::map<std::pair<Token, Token>, Token> comp;
    auto cat = [&](const Token& g, const Token& f, const Token& r) { comp[{g, f}] = r; };
    for (const auto& [a, st] : arrows) {
        cat(a, "i" + st.first.substr(0, 1), a);
        cat("i" + st.second.substr(0, 1), a, a);
    }
    cat("yz", "xy", "xz");
    return FinCategory(FinSet({"x", "y", "z"}), arrows,
                       {{"x", "ix"}, {"y", "iy"}, {"z", "iz"}}, comp);
}

// the category of elements of a presheaf on chain3, with its projection
std::pair<FinCategory, FinFunctor> elements_of_presheaf() {
    // P(z) = {p,q}, P(y) = {r}, P(x) = {m}; restrictions collapse everything
    FinCategory base = chain3();
    std::map<Token, std::pair<Token, Token>> arrows{
        {"e_ix", {"x.m", "x.m"}},  {"e_iy", {"y.r", "y.r"}}, {"e_izp", {"z.p", "z.p"}},
        {"e_izq", {"z.q", "z.q"}}, {"e_xy", {"x.m", "y.r"}}, {"e_yzp", {"y.r", "z.p"}},
        {"e_yzq", {"y.r", "z.q"}}, {"e_xzp", {"x.m", "z.p"}}, {"e_xzq", {"x.m", "z.q"}},
    };
    std::map<Token, Token> ids{
        {"x.m", "e_ix"}, {"y.r", "e_iy"}, {"z.p", "e_izp"}, {"z.q", "e_izq"}};
    std::map<std::pair<Token, Token>, Token> comp;
    for (const auto& [a, st] : arrows) {
        comp[{a, ids.at(st.first)}] = a;
        comp[{ids.at(st.second), a}] = a;
    }
    comp[{"e_yzp", "e_xy"}] = "e_xzp";
    comp[{"e_yzq", "e_xy"}] = "e_xzq";
    FinCategory total(FinSet({"x.m", "y.r", "z.p", "z.q"}), arrows, ids, comp);
    FinFunctor proj{total, base,
                    {{"x.m", "x"}, {"y.r", "y"}, {"z.p", "z"}, {"z.q", "z"}},
                    {{"e_ix", "ix"},
                     {"e_iy", "iy"},
                     {"e_izp", "iz"},
                     {"e_izq", "iz"},
                     {"e_xy", "xy"},
                     {"e_yzp", "yz"},
                     {"e_yzq", "yz"},
                     {"e_xzp", "xz"},
                     {"e_xzq", "xz"}}};
    return {total, proj};
}

}  // namespace

TEST_CASE("category law checking") {
    terminal_category().check();
    chain3().check();
    auto bad = FinCategory(FinSet({"*"}), {{"id", {"*", "*"}}, {"e", {"*", "*"}}},
                           {{"*", "id"}},
                           {{{"id", "id"}, "id"},
                            {{"id", "e"}, "id"},  // unit law broken on purpose
                            {{"e", "id"}, "e"},
                            {{"e", "e"}, "id"}});
    CHECK_THROWS_AS(bad.check(), ValidationError);
}

TEST_CASE("discrete fibration checks") {
    auto c = chain3();
    CHECK(is_discrete_fibration(identity_functor(c)));

    // collapsing a discrete category onto the terminal one keeps unique
    // anchored lifts, so it is a discrete fibration
    auto d2 = discrete_category({"A", "B"});
    auto t = terminal_category();
    FinFunctor collapse{d2, t,
                        {{"A", "*"}, {"B", "*"}},
                        {{"id_A", "id"}, {"id_B", "id"}}};
    collapse.check();
    CHECK(is_discrete_fibration(collapse));

    // a genuine failure: include an endpoint into the walking arrow, the
    // non-identity arrow has no lift
    FinCategory walking(FinSet({"A", "B"}),
                        {{"iA", {"A", "A"}}, {"iB", {"B", "B"}}, {"u", {"A", "B"}}},
                        {{"A", "iA"}, {"B", "iB"}},
                        {{{"iA", "iA"}, "iA"},
                         {{"iB", "iB"}, "iB"},
                         {{"u", "iA"}, "u"},
                         {{"iB", "u"}, "u"}});
    FinCategory point(FinSet({"B"}), {{"iB", {"B", "B"}}}, {{"B", "iB"}},
                      {{{"iB", "iB"}, "iB"}});
    FinFunctor incl{point, walking, {{"B", "B"}}, {{"iB", "iB"}}};
    incl.check();
    CHECK_FALSE(is_discrete_fibration(incl));

    auto [total, proj] = elements_of_presheaf();
    total.check();
    proj.check();
    CHECK(is_discrete_fibration(proj));
}

TEST_CASE("fam of the terminal category is bounded Set_f") {
    auto f3 = fam(terminal_category(), 3);
    f3.check();
    CHECK(f3.objects().size() == 4);
    // independent count: arrows are maps between canonical sets <= 3
    std::size_t expected = 0;
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m = 0; m <= 3; ++m)
            expected += all_maps(FinSet::canonical(n), FinSet::canonical(m)).size();
    CHECK(f3.arrows().size() == expected);
    CHECK(expected == 60);
}

TEST_CASE("fam of a discrete category is the bounded slice over it") {
    auto d2 = discrete_category({"A", "B"});
    auto f2 = fam(d2, 2);
    f2.check();
    CHECK(f2.objects().size() == 7);  // 1 + 2 + 4 families
    // arrows (A, B, f) with A = B after f; counted as (f, target family)
    std::size_t expected = 0;
    for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t m = 0; m <= 2; ++m) {
            std::size_t nmaps = all_maps(FinSet::canonical(n), FinSet::canonical(m)).size();
            std::size_t nfams = 1;
            for (std::size_t i = 0; i < m; ++i) nfams *= 2;
            expected += nmaps * nfams;
        }
    CHECK(f2.arrows().size() == expected);
}

TEST_CASE("fam preserves discrete fibrations (bounded)") {
    auto [total, proj] = elements_of_presheaf();
    auto famproj = fam(proj, 2);
    famproj.check();
    CHECK(is_discrete_fibration(famproj));

    auto d2 = discrete_category({"A", "B"});
    auto t = terminal_category();
    FinFunctor collapse{d2, t, {{"A", "*"}, {"B", "*"}}, {{"id_A", "id"}, {"id_B", "id"}}};
    CHECK(is_discrete_fibration(fam(collapse, 2)));
}

TEST_CASE("connected objects of fam are the singleton families") {
    auto d2 = discrete_category({"A", "B"});
    auto f2 = fam(d2, 2);
    auto witnesses = fam_sum_witnesses(d2, 2);
    auto conn = connected_objects(f2, witnesses);
    CHECK(conn == std::vector<Token>{"[A]", "[B]"});

    // the size-2 terminal family is a sum of two singletons, hence not connected
    auto f1 = fam(terminal_category(), 2);
    auto witnesses1 = fam_sum_witnesses(terminal_category(), 2);
    auto conn1 = connected_objects(f1, witnesses1);
    CHECK(conn1 == std::vector<Token>{"[*]"});

    // with no declared sums every object is vacuously connected
    auto vac = connected_objects(f1, {});
    CHECK(vac.size() == f1.objects().size());
}

TEST_CASE("every fam object decomposes as a sum of its singletons") {
    auto d2 = discrete_category({"A", "B"});
    auto f2 = fam(d2, 2);
    // binary concatenation witnesses cover all objects up to the bound
    for (const auto& w : fam_sum_witnesses(d2, 2)) check_sum_witness(f2, w);
}

TEST_CASE("sum witness with a broken universal property is rejected") {
    auto f1 = fam(terminal_category(), 2);
    // claim [*] is the sum of [*] and [*]; the cotupling cannot be injective
    SumWitness bogus{"[*]", {{"[*]", "<1|id|[*]>"}, {"[*]", "<1|id|[*]>"}}};
    CHECK_THROWS_AS(check_sum_witness(f1, bogus), ValidationError);
}
