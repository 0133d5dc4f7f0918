#include "mcw/constructions.hpp"

#include <algorithm>

namespace mcw {

namespace {

// Tokens that take part in structured encodings must stay clean of the
// separator characters.
void check_clean_token(const Token& t, const std::string& where) {
    if (t.empty()) throw StructuralError(where + ": empty token");
    for (char c : t)
        if (std::string("{}:,;").find(c) != std::string::npos)
            throw StructuralError(where + ": token '" + t + "' contains a reserved character");
}

ObjFamily union_family(const std::map<Token, MultiArrow>& inner) {
    std::vector<Token> idx;
    std::map<Token, Token> assign;
    for (const auto& [j, a] : inner)
        for (const auto& i : a.dom.index.elements()) {
            idx.push_back(i);
            assign[i] = a.dom.at(i);
        }
    return ObjFamily(FinSet(std::move(idx)), std::move(assign));
}

FinMap invert_bijection(const FinMap& sigma) { return sigma.inverse(); }

}  // namespace

// ---- commutative monoids and rigs ----

const Token& CommMonoid::plus(const Token& a, const Token& b) const {
    auto it = add.find({a, b});
    if (it == add.end())
        throw StructuralError("CommMonoid: addition table missing (" + a + ", " + b + ")");
    return it->second;
}

Token CommMonoid::sum(const std::vector<Token>& xs) const {
    Token acc = zero;
    for (const auto& x : xs) acc = plus(acc, x);
    return acc;
}

void CommMonoid::check() const {
    if (!carrier.contains(zero)) throw ValidationError("CommMonoid: zero not in carrier");
    for (const auto& a : carrier.elements()) check_clean_token(a, "CommMonoid");
    for (const auto& a : carrier.elements())
        for (const auto& b : carrier.elements()) {
            if (!carrier.contains(plus(a, b)))
                throw ValidationError("CommMonoid: addition leaves the carrier");
            if (plus(a, b) != plus(b, a))
                throw ValidationError("CommMonoid: addition not commutative at (" + a + ", " +
                                      b + ")");
            for (const auto& c : carrier.elements())
                if (plus(plus(a, b), c) != plus(a, plus(b, c)))
                    throw ValidationError("CommMonoid: addition not associative at (" + a +
                                          ", " + b + ", " + c + ")");
        }
    for (const auto& a : carrier.elements())
        if (plus(zero, a) != a)
            throw ValidationError("CommMonoid: zero is not a unit at '" + a + "'");
}

const Token& Rig::plus(const Token& a, const Token& b) const {
    auto it = add.find({a, b});
    if (it == add.end())
        throw StructuralError("Rig: addition table missing (" + a + ", " + b + ")");
    return it->second;
}

const Token& Rig::times(const Token& a, const Token& b) const {
    auto it = mul.find({a, b});
    if (it == mul.end())
        throw StructuralError("Rig: multiplication table missing (" + a + ", " + b + ")");
    return it->second;
}

void Rig::check() const {
    additive().check();
    if (!elements.contains(one)) throw ValidationError("Rig: one not in carrier");
    for (const auto& a : elements.elements()) {
        if (times(one, a) != a || times(a, one) != a)
            throw ValidationError("Rig: one is not a unit at '" + a + "'");
        if (times(zero, a) != zero || times(a, zero) != zero)
            throw ValidationError("Rig: zero is not absorbing at '" + a + "'");
    }
    for (const auto& a : elements.elements())
        for (const auto& b : elements.elements())
            for (const auto& c : elements.elements()) {
                if (times(times(a, b), c) != times(a, times(b, c)))
                    throw ValidationError("Rig: multiplication not associative");
                if (times(a, plus(b, c)) != plus(times(a, b), times(a, c)))
                    throw ValidationError("Rig: left distributivity fails");
                if (times(plus(a, b), c) != plus(times(a, c), times(b, c)))
                    throw ValidationError("Rig: right distributivity fails");
            }
}

CommMonoid Rig::additive() const { return CommMonoid{elements, add, zero}; }

FinCategory Rig::multiplicative_category() const {
    FinSet objs(std::vector<Token>{"*"});
    std::map<Token, std::pair<Token, Token>> arrows;
    for (const auto& e : elements.elements()) arrows[e] = {"*", "*"};
    std::map<std::pair<Token, Token>, Token> comp;
    for (const auto& a : elements.elements())
        for (const auto& b : elements.elements()) comp[{a, b}] = times(a, b);
    return FinCategory(objs, std::move(arrows), {{"*", one}}, std::move(comp));
}

Rig rig_zmod(std::size_t n) {
    if (n == 0) throw StructuralError("rig_zmod: modulus must be positive");
    std::vector<Token> elems;
    for (std::size_t i = 0; i < n; ++i) elems.push_back(std::to_string(i));
    Rig r;
    r.elements = FinSet(elems);
    r.zero = "0";
    r.one = n == 1 ? "0" : "1";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            r.add[{elems[a], elems[b]}] = std::to_string((a + b) % n);
            r.mul[{elems[a], elems[b]}] = std::to_string((a * b) % n);
        }
    return r;
}

CommMonoid cmon_zmod(std::size_t n) {
    Rig r = rig_zmod(n);
    return r.additive();
}

CommMonoid cmon_bool_or() {
    CommMonoid m;
    m.carrier = FinSet(std::vector<Token>{"0", "1"});
    m.zero = "0";
    m.add[{"0", "0"}] = "0";
    m.add[{"0", "1"}] = "1";
    m.add[{"1", "0"}] = "1";
    m.add[{"1", "1"}] = "1";
    return m;
}

// ---- terminal multicategory ----

namespace {

class TerminalMulticat final : public Multicat {
  public:
    TerminalMulticat() : objs_(std::vector<Token>{"*"}) {}

    const FinSet& objects() const override { return objs_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (cod != "*") throw StructuralError("terminal: unknown object '" + cod + "'");
        return {MultiArrow{"!", dom, cod, {}}};
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{"!", ObjFamily::single(index_token, obj), obj, {}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return MultiArrow{"!", a.dom.reindex(sigma), a.cod, {}};
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        return MultiArrow{"!", union_family(inner), outer.cod, {}};
    }

    std::string describe() const override { return "terminal"; }

  private:
    FinSet objs_;
};

class UnaryTheory final : public Multicat {
  public:
    UnaryTheory() : objs_(std::vector<Token>{"*"}) {}

    const FinSet& objects() const override { return objs_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (cod != "*") throw StructuralError("u_theory: unknown object '" + cod + "'");
        if (dom.index.size() != 1) return {};
        return {MultiArrow{"u", dom, cod, {}}};
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{"u", ObjFamily::single(index_token, obj), obj, {}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return MultiArrow{"u", a.dom.reindex(sigma), a.cod, {}};
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        return MultiArrow{"u", union_family(inner), outer.cod, {}};
    }

    std::string describe() const override { return "u_theory"; }

  private:
    FinSet objs_;
};

class TotMulticat final : public Multicat {
  public:
    TotMulticat() : objs_(std::vector<Token>{"*"}) {}

    const FinSet& objects() const override { return objs_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (cod != "*") throw StructuralError("tot: unknown object '" + cod + "'");
        std::vector<MultiArrow> result;
        for (auto& ord : all_orders(dom.index))
            result.push_back(MultiArrow{"ord", dom, cod, std::move(ord)});
        return result;
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{"ord", ObjFamily::single(index_token, obj), obj, {index_token}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        FinMap inv = invert_bijection(sigma);
        std::vector<Token> order;
        for (const auto& t : a.order) order.push_back(inv(t));
        return MultiArrow{"ord", a.dom.reindex(sigma), a.cod, std::move(order)};
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        std::vector<Token> order;
        for (const auto& j : outer.order)
            for (const auto& i : inner.at(j).order) order.push_back(i);
        return MultiArrow{"ord", union_family(inner), outer.cod, std::move(order)};
    }

    std::string describe() const override { return "tot"; }

  private:
    FinSet objs_;
};

class SecMulticat final : public Multicat {
  public:
    SecMulticat() : objs_(std::vector<Token>{"*"}) {}

    static Token point_name(const Token& i) { return "pt;" + i; }

    const FinSet& objects() const override { return objs_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (cod != "*") throw StructuralError("sec: unknown object '" + cod + "'");
        std::vector<MultiArrow> result;
        for (const auto& i : dom.index.elements())
            result.push_back(MultiArrow{point_name(i), dom, cod, {}});
        return result;
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{point_name(index_token), ObjFamily::single(index_token, obj), obj, {}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        Token point = a.name.substr(3);
        return MultiArrow{point_name(invert_bijection(sigma)(point)), a.dom.reindex(sigma),
                          a.cod, {}};
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        Token outer_point = outer.name.substr(3);
        return MultiArrow{inner.at(outer_point).name, union_family(inner), outer.cod, {}};
    }

    std::string describe() const override { return "sec"; }

  private:
    FinSet objs_;
};

// arrows are assignments index token -> arrow of the category
class FromCategoryMulticat final : public Multicat {
  public:
    explicit FromCategoryMulticat(FinCategory c) : c_(std::move(c)) {
        c_.check();
        for (const auto& o : c_.objects().elements()) check_clean_token(o, "from_category");
        for (const auto& [a, st] : c_.arrows()) check_clean_token(a, "from_category");
    }

    const FinSet& objects() const override { return c_.objects(); }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (!c_.objects().contains(cod))
            throw StructuralError("from_category: unknown object '" + cod + "'");
        std::vector<std::vector<Token>> choices;
        for (const auto& i : dom.index.elements()) {
            choices.push_back(c_.hom(dom.at(i), cod));
            if (choices.back().empty()) return {};
        }
        std::vector<MultiArrow> result;
        std::size_t n = dom.index.size();
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            std::map<Token, Token> entries;
            for (std::size_t k = 0; k < n; ++k)
                entries[dom.index.elements()[k]] = choices[k][pick[k]];
            result.push_back(mint(dom, cod, std::move(entries)));
            std::size_t p = 0;
            while (p < n && ++pick[p] == choices[p].size()) pick[p++] = 0;
            if (p == n) break;
        }
        return result;
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return mint(ObjFamily::single(index_token, obj), obj,
                    {{index_token, c_.identity(obj)}});
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        const auto& entries = payload(a);
        std::map<Token, Token> moved;
        for (const auto& i : sigma.dom().elements()) moved[i] = entries.at(sigma(i));
        return mint(a.dom.reindex(sigma), a.cod, std::move(moved));
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        const auto& outer_entries = payload(outer);
        std::map<Token, Token> entries;
        for (const auto& [j, a] : inner) {
            const auto& inner_entries = payload(a);
            for (const auto& [i, arr] : inner_entries)
                entries[i] = c_.compose(outer_entries.at(j), arr);
        }
        return mint(union_family(inner), outer.cod, std::move(entries));
    }

    std::string describe() const override { return "cocartesian multicategory"; }

    const FinCategory& category() const { return c_; }

    /// The family of category arrows carried by a minted arrow.
    const std::map<Token, Token>& payload(const MultiArrow& a) const {
        auto it = cache_.find(a);
        if (it == cache_.end())
            throw StructuralError("from_category: arrow was not minted here: " + a.name);
        return it->second;
    }

    MultiArrow mint(ObjFamily dom, Token cod, std::map<Token, Token> entries) const {
        std::string name = "{";
        bool first = true;
        for (const auto& [i, arr] : entries) {
            if (!first) name += ",";
            first = false;
            name += i + ":" + arr;
        }
        name += "}";
        MultiArrow a{std::move(name), std::move(dom), std::move(cod), {}};
        cache_.emplace(a, std::move(entries));
        return a;
    }

  private:
    FinCategory c_;
    mutable std::map<MultiArrow, std::map<Token, Token>> cache_;
};

class CommMonoidMulticat final : public Multicat {
  public:
    explicit CommMonoidMulticat(CommMonoid mon) : mon_(std::move(mon)) { mon_.check(); }

    const FinSet& objects() const override { return mon_.carrier; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (!mon_.carrier.contains(cod))
            throw StructuralError("comm_monoid: unknown element '" + cod + "'");
        std::vector<Token> values;
        for (const auto& i : dom.index.elements()) values.push_back(dom.at(i));
        if (mon_.sum(values) != cod) return {};
        return {MultiArrow{"add", dom, cod, {}}};
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{"add", ObjFamily::single(index_token, obj), obj, {}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return MultiArrow{"add", a.dom.reindex(sigma), a.cod, {}};
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        return MultiArrow{"add", union_family(inner), outer.cod, {}};
    }

    std::string describe() const override { return "discrete multicategory of a commutative monoid"; }

    const CommMonoid& monoid() const { return mon_; }

  private:
    CommMonoid mon_;
};

}  // namespace

MulticatPtr terminal_multicat() { return std::make_shared<TerminalMulticat>(); }
MulticatPtr unary_theory() { return std::make_shared<UnaryTheory>(); }
MulticatPtr tot_multicat() { return std::make_shared<TotMulticat>(); }
MulticatPtr sec_multicat() { return std::make_shared<SecMulticat>(); }

MulticatPtr from_category(FinCategory c) {
    return std::make_shared<FromCategoryMulticat>(std::move(c));
}

MulticatPtr from_comm_monoid(CommMonoid mon) {
    return std::make_shared<CommMonoidMulticat>(std::move(mon));
}

MulticatPtr from_rig_multicat(const Rig& r) {
    r.check();
    return from_category(r.multiplicative_category());
}

const FinCategory* category_of(const Multicat& m) {
    auto* p = dynamic_cast<const FromCategoryMulticat*>(&m);
    return p ? &p->category() : nullptr;
}

const std::map<Token, Token>* category_payload(const Multicat& m, const MultiArrow& a) {
    auto* p = dynamic_cast<const FromCategoryMulticat*>(&m);
    return p ? &p->payload(a) : nullptr;
}

MultiArrow mint_category_arrow(const Multicat& m, const ObjFamily& dom, const Token& cod,
                               std::map<Token, Token> entries) {
    auto* p = dynamic_cast<const FromCategoryMulticat*>(&m);
    if (!p) throw StructuralError("mint_category_arrow: not a from_category multicategory");
    return p->mint(dom, cod, std::move(entries));
}

const CommMonoid* monoid_of(const Multicat& m) {
    auto* p = dynamic_cast<const CommMonoidMulticat*>(&m);
    return p ? &p->monoid() : nullptr;
}

CommMonoid extract_comm_monoid(const Multicat& m, std::size_t bound) {
    (void)bound;
    CommMonoid result;
    result.carrier = m.objects();
    // zero: the codomain of the unique arrow out of the empty family
    ObjFamily empty(FinSet(), {});
    auto nullary = m.arrows_from(empty);
    if (nullary.size() != 1)
        throw ValidationError("extract_comm_monoid: the empty family does not have a unique arrow");
    result.zero = nullary[0].cod;
    // a + b: the codomain of the unique arrow out of the pair family
    for (const auto& a : m.objects().elements())
        for (const auto& b : m.objects().elements()) {
            ObjFamily pair(FinSet::canonical(2), {{"1", a}, {"2", b}});
            auto arrows = m.arrows_from(pair);
            if (arrows.size() != 1)
                throw ValidationError("extract_comm_monoid: pair family (" + a + ", " + b +
                                      ") does not have a unique arrow");
            result.add[{a, b}] = arrows[0].cod;
        }
    result.check();
    return result;
}

}  // namespace mcw
