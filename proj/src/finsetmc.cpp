#include <algorithm>

#include "mcw/constructions.hpp"

namespace mcw {

std::vector<std::map<Token, Token>> product_tuples(const std::map<Token, FinSet>& carriers,
                                                   const ObjFamily& fam) {
    std::vector<std::map<Token, Token>> result;
    std::vector<Token> idx = fam.index.elements();
    std::vector<const FinSet*> sets;
    for (const auto& i : idx) {
        auto it = carriers.find(fam.at(i));
        if (it == carriers.end())
            throw StructuralError("product_tuples: no carrier for '" + fam.at(i) + "'");
        sets.push_back(&it->second);
        if (it->second.empty()) return result;  // empty product
    }
    std::vector<std::size_t> pick(idx.size(), 0);
    while (true) {
        std::map<Token, Token> entry;
        for (std::size_t k = 0; k < idx.size(); ++k)
            entry[idx[k]] = sets[k]->elements()[pick[k]];
        result.push_back(std::move(entry));
        std::size_t p = 0;
        while (p < idx.size() && ++pick[p] == sets[p]->size()) pick[p++] = 0;
        if (p == idx.size()) break;
    }
    return result;
}

Token tuple_token(const std::map<Token, Token>& entries) {
    std::string out = "(";
    bool first = true;
    for (const auto& [i, v] : entries) {
        if (!first) out += ",";
        first = false;
        out += i + ":" + v;
    }
    return out + ")";
}

namespace {

class FinSetMulticat final : public Multicat {
  public:
    explicit FinSetMulticat(std::map<Token, FinSet> carriers) : carriers_(std::move(carriers)) {
        std::vector<Token> names;
        for (const auto& [name, set] : carriers_) names.push_back(name);
        objs_ = FinSet(std::move(names));
    }

    const FinSet& objects() const override { return objs_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        const FinSet& target = carrier(cod);
        auto tuples = product_tuples(carriers_, dom);
        std::vector<MultiArrow> result;
        if (target.empty()) {
            if (!tuples.empty()) return result;
            result.push_back(mint(dom, cod, {}));
            return result;
        }
        std::vector<std::size_t> pick(tuples.size(), 0);
        while (true) {
            std::map<Token, Token> table;
            for (std::size_t k = 0; k < tuples.size(); ++k)
                table[tuple_token(tuples[k])] = target.elements()[pick[k]];
            result.push_back(mint(dom, cod, std::move(table)));
            std::size_t p = 0;
            while (p < tuples.size() && ++pick[p] == target.size()) pick[p++] = 0;
            if (p == tuples.size()) break;
        }
        return result;
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        std::map<Token, Token> table;
        for (const auto& v : carrier(obj).elements())
            table[tuple_token({{index_token, v}})] = v;
        return mint(ObjFamily::single(index_token, obj), obj, std::move(table));
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        const auto& table = payload(a);
        ObjFamily dom2 = a.dom.reindex(sigma);
        std::map<Token, Token> table2;
        for (const auto& t2 : product_tuples(carriers_, dom2)) {
            std::map<Token, Token> t;
            for (const auto& [i2, v] : t2) t[sigma(i2)] = v;
            table2[tuple_token(t2)] = table.at(tuple_token(t));
        }
        return mint(std::move(dom2), a.cod, std::move(table2));
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        const auto& outer_table = payload(outer);
        ObjFamily dom;
        {
            std::vector<Token> idx;
            std::map<Token, Token> assign;
            for (const auto& [j, a] : inner)
                for (const auto& i : a.dom.index.elements()) {
                    idx.push_back(i);
                    assign[i] = a.dom.at(i);
                }
            dom = ObjFamily(FinSet(std::move(idx)), std::move(assign));
        }
        std::map<Token, Token> table;
        for (const auto& x : product_tuples(carriers_, dom)) {
            std::map<Token, Token> mid;
            for (const auto& [j, a] : inner) {
                std::map<Token, Token> restricted;
                for (const auto& i : a.dom.index.elements()) restricted[i] = x.at(i);
                mid[j] = payload(a).at(tuple_token(restricted));
            }
            table[tuple_token(x)] = outer_table.at(tuple_token(mid));
        }
        return mint(std::move(dom), outer.cod, std::move(table));
    }

    std::string describe() const override { return "finite-sets multicategory"; }

    const std::map<Token, FinSet>& carriers() const { return carriers_; }

    const FinSet& carrier(const Token& obj) const {
        auto it = carriers_.find(obj);
        if (it == carriers_.end())
            throw StructuralError("finset multicat: unknown object '" + obj + "'");
        return it->second;
    }

    const std::map<Token, Token>& payload(const MultiArrow& a) const {
        auto it = cache_.find(a);
        if (it == cache_.end())
            throw StructuralError("finset multicat: arrow was not minted here: " + a.name);
        return it->second;
    }

    MultiArrow mint(ObjFamily dom, Token cod, std::map<Token, Token> table) const {
        std::string name = "fn{";
        bool first = true;
        for (const auto& [t, v] : table) {
            if (!first) name += ";";
            first = false;
            name += t + "=>" + v;
        }
        name += "}";
        MultiArrow a{std::move(name), std::move(dom), std::move(cod), {}};
        cache_.emplace(a, std::move(table));
        return a;
    }

  private:
    std::map<Token, FinSet> carriers_;
    FinSet objs_;
    mutable std::map<MultiArrow, std::map<Token, Token>> cache_;
};

}  // namespace

MulticatPtr finset_multicat(std::map<Token, FinSet> carriers) {
    return std::make_shared<FinSetMulticat>(std::move(carriers));
}

const std::map<Token, FinSet>* carriers_of(const Multicat& m) {
    auto* p = dynamic_cast<const FinSetMulticat*>(&m);
    return p ? &p->carriers() : nullptr;
}

const std::map<Token, Token>* fn_table(const Multicat& m, const MultiArrow& a) {
    auto* p = dynamic_cast<const FinSetMulticat*>(&m);
    return p ? &p->payload(a) : nullptr;
}

MultiArrow mint_function_arrow(const Multicat& m, const ObjFamily& dom, const Token& cod,
                               std::map<Token, Token> table) {
    auto* p = dynamic_cast<const FinSetMulticat*>(&m);
    if (!p) throw StructuralError("mint_function_arrow: not a finset multicategory");
    return p->mint(dom, cod, std::move(table));
}

}  // namespace mcw
