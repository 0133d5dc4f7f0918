#include "mcw/finset.hpp"

#include <algorithm>

namespace mcw {

FinSet::FinSet(std::vector<Token> elements) : elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    auto dup = std::adjacent_find(elems_.begin(), elems_.end());
    if (dup != elems_.end())
        throw StructuralError("FinSet: duplicate token '" + *dup + "'");
}

FinSet FinSet::canonical(std::size_t n) {
    if (n > 9)
        throw BoundExceeded("canonical sets are capped at size 9, requested " +
                            std::to_string(n));
    std::vector<Token> elems;
    elems.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) elems.push_back(std::to_string(i));
    return FinSet(std::move(elems));
}

bool FinSet::contains(const Token& t) const {
    return std::binary_search(elems_.begin(), elems_.end(), t);
}

FinMap::FinMap(FinSet dom, FinSet cod, std::map<Token, Token> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    for (const auto& t : dom_.elements()) {
        auto it = table_.find(t);
        if (it == table_.end())
            throw StructuralError("FinMap: table not total, missing '" + t + "'");
        if (!cod_.contains(it->second))
            throw StructuralError("FinMap: value '" + it->second + "' not in codomain");
    }
    if (table_.size() != dom_.size())
        throw StructuralError("FinMap: table mentions tokens outside the domain");
}

FinMap FinMap::identity(const FinSet& s) {
    std::map<Token, Token> table;
    for (const auto& t : s.elements()) table[t] = t;
    return FinMap(s, s, std::move(table));
}

FinMap FinMap::constant(const FinSet& dom, const FinSet& cod, const Token& value) {
    if (!cod.contains(value))
        throw StructuralError("FinMap::constant: value not in codomain");
    std::map<Token, Token> table;
    for (const auto& t : dom.elements()) table[t] = value;
    return FinMap(dom, cod, std::move(table));
}

const Token& FinMap::operator()(const Token& t) const {
    auto it = table_.find(t);
    if (it == table_.end())
        throw StructuralError("FinMap: token '" + t + "' not in domain");
    return it->second;
}

bool FinMap::is_injective() const {
    std::vector<Token> seen;
    for (const auto& [k, v] : table_) seen.push_back(v);
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool FinMap::is_surjective() const {
    for (const auto& j : cod_.elements())
        if (fiber(*this, j).empty()) return false;
    return true;
}

FinMap FinMap::inverse() const {
    if (!is_bijective())
        throw StructuralError("FinMap::inverse: map is not bijective");
    std::map<Token, Token> table;
    for (const auto& [k, v] : table_) table[v] = k;
    return FinMap(cod_, dom_, std::move(table));
}

FinMap FinMap::restrict(const FinSet& sub) const {
    std::map<Token, Token> table;
    for (const auto& t : sub.elements()) {
        if (!dom_.contains(t))
            throw StructuralError("FinMap::restrict: '" + t + "' not in domain");
        table[t] = (*this)(t);
    }
    return FinMap(sub, cod_, std::move(table));
}

FinMap compose(const FinMap& g, const FinMap& f) {
    if (f.cod() != g.dom())
        throw StructuralError("compose: codomain/domain mismatch");
    std::map<Token, Token> table;
    for (const auto& t : f.dom().elements()) table[t] = g(f(t));
    return FinMap(f.dom(), g.cod(), std::move(table));
}

FinSet fiber(const FinMap& f, const Token& j) {
    if (!f.cod().contains(j))
        throw StructuralError("fiber: token '" + j + "' not in codomain");
    std::vector<Token> elems;
    for (const auto& i : f.dom().elements())
        if (f(i) == j) elems.push_back(i);
    return FinSet(std::move(elems));
}

Token pair_token(const Token& i, const Token& l) { return "(" + i + "," + l + ")"; }

bool PbSquare::commutes() const {
    return compose(right, top) == compose(bottom, left);
}

PbSquare pullback(const FinMap& f, const FinMap& g) {
    if (f.cod() != g.cod())
        throw StructuralError("pullback: maps do not share a codomain");
    std::vector<Token> apex_elems;
    std::map<Token, Token> to_left, to_top;
    for (const auto& i : f.dom().elements()) {
        for (const auto& l : g.dom().elements()) {
            if (f(i) != g(l)) continue;
            Token p = pair_token(i, l);
            apex_elems.push_back(p);
            to_left[p] = i;
            to_top[p] = l;
        }
    }
    FinSet apex(std::move(apex_elems));
    PbSquare sq{f, g, FinMap(apex, g.dom(), std::move(to_top)),
                FinMap(apex, f.dom(), std::move(to_left)), apex};
    return sq;
}

Token sum_token(std::size_t k, const Token& t) { return std::to_string(k) + ":" + t; }

FinSet sum_set(const std::vector<FinSet>& sets) {
    std::vector<Token> elems;
    for (std::size_t k = 0; k < sets.size(); ++k)
        for (const auto& t : sets[k].elements()) elems.push_back(sum_token(k, t));
    return FinSet(std::move(elems));
}

FinMap sum(const std::vector<FinMap>& maps) {
    std::vector<FinSet> doms, cods;
    for (const auto& m : maps) {
        doms.push_back(m.dom());
        cods.push_back(m.cod());
    }
    FinSet dom = sum_set(doms), cod = sum_set(cods);
    std::map<Token, Token> table;
    for (std::size_t k = 0; k < maps.size(); ++k)
        for (const auto& t : maps[k].dom().elements())
            table[sum_token(k, t)] = sum_token(k, maps[k](t));
    return FinMap(std::move(dom), std::move(cod), std::move(table));
}

FinMap diagonal(const FinMap& f) {
    PbSquare sq = pullback(f, f);
    std::map<Token, Token> table;
    for (const auto& i : f.dom().elements()) table[i] = pair_token(i, i);
    return FinMap(f.dom(), sq.apex, std::move(table));
}

void OrderedMap::check() const {
    for (const auto& j : base.cod().elements()) {
        auto it = fiber_orders.find(j);
        if (it == fiber_orders.end())
            throw StructuralError("OrderedMap: missing fiber order at '" + j + "'");
        std::vector<Token> sorted = it->second;
        std::sort(sorted.begin(), sorted.end());
        if (FinSet(sorted) != fiber(base, j))
            throw StructuralError("OrderedMap: order at '" + j +
                                  "' is not a permutation of the fiber");
    }
    if (fiber_orders.size() != base.cod().size())
        throw StructuralError("OrderedMap: orders mention tokens outside the codomain");
}

void SectionedMap::check() const {
    if (section.dom() != base.cod() || section.cod() != base.dom())
        throw StructuralError("SectionedMap: section has the wrong shape");
    for (const auto& j : base.cod().elements())
        if (base(section(j)) != j)
            throw StructuralError("SectionedMap: base(section(" + j + ")) != " + j);
}

std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod) {
    std::vector<FinMap> result;
    if (dom.empty()) {
        result.push_back(FinMap(dom, cod, {}));
        return result;
    }
    if (cod.empty()) return result;  // no maps from nonempty to empty
    std::size_t n = dom.size(), m = cod.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::map<Token, Token> table;
        for (std::size_t i = 0; i < n; ++i)
            table[dom.elements()[i]] = cod.elements()[idx[i]];
        result.push_back(FinMap(dom, cod, std::move(table)));
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
        if (pos == n) break;
    }
    return result;
}

std::vector<FinMap> all_bijections(const FinSet& dom, const FinSet& cod) {
    std::vector<FinMap> result;
    if (dom.size() != cod.size()) return result;
    std::vector<Token> perm = cod.elements();
    std::sort(perm.begin(), perm.end());
    do {
        std::map<Token, Token> table;
        for (std::size_t i = 0; i < dom.size(); ++i) table[dom.elements()[i]] = perm[i];
        result.push_back(FinMap(dom, cod, std::move(table)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

std::vector<std::vector<Token>> all_orders(const FinSet& s) {
    std::vector<std::vector<Token>> result;
    std::vector<Token> perm = s.elements();
    do {
        result.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

FinMap canonical_relabel(const FinSet& s) {
    FinSet target = FinSet::canonical(s.size());
    std::map<Token, Token> table;
    for (std::size_t i = 0; i < s.size(); ++i)
        table[s.elements()[i]] = target.elements()[i];
    return FinMap(s, target, std::move(table));
}

}  // namespace mcw
