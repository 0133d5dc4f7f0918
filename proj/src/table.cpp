#include <algorithm>

#include "mcw/constructions.hpp"

namespace mcw {

namespace {

std::vector<Token> perm_images(const FinMap& tau) {
    std::vector<Token> images;
    for (const auto& p : tau.dom().elements()) images.push_back(tau(p));
    return images;
}

}  // namespace

TableMulticat::TableMulticat(TableData data) : data_(std::move(data)) {
    // shapes
    for (const auto& [id, s] : data_.arrows) {
        std::size_t n = s.dom.index.size();
        if (n > data_.bound)
            throw StructuralError("table: arrow '" + id + "' exceeds the declared bound");
        if (s.dom.index != FinSet::canonical(n))
            throw StructuralError("table: arrow '" + id + "' is not over a canonical index");
        for (const auto& i : s.dom.index.elements())
            if (!data_.objects.contains(s.dom.at(i)))
                throw StructuralError("table: arrow '" + id + "' has an unknown domain object");
        if (!data_.objects.contains(s.cod))
            throw StructuralError("table: arrow '" + id + "' has an unknown codomain");
        if (data_.base == BaseKind::Tot) {
            std::vector<Token> sorted = s.order;
            std::sort(sorted.begin(), sorted.end());
            if (FinSet(sorted) != s.dom.index)
                throw StructuralError("table: arrow '" + id +
                                      "' needs a total order on its index");
        } else if (!s.order.empty()) {
            throw StructuralError("table: arrow '" + id + "' carries an order over base " +
                                  to_string(data_.base));
        }
    }
    // identities
    for (const auto& o : data_.objects.elements()) {
        auto it = data_.identities.find(o);
        if (it == data_.identities.end())
            throw StructuralError("table: missing identity for '" + o + "'");
        auto a = data_.arrows.find(it->second);
        if (a == data_.arrows.end())
            throw StructuralError("table: identity of '" + o + "' is not an arrow");
        if (a->second.dom.index != FinSet::canonical(1) || a->second.cod != o ||
            a->second.dom.at("1") != o)
            throw StructuralError("table: identity of '" + o + "' has the wrong shape");
    }
    // symmetry entries: shape of every present entry
    for (const auto& [key, res] : data_.symmetry) {
        const auto& [src, images] = key;
        auto s = data_.arrows.find(src);
        auto t = data_.arrows.find(res);
        if (s == data_.arrows.end() || t == data_.arrows.end())
            throw StructuralError("table: symmetry entry mentions unknown arrows");
        std::size_t n = s->second.dom.index.size();
        if (images.size() != n || t->second.dom.index.size() != n ||
            t->second.cod != s->second.cod)
            throw StructuralError("table: symmetry entry for '" + src + "' has the wrong shape");
        const auto& canon = FinSet::canonical(n).elements();
        for (std::size_t k = 0; k < n; ++k)
            if (t->second.dom.at(canon[k]) != s->second.dom.at(images[k]))
                throw StructuralError("table: symmetry entry for '" + src +
                                      "' does not relabel the domain family");
    }
    // compose entries: shape of every present entry
    for (const auto& [key, res] : data_.compose) {
        const auto& [outer, inner] = key;
        auto o = data_.arrows.find(outer);
        auto t = data_.arrows.find(res);
        if (o == data_.arrows.end() || t == data_.arrows.end())
            throw StructuralError("table: compose entry mentions unknown arrows");
        if (inner.size() != o->second.dom.index.size())
            throw StructuralError("table: compose entry for '" + outer +
                                  "' has the wrong number of inner arrows");
        std::size_t total = 0;
        const auto& canon = o->second.dom.index.elements();
        for (std::size_t k = 0; k < inner.size(); ++k) {
            auto a = data_.arrows.find(inner[k]);
            if (a == data_.arrows.end())
                throw StructuralError("table: compose entry mentions unknown inner arrow");
            if (a->second.cod != o->second.dom.at(canon[k]))
                throw StructuralError("table: compose entry for '" + outer +
                                      "' has a codomain mismatch");
            total += a->second.dom.index.size();
        }
        if (t->second.dom.index.size() != total || t->second.cod != o->second.cod)
            throw StructuralError("table: composite of '" + outer + "' has the wrong shape");
    }

    if (!data_.partial) {
        // totality of the symmetry table
        for (const auto& [id, s] : data_.arrows) {
            FinSet idx = s.dom.index;
            for (const auto& tau : all_bijections(idx, idx))
                if (data_.symmetry.find({id, perm_images(tau)}) == data_.symmetry.end())
                    throw StructuralError("table: symmetry table not total at '" + id + "'");
        }
        // totality of the composition table within the bound
        for (const auto& [oid, os] : data_.arrows) {
            std::vector<std::vector<Token>> options;
            const auto& canon = os.dom.index.elements();
            bool any = true;
            for (const auto& p : canon) {
                std::vector<Token> here;
                for (const auto& [aid, as] : data_.arrows)
                    if (as.cod == os.dom.at(p)) here.push_back(aid);
                options.push_back(here);
                if (here.empty()) any = false;
            }
            if (!any) continue;
            std::vector<std::size_t> pick(options.size(), 0);
            while (true) {
                std::vector<Token> inner;
                std::size_t total = 0;
                for (std::size_t k = 0; k < options.size(); ++k) {
                    inner.push_back(options[k][pick[k]]);
                    total += data_.arrows.at(inner.back()).dom.index.size();
                }
                if (total <= data_.bound &&
                    data_.compose.find({oid, inner}) == data_.compose.end())
                    throw StructuralError("table: composition table not total at '" + oid + "'");
                std::size_t p = 0;
                while (p < options.size() && ++pick[p] == options[p].size()) pick[p++] = 0;
                if (p == options.size() || options.empty()) break;
            }
        }
    }
}

MultiArrow TableMulticat::derive(const Token& stored, const FinSet& index) const {
    const auto& s = data_.arrows.at(stored);
    FinMap rho = canonical_relabel(index);  // index -> c(n)
    std::map<Token, Token> assign;
    for (const auto& i : index.elements()) assign[i] = s.dom.at(rho(i));
    std::vector<Token> order;
    if (!s.order.empty()) {
        FinMap inv = rho.inverse();
        for (const auto& p : s.order) order.push_back(inv(p));
    }
    return MultiArrow{stored, ObjFamily(index, std::move(assign)), s.cod, std::move(order)};
}

std::vector<MultiArrow> TableMulticat::arrows(const ObjFamily& dom, const Token& cod) const {
    std::size_t n = dom.index.size();
    if (n > data_.bound)
        throw BoundExceeded("table: family of size " + std::to_string(n) +
                            " exceeds the table bound " + std::to_string(data_.bound));
    FinMap rho = canonical_relabel(dom.index);
    FinMap inv = rho.inverse();
    std::map<Token, Token> canon_assign;
    for (const auto& p : FinSet::canonical(n).elements()) canon_assign[p] = dom.at(inv(p));
    ObjFamily canon(FinSet::canonical(n), std::move(canon_assign));

    std::vector<MultiArrow> result;
    for (const auto& [id, s] : data_.arrows)
        if (s.cod == cod && s.dom == canon) result.push_back(derive(id, dom.index));
    return result;
}

MultiArrow TableMulticat::identity(const Token& obj, const Token& index_token) const {
    auto it = data_.identities.find(obj);
    if (it == data_.identities.end())
        throw StructuralError("table: unknown object '" + obj + "'");
    return derive(it->second, FinSet({index_token}));
}

MultiArrow TableMulticat::reindex(const MultiArrow& a, const FinMap& sigma) const {
    if (!sigma.is_bijective())
        throw StructuralError("table: reindexing requires a bijection");
    FinMap rho_old = canonical_relabel(a.dom.index);
    FinMap rho_new = canonical_relabel(sigma.dom());
    FinMap tau = compose(rho_old, compose(sigma, rho_new.inverse()));
    auto it = data_.symmetry.find({a.name, perm_images(tau)});
    if (it == data_.symmetry.end()) {
        if (data_.partial)
            throw BoundExceeded("table: symmetry entry missing for '" + a.name + "'");
        throw StructuralError("table: symmetry entry missing for '" + a.name + "'");
    }
    return derive(it->second, sigma.dom());
}

MultiArrow TableMulticat::compose_conn(const MultiArrow& outer,
                                       const std::map<Token, MultiArrow>& inner) const {
    check_composable(outer, inner);
    FinMap rho_outer = canonical_relabel(outer.dom.index);
    FinMap inv_outer = rho_outer.inverse();

    std::vector<Token> inner_ids;
    std::vector<Token> union_tokens;
    std::map<Token, Token> union_assign;
    std::vector<std::pair<Token, Token>> convention;  // (actual token, canonical position)
    std::size_t running = 0, total = 0;
    for (const auto& a : inner) total += a.second.dom.index.size();
    if (total > data_.bound)
        throw BoundExceeded("table: composite of size " + std::to_string(total) +
                            " exceeds the table bound");
    FinSet target = FinSet::canonical(total);
    for (const auto& p : FinSet::canonical(outer.dom.index.size()).elements()) {
        const MultiArrow& a = inner.at(inv_outer(p));
        inner_ids.push_back(a.name);
        FinMap rho_a = canonical_relabel(a.dom.index);
        FinMap inv_a = rho_a.inverse();
        for (const auto& q : FinSet::canonical(a.dom.index.size()).elements()) {
            Token actual = inv_a(q);
            union_tokens.push_back(actual);
            union_assign[actual] = a.dom.at(actual);
            convention.emplace_back(actual, target.elements()[running++]);
        }
    }
    auto it = data_.compose.find({outer.name, inner_ids});
    if (it == data_.compose.end()) {
        if (data_.partial)
            throw BoundExceeded("table: compose entry missing for '" + outer.name + "'");
        throw StructuralError("table: compose entry missing for '" + outer.name + "'");
    }
    FinSet union_index(union_tokens);
    // phi: actual union index -> canonical positions per the table convention
    std::map<Token, Token> phi_table;
    for (const auto& [actual, pos] : convention) phi_table[actual] = pos;
    FinMap phi(union_index, target, std::move(phi_table));
    FinMap rho_u = canonical_relabel(union_index);
    FinMap tau2 = compose(phi, rho_u.inverse());

    Token stored = it->second;
    if (total > 0) {
        auto sym = data_.symmetry.find({stored, perm_images(tau2)});
        if (sym == data_.symmetry.end()) {
            if (data_.partial)
                throw BoundExceeded("table: symmetry entry missing for composite '" + stored + "'");
            throw StructuralError("table: symmetry entry missing for composite '" + stored + "'");
        }
        stored = sym->second;
    }
    return derive(stored, union_index);
}

std::string TableMulticat::describe() const {
    return "table multicategory over " + to_string(data_.base);
}

TableData export_table(const Multicat& m, std::size_t bound) {
    TableData data;
    data.objects = m.objects();
    data.base = m.base();
    data.bound = bound;

    std::map<MultiArrow, Token> ids;
    std::size_t counter = 0;
    std::vector<MultiArrow> stored;
    for (std::size_t n = 0; n <= bound; ++n) {
        FinSet idx = FinSet::canonical(n);
        for (const auto& fam : all_families(m, idx))
            for (const auto& a : m.arrows_from(fam)) {
                Token id = "a" + std::to_string(counter++);
                ids[a] = id;
                data.arrows[id] = TableData::Stored{a.dom, a.cod, a.order};
                stored.push_back(a);
            }
    }
    auto lookup = [&](const MultiArrow& a) -> const Token& {
        auto it = ids.find(a);
        if (it == ids.end())
            throw BoundExceeded("export_table: arrow outside the bounded fragment: " +
                                mcw::describe(a));
        return it->second;
    };

    for (const auto& o : data.objects.elements())
        data.identities[o] = lookup(m.identity(o, "1"));

    for (const auto& a : stored) {
        for (const auto& tau : all_bijections(a.dom.index, a.dom.index))
            data.symmetry[{ids[a], perm_images(tau)}] = lookup(m.reindex(a, tau));
    }

    for (const auto& outer : stored) {
        std::size_t arity = outer.dom.index.size();
        const auto& canon = outer.dom.index.elements();
        std::vector<std::vector<const MultiArrow*>> options(arity);
        for (std::size_t k = 0; k < arity; ++k) {
            for (const auto& a : stored)
                if (a.cod == outer.dom.at(canon[k])) options[k].push_back(&a);
            if (options[k].empty()) break;
        }
        bool feasible = true;
        for (const auto& opt : options)
            if (opt.empty()) feasible = false;
        if (!feasible) continue;
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
            std::vector<Token> inner_ids;
            std::size_t total = 0;
            for (std::size_t k = 0; k < arity; ++k) {
                inner_ids.push_back(ids[*options[k][pick[k]]]);
                total += options[k][pick[k]]->dom.index.size();
            }
            if (total <= bound) {
                std::vector<MultiArrow> by_pos;
                for (std::size_t k = 0; k < arity; ++k) by_pos.push_back(*options[k][pick[k]]);
                MultiArrow comp = compose_blockwise(m, outer, by_pos);
                data.compose[{ids[outer], inner_ids}] = lookup(comp);
            }
            std::size_t p = 0;
            while (p < arity && ++pick[p] == options[p].size()) pick[p++] = 0;
            if (p == arity || arity == 0) break;
        }
    }
    return data;
}

}  // namespace mcw
