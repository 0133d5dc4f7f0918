#include "mcw/multicat.hpp"

#include <algorithm>

namespace mcw {

std::string to_string(BaseKind k) {
    switch (k) {
        case BaseKind::Pb: return "Pb";
        case BaseKind::Bij: return "Bij";
        case BaseKind::Tot: return "Tot";
        case BaseKind::Sec: return "Sec";
    }
    return "?";
}

BaseKind base_kind_from_string(const std::string& s) {
    if (s == "Pb") return BaseKind::Pb;
    if (s == "Bij") return BaseKind::Bij;
    if (s == "Tot") return BaseKind::Tot;
    if (s == "Sec") return BaseKind::Sec;
    throw StructuralError("unknown base kind '" + s + "'");
}

ObjFamily::ObjFamily(FinSet index_, std::map<Token, Token> assign_)
    : index(std::move(index_)), assign(std::move(assign_)) {
    for (const auto& i : index.elements())
        if (assign.find(i) == assign.end())
            throw StructuralError("ObjFamily: assignment not total at '" + i + "'");
    if (assign.size() != index.size())
        throw StructuralError("ObjFamily: assignment mentions tokens outside the index");
}

ObjFamily ObjFamily::constant(const FinSet& index, const Token& obj) {
    std::map<Token, Token> assign;
    for (const auto& i : index.elements()) assign[i] = obj;
    return ObjFamily(index, std::move(assign));
}

ObjFamily ObjFamily::single(const Token& index_token, const Token& obj) {
    return ObjFamily(FinSet({index_token}), {{index_token, obj}});
}

const Token& ObjFamily::at(const Token& i) const {
    auto it = assign.find(i);
    if (it == assign.end())
        throw StructuralError("ObjFamily: token '" + i + "' not in index");
    return it->second;
}

ObjFamily ObjFamily::restrict(const FinSet& sub) const {
    std::map<Token, Token> a;
    for (const auto& i : sub.elements()) a[i] = at(i);
    return ObjFamily(sub, std::move(a));
}

ObjFamily ObjFamily::reindex(const FinMap& sigma) const {
    if (sigma.cod() != index)
        throw StructuralError("ObjFamily::reindex: map does not land in the index");
    std::map<Token, Token> a;
    for (const auto& i : sigma.dom().elements()) a[i] = at(sigma(i));
    return ObjFamily(sigma.dom(), std::move(a));
}

namespace {

std::string encode_family(const ObjFamily& f) {
    std::string out = "{";
    bool first = true;
    for (const auto& i : f.index.elements()) {
        if (!first) out += ",";
        first = false;
        out += i + ":" + f.at(i);
    }
    return out + "}";
}

}  // namespace

std::string describe(const ObjFamily& f) { return encode_family(f); }

std::string describe(const MultiArrow& a) {
    std::string out = a.name + ":" + encode_family(a.dom) + "->" + a.cod;
    if (!a.order.empty()) {
        out += "|ord=[";
        for (std::size_t i = 0; i < a.order.size(); ++i) {
            if (i) out += ",";
            out += a.order[i];
        }
        out += "]";
    }
    return out;
}

ObjFamily LooseArrow::dom() const {
    std::map<Token, Token> assign;
    std::vector<Token> idx;
    for (const auto& [j, comp] : components)
        for (const auto& i : comp.dom.index.elements()) {
            idx.push_back(i);
            assign[i] = comp.dom.at(i);
        }
    return ObjFamily(FinSet(std::move(idx)), std::move(assign));
}

ObjFamily LooseArrow::cod() const {
    std::map<Token, Token> assign;
    for (const auto& [j, comp] : components) assign[j] = comp.cod;
    return ObjFamily(base.cod(), std::move(assign));
}

void LooseArrow::check() const {
    if (components.size() != base.cod().size())
        throw StructuralError("LooseArrow: one component per codomain token required");
    for (const auto& [j, comp] : components) {
        if (!base.cod().contains(j))
            throw StructuralError("LooseArrow: component key '" + j + "' not in codomain");
        if (comp.dom.index != fiber(base, j))
            throw StructuralError("LooseArrow: component at '" + j +
                                  "' is not indexed by the fiber");
    }
}

std::string describe(const FinMap& f) {
    std::string out = "map{";
    bool first = true;
    for (const auto& [k, v] : f.table()) {
        if (!first) out += ",";
        first = false;
        out += k + "->" + v;
    }
    return out + "}";
}

std::string describe(const LooseArrow& a) {
    std::string out = "loose" + describe(a.base) + "{";
    bool first = true;
    for (const auto& [j, comp] : a.components) {
        if (!first) out += ";";
        first = false;
        out += j + "<-" + describe(comp);
    }
    return out + "}";
}

std::vector<MultiArrow> Multicat::arrows_from(const ObjFamily& dom) const {
    std::vector<MultiArrow> result;
    for (const auto& c : objects().elements()) {
        auto arr = arrows(dom, c);
        result.insert(result.end(), arr.begin(), arr.end());
    }
    return result;
}

void Multicat::check_composable(const MultiArrow& outer,
                                const std::map<Token, MultiArrow>& inner) const {
    if (inner.size() != outer.dom.index.size())
        throw StructuralError("compose_conn: need one inner arrow per outer domain token");
    std::vector<Token> all;
    for (const auto& [j, a] : inner) {
        if (!outer.dom.index.contains(j))
            throw StructuralError("compose_conn: inner key '" + j + "' not in outer domain");
        if (a.cod != outer.dom.at(j))
            throw StructuralError("compose_conn: codomain mismatch at '" + j + "'");
        for (const auto& i : a.dom.index.elements()) all.push_back(i);
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw StructuralError("compose_conn: inner domains are not disjoint");
}

LooseArrow identity_loose(const Multicat& m, const ObjFamily& x) {
    LooseArrow w;
    w.base = FinMap::identity(x.index);
    for (const auto& i : x.index.elements()) w.components[i] = m.identity(x.at(i), i);
    return w;
}

LooseArrow make_loose(const FinMap& base, std::map<Token, MultiArrow> components) {
    LooseArrow w{base, std::move(components)};
    w.check();
    return w;
}

LooseArrow compose_loose(const Multicat& m, const LooseArrow& g, const LooseArrow& f) {
    if (f.base.cod() != g.base.dom())
        throw StructuralError("compose_loose: bases are not composable");
    if (f.cod() != g.dom())
        throw StructuralError("compose_loose: family mismatch");
    LooseArrow result;
    result.base = compose(g.base, f.base);
    for (const auto& [k, outer] : g.components) {
        std::map<Token, MultiArrow> inner;
        for (const auto& j : fiber(g.base, k).elements()) inner[j] = f.components.at(j);
        result.components[k] = m.compose_conn(outer, inner);
    }
    return result;
}

MultiArrow compose_conn_loose(const Multicat& m, const MultiArrow& outer,
                              const LooseArrow& inner) {
    if (inner.cod() != outer.dom)
        throw StructuralError("compose_conn_loose: family mismatch");
    return m.compose_conn(outer, inner.components);
}

void LooseCell::check() const {
    if (trusted) return;
    if (compose(bottom, left) != compose(right, top))
        throw StructuralError("LooseCell: square does not commute");
    // universal property: (left, top) must embed the corner bijectively
    // onto the canonical pullback apex
    PbSquare sq = pullback(bottom, right);
    if (top.dom() != left.dom())
        throw StructuralError("LooseCell: top and left legs disagree on the corner");
    if (top.dom().size() != sq.apex.size())
        throw StructuralError("LooseCell: square is not a pullback (size mismatch)");
    std::vector<Token> seen;
    for (const auto& i : top.dom().elements()) seen.push_back(pair_token(left(i), top(i)));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw StructuralError("LooseCell: square is not a pullback (not jointly monic)");
}

LooseArrow reindex_loose(const Multicat& m, const LooseArrow& w, const LooseCell& cell) {
    if (cell.bottom != w.base)
        throw StructuralError("reindex_loose: cell bottom is not the arrow base");
    cell.check();
    LooseArrow result;
    result.base = cell.top;
    for (const auto& jp : cell.top.cod().elements()) {
        const Token& j = cell.right(jp);
        FinSet fib_new = fiber(cell.top, jp);
        FinSet fib_old = fiber(w.base, j);
        std::map<Token, Token> table;
        for (const auto& i : fib_new.elements()) table[i] = cell.left(i);
        FinMap sigma(fib_new, fib_old, std::move(table));
        result.components[jp] = m.reindex(w.components.at(j), sigma);
    }
    return result;
}

LooseCell canonical_cell(const FinMap& bottom, const FinMap& right) {
    PbSquare sq = pullback(bottom, right);
    return LooseCell{sq.top, sq.left, right, bottom, true};
}

LooseCell bijective_cell(const FinMap& bottom, const FinMap& dom_bij, const FinMap& cod_bij) {
    if (!dom_bij.is_bijective() || !cod_bij.is_bijective())
        throw StructuralError("bijective_cell: legs must be bijections");
    FinMap top = compose(cod_bij.inverse(), compose(bottom, dom_bij));
    return LooseCell{top, dom_bij, cod_bij, bottom, true};
}

MultiArrow compose_blockwise(const Multicat& m, const MultiArrow& outer,
                             const std::vector<MultiArrow>& inner_by_position) {
    const auto& canon = outer.dom.index.elements();
    if (inner_by_position.size() != canon.size())
        throw StructuralError("compose_blockwise: arity mismatch");
    std::size_t total = 0;
    for (const auto& a : inner_by_position) total += a.dom.index.size();
    FinSet target = FinSet::canonical(total);
    std::map<Token, MultiArrow> inner;
    std::size_t running = 0;
    for (std::size_t k = 0; k < canon.size(); ++k) {
        const MultiArrow& orig = inner_by_position[k];
        std::vector<Token> block;
        for (std::size_t q = 0; q < orig.dom.index.size(); ++q)
            block.push_back(target.elements()[running++]);
        FinSet block_set(block);
        std::map<Token, Token> tab;
        for (std::size_t q = 0; q < block.size(); ++q)
            tab[block_set.elements()[q]] = orig.dom.index.elements()[q];
        FinMap sigma(block_set, orig.dom.index, std::move(tab));
        inner.emplace(canon[k], m.reindex(orig, sigma));
    }
    return m.compose_conn(outer, inner);
}

std::vector<ObjFamily> all_families(const Multicat& m, const FinSet& index) {
    std::vector<ObjFamily> result;
    const auto& objs = m.objects().elements();
    std::size_t n = index.size();
    if (n == 0) {
        result.push_back(ObjFamily(index, {}));
        return result;
    }
    if (objs.empty()) return result;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::map<Token, Token> assign;
        for (std::size_t i = 0; i < n; ++i) assign[index.elements()[i]] = objs[idx[i]];
        result.push_back(ObjFamily(index, std::move(assign)));
        std::size_t p = 0;
        while (p < n && ++idx[p] == objs.size()) idx[p++] = 0;
        if (p == n) break;
    }
    return result;
}

std::vector<ObjFamily> all_canonical_families(const Multicat& m, std::size_t max_size) {
    std::vector<ObjFamily> result;
    for (std::size_t n = 0; n <= max_size; ++n)
        for (auto& f : all_families(m, FinSet::canonical(n))) result.push_back(std::move(f));
    return result;
}

std::vector<LooseArrow> all_loose(const Multicat& m, const ObjFamily& dom, const FinMap& base) {
    if (base.dom() != dom.index)
        throw StructuralError("all_loose: base does not start at the family index");
    std::vector<Token> cods = base.cod().elements();
    std::vector<std::vector<MultiArrow>> options;
    for (const auto& j : cods) {
        options.push_back(m.arrows_from(dom.restrict(fiber(base, j))));
        if (options.back().empty()) return {};
    }
    std::vector<LooseArrow> result;
    std::vector<std::size_t> pick(cods.size(), 0);
    while (true) {
        LooseArrow w;
        w.base = base;
        for (std::size_t k = 0; k < cods.size(); ++k) w.components[cods[k]] = options[k][pick[k]];
        result.push_back(std::move(w));
        std::size_t p = 0;
        while (p < cods.size() && ++pick[p] == options[p].size()) pick[p++] = 0;
        if (p == cods.size()) break;
    }
    return result;
}

std::vector<LooseArrow> all_loose_into(const Multicat& m, const ObjFamily& dom,
                                       const FinMap& base, const ObjFamily& cod) {
    std::vector<Token> cods = base.cod().elements();
    std::vector<std::vector<MultiArrow>> options;
    for (const auto& j : cods) {
        options.push_back(m.arrows(dom.restrict(fiber(base, j)), cod.at(j)));
        if (options.back().empty()) return {};
    }
    std::vector<LooseArrow> result;
    if (cods.empty()) {
        LooseArrow w;
        w.base = base;
        result.push_back(std::move(w));
        return result;
    }
    std::vector<std::size_t> pick(cods.size(), 0);
    while (true) {
        LooseArrow w;
        w.base = base;
        for (std::size_t k = 0; k < cods.size(); ++k) w.components[cods[k]] = options[k][pick[k]];
        result.push_back(std::move(w));
        std::size_t p = 0;
        while (p < cods.size() && ++pick[p] == options[p].size()) pick[p++] = 0;
        if (p == cods.size()) break;
    }
    return result;
}

namespace {

std::vector<std::vector<Token>> glue_check_orders(const MultiArrow& outer,
                                                  const std::map<Token, MultiArrow>& inner) {
    std::vector<Token> glued;
    for (const auto& j : outer.order)
        for (const auto& i : inner.at(j).order) glued.push_back(i);
    return {glued};
}

}  // namespace

Report validate(const Multicat& m, std::size_t bound) {
    Report r;
    const bool tot = m.base() == BaseKind::Tot;
    auto guarded = [&r](auto&& fn) {
        ++r.instances;
        try {
            fn();
        } catch (const BoundExceeded&) {
            ++r.skipped;
        }
    };

    auto families = all_canonical_families(m, bound);

    // unary-only base
    if (m.base() == BaseKind::Bij) {
        for (const auto& x : families) {
            ++r.instances;
            if (x.index.size() != 1 && !m.arrows_from(x).empty())
                r.add("bij-unary", encode_family(x),
                      "Bij-based multicategory has a non-unary arrow");
        }
    }

    // identity and action laws
    for (const auto& x : families) {
        for (const auto& alpha : m.arrows_from(x)) {
            guarded([&] {
                // right unit
                std::map<Token, MultiArrow> ids;
                for (const auto& i : x.index.elements()) ids[i] = m.identity(x.at(i), i);
                if (m.compose_conn(alpha, ids) != alpha)
                    r.add("unit-right", describe(alpha),
                          "composing with identities changed the arrow");
                // left unit
                MultiArrow idc = m.identity(alpha.cod, "1");
                std::map<Token, MultiArrow> inner{{"1", alpha}};
                if (m.compose_conn(idc, inner) != alpha)
                    r.add("unit-left", describe(alpha), "identity after the arrow changed it");
                // action: identity
                if (m.reindex(alpha, FinMap::identity(x.index)) != alpha)
                    r.add("action-id", describe(alpha),
                          "reindexing along the identity changed the arrow");
                // action: functoriality over permutations of canonical sets
                for (const auto& sigma : all_bijections(x.index, x.index))
                    for (const auto& tau : all_bijections(x.index, x.index)) {
                        if (m.reindex(m.reindex(alpha, sigma), tau) !=
                            m.reindex(alpha, compose(sigma, tau)))
                            r.add("action-comp", describe(alpha),
                                  "symmetric action is not functorial");
                    }
            });
        }
    }

    // associativity and equivariance over bounded composable configurations
    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet K = FinSet::canonical(nk);
        for (const auto& z : all_families(m, K))
            for (const auto& gamma : m.arrows_from(z))
                for (std::size_t nj = 0; nj <= bound; ++nj) {
                    FinSet J = FinSet::canonical(nj);
                    for (const auto& g : all_maps(J, K))
                        for (const auto& y : all_families(m, J))
                            for (const auto& b : all_loose_into(m, y, g, z)) {
                                // associativity needs a second loose layer
                                for (std::size_t ni = 0; ni <= bound; ++ni) {
                                    FinSet I = FinSet::canonical(ni);
                                    for (const auto& f : all_maps(I, J))
                                        for (const auto& x : all_families(m, I))
                                            for (const auto& a :
                                                 all_loose_into(m, x, f, y))
                                                guarded([&] {
                                                    MultiArrow lhs = compose_conn_loose(
                                                        m, compose_conn_loose(m, gamma, b), a);
                                                    MultiArrow rhs = compose_conn_loose(
                                                        m, gamma, compose_loose(m, b, a));
                                                    if (lhs != rhs)
                                                        r.add("assoc",
                                                              describe(gamma) + " ; " +
                                                                  describe(b) + " ; " +
                                                                  describe(a),
                                                              "the two association orders "
                                                              "disagree");
                                                });
                                }
                                // Tot gluing of the decoration
                                if (tot)
                                    guarded([&] {
                                        MultiArrow comp = compose_conn_loose(m, gamma, b);
                                        auto glued = glue_check_orders(gamma, b.components)[0];
                                        if (comp.order != glued)
                                            r.add("tot-glue",
                                                  describe(gamma) + " ; " + describe(b),
                                                  "composite order is not the glued order");
                                    });
                            }
                }
    }

    // equivariance: reindexing a composite along a canonical cell equals the
    // composite of the reindexed layers
    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet K = FinSet::canonical(nk);
        for (std::size_t nj = 0; nj <= bound; ++nj) {
            FinSet J = FinSet::canonical(nj);
            for (const auto& g : all_maps(J, K))
                for (const auto& y : all_families(m, J))
                    for (const auto& b : all_loose(m, y, g)) {
                        // group composables by the base of the inner layer
                        std::map<FinMap, std::vector<std::pair<LooseArrow, LooseArrow>>> groups;
                        for (std::size_t ni = 0; ni <= bound; ++ni) {
                            FinSet I = FinSet::canonical(ni);
                            for (const auto& f : all_maps(I, J))
                                for (const auto& x : all_families(m, I))
                                    for (const auto& a : all_loose_into(m, x, f, y)) {
                                        try {
                                            groups[f].emplace_back(a, compose_loose(m, b, a));
                                        } catch (const BoundExceeded&) {
                                            ++r.skipped;
                                        }
                                    }
                        }
                        for (std::size_t nv = 0; nv <= bound; ++nv)
                            for (const auto& v : all_maps(FinSet::canonical(nv), K)) {
                                LooseCell cb = canonical_cell(g, v);
                                LooseArrow b2 = reindex_loose(m, b, cb);
                                for (const auto& [f, pairs] : groups) {
                                    LooseCell cd = canonical_cell(compose(g, f), v);
                                    LooseCell ca = canonical_cell(f, cb.left);
                                    // match indexes (i,(j,k')) -> (i,k')
                                    std::map<Token, Token> tab;
                                    for (const auto& t : ca.top.dom().elements())
                                        tab[t] = pair_token(ca.left(t), cb.top(ca.top(t)));
                                    FinMap psi(ca.top.dom(), cd.top.dom(), std::move(tab));
                                    for (const auto& [a, c] : pairs)
                                        guarded([&] {
                                            LooseArrow lhs = reindex_loose(m, c, cd);
                                            LooseArrow a2 = reindex_loose(m, a, ca);
                                            LooseArrow rhs = compose_loose(m, b2, a2);
                                            LooseCell relab = bijective_cell(
                                                lhs.base, psi, FinMap::identity(cd.top.cod()));
                                            LooseArrow lhs_rel = reindex_loose(m, lhs, relab);
                                            if (lhs_rel != rhs)
                                                r.add("equivariance",
                                                      describe(b) + " ; " + describe(a) +
                                                          " ; v=" + describe(v),
                                                      "cell reindexing does not commute "
                                                      "with composition");
                                        });
                                }
                            }
                    }
        }
    }

    r.finalize();
    if (r.skipped > 0 && r.status == Report::Status::Pass)
        r.status = Report::Status::BoundExceeded;
    return r;
}

}  // namespace mcw
