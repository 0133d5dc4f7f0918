#include "mcw/represent.hpp"

#include <algorithm>
#include <functional>

namespace mcw {

bool is_algebra(const Multicat& m, std::size_t bound) {
    for (const auto& x : all_canonical_families(m, bound))
        if (m.arrows_from(x).size() != 1) return false;
    return true;
}

bool is_opcartesian(const Multicat& m, const LooseArrow& u, std::size_t bound) {
    ObjFamily x = u.dom();
    ObjFamily p = u.cod();
    const FinSet& j = u.base.cod();
    for (std::size_t nn = 0; nn <= bound; ++nn) {
        FinSet n = FinSet::canonical(nn);
        for (const auto& g : all_maps(j, n)) {
            FinMap h = compose(g, u.base);
            for (const auto& w : all_loose(m, x, h)) {
                std::size_t count = 0;
                for (const auto& t : all_loose_into(m, p, g, w.cod()))
                    if (compose_loose(m, t, u) == w) ++count;
                if (count != 1) return false;
            }
        }
    }
    return true;
}

namespace {

bool is_stably_opcartesian(const Multicat& m, const LooseArrow& u, std::size_t bound) {
    if (!is_opcartesian(m, u, bound)) return false;
    const FinSet& j = u.base.cod();
    for (std::size_t nl = 0; nl <= bound; ++nl) {
        for (const auto& l : all_maps(FinSet::canonical(nl), j)) {
            LooseCell cell = canonical_cell(u.base, l);
            LooseArrow moved = reindex_loose(m, u, cell);
            if (!is_opcartesian(m, moved, bound)) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<LooseArrow> find_opcartesian(const Multicat& m, const ObjFamily& x,
                                           const FinMap& f, std::size_t bound) {
    for (const auto& u : all_loose(m, x, f))
        if (is_stably_opcartesian(m, u, bound)) return u;
    return std::nullopt;
}

Report is_representable(const Multicat& m, std::size_t bound) {
    Report r;
    for (const auto& x : all_canonical_families(m, bound))
        for (std::size_t nj = 0; nj <= bound; ++nj)
            for (const auto& f : all_maps(x.index, FinSet::canonical(nj))) {
                ++r.instances;
                if (!find_opcartesian(m, x, f, bound))
                    r.add("representability", describe(x) + " along " + describe(f),
                          "no stably opcartesian arrow in range");
            }
    r.finalize();
    return r;
}

namespace {

class BurnsideMulticat final : public Multicat {
  public:
    BurnsideMulticat(MulticatPtr inner, std::size_t bound)
        : inner_(std::move(inner)), bound_(bound) {
        // unary isomorphism classes
        std::vector<Token> objs = inner_->objects().elements();
        std::map<Token, Token> leader;
        for (const auto& o : objs) leader[o] = o;
        auto find = [&](Token t) {
            while (leader[t] != t) t = leader[t];
            return t;
        };
        for (const auto& a : objs)
            for (const auto& b : objs) {
                if (find(a) == find(b)) continue;
                if (unary_iso(a, b)) {
                    Token ra = find(a), rb = find(b);
                    Token low = std::min(ra, rb), high = std::max(ra, rb);
                    leader[high] = low;
                }
            }
        std::vector<Token> classes;
        for (const auto& o : objs) {
            rep_[o] = find(o);
            if (rep_[o] == o) classes.push_back(class_token(o));
        }
        objects_ = FinSet(std::move(classes));
    }

    BaseKind base() const override { return inner_->base(); }
    const FinSet& objects() const override { return objects_; }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (!objects_.contains(cod))
            throw StructuralError("burnside: unknown class '" + cod + "'");
        auto target = tensor_class(dom);
        if (!target || *target != cod) return {};
        return {MultiArrow{"sum", dom, cod, {}}};
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return MultiArrow{"sum", ObjFamily::single(index_token, obj), obj, {}};
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return MultiArrow{"sum", a.dom.reindex(sigma), a.cod, {}};
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
        ObjFamily dom(FinSet(std::move(idx)), std::move(assign));
        auto target = tensor_class(dom);
        if (!target || *target != outer.cod)
            throw StructuralError("burnside: composite has no opcartesian target in range");
        return MultiArrow{"sum", std::move(dom), outer.cod, {}};
    }

    std::string describe() const override {
        return "burnside classes of " + inner_->describe();
    }

  private:
    static Token class_token(const Token& rep) { return "[" + rep + "]"; }

    bool unary_iso(const Token& a, const Token& b) const {
        ObjFamily fa = ObjFamily::single("1", a);
        ObjFamily fb = ObjFamily::single("1", b);
        MultiArrow ida = inner_->identity(a, "1");
        MultiArrow idb = inner_->identity(b, "1");
        for (const auto& u : inner_->arrows(fa, b))
            for (const auto& v : inner_->arrows(fb, a)) {
                if (inner_->compose_conn(v, {{"1", u}}) == ida &&
                    inner_->compose_conn(u, {{"1", v}}) == idb)
                    return true;
            }
        return false;
    }

    /// The class of the opcartesian target of the representative family.
    std::optional<Token> tensor_class(const ObjFamily& dom) const {
        auto it = tensor_cache_.find(dom);
        if (it != tensor_cache_.end()) return it->second;
        std::map<Token, Token> assign;
        for (const auto& i : dom.index.elements()) {
            const Token& cls = dom.at(i);
            if (cls.size() < 2 || cls.front() != '[' || cls.back() != ']')
                throw StructuralError("burnside: malformed class token '" + cls + "'");
            assign[i] = cls.substr(1, cls.size() - 2);
        }
        ObjFamily lifted(dom.index, std::move(assign));
        FinMap to_point = FinMap::constant(dom.index, FinSet({"1"}), "1");
        std::optional<Token> result;
        if (auto u = find_opcartesian(*inner_, lifted, to_point, bound_))
            result = class_token(rep_.at(u->cod().at("1")));
        tensor_cache_[dom] = result;
        return result;
    }

    MulticatPtr inner_;
    std::size_t bound_;
    FinSet objects_;
    std::map<Token, Token> rep_;
    mutable std::map<ObjFamily, std::optional<Token>> tensor_cache_;
};

}  // namespace

MulticatPtr burnside(MulticatPtr m, std::size_t bound) {
    return std::make_shared<BurnsideMulticat>(std::move(m), bound);
}

std::vector<Token> lift_order(const Multicat& m, const PlainLift& lift, const MultiArrow& a) {
    FinMap can = canonical_relabel(a.dom.index);  // index -> c(n)
    MultiArrow canonical = m.reindex(a, can.inverse());
    auto it = lift.orders.find(canonical);
    if (it == lift.orders.end())
        throw StructuralError("lift_order: arrow outside the lifted range: " + describe(a));
    FinMap inv = can.inverse();
    std::vector<Token> order;
    for (const auto& p : it->second) order.push_back(inv(p));
    return order;
}

PlainLift plain_structure(const Multicat& m, std::size_t bound) {
    PlainLift lift;

    // arrows over canonical families, grouped into orbits of the
    // permutation action
    std::vector<MultiArrow> arrows;
    for (const auto& x : all_canonical_families(m, bound))
        for (const auto& a : m.arrows_from(x)) arrows.push_back(a);

    for (const auto& a : arrows) {
        for (const auto& sigma : all_bijections(a.dom.index, a.dom.index)) {
            if (sigma == FinMap::identity(a.dom.index)) continue;
            MultiArrow moved = m.reindex(a, sigma);
            if (moved == a) {
                lift.rigid = false;
                lift.stabilizer_witness = {a, sigma};
                return lift;
            }
        }
    }

    // orbits
    std::map<MultiArrow, std::size_t> orbit_of;
    std::vector<std::vector<std::pair<MultiArrow, FinMap>>> orbits;  // (member, sigma) rep∘sigma
    for (const auto& a : arrows) {
        if (orbit_of.count(a)) continue;
        std::vector<std::pair<MultiArrow, FinMap>> orbit;
        for (const auto& sigma : all_bijections(a.dom.index, a.dom.index)) {
            MultiArrow moved = m.reindex(a, sigma);
            if (!orbit_of.count(moved)) {
                orbit_of[moved] = orbits.size();
                orbit.emplace_back(moved, sigma);
            }
        }
        orbits.push_back(std::move(orbit));
    }

    // composition constraints within the bound
    struct Constraint {
        MultiArrow outer;
        LooseArrow inner;
        MultiArrow composite;
    };
    std::vector<Constraint> constraints;
    for (const auto& z : all_canonical_families(m, bound))
        for (const auto& gamma : m.arrows_from(z))
            for (std::size_t nj = 0; nj <= bound; ++nj) {
                FinSet j = FinSet::canonical(nj);
                for (const auto& g : all_maps(j, z.index))
                    for (const auto& y : all_families(m, j))
                        for (const auto& b : all_loose_into(m, y, g, z))
                            constraints.push_back({gamma, b, compose_conn_loose(m, gamma, b)});
            }

    // backtracking over per-orbit order choices
    std::map<MultiArrow, std::vector<Token>> chosen;
    auto order_of = [&](const MultiArrow& a) -> std::optional<std::vector<Token>> {
        FinMap can = canonical_relabel(a.dom.index);
        MultiArrow canonical = m.reindex(a, can.inverse());
        auto it = chosen.find(canonical);
        if (it == chosen.end()) return std::nullopt;
        FinMap inv = can.inverse();
        std::vector<Token> order;
        for (const auto& p : it->second) order.push_back(inv(p));
        return order;
    };
    auto constraints_ok = [&]() {
        for (const auto& c : constraints) {
            auto outer_ord = order_of(c.outer);
            if (!outer_ord) continue;
            auto comp_ord = order_of(c.composite);
            if (!comp_ord) continue;
            std::vector<Token> glued;
            bool all_known = true;
            for (const auto& jtok : *outer_ord) {
                auto inner_ord = order_of(c.inner.components.at(jtok));
                if (!inner_ord) {
                    all_known = false;
                    break;
                }
                glued.insert(glued.end(), inner_ord->begin(), inner_ord->end());
            }
            if (all_known && glued != *comp_ord) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t k) {
        if (k == orbits.size()) return true;
        const auto& [rep, sigma0] = orbits[k][0];
        (void)sigma0;
        for (const auto& ord : all_orders(rep.dom.index)) {
            for (const auto& [member, sigma] : orbits[k]) {
                FinMap inv = sigma.inverse();
                std::vector<Token> moved;
                for (const auto& t : ord) moved.push_back(inv(t));
                chosen[member] = std::move(moved);
            }
            if (constraints_ok() && assign(k + 1)) return true;
            for (const auto& [member, sigma] : orbits[k]) chosen.erase(member);
        }
        return false;
    };

    lift.glue_ok = assign(0);
    if (lift.glue_ok) lift.orders = std::move(chosen);
    return lift;
}

}  // namespace mcw
