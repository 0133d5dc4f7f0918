#include "mcw/base.hpp"

#include <algorithm>

namespace mcw {

namespace {

void require_kind_shape(BaseKind kind, const DecoratedMap& d) {
    bool needs_orders = kind == BaseKind::Tot;
    bool needs_section = kind == BaseKind::Sec;
    if (needs_orders != d.fiber_orders.has_value())
        throw StructuralError("base oracle: fiber-order decoration mismatch");
    if (needs_section != d.section.has_value())
        throw StructuralError("base oracle: section decoration mismatch");
}

}  // namespace

bool BaseOracle::admissible(const DecoratedMap& d) const {
    switch (kind_) {
        case BaseKind::Pb:
            return !d.fiber_orders && !d.section;
        case BaseKind::Bij:
            return !d.fiber_orders && !d.section && d.base.is_bijective();
        case BaseKind::Tot: {
            if (!d.fiber_orders || d.section) return false;
            try {
                OrderedMap om{d.base, *d.fiber_orders};
                om.check();
            } catch (const StructuralError&) {
                return false;
            }
            return true;
        }
        case BaseKind::Sec: {
            if (!d.section || d.fiber_orders) return false;
            try {
                SectionedMap sm{d.base, *d.section};
                sm.check();
            } catch (const StructuralError&) {
                return false;
            }
            return true;
        }
    }
    return false;
}

DecoratedMap BaseOracle::identity(const FinSet& s) const {
    DecoratedMap d{FinMap::identity(s), std::nullopt, std::nullopt};
    if (kind_ == BaseKind::Tot) {
        std::map<Token, std::vector<Token>> orders;
        for (const auto& t : s.elements()) orders[t] = {t};
        d.fiber_orders = std::move(orders);
    }
    if (kind_ == BaseKind::Sec) d.section = FinMap::identity(s);
    return d;
}

DecoratedMap BaseOracle::compose(const DecoratedMap& g, const DecoratedMap& f) const {
    require_kind_shape(kind_, g);
    require_kind_shape(kind_, f);
    DecoratedMap result{mcw::compose(g.base, f.base), std::nullopt, std::nullopt};
    if (kind_ == BaseKind::Tot) {
        // glue the inner orders following the outer order of each fiber
        std::map<Token, std::vector<Token>> orders;
        for (const auto& k : g.base.cod().elements()) {
            std::vector<Token> glued;
            for (const auto& j : g.fiber_orders->at(k))
                for (const auto& i : f.fiber_orders->at(j)) glued.push_back(i);
            orders[k] = std::move(glued);
        }
        result.fiber_orders = std::move(orders);
    }
    if (kind_ == BaseKind::Sec) {
        std::map<Token, Token> table;
        for (const auto& k : g.base.cod().elements()) table[k] = (*f.section)((*g.section)(k));
        result.section = FinMap(g.base.cod(), f.base.dom(), std::move(table));
    }
    if (kind_ == BaseKind::Bij && !result.base.is_bijective())
        throw StructuralError("Bij oracle: composite is not a bijection");
    return result;
}

DecoratedMap BaseOracle::transport(const DecoratedMap& d, const LooseCell& cell) const {
    require_kind_shape(kind_, d);
    if (cell.bottom != d.base)
        throw StructuralError("base oracle: cell bottom is not the loose arrow");
    cell.check();
    DecoratedMap result{cell.top, std::nullopt, std::nullopt};
    if (kind_ == BaseKind::Tot) {
        std::map<Token, std::vector<Token>> orders;
        for (const auto& jp : cell.top.cod().elements()) {
            FinSet fib = fiber(cell.top, jp);
            // left is a bijection from this fiber onto the old one
            std::map<Token, Token> back;
            for (const auto& i : fib.elements()) back[cell.left(i)] = i;
            std::vector<Token> ord;
            for (const auto& old : d.fiber_orders->at(cell.right(jp)))
                ord.push_back(back.at(old));
            orders[jp] = std::move(ord);
        }
        result.fiber_orders = std::move(orders);
    }
    if (kind_ == BaseKind::Sec) {
        std::map<Token, Token> table;
        for (const auto& jp : cell.top.cod().elements()) {
            Token old_point = (*d.section)(cell.right(jp));
            bool found = false;
            for (const auto& i : fiber(cell.top, jp).elements())
                if (cell.left(i) == old_point) {
                    table[jp] = i;
                    found = true;
                    break;
                }
            if (!found)
                throw StructuralError("Sec oracle: section does not transport along the cell");
        }
        result.section = FinMap(cell.top.cod(), cell.top.dom(), std::move(table));
    }
    return result;
}

DecoratedMap BaseOracle::sum(const std::vector<DecoratedMap>& ds) const {
    std::vector<FinMap> bases;
    for (const auto& d : ds) {
        require_kind_shape(kind_, d);
        bases.push_back(d.base);
    }
    DecoratedMap result{mcw::sum(bases), std::nullopt, std::nullopt};
    if (kind_ == BaseKind::Tot) {
        std::map<Token, std::vector<Token>> orders;
        for (std::size_t k = 0; k < ds.size(); ++k)
            for (const auto& [j, ord] : *ds[k].fiber_orders) {
                std::vector<Token> tagged;
                for (const auto& i : ord) tagged.push_back(sum_token(k, i));
                orders[sum_token(k, j)] = std::move(tagged);
            }
        result.fiber_orders = std::move(orders);
    }
    if (kind_ == BaseKind::Sec) {
        std::map<Token, Token> table;
        for (std::size_t k = 0; k < ds.size(); ++k)
            for (const auto& j : ds[k].base.cod().elements())
                table[sum_token(k, j)] = sum_token(k, (*ds[k].section)(j));
        result.section = FinMap(result.base.cod(), result.base.dom(), std::move(table));
    }
    return result;
}

BaseOracle oracle_pb() { return BaseOracle(BaseKind::Pb); }
BaseOracle oracle_bij() { return BaseOracle(BaseKind::Bij); }
BaseOracle oracle_tot() { return BaseOracle(BaseKind::Tot); }
BaseOracle oracle_sec() { return BaseOracle(BaseKind::Sec); }

DecoratedMap BaseMorphism::translate(const DecoratedMap& d) const {
    if (src == tgt) return d;
    if (tgt != BaseKind::Pb)
        throw StructuralError("base morphism: only the projections to Pb are built in");
    return DecoratedMap{d.base, std::nullopt, std::nullopt};
}

BaseMorphism morphism_tot_to_pb() { return BaseMorphism{BaseKind::Tot, BaseKind::Pb}; }
BaseMorphism morphism_bij_to_pb() { return BaseMorphism{BaseKind::Bij, BaseKind::Pb}; }
BaseMorphism morphism_identity(BaseKind k) { return BaseMorphism{k, k}; }

namespace {

/// T^* M: attaches every total order to every arrow of a Pb-based
/// multicategory.
class TotChange final : public Multicat {
  public:
    explicit TotChange(MulticatPtr inner) : inner_(std::move(inner)) {
        if (inner_->base() != BaseKind::Pb)
            throw StructuralError("base_change tot: expected a Pb-based multicategory");
    }

    BaseKind base() const override { return BaseKind::Tot; }
    const FinSet& objects() const override { return inner_->objects(); }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        std::vector<MultiArrow> result;
        for (const auto& a : inner_->arrows(dom, cod))
            for (auto& ord : all_orders(dom.index))
                result.push_back(MultiArrow{a.name, a.dom, a.cod, std::move(ord)});
        return result;
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        MultiArrow a = inner_->identity(obj, index_token);
        a.order = {index_token};
        return a;
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        MultiArrow bare{a.name, a.dom, a.cod, {}};
        MultiArrow moved = inner_->reindex(bare, sigma);
        FinMap inv = sigma.inverse();
        std::vector<Token> order;
        for (const auto& t : a.order) order.push_back(inv(t));
        moved.order = std::move(order);
        return moved;
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        MultiArrow bare_outer{outer.name, outer.dom, outer.cod, {}};
        std::map<Token, MultiArrow> bare_inner;
        for (const auto& [j, a] : inner) bare_inner.emplace(j, MultiArrow{a.name, a.dom, a.cod, {}});
        MultiArrow comp = inner_->compose_conn(bare_outer, bare_inner);
        std::vector<Token> order;
        for (const auto& j : outer.order)
            for (const auto& i : inner.at(j).order) order.push_back(i);
        comp.order = std::move(order);
        return comp;
    }

    std::string describe() const override { return "tot base change of " + inner_->describe(); }

  private:
    MulticatPtr inner_;
};

/// U^* M: the category of unary arrows.
class BijChange final : public Multicat {
  public:
    explicit BijChange(MulticatPtr inner) : inner_(std::move(inner)) {
        if (inner_->base() != BaseKind::Pb)
            throw StructuralError("base_change bij: expected a Pb-based multicategory");
    }

    BaseKind base() const override { return BaseKind::Bij; }
    const FinSet& objects() const override { return inner_->objects(); }

    std::vector<MultiArrow> arrows(const ObjFamily& dom, const Token& cod) const override {
        if (dom.index.size() != 1) return {};
        return inner_->arrows(dom, cod);
    }

    MultiArrow identity(const Token& obj, const Token& index_token) const override {
        return inner_->identity(obj, index_token);
    }

    MultiArrow reindex(const MultiArrow& a, const FinMap& sigma) const override {
        return inner_->reindex(a, sigma);
    }

    MultiArrow compose_conn(const MultiArrow& outer,
                            const std::map<Token, MultiArrow>& inner) const override {
        check_composable(outer, inner);
        if (outer.dom.index.size() != 1)
            throw StructuralError("base_change bij: only unary composition is available");
        return inner_->compose_conn(outer, inner);
    }

    std::string describe() const override { return "unary part of " + inner_->describe(); }

  private:
    MulticatPtr inner_;
};

}  // namespace

MulticatPtr base_change(MulticatPtr m, const BaseMorphism& f) {
    if (f.src == f.tgt) return m;
    if (f.tgt != BaseKind::Pb)
        throw StructuralError("base_change: only the built-in projections to Pb are supported");
    if (f.src == BaseKind::Tot) return std::make_shared<TotChange>(std::move(m));
    if (f.src == BaseKind::Bij) return std::make_shared<BijChange>(std::move(m));
    throw StructuralError("base_change: unsupported morphism");
}

}  // namespace mcw
