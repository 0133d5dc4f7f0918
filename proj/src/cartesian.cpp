#include "mcw/cartesian.hpp"

#include <algorithm>

namespace mcw {

// ---- enhanced spans ----

EspanMulticat::EspanMulticat(MulticatPtr inner, std::size_t apex_bound)
    : inner_(std::move(inner)), apex_bound_(apex_bound) {
    if (inner_->base() != BaseKind::Pb)
        throw StructuralError("espan: expected a Pb-based multicategory");
}

namespace {

std::string espan_encode(const FinMap& tight, const MultiArrow& inner) {
    std::string out;
    for (const auto& k : tight.dom().elements()) out += tight(k) + ",";
    out += "~" + inner.name;
    if (!inner.order.empty()) {
        out += "~";
        for (const auto& t : inner.order) out += t + ",";
    }
    return out;
}

}  // namespace

MultiArrow EspanMulticat::mint(const ObjFamily& dom, const Token& cod, EspanData data) const {
    auto mint_key = std::make_tuple(dom, cod, data.tight, data.inner);
    if (auto it = mint_cache_.find(mint_key); it != mint_cache_.end()) return it->second;
    const FinSet& apex = data.tight.dom();
    std::size_t n = apex.size();
    if (n > 9)
        throw BoundExceeded("espan: apex of size " + std::to_string(n) +
                            " cannot be canonicalized");
    FinSet target = FinSet::canonical(n);

    // group apex elements by their tight image, blocks ordered like the
    // domain index
    std::vector<std::vector<Token>> blocks;
    for (const auto& i : dom.index.elements()) {
        std::vector<Token> block;
        for (const auto& k : apex.elements())
            if (data.tight(k) == i) block.push_back(k);
        if (!block.empty()) blocks.push_back(std::move(block));
    }

    std::optional<EspanData> best;
    std::string best_enc;
    std::function<void(std::size_t, std::map<Token, Token>&)> rec =
        [&](std::size_t bi, std::map<Token, Token>& table) {
            if (bi == blocks.size()) {
                FinMap rho(target, apex, table);  // target -> apex
                EspanData cand{compose(data.tight, rho), inner_->reindex(data.inner, rho)};
                std::string enc = espan_encode(cand.tight, cand.inner);
                if (!best || enc < best_enc) {
                    best = std::move(cand);
                    best_enc = std::move(enc);
                }
                return;
            }
            std::size_t offset = 0;
            for (std::size_t k = 0; k < bi; ++k) offset += blocks[k].size();
            std::vector<Token> members = blocks[bi];
            std::sort(members.begin(), members.end());
            do {
                for (std::size_t k = 0; k < members.size(); ++k)
                    table[target.elements()[offset + k]] = members[k];
                rec(bi + 1, table);
            } while (std::next_permutation(members.begin(), members.end()));
        };
    std::map<Token, Token> table;
    rec(0, table);

    MultiArrow a{"sp{" + best_enc + "}", dom, cod, {}};
    cache_.emplace(a, std::move(*best));
    mint_cache_.emplace(std::move(mint_key), a);
    return a;
}

const EspanData& EspanMulticat::payload(const MultiArrow& a) const {
    auto it = cache_.find(a);
    if (it == cache_.end())
        throw StructuralError("espan: arrow was not minted here: " + a.name);
    return it->second;
}

std::vector<MultiArrow> EspanMulticat::arrows(const ObjFamily& dom, const Token& cod) const {
    auto key = std::make_pair(dom, cod);
    if (auto it = arrows_cache_.find(key); it != arrows_cache_.end()) return it->second;
    std::vector<MultiArrow> result;
    // enumerate tight legs up to apex isomorphism: one block-shaped map per
    // multiplicity vector over the domain index
    std::size_t n = dom.index.size();
    std::vector<std::size_t> mult(n, 0);
    auto emit = [&]() {
        std::size_t total = 0;
        for (auto k : mult) total += k;
        if (total > apex_bound_) return;
        FinSet apex = FinSet::canonical(total);
        std::map<Token, Token> table;
        std::size_t running = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t q = 0; q < mult[i]; ++q)
                table[apex.elements()[running++]] = dom.index.elements()[i];
        FinMap g(apex, dom.index, std::move(table));
        for (const auto& alpha : inner_->arrows(dom.reindex(g), cod))
            result.push_back(mint(dom, cod, EspanData{g, alpha}));
    };
    if (n == 0) {
        for (std::size_t k = 0; k <= apex_bound_; ++k) {
            if (k > 0) break;
            emit();
        }
    } else {
        while (true) {
            emit();
            std::size_t p = 0;
            while (p < n && ++mult[p] > apex_bound_) mult[p++] = 0;
            if (p == n) break;
        }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    arrows_cache_.emplace(std::move(key), result);
    return result;
}

MultiArrow EspanMulticat::identity(const Token& obj, const Token& index_token) const {
    FinSet point({index_token});
    return mint(ObjFamily::single(index_token, obj), obj,
                EspanData{FinMap::identity(point), inner_->identity(obj, index_token)});
}

MultiArrow EspanMulticat::reindex(const MultiArrow& a, const FinMap& sigma) const {
    auto key = std::make_pair(a, sigma);
    if (auto it = reindex_cache_.find(key); it != reindex_cache_.end()) return it->second;
    const EspanData& p = payload(a);
    MultiArrow out = mint(a.dom.reindex(sigma), a.cod,
                          EspanData{compose(sigma.inverse(), p.tight), p.inner});
    reindex_cache_.emplace(std::move(key), out);
    return out;
}

MultiArrow EspanMulticat::compose_conn(const MultiArrow& outer,
                                       const std::map<Token, MultiArrow>& inner) const {
    auto key = std::make_pair(outer, inner);
    if (auto it = compose_cache_.find(key); it != compose_cache_.end()) return it->second;
    check_composable(outer, inner);
    const EspanData& po = payload(outer);

    // tagged sum of the inner spans
    std::vector<Token> k_tokens;
    std::map<Token, Token> g_table, a_table;
    ObjFamily union_dom;
    {
        std::vector<Token> idx;
        std::map<Token, Token> assign;
        for (const auto& [j, arr] : inner) {
            const EspanData& pi = payload(arr);
            for (const auto& t : pi.tight.dom().elements()) {
                Token kt = pair_token(j, t);
                k_tokens.push_back(kt);
                g_table[kt] = pi.tight(t);
                a_table[kt] = j;
            }
            for (const auto& i : arr.dom.index.elements()) {
                idx.push_back(i);
                assign[i] = arr.dom.at(i);
            }
        }
        union_dom = ObjFamily(FinSet(std::move(idx)), std::move(assign));
    }
    FinSet k_set(k_tokens);
    FinMap g(k_set, union_dom.index, std::move(g_table));
    FinMap a(k_set, outer.dom.index, std::move(a_table));

    // the loose arrow carried by the summed spans
    LooseArrow carried;
    carried.base = a;
    for (const auto& [j, arr] : inner) {
        const EspanData& pi = payload(arr);
        FinSet fib = fiber(a, j);
        std::map<Token, Token> tab;
        for (const auto& kt : fib.elements()) tab[kt] = kt.substr(j.size() + 2, std::string::npos);
        // strip "(j," and ")"
        for (auto& [kt, t] : tab) t = t.substr(0, t.size() - 1);
        FinMap sigma(fib, pi.tight.dom(), std::move(tab));
        carried.components[j] = inner_->reindex(pi.inner, sigma);
    }

    // pull back against the outer tight leg and lift
    LooseCell cell = canonical_cell(a, po.tight);
    if (cell.top.dom().size() > 9)
        throw BoundExceeded("espan: composite apex exceeds the canonical limit");
    LooseArrow lifted = reindex_loose(*inner_, carried, cell);
    MultiArrow composite_inner = compose_conn_loose(*inner_, po.inner, lifted);
    FinMap tight_total = compose(g, cell.left);
    MultiArrow out = mint(union_dom, outer.cod, EspanData{tight_total, composite_inner});
    compose_cache_.emplace(std::move(key), out);
    return out;
}

std::string EspanMulticat::describe() const {
    return "enhanced spans over " + inner_->describe();
}

MulticatPtr espan(MulticatPtr m, std::size_t apex_bound) {
    return std::make_shared<EspanMulticat>(std::move(m), apex_bound);
}

MultiArrow monad_eta(const EspanMulticat& tm, const MultiArrow& arrow) {
    return tm.mint(arrow.dom, arrow.cod,
                   EspanData{FinMap::identity(arrow.dom.index), arrow});
}

MultiArrow monad_mu(const EspanMulticat& tm, const EspanMulticat& ttm, const MultiArrow& arrow) {
    const EspanData& outer = ttm.payload(arrow);
    const EspanData& inner = tm.payload(outer.inner);
    return tm.mint(arrow.dom, arrow.cod,
                   EspanData{compose(outer.tight, inner.tight), inner.inner});
}

MultiArrow espan_apply(const EspanMulticat& src, const EspanMulticat& tgt, const MultiArrow& a,
                       const std::function<MultiArrow(const MultiArrow&)>& f) {
    const EspanData& p = src.payload(a);
    return tgt.mint(a.dom, a.cod, EspanData{p.tight, f(p.inner)});
}

// ---- cartesian structures ----

MultiArrow covariant_reindex(const CartStructure& g, const MultiArrow& alpha, const FinMap& f,
                             const ObjFamily& target) {
    if (f.dom() != alpha.dom.index)
        throw StructuralError("covariant_reindex: map does not start at the arrow domain");
    if (f.cod() != target.index)
        throw StructuralError("covariant_reindex: map does not land in the target index");
    if (target.reindex(f) != alpha.dom)
        throw StructuralError("covariant_reindex: domain is not the pullback of the target");
    return g.gamma(alpha, f, target);
}

LooseArrow gamma_loose(const CartStructure& g, const LooseArrow& alpha, const FinMap& f,
                       const FinMap& result_base, const ObjFamily& target) {
    if (compose(result_base, f) != alpha.base)
        throw StructuralError("gamma_loose: triangle does not commute");
    if (target.index != result_base.dom())
        throw StructuralError("gamma_loose: target family is not over the result base");
    if (target.reindex(f) != alpha.dom())
        throw StructuralError("gamma_loose: domain is not the pullback of the target");
    LooseArrow result;
    result.base = result_base;
    for (const auto& n : result_base.cod().elements()) {
        FinSet kn = fiber(alpha.base, n);
        FinSet in = fiber(result_base, n);
        std::map<Token, Token> tab;
        for (const auto& k : kn.elements()) tab[k] = f(k);
        FinMap fn(kn, in, std::move(tab));
        result.components[n] = g.gamma(alpha.components.at(n), fn, target.restrict(in));
    }
    return result;
}

TableCartStructure::TableCartStructure(MulticatPtr host, std::map<Key, MultiArrow> entries)
    : host_(std::move(host)), entries_(std::move(entries)) {}

MultiArrow TableCartStructure::gamma(const MultiArrow& alpha, const FinMap& f,
                                     const ObjFamily& target) const {
    FinMap rk = canonical_relabel(alpha.dom.index);
    FinMap ri = canonical_relabel(target.index);
    MultiArrow alpha_c = host_->reindex(alpha, rk.inverse());
    FinMap f_c = compose(ri, compose(f, rk.inverse()));
    ObjFamily target_c = target.reindex(ri.inverse());
    auto it = entries_.find({alpha_c, f_c, target_c});
    if (it == entries_.end())
        throw StructuralError("gamma table: missing entry for " + mcw::describe(alpha_c) +
                              " along " + mcw::describe(f_c));
    return host_->reindex(it->second, ri);
}

std::shared_ptr<TableCartStructure> export_gamma(const CartStructure& g, std::size_t bound) {
    const Multicat& m = g.host();
    std::map<TableCartStructure::Key, MultiArrow> entries;
    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet k = FinSet::canonical(nk);
        for (const auto& x : all_families(m, k))
            for (const auto& alpha : m.arrows_from(x))
                for (std::size_t ni = 0; ni <= bound; ++ni) {
                    FinSet i = FinSet::canonical(ni);
                    for (const auto& f : all_maps(k, i))
                        for (const auto& target : all_families(m, i)) {
                            if (target.reindex(f) != x) continue;
                            entries[{alpha, f, target}] = g.gamma(alpha, f, target);
                        }
                }
    }
    return std::make_shared<TableCartStructure>(g.host_ptr(), std::move(entries));
}

namespace {

class CorruptCart final : public CartStructure {
  public:
    CorruptCart(CartPtr inner, TableCartStructure::Key key, MultiArrow replacement)
        : inner_(std::move(inner)), key_(std::move(key)), replacement_(std::move(replacement)) {}

    const Multicat& host() const override { return inner_->host(); }
    MulticatPtr host_ptr() const override { return inner_->host_ptr(); }

    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override {
        FinMap rk = canonical_relabel(alpha.dom.index);
        FinMap ri = canonical_relabel(target.index);
        MultiArrow alpha_c = host().reindex(alpha, rk.inverse());
        FinMap f_c = compose(ri, compose(f, rk.inverse()));
        ObjFamily target_c = target.reindex(ri.inverse());
        if (TableCartStructure::Key{alpha_c, f_c, target_c} == key_)
            return host().reindex(replacement_, ri);
        return inner_->gamma(alpha, f, target);
    }

    std::string describe() const override { return inner_->describe() + " (corrupted)"; }

  private:
    CartPtr inner_;
    TableCartStructure::Key key_;
    MultiArrow replacement_;
};

class FreeCart final : public CartStructure {
  public:
    explicit FreeCart(MulticatPtr espan_m) : m_(std::move(espan_m)) {
        es_ = dynamic_cast<const EspanMulticat*>(m_.get());
        if (!es_) throw StructuralError("free_cart_structure: host is not an espan multicategory");
    }

    const Multicat& host() const override { return *m_; }
    MulticatPtr host_ptr() const override { return m_; }

    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override {
        const EspanData& p = es_->payload(alpha);
        return es_->mint(target, alpha.cod, EspanData{compose(f, p.tight), p.inner});
    }

    std::string describe() const override { return "free cartesian structure"; }

  private:
    MulticatPtr m_;
    const EspanMulticat* es_;
};

class UniqueArrowCart final : public CartStructure {
  public:
    explicit UniqueArrowCart(MulticatPtr m) : m_(std::move(m)) {}

    const Multicat& host() const override { return *m_; }
    MulticatPtr host_ptr() const override { return m_; }

    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override {
        (void)f;
        auto arrows = m_->arrows(target, alpha.cod);
        if (arrows.size() != 1)
            throw ValidationError("unique-arrow gamma: arrow count is " +
                                  std::to_string(arrows.size()));
        return arrows[0];
    }

    std::string describe() const override { return "unique-arrow cartesian structure"; }

  private:
    MulticatPtr m_;
};

class SetsCart final : public CartStructure {
  public:
    explicit SetsCart(MulticatPtr m) : m_(std::move(m)) {
        if (!carriers_of(*m_))
            throw StructuralError("finset_cart_structure: host is not a finite-sets multicategory");
    }

    const Multicat& host() const override { return *m_; }
    MulticatPtr host_ptr() const override { return m_; }

    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override {
        const auto& carriers = *carriers_of(*m_);
        const auto& table = *fn_table(*m_, alpha);
        std::map<Token, Token> out;
        for (const auto& y : product_tuples(carriers, target)) {
            std::map<Token, Token> x;
            for (const auto& k : f.dom().elements()) x[k] = y.at(f(k));
            out[tuple_token(y)] = table.at(tuple_token(x));
        }
        return mint_function_arrow(*m_, target, alpha.cod, std::move(out));
    }

    std::string describe() const override { return "finite-sets cartesian structure"; }

  private:
    MulticatPtr m_;
};

class CMonEnrichedCart final : public CartStructure {
  public:
    CMonEnrichedCart(MulticatPtr m, CMonEnrichment e) : m_(std::move(m)), e_(std::move(e)) {
        if (!category_of(*m_))
            throw StructuralError("cmon cart: host is not a cocartesian multicategory");
    }

    const Multicat& host() const override { return *m_; }
    MulticatPtr host_ptr() const override { return m_; }

    MultiArrow gamma(const MultiArrow& alpha, const FinMap& f,
                     const ObjFamily& target) const override {
        const auto& entries = *category_payload(*m_, alpha);
        std::map<Token, Token> out;
        for (const auto& i : target.index.elements()) {
            const CommMonoid& hom = e_.at(target.at(i), alpha.cod);
            std::vector<Token> parts;
            for (const auto& k : fiber(f, i).elements()) parts.push_back(entries.at(k));
            out[i] = hom.sum(parts);
        }
        return mint_category_arrow(*m_, target, alpha.cod, std::move(out));
    }

    std::string describe() const override { return "commutative-monoid enriched structure"; }

    const CMonEnrichment& enrichment() const { return e_; }

  private:
    MulticatPtr m_;
    CMonEnrichment e_;
};

}  // namespace

CartPtr corrupt_gamma(CartPtr inner, const TableCartStructure::Key& key,
                      MultiArrow replacement) {
    return std::make_shared<CorruptCart>(std::move(inner), key, std::move(replacement));
}

CartPtr free_cart_structure(MulticatPtr espan_m) {
    return std::make_shared<FreeCart>(std::move(espan_m));
}

CartPtr unique_arrow_cart_structure(MulticatPtr m) {
    return std::make_shared<UniqueArrowCart>(std::move(m));
}

CartPtr finset_cart_structure(MulticatPtr finset_m) {
    return std::make_shared<SetsCart>(std::move(finset_m));
}

// ---- enrichments ----

const CommMonoid& CMonEnrichment::at(const Token& src, const Token& tgt) const {
    auto it = homs.find({src, tgt});
    if (it == homs.end())
        throw StructuralError("enrichment: no monoid on hom(" + src + ", " + tgt + ")");
    return it->second;
}

void CMonEnrichment::check(const FinCategory& c) const {
    for (const auto& a : c.objects().elements())
        for (const auto& b : c.objects().elements()) {
            const CommMonoid& hom = at(a, b);
            hom.check();
            std::vector<Token> arrows = c.hom(a, b);
            std::sort(arrows.begin(), arrows.end());
            if (FinSet(arrows) != hom.carrier)
                throw ValidationError("enrichment: monoid carrier differs from hom(" + a +
                                      ", " + b + ")");
        }
    // bilinearity of composition, with zeros absorbing
    for (const auto& a : c.objects().elements())
        for (const auto& b : c.objects().elements())
            for (const auto& d : c.objects().elements()) {
                const CommMonoid& ab = at(a, b);
                const CommMonoid& bd = at(b, d);
                const CommMonoid& ad = at(a, d);
                for (const auto& h : ab.carrier.elements()) {
                    if (c.compose(bd.zero, h) != ad.zero)
                        throw ValidationError("enrichment: zero not absorbing at (" + h + ")");
                    for (const auto& f : bd.carrier.elements())
                        for (const auto& g2 : bd.carrier.elements())
                            if (c.compose(bd.plus(f, g2), h) !=
                                ad.plus(c.compose(f, h), c.compose(g2, h)))
                                throw ValidationError(
                                    "enrichment: composition not linear on the left");
                }
                for (const auto& h : bd.carrier.elements()) {
                    if (c.compose(h, ab.zero) != ad.zero)
                        throw ValidationError("enrichment: zero not absorbing at (" + h + ")");
                    for (const auto& f : ab.carrier.elements())
                        for (const auto& g2 : ab.carrier.elements())
                            if (c.compose(h, ab.plus(f, g2)) !=
                                ad.plus(c.compose(h, f), c.compose(h, g2)))
                                throw ValidationError(
                                    "enrichment: composition not linear on the right");
                }
            }
}

std::pair<MulticatPtr, CartPtr> from_cmon_enriched(FinCategory c, CMonEnrichment e) {
    e.check(c);
    MulticatPtr m = from_category(std::move(c));
    CartPtr g = std::make_shared<CMonEnrichedCart>(m, std::move(e));
    return {m, g};
}

std::pair<MulticatPtr, CartPtr> from_rig(const Rig& r) {
    r.check();
    MulticatPtr m = from_rig_multicat(r);
    CMonEnrichment e;
    e.homs[{"*", "*"}] = r.additive();
    CartPtr g = std::make_shared<CMonEnrichedCart>(m, std::move(e));
    return {m, g};
}

CMonEnrichment extract_enrichment(const CartStructure& g) {
    const Multicat& m = g.host();
    const FinCategory* c = category_of(m);
    if (!c) throw StructuralError("extract_enrichment: host is not a cocartesian multicategory");
    CMonEnrichment e;
    FinSet point({"1"});
    for (const auto& a : m.objects().elements())
        for (const auto& b : m.objects().elements()) {
            CommMonoid mon;
            std::vector<Token> arrows = c->hom(a, b);
            std::sort(arrows.begin(), arrows.end());
            mon.carrier = FinSet(arrows);
            ObjFamily target = ObjFamily::single("1", a);
            // zero: reindex the empty arrow along {} -> {1}
            MultiArrow nullary =
                m.arrows(ObjFamily(FinSet(), {}), b).at(0);
            FinMap empty_to_point(FinSet(), point, {});
            MultiArrow zero = g.gamma(nullary, empty_to_point, target);
            mon.zero = category_payload(m, zero)->at("1");
            // addition: reindex a two-entry arrow along the fold map
            ObjFamily pair_fam(FinSet::canonical(2), {{"1", a}, {"2", a}});
            FinMap fold = FinMap::constant(FinSet::canonical(2), point, "1");
            for (const auto& x : arrows)
                for (const auto& y : arrows) {
                    MultiArrow two =
                        mint_category_arrow(m, pair_fam, b, {{"1", x}, {"2", y}});
                    MultiArrow sum = g.gamma(two, fold, target);
                    mon.add[{x, y}] = category_payload(m, sum)->at("1");
                }
            e.homs[{a, b}] = std::move(mon);
        }
    return e;
}

std::pair<MulticatPtr, CartPtr> free_cartesian(MulticatPtr m, std::size_t apex_bound) {
    MulticatPtr tm = espan(std::move(m), apex_bound);
    CartPtr g = free_cart_structure(tm);
    return {tm, g};
}

}  // namespace mcw
