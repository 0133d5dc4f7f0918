#include <algorithm>

#include "mcw/cartesian.hpp"

namespace mcw {

namespace {

/// Runs one law instance, translating bound overruns into skips.
template <typename Fn>
void instance(Report& r, Fn&& fn) {
    ++r.instances;
    try {
        fn();
    } catch (const BoundExceeded&) {
        ++r.skipped;
    }
}

LooseArrow as_vertical_loose(const Multicat& m, const MultiArrow& a, const Token& point) {
    (void)m;
    FinMap base = FinMap::constant(a.dom.index, FinSet({point}), point);
    return make_loose(base, {{point, a}});
}

}  // namespace

Report check_cartesian_laws(const CartStructure& g, std::size_t bound) {
    Report r;
    const Multicat& m = g.host();
    FinSet point({"1"});

    // unit: reindexing along the identity is the identity
    for (const auto& x : all_canonical_families(m, bound))
        for (const auto& alpha : m.arrows_from(x))
            instance(r, [&] {
                if (g.gamma(alpha, FinMap::identity(x.index), x) != alpha)
                    r.add("cart-unit", describe(alpha), "id_! changed the arrow");
            });

    // functoriality: f_!(g_! alpha) = (fg)_! alpha
    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet K = FinSet::canonical(nk);
        for (const auto& x : all_families(m, K))
            for (const auto& alpha : m.arrows_from(x))
                for (std::size_t ni = 0; ni <= bound; ++ni) {
                    FinSet I = FinSet::canonical(ni);
                    for (const auto& f : all_maps(K, I))
                        for (std::size_t nj = 0; nj <= bound; ++nj) {
                            FinSet J = FinSet::canonical(nj);
                            for (const auto& gm : all_maps(I, J))
                                for (const auto& z : all_families(m, J)) {
                                    if (z.reindex(compose(gm, f)) != x) continue;
                                    instance(r, [&] {
                                        MultiArrow lhs = g.gamma(
                                            g.gamma(alpha, f, z.reindex(gm)), gm, z);
                                        MultiArrow rhs = g.gamma(alpha, compose(gm, f), z);
                                        if (lhs != rhs)
                                            r.add("cart-functoriality",
                                                  describe(alpha) + " ; f=" + describe(f) +
                                                      " ; g=" + describe(gm),
                                                  "pasted reindexings disagree");
                                    });
                                }
                        }
                }
    }

    // Frobenius: h_!(beta . (cell reindex of alpha)) = (g_! beta) . alpha
    for (std::size_t ni = 0; ni <= bound; ++ni) {
        FinSet I = FinSet::canonical(ni);
        for (const auto& y : all_families(m, I))
            for (std::size_t nl = 0; nl <= bound; ++nl) {
                FinSet L = FinSet::canonical(nl);
                for (const auto& gt : all_maps(L, I))
                    for (const auto& beta : m.arrows_from(y.reindex(gt))) {
                        MultiArrow delta = g.gamma(beta, gt, y);
                        for (std::size_t nk = 0; nk <= bound; ++nk) {
                            FinSet K = FinSet::canonical(nk);
                            for (const auto& b : all_maps(K, I))
                                for (const auto& x : all_families(m, K))
                                    for (const auto& alpha : all_loose_into(m, x, b, y))
                                        instance(r, [&] {
                                            LooseCell cell = canonical_cell(b, gt);
                                            LooseArrow gammaed =
                                                reindex_loose(m, alpha, cell);
                                            MultiArrow lhs = g.gamma(
                                                compose_conn_loose(m, beta, gammaed),
                                                cell.left, x);
                                            MultiArrow rhs =
                                                compose_conn_loose(m, delta, alpha);
                                            if (lhs != rhs)
                                                r.add("cart-frobenius",
                                                      describe(beta) + " ; " +
                                                          describe(alpha) + " ; g=" +
                                                          describe(gt),
                                                      "pasting a cell onto a covariant "
                                                      "triangle fails");
                                        });
                        }
                    }
            }
    }

    // Beck-Chevalley: covariant triangles are stable under cells
    for (std::size_t ni = 0; ni <= bound; ++ni) {
        FinSet I = FinSet::canonical(ni);
        for (const auto& y : all_families(m, I))
            for (std::size_t nk = 0; nk <= bound; ++nk) {
                FinSet K = FinSet::canonical(nk);
                for (const auto& fbar : all_maps(K, I))
                    for (const auto& a : m.arrows_from(y.reindex(fbar))) {
                        MultiArrow fa = g.gamma(a, fbar, y);
                        LooseArrow fa_loose = as_vertical_loose(m, fa, "1");
                        LooseArrow a_loose = as_vertical_loose(m, a, "1");
                        for (std::size_t nn = 0; nn <= bound; ++nn)
                            instance(r, [&] {
                                FinSet N = FinSet::canonical(nn);
                                FinMap gbar = FinMap::constant(N, point, "1");
                                LooseCell cell_c = canonical_cell(fa_loose.base, gbar);
                                LooseArrow lhs = reindex_loose(m, fa_loose, cell_c);
                                LooseCell cell_p = canonical_cell(a_loose.base, gbar);
                                LooseArrow a2 = reindex_loose(m, a_loose, cell_p);
                                std::map<Token, Token> tab;
                                for (const auto& t : cell_p.top.dom().elements())
                                    tab[t] = pair_token(fbar(cell_p.left(t)), cell_p.top(t));
                                FinMap fbar2(cell_p.top.dom(), cell_c.top.dom(),
                                             std::move(tab));
                                LooseArrow rhs = gamma_loose(g, a2, fbar2, cell_c.top,
                                                             y.reindex(cell_c.left));
                                if (lhs != rhs)
                                    r.add("cart-beck-chevalley",
                                          describe(a) + " ; f=" + describe(fbar) +
                                              " ; N=" + std::to_string(nn),
                                          "covariant triangle is not stable under the cell");
                            });
                    }
            }
    }

    // tailing: beta . (f_! alpha) = f_!(beta . alpha)
    for (std::size_t ni = 0; ni <= bound; ++ni) {
        FinSet I = FinSet::canonical(ni);
        for (const auto& x : all_families(m, I))
            for (std::size_t nk = 0; nk <= bound; ++nk) {
                FinSet K = FinSet::canonical(nk);
                for (const auto& fbar : all_maps(K, I)) {
                    ObjFamily u = x.reindex(fbar);
                    for (std::size_t nj = 0; nj <= bound; ++nj) {
                        FinSet J = FinSet::canonical(nj);
                        for (const auto& c : all_maps(I, J)) {
                            FinMap a_base = compose(c, fbar);
                            for (const auto& alpha : all_loose(m, u, a_base)) {
                                LooseArrow delta = gamma_loose(g, alpha, fbar, c, x);
                                for (const auto& beta : m.arrows_from(alpha.cod()))
                                    instance(r, [&] {
                                        MultiArrow lhs = compose_conn_loose(m, beta, delta);
                                        MultiArrow rhs =
                                            g.gamma(compose_conn_loose(m, beta, alpha),
                                                    fbar, x);
                                        if (lhs != rhs)
                                            r.add("cart-tailing",
                                                  describe(beta) + " ; " + describe(alpha) +
                                                      " ; f=" + describe(fbar),
                                                  "tailing a covariant reindexing fails");
                                    });
                            }
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

Report check_cartesian_algebra(const CartStructure& g, std::size_t bound) {
    Report r;
    const Multicat& m = g.host();
    auto tm_ptr = std::make_shared<EspanMulticat>(g.host_ptr(), bound);
    const EspanMulticat& tm = *tm_ptr;
    EspanMulticat ttm(tm_ptr, bound);

    auto gamma_hat = [&](const MultiArrow& e) {
        const EspanData& p = tm.payload(e);
        return g.gamma(p.inner, p.tight, e.dom);
    };

    auto fams = all_canonical_families(m, bound);

    // identities and the unit law
    for (const auto& o : m.objects().elements())
        instance(r, [&] {
            if (gamma_hat(tm.identity(o, "1")) != m.identity(o, "1"))
                r.add("alg-identity", o, "gamma does not preserve the identity");
        });
    for (const auto& x : fams)
        for (const auto& alpha : m.arrows_from(x))
            instance(r, [&] {
                if (gamma_hat(monad_eta(tm, alpha)) != alpha)
                    r.add("alg-unit", describe(alpha), "gamma after the unit is not the identity");
            });

    // multiplication law: gamma . mu = gamma . espan(gamma)
    for (const auto& x : fams)
        for (const auto& a2 : ttm.arrows_from(x))
            instance(r, [&] {
                MultiArrow lhs = gamma_hat(monad_mu(tm, ttm, a2));
                MultiArrow rhs = gamma_hat(espan_apply(ttm, tm, a2, gamma_hat));
                if (lhs != rhs)
                    r.add("alg-mult", describe(a2),
                          "the two evaluations of a nested span disagree");
            });

    // morphism: composition, symmetry and cells
    for (const auto& y : fams)
        for (const auto& b : tm.arrows_from(y)) {
            for (std::size_t nk = 0; nk <= bound; ++nk) {
                FinSet K = FinSet::canonical(nk);
                for (const auto& bbase : all_maps(K, y.index))
                    for (const auto& x : all_families(m, K))
                        for (const auto& w : all_loose_into(tm, x, bbase, y)) {
                            instance(r, [&] {
                                MultiArrow comp = compose_conn_loose(tm, b, w);
                                LooseArrow gw;
                                gw.base = w.base;
                                for (const auto& [j, e] : w.components)
                                    gw.components[j] = gamma_hat(e);
                                MultiArrow rhs = compose_conn_loose(m, gamma_hat(b), gw);
                                if (gamma_hat(comp) != rhs)
                                    r.add("alg-compose", describe(b) + " ; " + describe(w.base),
                                          "gamma does not preserve composition");
                            });
                            // cells over the loose arrow
                            for (std::size_t nv = 0; nv <= bound && nv <= 2; ++nv)
                                for (const auto& v :
                                     all_maps(FinSet::canonical(nv), y.index))
                                    instance(r, [&] {
                                        LooseCell cell = canonical_cell(bbase, v);
                                        LooseArrow w2 = reindex_loose(tm, w, cell);
                                        LooseArrow gw2;
                                        gw2.base = w2.base;
                                        for (const auto& [j, e] : w2.components)
                                            gw2.components[j] = gamma_hat(e);
                                        LooseArrow gw;
                                        gw.base = w.base;
                                        for (const auto& [j, e] : w.components)
                                            gw.components[j] = gamma_hat(e);
                                        if (reindex_loose(m, gw, cell) != gw2)
                                            r.add("alg-cell",
                                                  describe(w.base) + " ; v=" + describe(v),
                                                  "gamma does not commute with cell "
                                                  "reindexing");
                                    });
                        }
            }
            // symmetry on connected arrows
            for (const auto& sigma : all_bijections(y.index, y.index))
                instance(r, [&] {
                    if (gamma_hat(tm.reindex(b, sigma)) != m.reindex(gamma_hat(b), sigma))
                        r.add("alg-symmetry", describe(b),
                              "gamma does not commute with the symmetric action");
                });
        }

    r.finalize();
    if (r.skipped > 0 && r.status == Report::Status::Pass)
        r.status = Report::Status::BoundExceeded;
    return r;
}

Report check_cartesian(const CartStructure& g, std::size_t bound) {
    Report laws = check_cartesian_laws(g, bound);
    Report alg = check_cartesian_algebra(g, bound);
    Report merged;
    merged.merge(laws);
    merged.merge(alg);
    if (laws.passed() != alg.passed())
        merged.add("formulation-agreement", g.describe(),
                   "the four-law suite and the algebra equations disagree");
    merged.finalize();
    if (merged.skipped > 0 && merged.status == Report::Status::Pass)
        merged.status = Report::Status::BoundExceeded;
    return merged;
}

// ---- models ----

Token model_arrow_key(const MultiArrow& a) {
    return a.name + "@" + describe(a.dom) + "->" + a.cod;
}

Report check_model(const CartStructure& g, const ModelAssignment& model, std::size_t bound) {
    Report r;
    const Multicat& m = g.host();
    for (const auto& o : m.objects().elements())
        if (model.carriers.find(o) == model.carriers.end())
            throw StructuralError("model: no carrier for object '" + o + "'");
    MulticatPtr s = finset_multicat(model.carriers);
    CartPtr gs = finset_cart_structure(s);

    auto md = [&](const MultiArrow& a) -> std::optional<MultiArrow> {
        auto it = model.arrow_tables.find(model_arrow_key(a));
        if (it == model.arrow_tables.end()) return std::nullopt;
        return mint_function_arrow(*s, a.dom, a.cod, it->second);
    };
    auto require_md = [&](const MultiArrow& a) -> std::optional<MultiArrow> {
        auto v = md(a);
        if (!v)
            r.add("model-totality", describe(a), "no function assigned to the arrow");
        return v;
    };

    auto fams = all_canonical_families(m, bound);
    std::vector<MultiArrow> arrows;
    for (const auto& x : fams)
        for (const auto& a : m.arrows_from(x)) arrows.push_back(a);

    // identities
    for (const auto& o : m.objects().elements())
        instance(r, [&] {
            auto v = require_md(m.identity(o, "1"));
            if (v && *v != s->identity(o, "1"))
                r.add("model-identity", o, "identity is not sent to the identity function");
        });

    // symmetry
    for (const auto& a : arrows)
        for (const auto& sigma : all_bijections(a.dom.index, a.dom.index))
            instance(r, [&] {
                auto va = require_md(a);
                auto vs = require_md(m.reindex(a, sigma));
                if (va && vs && s->reindex(*va, sigma) != *vs)
                    r.add("model-symmetry", describe(a),
                          "relabeling is not preserved");
            });

    // composition
    for (const auto& outer : arrows) {
        std::size_t arity = outer.dom.index.size();
        const auto& canon = outer.dom.index.elements();
        std::vector<std::vector<const MultiArrow*>> options(arity);
        bool feasible = true;
        for (std::size_t k = 0; k < arity; ++k) {
            for (const auto& a : arrows)
                if (a.cod == outer.dom.at(canon[k])) options[k].push_back(&a);
            if (options[k].empty()) feasible = false;
        }
        if (!feasible) continue;
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
            std::vector<MultiArrow> by_pos;
            std::size_t total = 0;
            for (std::size_t k = 0; k < arity; ++k) {
                by_pos.push_back(*options[k][pick[k]]);
                total += by_pos.back().dom.index.size();
            }
            if (total <= bound)
                instance(r, [&] {
                    MultiArrow comp = compose_blockwise(m, outer, by_pos);
                    auto vout = require_md(outer);
                    auto vcomp = require_md(comp);
                    std::vector<MultiArrow> vins;
                    bool ok = vout.has_value() && vcomp.has_value();
                    for (const auto& a : by_pos) {
                        auto v = require_md(a);
                        if (!v) ok = false;
                        else vins.push_back(*v);
                    }
                    if (ok && compose_blockwise(*s, *vout, vins) != *vcomp)
                        r.add("model-composition", describe(outer),
                              "composition is not preserved");
                });
            std::size_t p = 0;
            while (p < arity && ++pick[p] == options[p].size()) pick[p++] = 0;
            if (p == arity || arity == 0) break;
        }
    }

    // covariant reindexing
    for (const auto& a : arrows)
        for (std::size_t ni = 0; ni <= bound; ++ni) {
            FinSet I = FinSet::canonical(ni);
            for (const auto& f : all_maps(a.dom.index, I))
                for (const auto& target : all_families(m, I)) {
                    if (target.reindex(f) != a.dom) continue;
                    instance(r, [&] {
                        MultiArrow ga = g.gamma(a, f, target);
                        auto va = require_md(a);
                        auto vga = require_md(ga);
                        if (va && vga && gs->gamma(*va, f, target) != *vga)
                            r.add("model-gamma",
                                  describe(a) + " ; f=" + describe(f),
                                  "covariant reindexing is not preserved");
                    });
                }
        }

    r.finalize();
    if (r.skipped > 0 && r.status == Report::Status::Pass)
        r.status = Report::Status::BoundExceeded;
    return r;
}

ModelAssignment tautological_model(const Multicat& finset_m, std::size_t bound) {
    const auto* carriers = carriers_of(finset_m);
    if (!carriers)
        throw StructuralError("tautological_model: not a finite-sets multicategory");
    ModelAssignment model;
    model.carriers = *carriers;
    for (const auto& x : all_canonical_families(finset_m, bound))
        for (const auto& a : finset_m.arrows_from(x))
            model.arrow_tables[model_arrow_key(a)] = *fn_table(finset_m, a);
    return model;
}

}  // namespace mcw
