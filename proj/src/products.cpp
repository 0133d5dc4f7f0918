#include "mcw/products.hpp"

#include "mcw/represent.hpp"

namespace mcw {

namespace {

/// The pulled-back unit u over the self-pullback of f, as in the second
/// triangle equation.
LooseArrow pulled_back_unit(const Multicat& m, const LooseArrow& u, const FinMap& f) {
    PbSquare sq = pullback(f, f);
    LooseCell cell{sq.top, sq.left, f, f, true};
    return reindex_loose(m, u, cell);
}

}  // namespace

bool check_algebraic_product(const CartStructure& g, const ProductWitness& w) {
    if (!w.u) throw StructuralError("check_algebraic_product: witness has no unit arrow");
    const Multicat& m = g.host();
    const LooseArrow& u = *w.u;

    // first triangle: f_!(u . pi) = id_P
    LooseArrow u_pi = compose_loose(m, u, w.pi);
    LooseArrow folded = gamma_loose(g, u_pi, w.f, FinMap::identity(w.p.index), w.p);
    if (folded != identity_loose(m, w.p)) return false;

    // second triangle: Delta_!(id_X) = pi . (f* u)
    PbSquare sq = pullback(w.f, w.f);
    LooseArrow fu = pulled_back_unit(m, u, w.f);
    LooseArrow rhs = compose_loose(m, w.pi, fu);
    LooseArrow lhs = gamma_loose(g, identity_loose(m, w.x), diagonal(w.f), sq.top,
                                 w.x.reindex(sq.left));
    return lhs == rhs;
}

std::optional<ProductWitness> find_algebraic_product(const CartStructure& g, const ObjFamily& x,
                                                     const FinMap& f, std::size_t bound) {
    (void)bound;
    const Multicat& m = g.host();
    for (const auto& p : all_families(m, f.cod())) {
        ObjFamily fp = p.reindex(f);
        for (const auto& pi : all_loose_into(m, fp, FinMap::identity(x.index), x))
            for (const auto& u : all_loose_into(m, x, f, p)) {
                ProductWitness w;
                w.x = x;
                w.f = f;
                w.p = p;
                w.pi = pi;
                w.u = u;
                if (check_algebraic_product(g, w)) {
                    w.algebraic = true;
                    return w;
                }
            }
    }
    return std::nullopt;
}

ProductWitness ap_to_up(const CartStructure& g, const ProductWitness& w, std::size_t bound) {
    if (!check_algebraic_product(g, w))
        throw StructuralError("ap_to_up: input witness fails the triangle equations");
    const Multicat& m = g.host();

    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet k = FinSet::canonical(nk);
        for (const auto& h : all_maps(k, w.f.cod())) {
            PbSquare sq = pullback(w.f, h);
            LooseCell cell{sq.left, sq.top, w.f, h, true};
            for (const auto& q : all_families(m, k)) {
                ObjFamily fq = q.reindex(sq.top);
                for (const auto& rho : all_loose_into(m, fq, sq.left, w.x)) {
                    // the factorization forced by Frobenius: t = f'_!(u . rho)
                    LooseArrow u_rho = compose_loose(m, *w.u, rho);
                    LooseArrow t = gamma_loose(g, u_rho, sq.top, h, q);
                    LooseArrow tp = reindex_loose(m, t, cell);
                    if (compose_loose(m, w.pi, tp) != rho)
                        throw TheoremViolation("ap_to_up: constructed factorization fails");
                    // uniqueness against every candidate in range
                    std::size_t count = 0;
                    for (const auto& t2 : all_loose_into(m, q, h, w.p))
                        if (compose_loose(m, w.pi, reindex_loose(m, t2, cell)) == rho) ++count;
                    if (count != 1)
                        throw TheoremViolation("ap_to_up: factorization is not unique");
                }
            }
        }
    }
    ProductWitness out = w;
    out.universal = true;
    return out;
}

LooseArrow ap_to_r(const CartStructure& g, const ProductWitness& w, std::size_t bound) {
    if (!check_algebraic_product(g, w))
        throw StructuralError("ap_to_r: input witness fails the triangle equations");
    const Multicat& m = g.host();

    for (std::size_t nn = 0; nn <= bound; ++nn) {
        FinSet n = FinSet::canonical(nn);
        for (const auto& g2 : all_maps(w.f.cod(), n)) {
            FinMap h = compose(g2, w.f);
            for (const auto& v : all_loose(m, w.x, h)) {
                // the factorization forced by the first triangle: t = f_!(v . pi)
                LooseArrow v_pi = compose_loose(m, v, w.pi);
                LooseArrow t = gamma_loose(g, v_pi, w.f, g2, w.p);
                if (compose_loose(m, t, *w.u) != v)
                    throw TheoremViolation("ap_to_r: constructed factorization fails");
                std::size_t count = 0;
                for (const auto& t2 : all_loose_into(m, w.p, g2, v.cod()))
                    if (compose_loose(m, t2, *w.u) == v) ++count;
                if (count != 1) throw TheoremViolation("ap_to_r: factorization is not unique");
            }
        }
    }
    // stability under reindexing pullbacks
    for (std::size_t nl = 0; nl <= bound; ++nl)
        for (const auto& l : all_maps(FinSet::canonical(nl), w.f.cod())) {
            LooseCell cell = canonical_cell(w.f, l);
            LooseArrow moved = reindex_loose(m, *w.u, cell);
            if (!is_opcartesian(m, moved, bound))
                throw TheoremViolation("ap_to_r: the unit is not stably opcartesian");
        }
    return *w.u;
}

ProductWitness up_to_ap(const CartStructure& g, const ProductWitness& w, std::size_t bound) {
    const Multicat& m = g.host();
    if (!is_universal_product(m, w.x, w.f, w.p, w.pi, bound))
        throw StructuralError("up_to_ap: input witness is not a universal product");

    // u is the unique arrow with pi . (f* u) = Delta_!(id)
    PbSquare sq = pullback(w.f, w.f);
    LooseArrow delta_id = gamma_loose(g, identity_loose(m, w.x), diagonal(w.f), sq.top,
                                      w.x.reindex(sq.left));
    std::optional<LooseArrow> found;
    std::size_t count = 0;
    for (const auto& u : all_loose_into(m, w.x, w.f, w.p)) {
        if (compose_loose(m, w.pi, pulled_back_unit(m, u, w.f)) == delta_id) {
            ++count;
            found = u;
        }
    }
    if (count != 1)
        throw TheoremViolation("up_to_ap: the defining equation has " + std::to_string(count) +
                               " solutions");
    ProductWitness out = w;
    out.u = found;
    out.universal = true;
    if (!check_algebraic_product(g, out))
        throw TheoremViolation("up_to_ap: constructed witness fails the triangle equations");
    out.algebraic = true;
    return out;
}

ProductWitness r_to_ap(const CartStructure& g, const ObjFamily& x, const FinMap& f,
                       const LooseArrow& u, std::size_t bound) {
    const Multicat& m = g.host();
    if (!is_opcartesian(m, u, bound))
        throw StructuralError("r_to_ap: input arrow is not opcartesian in range");
    ObjFamily p = u.cod();

    PbSquare sq = pullback(f, f);
    LooseArrow delta_id =
        gamma_loose(g, identity_loose(m, x), diagonal(f), sq.top, x.reindex(sq.left));
    LooseArrow fu = pulled_back_unit(m, u, f);
    std::optional<LooseArrow> found;
    std::size_t count = 0;
    for (const auto& pi : all_loose_into(m, p.reindex(f), FinMap::identity(x.index), x)) {
        if (compose_loose(m, pi, fu) == delta_id) {
            ++count;
            found = pi;
        }
    }
    if (count != 1)
        throw TheoremViolation("r_to_ap: the defining equation has " + std::to_string(count) +
                               " solutions");
    ProductWitness out;
    out.x = x;
    out.f = f;
    out.p = p;
    out.pi = *found;
    out.u = u;
    out.representable = true;
    if (!check_algebraic_product(g, out))
        throw TheoremViolation("r_to_ap: constructed witness fails the triangle equations");
    out.algebraic = true;
    return out;
}

EquivalenceReport equivalence_report(const CartStructure& g, std::size_t bound) {
    EquivalenceReport out;
    const Multicat& m = g.host();
    for (const auto& x : all_canonical_families(m, bound))
        for (std::size_t nj = 0; nj <= bound; ++nj)
            for (const auto& f : all_maps(x.index, FinSet::canonical(nj))) {
                EquivalenceRow row;
                row.x = x;
                row.f = f;
                row.algebraic = find_algebraic_product(g, x, f, bound).has_value();
                row.universal = find_universal_product(m, x, f, bound).has_value();
                row.representable = find_opcartesian(m, x, f, bound).has_value();
                ++out.report.instances;
                if (!row.agree())
                    out.report.add(
                        "theorem-equivalence", describe(x) + " along " + describe(f),
                        std::string("flags disagree: algebraic=") +
                            (row.algebraic ? "1" : "0") + " universal=" +
                            (row.universal ? "1" : "0") + " representable=" +
                            (row.representable ? "1" : "0"));
                out.rows.push_back(std::move(row));
            }
    out.report.finalize();
    return out;
}

}  // namespace mcw
