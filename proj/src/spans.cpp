#include "mcw/spans.hpp"

#include <algorithm>
#include <functional>

namespace mcw {

void SpanArrow::check(const Multicat& m) const {
    (void)m;
    loose.check();
    if (tight_base.dom() != loose.dom().index)
        throw StructuralError("span: tight base does not start at the apex");
    if (tight_base.cod() != tgt.index)
        throw StructuralError("span: tight base does not land in the target index");
    if (loose.cod() != src)
        throw StructuralError("span: loose leg does not land in the source family");
    if (loose.dom() != tgt.reindex(tight_base))
        throw StructuralError("span: apex is not the pullback of the target family");
}

std::string describe(const SpanArrow& s) {
    return "span{tight=" + describe(s.tight_base) + ";loose=" + describe(s.loose) + "}";
}

namespace {

std::string span_encoding(const SpanArrow& s) {
    std::string out = describe(s.tight_base) + "|" + describe(s.loose.base) + "|";
    for (const auto& [j, comp] : s.loose.components) out += j + "<-" + describe(comp) + ";";
    return out;
}

/// Relabels the whole span along a bijection rho : U' -> U of apexes.
SpanArrow relabel_span(const Multicat& m, const SpanArrow& s, const FinMap& rho) {
    SpanArrow out;
    out.src = s.src;
    out.tgt = s.tgt;
    out.tight_base = compose(s.tight_base, rho);
    out.loose = reindex_loose(
        m, s.loose, bijective_cell(s.loose.base, rho, FinMap::identity(s.loose.base.cod())));
    return out;
}

}  // namespace

SpanArrow canonicalize_span(const Multicat& m, const SpanArrow& s) {
    const FinSet& apex = s.tight_base.dom();
    std::size_t n = apex.size();
    FinSet target = FinSet::canonical(n);

    // signature blocks: apex elements may only be permuted within equal
    // signatures (tight image, loose image)
    std::vector<std::pair<std::pair<Token, Token>, Token>> tagged;
    for (const auto& u : apex.elements())
        tagged.push_back({{s.tight_base(u), s.loose.base(u)}, u});
    std::sort(tagged.begin(), tagged.end());

    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end)
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= tagged.size(); ++k) {
        if (k == tagged.size() || tagged[k].first != tagged[begin].first) {
            blocks.emplace_back(begin, k);
            begin = k;
        }
    }

    std::optional<SpanArrow> best;
    std::string best_encoding;
    std::vector<std::size_t> arrangement(n);
    for (std::size_t k = 0; k < n; ++k) arrangement[k] = k;

    // iterate over products of within-block permutations
    std::vector<std::vector<Token>> block_perms;
    std::function<void(std::size_t, std::map<Token, Token>&)> rec =
        [&](std::size_t bi, std::map<Token, Token>& assignment) {
            if (bi == blocks.size()) {
                std::map<Token, Token> table;  // target -> apex
                for (const auto& [pos, u] : assignment) table[pos] = u;
                FinMap rho(target, apex, std::move(table));
                SpanArrow cand = relabel_span(m, s, rho);
                std::string enc = span_encoding(cand);
                if (!best || enc < best_encoding) {
                    best = cand;
                    best_encoding = enc;
                }
                return;
            }
            auto [b, e] = blocks[bi];
            std::vector<Token> members;
            for (std::size_t k = b; k < e; ++k) members.push_back(tagged[k].second);
            std::sort(members.begin(), members.end());
            do {
                for (std::size_t k = b; k < e; ++k)
                    assignment[target.elements()[k]] = members[k - b];
                rec(bi + 1, assignment);
            } while (std::next_permutation(members.begin(), members.end()));
        };
    std::map<Token, Token> assignment;
    rec(0, assignment);
    return *best;
}

SpanArrow identity_span(const Multicat& m, const ObjFamily& x) {
    SpanArrow s;
    s.src = x;
    s.tgt = x;
    s.tight_base = FinMap::identity(x.index);
    s.loose = identity_loose(m, x);
    return canonicalize_span(m, s);
}

SpanArrow compose_spans(const Multicat& m, const SpanArrow& s2, const SpanArrow& s1) {
    if (s1.tgt != s2.src)
        throw StructuralError("compose_spans: spans are not composable");
    // pull the loose base of s2 back along the tight base of s1
    LooseCell cell = canonical_cell(s2.loose.base, s1.tight_base);
    // cell.top : U -> apex(s1), cell.left : U -> apex(s2)
    LooseArrow gamma = reindex_loose(m, s2.loose, cell);
    SpanArrow out;
    out.src = s1.src;
    out.tgt = s2.tgt;
    out.tight_base = compose(s2.tight_base, cell.left);
    out.loose = compose_loose(m, s1.loose, gamma);
    return canonicalize_span(m, out);
}

bool is_universal_product(const Multicat& m, const ObjFamily& x, const FinMap& f,
                          const ObjFamily& p, const LooseArrow& pi, std::size_t bound) {
    for (std::size_t nk = 0; nk <= bound; ++nk) {
        FinSet k = FinSet::canonical(nk);
        for (const auto& h : all_maps(k, f.cod())) {
            PbSquare sq = pullback(f, h);
            // cell reindexing loose arrows over h to arrows over sq.left
            LooseCell cell{sq.left, sq.top, f, h, true};
            for (const auto& q : all_families(m, k)) {
                ObjFamily fq = q.reindex(sq.top);  // f'*Q over the apex
                for (const auto& rho : all_loose_into(m, fq, sq.left, x)) {
                    std::size_t count = 0;
                    for (const auto& t : all_loose_into(m, q, h, p)) {
                        LooseArrow tp = reindex_loose(m, t, cell);
                        if (compose_loose(m, pi, tp) == rho) ++count;
                    }
                    if (count != 1) return false;
                }
            }
        }
    }
    return true;
}

std::optional<ProductWitness> find_universal_product(const Multicat& m, const ObjFamily& x,
                                                     const FinMap& f, std::size_t bound) {
    for (const auto& p : all_families(m, f.cod())) {
        ObjFamily fp = p.reindex(f);
        for (const auto& pi : all_loose_into(m, fp, FinMap::identity(x.index), x)) {
            if (is_universal_product(m, x, f, p, pi, bound)) {
                ProductWitness w;
                w.x = x;
                w.f = f;
                w.p = p;
                w.pi = pi;
                w.universal = true;
                return w;
            }
        }
    }
    return std::nullopt;
}

Report spanmap_is_opfibration(const Multicat& m, std::size_t bound) {
    Report r;
    for (const auto& x : all_canonical_families(m, bound))
        for (std::size_t nj = 0; nj <= bound; ++nj)
            for (const auto& f : all_maps(x.index, FinSet::canonical(nj))) {
                ++r.instances;
                if (!find_universal_product(m, x, f, bound))
                    r.add("universal-products", describe(x) + " along " + describe(f),
                          "no universal product in range");
            }
    r.finalize();
    return r;
}

namespace {

/// The isomorphism class of a span of finite sets, as the sorted multiset
/// of (tight image, loose image) signatures.
std::vector<std::pair<Token, Token>> base_span_key(const SpanArrow& s) {
    std::vector<std::pair<Token, Token>> key;
    for (const auto& u : s.tight_base.dom().elements())
        key.emplace_back(s.tight_base(u), s.loose.base(u));
    std::sort(key.begin(), key.end());
    return key;
}

std::vector<SpanArrow> all_spans(const Multicat& m, const ObjFamily& src, const ObjFamily& tgt,
                                 std::size_t apex_bound) {
    std::vector<SpanArrow> result;
    for (std::size_t na = 0; na <= apex_bound; ++na) {
        FinSet apex_idx = FinSet::canonical(na);
        for (const auto& tb : all_maps(apex_idx, tgt.index)) {
            ObjFamily apex_fam = tgt.reindex(tb);
            for (const auto& lb : all_maps(apex_idx, src.index))
                for (const auto& loose : all_loose_into(m, apex_fam, lb, src))
                    result.push_back(canonicalize_span(m, SpanArrow{src, tgt, tb, loose}));
        }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

}  // namespace

bool product_span_is_opcartesian(const Multicat& m, const ProductWitness& w, std::size_t bound) {
    SpanArrow sigma = canonicalize_span(m, SpanArrow{w.x, w.p, w.f, w.pi});

    for (const auto& z : all_canonical_families(m, bound)) {
        auto mediators = all_spans(m, w.p, z, bound);
        auto tests = all_spans(m, w.x, z, bound);

        // bucket mediators by the iso class of their underlying span of sets
        std::map<std::vector<std::pair<Token, Token>>, std::vector<const SpanArrow*>> by_base;
        for (const auto& mu : mediators) by_base[base_span_key(mu)].push_back(&mu);

        for (const auto& [bkey, mus] : by_base) {
            std::map<SpanArrow, std::size_t> hit;
            std::optional<std::vector<std::pair<Token, Token>>> composite_base;
            for (const auto* mu : mus) {
                SpanArrow comp = compose_spans(m, *mu, sigma);
                composite_base = base_span_key(comp);
                hit[comp]++;
            }
            if (!composite_base) continue;
            for (const auto& tau : tests) {
                if (base_span_key(tau) != *composite_base) continue;
                auto it = hit.find(tau);
                if (it == hit.end() || it->second != 1) return false;
            }
        }
    }
    return true;
}

}  // namespace mcw
