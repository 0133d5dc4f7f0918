#include "mcw/fincat.hpp"

#include <algorithm>

namespace mcw {

FinCategory::FinCategory(FinSet objects,
                         std::map<Token, std::pair<Token, Token>> arrows,
                         std::map<Token, Token> identities,
                         std::map<std::pair<Token, Token>, Token> composition)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      composition_(std::move(composition)) {}

const Token& FinCategory::src(const Token& arrow) const {
    auto it = arrows_.find(arrow);
    if (it == arrows_.end())
        throw StructuralError("FinCategory: unknown arrow '" + arrow + "'");
    return it->second.first;
}

const Token& FinCategory::tgt(const Token& arrow) const {
    auto it = arrows_.find(arrow);
    if (it == arrows_.end())
        throw StructuralError("FinCategory: unknown arrow '" + arrow + "'");
    return it->second.second;
}

const Token& FinCategory::identity(const Token& obj) const {
    auto it = identities_.find(obj);
    if (it == identities_.end())
        throw StructuralError("FinCategory: no identity assigned to '" + obj + "'");
    return it->second;
}

const Token& FinCategory::compose(const Token& g, const Token& f) const {
    if (tgt(f) != src(g))
        throw StructuralError("FinCategory: arrows '" + g + "' and '" + f +
                              "' are not composable");
    auto it = composition_.find({g, f});
    if (it == composition_.end())
        throw StructuralError("FinCategory: composition table missing (" + g + ", " + f + ")");
    return it->second;
}

std::vector<Token> FinCategory::hom(const Token& a, const Token& b) const {
    std::vector<Token> result;
    for (const auto& [id, st] : arrows_)
        if (st.first == a && st.second == b) result.push_back(id);
    return result;
}

std::vector<Token> FinCategory::arrows_into(const Token& b) const {
    std::vector<Token> result;
    for (const auto& [id, st] : arrows_)
        if (st.second == b) result.push_back(id);
    return result;
}

void FinCategory::check() const {
    for (const auto& [id, st] : arrows_) {
        if (!objects_.contains(st.first) || !objects_.contains(st.second))
            throw ValidationError("category: arrow '" + id + "' has unknown endpoints");
    }
    for (const auto& o : objects_.elements()) {
        const Token& i = identity(o);
        if (src(i) != o || tgt(i) != o)
            throw ValidationError("category: identity of '" + o + "' is not an endo arrow");
    }
    for (const auto& [gf, c] : composition_) {
        const auto& [g, f] = gf;
        if (tgt(f) != src(g))
            throw ValidationError("category: composition table holds a non-composable pair");
        if (src(c) != src(f) || tgt(c) != tgt(g))
            throw ValidationError("category: composite of (" + g + ", " + f +
                                  ") has wrong endpoints");
    }
    for (const auto& [f, st] : arrows_) {
        if (compose(identity(st.second), f) != f || compose(f, identity(st.first)) != f)
            throw ValidationError("category: unit law fails at '" + f + "'");
    }
    for (const auto& [f, stf] : arrows_)
        for (const auto& [g, stg] : arrows_) {
            if (stf.second != stg.first) continue;
            for (const auto& [h, sth] : arrows_) {
                if (stg.second != sth.first) continue;
                if (compose(h, compose(g, f)) != compose(compose(h, g), f))
                    throw ValidationError("category: associativity fails at (" + h + ", " + g +
                                          ", " + f + ")");
            }
        }
}

const Token& FinFunctor::on_object(const Token& o) const {
    auto it = object_map.find(o);
    if (it == object_map.end())
        throw StructuralError("functor: object '" + o + "' not mapped");
    return it->second;
}

const Token& FinFunctor::on_arrow(const Token& a) const {
    auto it = arrow_map.find(a);
    if (it == arrow_map.end())
        throw StructuralError("functor: arrow '" + a + "' not mapped");
    return it->second;
}

void FinFunctor::check() const {
    for (const auto& o : src.objects().elements())
        if (!tgt.objects().contains(on_object(o)))
            throw ValidationError("functor: image object missing in target");
    for (const auto& [a, st] : src.arrows()) {
        const Token& fa = on_arrow(a);
        if (!tgt.has_arrow(fa))
            throw ValidationError("functor: image arrow missing in target");
        if (tgt.src(fa) != on_object(st.first) || tgt.tgt(fa) != on_object(st.second))
            throw ValidationError("functor: endpoints not preserved at '" + a + "'");
    }
    for (const auto& o : src.objects().elements())
        if (on_arrow(src.identity(o)) != tgt.identity(on_object(o)))
            throw ValidationError("functor: identity not preserved at '" + o + "'");
    for (const auto& [f, stf] : src.arrows())
        for (const auto& [g, stg] : src.arrows()) {
            if (stf.second != stg.first) continue;
            if (on_arrow(src.compose(g, f)) != tgt.compose(on_arrow(g), on_arrow(f)))
                throw ValidationError("functor: composition not preserved at (" + g + ", " + f + ")");
        }
}

FinFunctor identity_functor(const FinCategory& c) {
    FinFunctor f{c, c, {}, {}};
    for (const auto& o : c.objects().elements()) f.object_map[o] = o;
    for (const auto& [a, st] : c.arrows()) f.arrow_map[a] = a;
    return f;
}

bool is_discrete_fibration(const FinFunctor& f) {
    for (const auto& e : f.src.objects().elements()) {
        const Token& fe = f.on_object(e);
        for (const auto& b : f.tgt.arrows_into(fe)) {
            std::size_t lifts = 0;
            for (const auto& [a, st] : f.src.arrows())
                if (st.second == e && f.on_arrow(a) == b) ++lifts;
            if (lifts != 1) return false;
        }
    }
    return true;
}

namespace {

std::string join(const std::vector<Token>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

// All families of the given length with values among the listed objects.
std::vector<std::vector<Token>> all_families(const std::vector<Token>& values,
                                             std::size_t length) {
    std::vector<std::vector<Token>> result;
    if (length == 0) {
        result.push_back({});
        return result;
    }
    if (values.empty()) return result;
    std::vector<std::size_t> idx(length, 0);
    while (true) {
        std::vector<Token> fam;
        for (std::size_t i = 0; i < length; ++i) fam.push_back(values[idx[i]]);
        result.push_back(std::move(fam));
        std::size_t pos = 0;
        while (pos < length && ++idx[pos] == values.size()) idx[pos++] = 0;
        if (pos == length) break;
    }
    return result;
}

}  // namespace

Token fam_object_token(const std::vector<Token>& values) { return "[" + join(values) + "]"; }

Token fam_arrow_token(const std::vector<std::size_t>& positions,
                      const std::vector<Token>& components, const Token& target_object) {
    std::vector<Token> pos;
    for (auto p : positions) pos.push_back(std::to_string(p));
    return "<" + join(pos) + "|" + join(components) + "|" + target_object + ">";
}

FinCategory fam(const FinCategory& c, std::size_t arity_bound) {
    if (arity_bound < 1) throw StructuralError("fam: arity bound must be >= 1");
    auto clean = [](const Token& t) {
        for (char ch : t)
            if (std::string(",|<>[]").find(ch) != std::string::npos)
                throw StructuralError("fam: token '" + t + "' contains a reserved character");
    };
    for (const auto& o : c.objects().elements()) clean(o);
    for (const auto& [a, st] : c.arrows()) clean(a);
    std::vector<Token> cobjs = c.objects().elements();

    std::vector<Token> objs;
    std::map<Token, std::vector<Token>> families;
    for (std::size_t n = 0; n <= arity_bound; ++n)
        for (auto& famv : all_families(cobjs, n)) {
            Token t = fam_object_token(famv);
            objs.push_back(t);
            families[t] = famv;
        }

    std::map<Token, std::pair<Token, Token>> arrows;
    std::map<Token, Token> identities;
    std::map<std::pair<Token, Token>, Token> composition;
    // arrow payloads, used to build the composition table
    struct Payload {
        std::vector<std::size_t> positions;
        std::vector<Token> components;
    };
    std::map<Token, Payload> payloads;

    for (const auto& [st, sf] : families)
        for (const auto& [tt, tf] : families) {
            std::size_t n = sf.size(), m = tf.size();
            if (n > 0 && m == 0) continue;
            // enumerate maps f: n -> m as position vectors
            std::vector<std::size_t> pos(n, 1);
            while (true) {
                // componentwise arrow choices
                std::vector<std::vector<Token>> choices;
                bool possible = true;
                for (std::size_t i = 0; i < n; ++i) {
                    auto h = c.hom(sf[i], tf[pos[i] - 1]);
                    if (h.empty()) {
                        possible = false;
                        break;
                    }
                    choices.push_back(std::move(h));
                }
                if (possible) {
                    std::vector<std::size_t> pick(n, 0);
                    while (true) {
                        std::vector<Token> comps;
                        for (std::size_t i = 0; i < n; ++i) comps.push_back(choices[i][pick[i]]);
                        Token a = fam_arrow_token(pos, comps, tt);
                        arrows[a] = {st, tt};
                        payloads[a] = Payload{pos, comps};
                        std::size_t p = 0;
                        while (p < n && ++pick[p] == choices[p].size()) pick[p++] = 0;
                        if (p == n) break;
                    }
                }
                if (n == 0) break;
                std::size_t p = 0;
                while (p < n && ++pos[p] == m + 1) pos[p++] = 1;
                if (p == n) break;
            }
        }

    for (const auto& [t, famv] : families) {
        std::vector<std::size_t> pos;
        std::vector<Token> comps;
        for (std::size_t i = 0; i < famv.size(); ++i) {
            pos.push_back(i + 1);
            comps.push_back(c.identity(famv[i]));
        }
        identities[t] = fam_arrow_token(pos, comps, t);
    }

    for (const auto& [fa, fst] : arrows)
        for (const auto& [ga, gst] : arrows) {
            if (fst.second != gst.first) continue;
            const Payload& fp = payloads[fa];
            const Payload& gp = payloads[ga];
            std::vector<std::size_t> pos;
            std::vector<Token> comps;
            for (std::size_t i = 0; i < fp.positions.size(); ++i) {
                std::size_t mid = fp.positions[i];
                pos.push_back(gp.positions[mid - 1]);
                comps.push_back(c.compose(gp.components[mid - 1], fp.components[i]));
            }
            composition[{ga, fa}] = fam_arrow_token(pos, comps, gst.second);
        }

    return FinCategory(FinSet(std::move(objs)), std::move(arrows), std::move(identities),
                       std::move(composition));
}

namespace {

std::vector<Token> split_on(const std::string& s, char sep) {
    std::vector<Token> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    parts.push_back(cur);
    return parts;
}

std::vector<Token> parse_fam_values(const Token& obj) {
    std::string inner = obj.substr(1, obj.size() - 2);
    if (inner.empty()) return {};
    return split_on(inner, ',');
}

}  // namespace

FinFunctor fam(const FinFunctor& f, std::size_t arity_bound) {
    FinFunctor result{fam(f.src, arity_bound), fam(f.tgt, arity_bound), {}, {}};
    auto map_object = [&](const Token& o) {
        std::vector<Token> mapped;
        for (const auto& v : parse_fam_values(o)) mapped.push_back(f.on_object(v));
        return fam_object_token(mapped);
    };
    for (const auto& o : result.src.objects().elements()) result.object_map[o] = map_object(o);
    for (const auto& [a, st] : result.src.arrows()) {
        std::string inner = a.substr(1, a.size() - 2);
        auto segments = split_on(inner, '|');
        std::vector<std::size_t> pos;
        std::vector<Token> comps;
        if (!segments[0].empty())
            for (const auto& p : split_on(segments[0], ',')) pos.push_back(std::stoul(p));
        if (!segments[1].empty())
            for (const auto& cmp : split_on(segments[1], ',')) comps.push_back(f.on_arrow(cmp));
        result.arrow_map[a] = fam_arrow_token(pos, comps, map_object(segments[2]));
    }
    return result;
}

void check_sum_witness(const FinCategory& d, const SumWitness& w) {
    for (const auto& [s, inj] : w.injections) {
        if (d.src(inj) != s || d.tgt(inj) != w.sum_obj)
            throw ValidationError("sum witness: injection '" + inj + "' has wrong endpoints");
    }
    // universal property: cotupling is a bijection hom(sum, T) -> prod hom(s_i, T)
    for (const auto& t : d.objects().elements()) {
        std::vector<std::vector<Token>> homs;
        for (const auto& [s, inj] : w.injections) homs.push_back(d.hom(s, t));
        std::size_t expected = 1;
        for (const auto& h : homs) expected *= h.size();

        std::vector<std::vector<Token>> seen;
        for (const auto& h : d.hom(w.sum_obj, t)) {
            std::vector<Token> tuple;
            for (const auto& [s, inj] : w.injections) tuple.push_back(d.compose(h, inj));
            seen.push_back(std::move(tuple));
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw ValidationError("sum witness: cotupling not injective at '" + t + "'");
        if (seen.size() != expected)
            throw ValidationError("sum witness: cotupling not surjective at '" + t + "'");
    }
}

std::vector<SumWitness> fam_sum_witnesses(const FinCategory& c, std::size_t arity_bound) {
    std::vector<Token> cobjs = c.objects().elements();
    std::vector<std::vector<Token>> fams;
    for (std::size_t n = 0; n <= arity_bound; ++n) {
        if (n == 0) {
            fams.push_back({});
            continue;
        }
        std::vector<std::size_t> idx(n, 0);
        if (cobjs.empty()) break;
        while (true) {
            std::vector<Token> fv;
            for (std::size_t i = 0; i < n; ++i) fv.push_back(cobjs[idx[i]]);
            fams.push_back(fv);
            std::size_t p = 0;
            while (p < n && ++idx[p] == cobjs.size()) idx[p++] = 0;
            if (p == n) break;
        }
    }

    std::vector<SumWitness> result;
    for (const auto& a : fams)
        for (const auto& b : fams) {
            if (a.size() + b.size() > arity_bound) continue;
            std::vector<Token> concat = a;
            concat.insert(concat.end(), b.begin(), b.end());
            SumWitness w;
            w.sum_obj = fam_object_token(concat);
            std::vector<std::size_t> pos_a, pos_b;
            std::vector<Token> comp_a, comp_b;
            for (std::size_t i = 0; i < a.size(); ++i) {
                pos_a.push_back(i + 1);
                comp_a.push_back(c.identity(a[i]));
            }
            for (std::size_t i = 0; i < b.size(); ++i) {
                pos_b.push_back(a.size() + i + 1);
                comp_b.push_back(c.identity(b[i]));
            }
            w.injections.emplace_back(fam_object_token(a), fam_arrow_token(pos_a, comp_a, w.sum_obj));
            w.injections.emplace_back(fam_object_token(b), fam_arrow_token(pos_b, comp_b, w.sum_obj));
            result.push_back(std::move(w));
        }
    return result;
}

std::vector<Token> connected_objects(const FinCategory& d,
                                     const std::vector<SumWitness>& witnesses) {
    for (const auto& w : witnesses) check_sum_witness(d, w);

    std::vector<Token> result;
    for (const auto& a : d.objects().elements()) {
        bool connected = true;
        for (const auto& w : witnesses) {
            // hom(a, sum) must be partitioned by the post-composition injections
            std::vector<Token> images;
            for (const auto& [s, inj] : w.injections)
                for (const auto& u : d.hom(a, s)) images.push_back(d.compose(inj, u));
            std::sort(images.begin(), images.end());
            bool inj_ok =
                std::adjacent_find(images.begin(), images.end()) == images.end();
            if (!inj_ok || images.size() != d.hom(a, w.sum_obj).size()) {
                connected = false;
                break;
            }
        }
        if (connected) result.push_back(a);
    }
    return result;
}

}  // namespace mcw
