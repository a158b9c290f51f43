#include "alth/arity.hpp"

#include <algorithm>
#include <set>

namespace alth {

AritySystem AritySystem::finite(std::vector<std::size_t> cardinals) {
    return mk_arity_system(std::move(cardinals));
}

AritySystem AritySystem::fin_card(std::size_t window) {
    if (window < 1) throw error("fin_card arity system needs window >= 1");
    AritySystem s;
    s.kind = Kind::fin_card;
    s.window = window;
    s.members.resize(window + 1);
    for (std::size_t i = 0; i <= window; ++i) s.members[i] = i;
    return s;
}

AritySystem mk_arity_system(std::vector<std::size_t> cardinals) {
    std::set<std::size_t> set(cardinals.begin(), cardinals.end());
    if (!set.count(1)) throw error("arity system: 1 is not a member");
    for (std::size_t m : set)
        for (std::size_t n : set)
            if (!set.count(m * n))
                throw error("arity system not closed under product: " + std::to_string(m) + "*" +
                            std::to_string(n) + "=" + std::to_string(m * n) + " is missing");
    AritySystem s;
    s.kind = AritySystem::Kind::finite;
    s.members.assign(set.begin(), set.end());
    return s;
}

std::optional<std::size_t> AritySystem::index_of(std::size_t arity) const {
    auto it = std::lower_bound(members.begin(), members.end(), arity);
    if (it != members.end() && *it == arity) return std::size_t(it - members.begin());
    return std::nullopt;
}

bool AritySystem::contains(std::size_t arity) const {
    if (is_fin_card()) return true;
    return index_of(arity).has_value();
}

std::string AritySystem::describe() const {
    if (is_fin_card()) return "fincard(window=" + std::to_string(window) + ")";
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(members[i]);
    }
    return s + "}";
}

std::vector<std::size_t> AritySystem::arity_list(std::size_t w) const {
    if (!is_fin_card()) return members;
    std::vector<std::size_t> r(w + 1);
    for (std::size_t i = 0; i <= w; ++i) r[i] = i;
    return r;
}

CategoryPtr arity_category(const std::vector<std::size_t>& arities) {
    auto c = std::make_shared<EnrichedCategory>();
    const std::size_t n = arities.size();
    c->objects.resize(n);
    for (std::size_t i = 0; i < n; ++i) c->objects[i] = std::to_string(arities[i]);
    c->hom.assign(n, std::vector<FinSet>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            c->hom[a][b] = hom_set(FinSet(arities[a]), FinSet(arities[b]));
    c->comp.assign(n, std::vector<std::vector<std::vector<std::size_t>>>(
                          n, std::vector<std::vector<std::size_t>>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                const std::size_t ng = c->hom[b][cc].size;
                const std::size_t nf = c->hom[a][b].size;
                std::vector<std::size_t> table(ng * nf);
                for (std::size_t g = 0; g < ng; ++g) {
                    auto gt = fn_decode(g, arities[b], arities[cc]);
                    for (std::size_t f = 0; f < nf; ++f) {
                        auto ft = fn_decode(f, arities[a], arities[b]);
                        std::vector<std::size_t> comp_t(arities[a]);
                        for (std::size_t i = 0; i < arities[a]; ++i) comp_t[i] = gt[ft[i]];
                        table[g * nf + f] = fn_encode(comp_t, arities[cc]);
                    }
                }
                c->comp[a][b][cc] = std::move(table);
            }
    c->id.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::size_t> idt(arities[a]);
        for (std::size_t i = 0; i < arities[a]; ++i) idt[i] = i;
        c->id[a] = fn_encode(idt, arities[a]);
    }
    return c;
}

CategoryPtr arity_category(const AritySystem& s) { return arity_category(s.members); }

ArityFunctor ArityFunctor::inclusion(const AritySystem& s) {
    ArityFunctor t;
    t.base = s;
    t.value = [](std::size_t arity) { return FinSet(arity); };
    t.action = [](std::size_t a, std::size_t b, std::size_t u) { return fn_decode(u, a, b); };
    return t;
}

ArityFunctor ArityFunctor::from_tables(const AritySystem& s, std::vector<FinSet> values,
                                       std::vector<std::vector<std::vector<std::size_t>>> actions) {
    if (values.size() != s.members.size()) throw error("ArityFunctor: one value per member arity");
    ArityFunctor t;
    t.base = s;
    auto vals = std::make_shared<std::vector<FinSet>>(std::move(values));
    auto acts =
        std::make_shared<std::vector<std::vector<std::vector<std::size_t>>>>(std::move(actions));
    AritySystem sys = s;
    t.value = [vals, sys](std::size_t arity) {
        auto i = sys.index_of(arity);
        if (!i) throw error("ArityFunctor: arity not represented");
        return (*vals)[*i];
    };
    t.action = [vals, acts, sys](std::size_t a, std::size_t b, std::size_t u) {
        auto ia = sys.index_of(a), ib = sys.index_of(b);
        if (!ia || !ib) throw error("ArityFunctor: arity not represented");
        return (*acts)[*ia * sys.members.size() + *ib][u];
    };
    return t;
}

ValidationReport validate_arity_functor(const ArityFunctor& t, std::size_t window) {
    ValidationReport rep;
    auto arities = t.base.arity_list(window);
    for (std::size_t a : arities) {
        FinSet va = t.value(a);
        auto idt = t.action(a, a, FinFn::identity(FinSet(a)).table.empty()
                                      ? 0
                                      : fn_encode(FinFn::identity(FinSet(a)).table, a));
        if (idt.size() != va.size) {
            rep.add("identity action has wrong size at arity " + std::to_string(a));
            continue;
        }
        for (std::size_t x = 0; x < va.size; ++x)
            if (idt[x] != x) {
                rep.add("identity action not identity at arity " + std::to_string(a));
                break;
            }
    }
    for (std::size_t a : arities)
        for (std::size_t b : arities)
            for (std::size_t c : arities) {
                const std::size_t nu = pow_sz(b, a);
                const std::size_t nv = pow_sz(c, b);
                for (std::size_t v = 0; v < nv; ++v) {
                    auto vt = fn_decode(v, b, c);
                    auto actv = t.action(b, c, v);
                    for (std::size_t u = 0; u < nu; ++u) {
                        auto ut = fn_decode(u, a, b);
                        std::vector<std::size_t> vu(a);
                        for (std::size_t i = 0; i < a; ++i) vu[i] = vt[ut[i]];
                        auto lhs = t.action(a, c, fn_encode(vu, c));
                        auto actu = t.action(a, b, u);
                        bool bad = false;
                        for (std::size_t x = 0; x < actu.size() && !bad; ++x)
                            if (lhs[x] != actv[actu[x]]) bad = true;
                        if (bad) {
                            rep.add("functoriality fails at u:" + std::to_string(a) + "->" +
                                    std::to_string(b) + "#" + std::to_string(u) + ", v:" +
                                    std::to_string(b) + "->" + std::to_string(c) + "#" +
                                    std::to_string(v));
                            if (rep.violations.size() > 8) return rep;
                        }
                    }
                }
            }
    return rep;
}

FinSet Weight::value(std::size_t arity) const { return hom_set(FinSet(arity), target); }

std::vector<std::size_t> Weight::action(std::size_t a, std::size_t b, std::size_t u) const {
    // precomposition hom(b,V) -> hom(a,V) along u : a -> b
    auto ut = fn_decode(u, a, b);
    const std::size_t nb = pow_sz(target.size, b);
    std::vector<std::size_t> act(nb);
    for (std::size_t f = 0; f < nb; ++f) {
        auto ft = fn_decode(f, b, target.size);
        std::vector<std::size_t> fu(a);
        for (std::size_t i = 0; i < a; ++i) fu[i] = ft[ut[i]];
        act[f] = fn_encode(fu, target.size);
    }
    return act;
}

namespace {

struct LanBlocks {
    std::vector<std::size_t> arities;
    std::vector<FinSet> tvals;       // T(J) per arity
    std::vector<std::size_t> wsize;  // |hom(J,V)| per arity
};

LanBlocks lan_blocks(const ArityFunctor& t, const FinSet& v, const std::vector<std::size_t>& as) {
    LanBlocks b;
    b.arities = as;
    for (std::size_t a : as) {
        b.tvals.push_back(t.value(a));
        b.wsize.push_back(pow_sz(v.size, a));
    }
    return b;
}

/// coend over the arity category of hom(J,V) x T(J) (with the row-major
/// pairing (f,x) |-> f*|T(J)|+x inside each block); the weight and functor
/// action tables are prebuilt once per arity-map so the coend and its
/// validation sweep only do table lookups
CoendResult lan_coend(const ArityFunctor& t, const FinSet& v, const LanBlocks& b) {
    CategoryPtr cat = arity_category(b.arities);
    Weight w{t.base, v};
    const auto& as = b.arities;
    const std::size_t n = as.size();
    auto wact = std::make_shared<std::vector<std::vector<std::vector<std::size_t>>>>(n * n);
    auto tact = std::make_shared<std::vector<std::vector<std::vector<std::size_t>>>>(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb) {
            const std::size_t nu = pow_sz(as[bb], as[a]);
            (*wact)[a * n + bb].resize(nu);
            (*tact)[a * n + bb].resize(nu);
            for (std::size_t u = 0; u < nu; ++u) {
                (*wact)[a * n + bb][u] = w.action(as[a], as[bb], u);
                (*tact)[a * n + bb][u] = t.action(as[a], as[bb], u);
            }
        }
    Bifunctor f;
    f.base = cat;
    f.value = [&](std::size_t a, std::size_t bb) {
        return FinSet(b.wsize[a] * b.tvals[bb].size);
    };
    f.action = [&, wact, tact, n](const Mor& h, const Mor& k) {
        // h : a' -> a contravariant via the weight, k : b -> b' covariant via T
        const auto& wa = (*wact)[h.dom * n + h.cod][h.idx];
        const auto& ta = (*tact)[k.dom * n + k.cod][k.idx];
        const std::size_t from_t = b.tvals[k.dom].size;
        const std::size_t to_t = b.tvals[k.cod].size;
        const std::size_t from_w = b.wsize[h.cod];
        FinSet dom(from_w * from_t);
        FinSet cod(b.wsize[h.dom] * to_t);
        std::vector<std::size_t> table(dom.size);
        for (std::size_t ff = 0; ff < from_w; ++ff)
            for (std::size_t x = 0; x < from_t; ++x)
                table[ff * from_t + x] = wa[ff] * to_t + ta[x];
        return FinFn(dom, cod, std::move(table));
    };
    return coend(f);
}

}  // namespace

std::size_t LanResult::insert(std::size_t arity_pos, std::size_t f_idx, std::size_t x_idx) const {
    const std::size_t tsz = functor_values[arity_pos].size;
    return inner.cls(arity_pos, f_idx * tsz + x_idx);
}

std::tuple<std::size_t, std::size_t, std::size_t> LanResult::decode(std::size_t cls_idx) const {
    auto [obj, local] = inner.representative(cls_idx);
    const std::size_t tsz = functor_values[obj].size;
    return {obj, local / tsz, local % tsz};
}

LanResult lan_along_j(const ArityFunctor& t, const FinSet& v) {
    return lan_along_j(t, v, t.base.is_fin_card() ? t.base.window : 0);
}

LanResult lan_along_j(const ArityFunctor& t, const FinSet& v, std::size_t window) {
    LanResult r;
    r.target = v;
    if (!t.base.is_fin_card()) {
        auto as = t.base.members;
        auto blocks = lan_blocks(t, v, as);
        r.arities = as;
        r.functor_values = blocks.tvals;
        r.inner = lan_coend(t, v, blocks);
        r.value = r.inner.value;
        r.stabilized = true;
        return r;
    }
    if (window < 1) throw error("lan_along_j: fin_card window must be >= 1");
    auto as = t.base.arity_list(window);
    auto blocks = lan_blocks(t, v, as);
    r.arities = as;
    r.functor_values = blocks.tvals;
    r.window_used = window;
    r.inner = lan_coend(t, v, blocks);
    r.value = r.inner.value;
    // stabilization witness: the canonical map from the window-(N-1)
    // truncation must be a bijection
    if (window == 1) {
        r.stabilized = false;
        return r;
    }
    auto as_prev = t.base.arity_list(window - 1);
    auto blocks_prev = lan_blocks(t, v, as_prev);
    CoendResult prev = lan_coend(t, v, blocks_prev);
    if (prev.value.size != r.value.size) {
        r.stabilized = false;
        return r;
    }
    // blocks of the smaller window are a prefix of the larger one
    std::vector<bool> hit(r.value.size, false);
    bool inj = true;
    for (std::size_t cls = 0; cls < prev.value.size && inj; ++cls) {
        auto [obj, local] = prev.representative(cls);
        std::size_t big = r.inner.cls(obj, local);
        if (hit[big]) inj = false;
        hit[big] = true;
    }
    r.stabilized = inj;
    return r;
}

CheckResult check_eleutheric_instance(const AritySystem& s, const ArityFunctor& t, const FinSet& v,
                                      std::size_t k_arity) {
    return check_eleutheric_instance(s, t, v, k_arity, s.is_fin_card() ? s.window : 0);
}

CheckResult check_eleutheric_instance(const AritySystem& s, const ArityFunctor& t, const FinSet& v,
                                      std::size_t k_arity, std::size_t window) {
    if (!s.contains(k_arity)) throw error("check_eleutheric_instance: K not in the system");
    LanResult lan = lan_along_j(t, v, window);
    if (s.is_fin_card() && !lan.stabilized)
        return {Verdict::inconclusive,
                "Lan_j T unstabilized at window " + std::to_string(window)};

    // left side: coend over J of hom(J,V) x hom(K, TJ), via the functor
    // J |-> hom(K, TJ)
    ArityFunctor homkt;
    homkt.base = s;
    const FinSet kset(k_arity);
    homkt.value = [&t, kset](std::size_t arity) { return hom_set(kset, t.value(arity)); };
    homkt.action = [&t, kset, k_arity](std::size_t a, std::size_t b, std::size_t u) {
        auto tact = t.action(a, b, u);
        const std::size_t ta = t.value(a).size;
        const std::size_t tb = t.value(b).size;
        const std::size_t n = pow_sz(ta, k_arity);
        std::vector<std::size_t> act(n);
        for (std::size_t g = 0; g < n; ++g) {
            auto gt = fn_decode(g, k_arity, ta);
            for (auto& x : gt) x = tact[x];
            act[g] = fn_encode(gt, tb);
        }
        return act;
    };
    LanResult lhs = lan_along_j(homkt, v, window);
    if (s.is_fin_card() && !lhs.stabilized)
        return {Verdict::inconclusive,
                "left-hand coend unstabilized at window " + std::to_string(window)};

    // canonical map: (f : J->V, g : K->TJ) |-> (k |-> class_of(f, g(k)))
    const std::size_t rhs_size = pow_sz(lan.value.size, k_arity);
    std::vector<std::size_t> image(lhs.value.size, std::size_t(-1));
    for (std::size_t pos = 0; pos < lhs.arities.size(); ++pos) {
        const std::size_t tsz = lhs.functor_values[pos].size;
        const std::size_t wsz = pow_sz(v.size, lhs.arities[pos]);
        for (std::size_t f = 0; f < wsz; ++f)
            for (std::size_t g = 0; g < tsz; ++g) {
                std::size_t cls = lhs.insert(pos, f, g);
                auto gt = fn_decode(g, k_arity, t.value(lhs.arities[pos]).size);
                std::vector<std::size_t> tup(k_arity);
                for (std::size_t k = 0; k < k_arity; ++k) tup[k] = lan.insert(pos, f, gt[k]);
                std::size_t enc = tuple_encode(tup, lan.value.size == 0 ? 1 : lan.value.size);
                if (image[cls] != std::size_t(-1) && image[cls] != enc)
                    return {Verdict::fail, "canonical map not constant on a coend class"};
                image[cls] = enc;
            }
    }
    if (lhs.value.size != rhs_size)
        return {Verdict::fail, "sizes differ: coend " + std::to_string(lhs.value.size) +
                                   " vs hom " + std::to_string(rhs_size)};
    std::vector<bool> hit(rhs_size, false);
    for (std::size_t cls = 0; cls < lhs.value.size; ++cls) {
        if (image[cls] == std::size_t(-1)) return {Verdict::fail, "unreached coend class"};
        if (hit[image[cls]]) return {Verdict::fail, "canonical map not injective"};
        hit[image[cls]] = true;
    }
    return {Verdict::pass, ""};
}

CheckResult check_xi_iso(const AritySystem& s, const Endofunctor& t, const FinSet& v) {
    return check_xi_iso(s, t, v, s.is_fin_card() ? s.window : 0);
}

CheckResult check_xi_iso(const AritySystem& s, const Endofunctor& t, const FinSet& v,
                         std::size_t window) {
    // restrict T along j
    ArityFunctor tj;
    tj.base = s;
    tj.value = [&t](std::size_t arity) { return t.value(FinSet(arity)); };
    tj.action = [&t](std::size_t a, std::size_t b, std::size_t u) {
        return t.map(hom_element(FinSet(a), FinSet(b), u)).table;
    };
    LanResult lan = lan_along_j(tj, v, window);
    if (s.is_fin_card() && !lan.stabilized)
        return {Verdict::inconclusive,
                "Lan_j(T o j) unstabilized at window " + std::to_string(window)};
    FinSet tv = t.value(v);
    if (lan.value.size != tv.size)
        return {Verdict::fail, "sizes differ: Lan " + std::to_string(lan.value.size) + " vs T(V) " +
                                   std::to_string(tv.size)};
    // xi: class of (f : J -> V, x in T(J)) |-> T(f)(x)
    std::vector<std::size_t> image(lan.value.size, std::size_t(-1));
    for (std::size_t pos = 0; pos < lan.arities.size(); ++pos) {
        const std::size_t wsz = pow_sz(v.size, lan.arities[pos]);
        const std::size_t tsz = lan.functor_values[pos].size;
        for (std::size_t f = 0; f < wsz; ++f) {
            FinFn ff = hom_element(FinSet(lan.arities[pos]), v, f);
            FinFn tf = t.map(ff);
            for (std::size_t x = 0; x < tsz; ++x) {
                std::size_t cls = lan.insert(pos, f, x);
                std::size_t val = tf.table[x];
                if (image[cls] != std::size_t(-1) && image[cls] != val)
                    return {Verdict::fail, "xi not constant on a coend class"};
                image[cls] = val;
            }
        }
    }
    std::vector<bool> hit(tv.size, false);
    for (std::size_t cls = 0; cls < lan.value.size; ++cls) {
        if (image[cls] == std::size_t(-1)) return {Verdict::fail, "unreached coend class"};
        if (hit[image[cls]]) return {Verdict::fail, "xi not injective"};
        hit[image[cls]] = true;
    }
    return {Verdict::pass, ""};
}

}  // namespace alth
