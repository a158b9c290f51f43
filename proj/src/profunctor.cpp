#include "alth/profunctor.hpp"

#include <algorithm>

namespace alth {

namespace {


std::size_t id_hom_index(std::size_t arity) {
    std::vector<std::size_t> t(arity);
    for (std::size_t i = 0; i < arity; ++i) t[i] = i;
    return fn_encode(t, arity);
}

}  // namespace

std::size_t Profunctor::pos_of(std::size_t arity) const {
    for (std::size_t i = 0; i < arity_list.size(); ++i)
        if (arity_list[i] == arity) return i;
    throw error("profunctor: arity " + std::to_string(arity) + " not materialized");
}

Bifunctor Profunctor::bifunctor() const {
    Bifunctor b;
    b.base = arity_category(arity_list);
    auto val = value;
    auto act = action;
    b.value = [val](std::size_t a, std::size_t bb) { return val(a, bb); };
    b.action = [act](const Mor& h, const Mor& k) {
        return act(h.dom, h.cod, h.idx, k.dom, k.cod, k.idx);
    };
    return b;
}

ValidationReport validate_profunctor(const Profunctor& p, std::size_t budget) {
    return validate_bifunctor(p.bifunctor(), budget);
}

Profunctor hom_profunctor(const AritySystem& s, std::vector<std::size_t> arity_list) {
    Profunctor p;
    p.name = "hom";
    p.arities = s;
    p.arity_list = std::move(arity_list);
    auto list = std::make_shared<std::vector<std::size_t>>(p.arity_list);
    p.value = [list](std::size_t a, std::size_t b) {
        return hom_set(FinSet((*list)[a]), FinSet((*list)[b]));
    };
    p.action = [list](std::size_t a, std::size_t b, std::size_t u, std::size_t c, std::size_t d,
                      std::size_t v) {
        const std::size_t A = (*list)[a], B = (*list)[b], C = (*list)[c], D = (*list)[d];
        auto ut = fn_decode(u, A, B);
        auto vt = fn_decode(v, C, D);
        const std::size_t nfrom = pow_sz(C, B);
        std::vector<std::size_t> t(nfrom);
        for (std::size_t f = 0; f < nfrom; ++f) {
            auto ft = fn_decode(f, B, C);
            std::vector<std::size_t> r(A);
            for (std::size_t i = 0; i < A; ++i) r[i] = vt[ft[ut[i]]];
            t[f] = fn_encode(r, D);
        }
        return FinFn(FinSet(nfrom), FinSet(pow_sz(D, A)), std::move(t));
    };
    return p;
}

Profunctor omega(const Monad& m, std::vector<std::size_t> arity_list) {
    Profunctor p;
    p.name = "omega(" + m.name + ")";
    p.arities = m.arities;
    p.arity_list = std::move(arity_list);
    auto list = std::make_shared<std::vector<std::size_t>>(p.arity_list);
    auto impl = m.impl;
    p.value = [list, impl](std::size_t a, std::size_t b) {
        return hom_set(FinSet((*list)[a]), impl->value(FinSet((*list)[b])));
    };
    p.action = [list, impl](std::size_t a, std::size_t b, std::size_t u, std::size_t c,
                            std::size_t d, std::size_t v) {
        const std::size_t A = (*list)[a], B = (*list)[b], C = (*list)[c], D = (*list)[d];
        const std::size_t tc = impl->value(FinSet(C)).size;
        const std::size_t td = impl->value(FinSet(D)).size;
        auto ut = fn_decode(u, A, B);
        FinFn tv = impl->map(hom_element(FinSet(C), FinSet(D), v));
        const std::size_t nfrom = pow_sz(tc, B);
        std::vector<std::size_t> t(nfrom);
        for (std::size_t f = 0; f < nfrom; ++f) {
            auto ft = fn_decode(f, B, tc);
            std::vector<std::size_t> r(A);
            for (std::size_t i = 0; i < A; ++i) r[i] = tv.table[ft[ut[i]]];
            t[f] = fn_encode(r, td);
        }
        return FinFn(FinSet(nfrom), FinSet(pow_sz(td, A)), std::move(t));
    };
    return p;
}

ZetaResult zeta(const Profunctor& p) {
    ZetaResult z;
    const std::size_t n = p.arity_list.size();
    const std::size_t one = p.pos_of(1);
    z.components.assign(n, std::vector<std::vector<std::size_t>>(n));
    z.is_iso = true;
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t A = p.arity_list[a];
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t mab = p.value(a, b).size;
            const std::size_t mib = p.value(one, b).size;
            const std::size_t target = pow_sz(mib, A);
            std::vector<std::size_t> comp(mab);
            // contra action along each element map 1 -> A; the hom index of
            // the map picking j is j itself
            std::vector<FinFn> pick(A);
            for (std::size_t j = 0; j < A; ++j)
                pick[j] = p.action(one, a, j, b, b, id_hom_index(p.arity_list[b]));
            std::vector<bool> hit(target, false);
            for (std::size_t x = 0; x < mab; ++x) {
                std::vector<std::size_t> tup(A);
                for (std::size_t j = 0; j < A; ++j) tup[j] = pick[j].table[x];
                comp[x] = tuple_encode(tup, std::max<std::size_t>(mib, 1));
                if (comp[x] < target && !hit[comp[x]]) hit[comp[x]] = true;
                else if (z.is_iso) {
                    z.is_iso = false;
                    z.witness = "zeta not injective at (" + std::to_string(p.arity_list[a]) +
                                "," + std::to_string(p.arity_list[b]) + ")";
                }
            }
            if (mab != target && z.is_iso) {
                z.is_iso = false;
                z.witness = "zeta sizes differ at (" + std::to_string(p.arity_list[a]) + "," +
                            std::to_string(p.arity_list[b]) + "): " + std::to_string(mab) +
                            " vs " + std::to_string(target);
            }
            z.components[a][b] = std::move(comp);
        }
    }
    return z;
}

ArityFunctor profunctor_mi(const Profunctor& p) {
    ArityFunctor f;
    f.base = p.arities;
    const std::size_t one = p.pos_of(1);
    Profunctor pc = p;
    f.value = [pc, one](std::size_t arity) { return pc.value(one, pc.pos_of(arity)); };
    f.action = [pc, one](std::size_t a, std::size_t b, std::size_t u) {
        std::size_t ap = pc.pos_of(a), bp = pc.pos_of(b);
        return pc.action(one, one, 0, ap, bp, u).table;
    };
    return f;
}

std::size_t ProfComposite::insert(std::size_t a, std::size_t k, std::size_t b, std::size_t x,
                                  std::size_t y) const {
    const std::size_t block = x * nv[k][b].size + y;
    return coends[a][b].cls(k, block);
}

ProfComposite compose_profunctors(const Profunctor& m, const Profunctor& n) {
    if (m.arity_list != n.arity_list) throw error("compose_profunctors: arity lists differ");
    ProfComposite out;
    out.arity_list = m.arity_list;
    const std::size_t na = m.arity_list.size();
    CategoryPtr cat = arity_category(m.arity_list);

    out.mv.assign(na, std::vector<FinSet>(na));
    out.nv.assign(na, std::vector<FinSet>(na));
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
            out.mv[a][b] = m.value(a, b);
            out.nv[a][b] = n.value(a, b);
        }

    out.coends.assign(na, std::vector<CoendResult>(na));
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
            Bifunctor h;
            h.base = cat;
            h.value = [&, a, b](std::size_t kc, std::size_t kv) {
                return FinSet(out.mv[a][kv].size * out.nv[kc][b].size);
            };
            h.action = [&, a, b](const Mor& hm, const Mor& km) {
                // H(h,k) : M(a,k.dom) x N(h.cod,b) -> M(a,k.cod) x N(h.dom,b)
                FinFn mx = m.action(a, a, id_hom_index(m.arity_list[a]), km.dom, km.cod, km.idx);
                FinFn ny = n.action(hm.dom, hm.cod, hm.idx, b, b, id_hom_index(m.arity_list[b]));
                const std::size_t from_m = out.mv[a][km.dom].size;
                const std::size_t from_n = out.nv[hm.cod][b].size;
                const std::size_t to_n = out.nv[hm.dom][b].size;
                std::vector<std::size_t> t(from_m * from_n);
                for (std::size_t x = 0; x < from_m; ++x)
                    for (std::size_t y = 0; y < from_n; ++y)
                        t[x * from_n + y] = mx.table[x] * to_n + ny.table[y];
                return FinFn(FinSet(from_m * from_n),
                             FinSet(out.mv[a][km.cod].size * to_n), std::move(t));
            };
            out.coends[a][b] = coend(h);
        }

    // the composite profunctor acts through representatives
    auto data = std::make_shared<ProfComposite>();
    data->arity_list = out.arity_list;
    data->coends = out.coends;
    data->mv = out.mv;
    data->nv = out.nv;
    Profunctor comp;
    comp.name = m.name + " (x) " + n.name;
    comp.arities = m.arities;
    comp.arity_list = m.arity_list;
    comp.value = [data](std::size_t a, std::size_t b) {
        return data->coends[a][b].value;
    };
    Profunctor mm = m, nn = n;
    comp.action = [data, mm, nn](std::size_t a, std::size_t b, std::size_t u, std::size_t c,
                                 std::size_t d, std::size_t v) {
        const std::size_t from = data->coends[b][c].value.size;
        const std::size_t to = data->coends[a][d].value.size;
        std::vector<std::size_t> t(from);
        for (std::size_t cls = 0; cls < from; ++cls) {
            auto [k, local] = data->coends[b][c].representative(cls);
            const std::size_t nsz = data->nv[k][c].size;
            std::size_t x = local / nsz, y = local % nsz;
            std::size_t kid = id_hom_index(data->arity_list[k]);
            std::size_t x2 = mm.action(a, b, u, k, k, kid).table[x];
            std::size_t y2 = nn.action(k, k, kid, c, d, v).table[y];
            t[cls] = data->insert(a, k, d, x2, y2);
        }
        return FinFn(FinSet(from), FinSet(to), std::move(t));
    };
    out.prof = comp;

    // representable-form comparison (proof route): hom(J, Lan(M_I)(N_I L))
    ZetaResult zm = zeta(m);
    ZetaResult zn = zeta(n);
    if (!zm.is_iso || !zn.is_iso) {
        out.representable_check = {Verdict::inconclusive,
                                   "a factor is not copresheaf-representable"};
        return out;
    }
    ArityFunctor mi = profunctor_mi(m);
    const std::size_t one = m.pos_of(1);
    bool incomplete = false;
    for (std::size_t b = 0; b < na && !incomplete; ++b) {
        FinSet nil = n.value(one, b);  // N_I(L)
        LanResult lan = m.arities.is_fin_card()
                            ? lan_along_j(mi, nil, std::max<std::size_t>(
                                                       m.arities.window,
                                                       *std::max_element(m.arity_list.begin(),
                                                                         m.arity_list.end()) +
                                                           1))
                            : lan_along_j(mi, nil);
        if (m.arities.is_fin_card() && !lan.stabilized) {
            out.representable_check = {Verdict::inconclusive,
                                       "Lan(M_I) unstabilized for the representable form"};
            incomplete = true;
            break;
        }
        // positions of our arities inside the lan's (possibly larger) window
        std::vector<std::size_t> lan_pos(na);
        for (std::size_t k = 0; k < na; ++k) {
            auto it = std::find(lan.arities.begin(), lan.arities.end(), m.arity_list[k]);
            if (it == lan.arities.end()) throw error("compose_profunctors: lan window too small");
            lan_pos[k] = std::size_t(it - lan.arities.begin());
        }
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t A = m.arity_list[a];
            const std::size_t target = pow_sz(lan.value.size, A);
            if (out.coends[a][b].value.size != target) {
                out.representable_check = {
                    Verdict::fail, "composite size differs from representable form at (" +
                                       std::to_string(A) + "," +
                                       std::to_string(m.arity_list[b]) + ")"};
                return out;
            }
            std::vector<std::size_t> image(target, std::size_t(-1));
            std::vector<bool> hit(target, false);
            for (std::size_t k = 0; k < na; ++k) {
                const std::size_t msz = out.mv[a][k].size;
                const std::size_t nsz = out.nv[k][b].size;
                for (std::size_t x = 0; x < msz; ++x) {
                    auto xhat = tuple_decode(zm.components[a][k][x], A,
                                             std::max<std::size_t>(out.mv[one][k].size, 1));
                    for (std::size_t y = 0; y < nsz; ++y) {
                        auto yhat_enc = zn.components[k][b][y];
                        std::size_t cls = out.insert(a, k, b, x, y);
                        std::vector<std::size_t> tup(A);
                        for (std::size_t j = 0; j < A; ++j)
                            tup[j] = lan.insert(lan_pos[k], yhat_enc, xhat[j]);
                        std::size_t enc =
                            tuple_encode(tup, std::max<std::size_t>(lan.value.size, 1));
                        if (image[cls] != std::size_t(-1) && image[cls] != enc) {
                            out.representable_check = {
                                Verdict::fail, "representable comparison not constant on classes"};
                            return out;
                        }
                        image[cls] = enc;
                        if (!hit[enc]) hit[enc] = true;
                    }
                }
            }
            for (std::size_t cls = 0; cls < target; ++cls)
                if (image[cls] == std::size_t(-1)) {
                    out.representable_check = {Verdict::fail,
                                               "representable comparison misses a class"};
                    return out;
                }
            for (std::size_t e = 0; e < target; ++e)
                if (!hit[e]) {
                    out.representable_check = {Verdict::fail,
                                               "representable comparison not surjective"};
                    return out;
                }
        }
    }
    if (!incomplete) out.representable_check = {Verdict::pass, ""};
    return out;
}

CheckResult check_omega_composite(const Monad& t, const Monad& s,
                                  const std::vector<std::size_t>& arity_list) {
    Profunctor ot = omega(t, arity_list);
    Profunctor os = omega(s, arity_list);
    ProfComposite comp = compose_profunctors(ot, os);
    if (comp.representable_check.verdict == Verdict::fail) return comp.representable_check;
    // m^{TS} : class(f,g) |-> T(ghat) o f, against hom(J, T(S(L)))
    const std::size_t na = arity_list.size();
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
            const std::size_t A = arity_list[a];
            const std::size_t B = arity_list[b];
            const std::size_t sl = s.value(FinSet(B)).size;
            const std::size_t tsl = t.value(FinSet(sl)).size;
            const std::size_t target = pow_sz(tsl, A);
            if (comp.coends[a][b].value.size != target)
                return {Verdict::fail,
                        "omega composite size mismatch at (" + std::to_string(A) + "," +
                            std::to_string(B) + "): " +
                            std::to_string(comp.coends[a][b].value.size) + " vs " +
                            std::to_string(target)};
            std::vector<std::size_t> image(target, std::size_t(-1));
            std::vector<bool> hit(target, false);
            for (std::size_t k = 0; k < na; ++k) {
                const std::size_t K = arity_list[k];
                const std::size_t tk = t.value(FinSet(K)).size;
                const std::size_t msz = pow_sz(tk, A);
                const std::size_t nsz = pow_sz(sl, K);
                for (std::size_t y = 0; y < nsz; ++y) {
                    FinFn ghat = hom_element(FinSet(K), FinSet(sl), y);
                    FinFn tg = t.map(ghat);
                    for (std::size_t x = 0; x < msz; ++x) {
                        auto ft = fn_decode(x, A, tk);
                        std::vector<std::size_t> r(A);
                        for (std::size_t i = 0; i < A; ++i) r[i] = tg.table[ft[i]];
                        std::size_t enc = fn_encode(r, tsl);
                        std::size_t cls = comp.insert(a, k, b, x, y);
                        if (image[cls] != std::size_t(-1) && image[cls] != enc)
                            return {Verdict::fail, "m^{TS} not constant on a coend class"};
                        image[cls] = enc;
                        hit[enc] = true;
                    }
                }
            }
            for (std::size_t cls = 0; cls < target; ++cls)
                if (image[cls] == std::size_t(-1))
                    return {Verdict::fail, "m^{TS} misses a class"};
            std::vector<bool> seen(target, false);
            for (std::size_t cls = 0; cls < target; ++cls) {
                if (seen[image[cls]]) return {Verdict::fail, "m^{TS} not injective"};
                seen[image[cls]] = true;
            }
        }
    if (comp.representable_check.verdict == Verdict::inconclusive)
        return {Verdict::pass, "representable form inconclusive (truncation); m^{TS} exact"};
    return {Verdict::pass, ""};
}

CheckResult check_omega_monoidal_laws(const Monad& t, const Monad& s, const Monad& u,
                                      const std::vector<std::size_t>& arity_list) {
    Monad one = identity_monad(t.arities);
    // MF1 (left unit): m^{1,T}(f,g) computed through the identity monad's
    // action equals the composition morphism (the left unitor)
    for (std::size_t J : arity_list)
        for (std::size_t K : arity_list)
            for (std::size_t L : arity_list) {
                const std::size_t tl = t.value(FinSet(L)).size;
                const std::size_t nf = pow_sz(K, J);
                const std::size_t ng = pow_sz(tl, K);
                for (std::size_t g = 0; g < ng; ++g) {
                    FinFn gf(FinSet(K), FinSet(tl), fn_decode(g, K, tl));
                    FinFn idg = one.map(gf);  // 1_V(g), the structure-map route
                    for (std::size_t f = 0; f < nf; ++f) {
                        auto ft = fn_decode(f, J, K);
                        for (std::size_t i = 0; i < J; ++i)
                            if (idg.table[ft[i]] != gf.table[ft[i]])
                                return {Verdict::fail, "MF1 fails at (" + std::to_string(J) +
                                                           "," + std::to_string(K) + "," +
                                                           std::to_string(L) + ")"};
                    }
                }
            }
    // MF2 (right unit): m^{T,1}(f,g) = T(g) o f agrees with the covariant
    // action of g on Omega(T)
    Profunctor ot = omega(t, arity_list);
    for (std::size_t jp = 0; jp < arity_list.size(); ++jp)
        for (std::size_t kp = 0; kp < arity_list.size(); ++kp)
            for (std::size_t lp = 0; lp < arity_list.size(); ++lp) {
                const std::size_t J = arity_list[jp], K = arity_list[kp], L = arity_list[lp];
                const std::size_t tk = t.value(FinSet(K)).size;
                const std::size_t tl = t.value(FinSet(L)).size;
                const std::size_t nf = pow_sz(tk, J);
                const std::size_t ng = pow_sz(L, K);
                std::vector<std::size_t> idj(J);
                for (std::size_t i = 0; i < J; ++i) idj[i] = i;
                const std::size_t idj_enc = fn_encode(idj, J);
                for (std::size_t g = 0; g < ng; ++g) {
                    FinFn tg = t.map(hom_element(FinSet(K), FinSet(L), g));
                    FinFn cov = ot.action(jp, jp, idj_enc, kp, lp, g);
                    for (std::size_t f = 0; f < nf; ++f) {
                        auto ft = fn_decode(f, J, tk);
                        std::vector<std::size_t> direct(J);
                        for (std::size_t i = 0; i < J; ++i) direct[i] = tg.table[ft[i]];
                        if (fn_encode(direct, tl) != cov.table[f])
                            return {Verdict::fail, "MF2 fails at (" + std::to_string(J) + "," +
                                                       std::to_string(K) + "," +
                                                       std::to_string(L) + ")"};
                    }
                }
            }
    // MF3 (associativity): both composites agree on raw triples
    for (std::size_t J : arity_list)
        for (std::size_t K : arity_list)
            for (std::size_t L : arity_list)
                for (std::size_t M : arity_list) {
                    const std::size_t uk = u.value(FinSet(K)).size;
                    const std::size_t tl = t.value(FinSet(L)).size;
                    const std::size_t sm = s.value(FinSet(M)).size;
                    const std::size_t tsm = t.value(FinSet(sm)).size;
                    const std::size_t nf = pow_sz(uk, J);
                    const std::size_t ng = pow_sz(tl, K);
                    const std::size_t nh = pow_sz(sm, L);
                    for (std::size_t g = 0; g < ng; ++g) {
                        FinFn ug = u.map(hom_element(FinSet(K), FinSet(tl), g));
                        for (std::size_t h = 0; h < nh; ++h) {
                            FinFn th = t.map(hom_element(FinSet(L), FinSet(sm), h));
                            // (g' then h') vs (h'' then g'')
                            auto gt = fn_decode(g, K, tl);
                            std::vector<std::size_t> th_g(K);
                            for (std::size_t i = 0; i < K; ++i) th_g[i] = th.table[gt[i]];
                            FinFn u_thg =
                                u.map(FinFn(FinSet(K), FinSet(tsm), th_g));
                            FinFn ut_h = u.map(th);
                            for (std::size_t f = 0; f < nf; ++f) {
                                auto ft = fn_decode(f, J, uk);
                                std::vector<std::size_t> lhs(J), rhs(J);
                                for (std::size_t i = 0; i < J; ++i) {
                                    // lhs: m^{U,TS}(f, m^{TS}(g,h)) = U(T(h) o g) o f
                                    lhs[i] = u_thg.table[ft[i]];
                                    // rhs: m^{UT,S}(m^{UT}(f,g), h) = (UT)(h) o (U(g) o f)
                                    rhs[i] = ut_h.table[ug.table[ft[i]]];
                                }
                                if (lhs != rhs)
                                    return {Verdict::fail,
                                            "MF3 fails at (" + std::to_string(J) + "," +
                                                std::to_string(K) + "," + std::to_string(L) +
                                                "," + std::to_string(M) + ")"};
                            }
                        }
                    }
                }
    return {Verdict::pass, ""};
}

// ---------------------------------------------------------------------------
// Theories as profunctor monoids.
// ---------------------------------------------------------------------------

ValidationReport validate_prof_monoid(const ProfMonoid& p, std::size_t budget) {
    ValidationReport rep = validate_profunctor(p.carrier, budget);
    if (!rep.ok()) return rep;
    const auto& list = p.carrier.arity_list;
    const std::size_t na = list.size();

    ZetaResult z = zeta(p.carrier);
    if (!z.is_iso) rep.add("carrier not copresheaf-representable: " + z.witness);

    // unit naturality: e(k o u o h) = M(h,k)(e(u))
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t c = 0; c < na; ++c)
                for (std::size_t d = 0; d < na; ++d) {
                    const std::size_t nh = pow_sz(list[b], list[a]);
                    const std::size_t nu = pow_sz(list[c], list[b]);
                    const std::size_t nk = pow_sz(list[d], list[c]);
                    for (std::size_t h = 0; h < nh; ++h) {
                        auto ht = fn_decode(h, list[a], list[b]);
                        for (std::size_t k = 0; k < nk; ++k) {
                            auto kt = fn_decode(k, list[c], list[d]);
                            FinFn act = p.carrier.action(a, b, h, c, d, k);
                            for (std::size_t uu = 0; uu < nu; ++uu) {
                                auto ut = fn_decode(uu, list[b], list[c]);
                                std::vector<std::size_t> kuh(list[a]);
                                for (std::size_t i = 0; i < list[a]; ++i)
                                    kuh[i] = kt[ut[ht[i]]];
                                std::size_t lhs = p.unit(a, d, fn_encode(kuh, list[d]));
                                std::size_t rhs = act.table[p.unit(b, c, uu)];
                                if (lhs != rhs) {
                                    rep.add("unit not natural at ((" + std::to_string(list[a]) +
                                            "->" + std::to_string(list[b]) + "),(" +
                                            std::to_string(list[c]) + "->" +
                                            std::to_string(list[d]) + "))");
                                    uu = nu;
                                    k = nk;
                                    h = nh;
                                }
                            }
                        }
                    }
                }

    // balance: mult factors through the composite coend
    for (std::size_t a = 0; a < na && rep.ok(); ++a)
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t b2 = 0; b2 < na; ++b2)
                for (std::size_t c = 0; c < na; ++c) {
                    const std::size_t nk = pow_sz(list[b2], list[b]);
                    for (std::size_t k = 0; k < nk; ++k) {
                        std::size_t ida = id_hom_index(list[a]);
                        std::size_t idc = id_hom_index(list[c]);
                        FinFn cov = p.carrier.action(a, a, ida, b, b2, k);
                        FinFn contra = p.carrier.action(b, b2, k, c, c, idc);
                        const std::size_t mx = p.carrier.value(a, b).size;
                        const std::size_t my = p.carrier.value(b2, c).size;
                        for (std::size_t x = 0; x < mx; ++x)
                            for (std::size_t y = 0; y < my; ++y) {
                                std::size_t lhs = p.mult(a, b2, c, cov.table[x], y);
                                std::size_t rhs = p.mult(a, b, c, x, contra.table[y]);
                                if (lhs != rhs) {
                                    rep.add("mult not balanced at k: " +
                                            std::to_string(list[b]) + "->" +
                                            std::to_string(list[b2]));
                                    y = my;
                                    x = mx;
                                    k = nk;
                                }
                            }
                    }
                }

    // unit laws against the actions
    for (std::size_t a = 0; a < na && rep.ok(); ++a)
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t c = 0; c < na; ++c) {
                const std::size_t nu = pow_sz(list[b], list[a]);
                const std::size_t mbc = p.carrier.value(b, c).size;
                std::size_t idc = id_hom_index(list[c]);
                for (std::size_t uu = 0; uu < nu; ++uu) {
                    FinFn contra = p.carrier.action(a, b, uu, c, c, idc);
                    for (std::size_t x = 0; x < mbc; ++x)
                        if (p.mult(a, b, c, p.unit(a, b, uu), x) != contra.table[x]) {
                            rep.add("left unit law fails");
                            x = mbc;
                            uu = nu;
                        }
                }
                const std::size_t nv = pow_sz(list[c], list[b]);
                const std::size_t mab = p.carrier.value(a, b).size;
                std::size_t ida = id_hom_index(list[a]);
                for (std::size_t vv = 0; vv < nv; ++vv) {
                    FinFn cov = p.carrier.action(a, a, ida, b, c, vv);
                    for (std::size_t x = 0; x < mab; ++x)
                        if (p.mult(a, b, c, x, p.unit(b, c, vv)) != cov.table[x]) {
                            rep.add("right unit law fails");
                            x = mab;
                            vv = nv;
                        }
                }
            }

    // associativity on raw triples
    for (std::size_t a = 0; a < na && rep.ok(); ++a)
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t c = 0; c < na; ++c)
                for (std::size_t d = 0; d < na; ++d) {
                    const std::size_t mx = p.carrier.value(a, b).size;
                    const std::size_t my = p.carrier.value(b, c).size;
                    const std::size_t mz = p.carrier.value(c, d).size;
                    for (std::size_t x = 0; x < mx; ++x)
                        for (std::size_t y = 0; y < my; ++y)
                            for (std::size_t zz = 0; zz < mz; ++zz) {
                                std::size_t lhs =
                                    p.mult(a, c, d, p.mult(a, b, c, x, y), zz);
                                std::size_t rhs =
                                    p.mult(a, b, d, x, p.mult(b, c, d, y, zz));
                                if (lhs != rhs) {
                                    rep.add("associativity fails at arities (" +
                                            std::to_string(list[a]) + "," +
                                            std::to_string(list[b]) + "," +
                                            std::to_string(list[c]) + "," +
                                            std::to_string(list[d]) + ") x=" +
                                            std::to_string(x) + " y=" + std::to_string(y) +
                                            " z=" + std::to_string(zz));
                                    zz = mz;
                                    y = my;
                                    x = mx;
                                }
                            }
                }
    return rep;
}

ProfMonoid theory_to_prof_monoid(const Theory& t) {
    ProfMonoid p;
    std::vector<std::size_t> list = t.represented();
    p.carrier.name = "prof(" + t.name() + ")";
    p.carrier.arities = t.arities();
    p.carrier.arity_list = list;
    Theory th = t;
    auto lst = std::make_shared<std::vector<std::size_t>>(list);
    // M(J,K) = hom_T(K,J) = op(K)^J
    p.carrier.value = [th, lst](std::size_t a, std::size_t b) {
        return FinSet(th.hom_size((*lst)[b], (*lst)[a]));
    };
    p.carrier.action = [th, lst](std::size_t a, std::size_t b, std::size_t u, std::size_t c,
                                 std::size_t d, std::size_t v) {
        const std::size_t A = (*lst)[a], B = (*lst)[b], C = (*lst)[c], D = (*lst)[d];
        auto ut = fn_decode(u, A, B);
        auto vt = fn_decode(v, C, D);
        auto pd = th.proj(D);
        std::vector<std::size_t> relabel(C);
        for (std::size_t i = 0; i < C; ++i) relabel[i] = pd[vt[i]];
        const std::size_t from = th.hom_size(C, B);
        std::vector<std::size_t> tab(from);
        for (std::size_t x = 0; x < from; ++x) {
            auto xt = th.hom_decode(C, B, x);  // B-tuple over op(C)
            std::vector<std::size_t> r(A);
            for (std::size_t i = 0; i < A; ++i) r[i] = th.subst(C, xt[ut[i]], D, relabel);
            tab[x] = th.hom_encode(D, r);
        }
        return FinFn(FinSet(from), FinSet(th.hom_size(D, A)), std::move(tab));
    };
    p.unit = [th, lst](std::size_t a, std::size_t b, std::size_t u) {
        const std::size_t A = (*lst)[a], B = (*lst)[b];
        auto ut = fn_decode(u, A, B);
        auto pb = th.proj(B);
        std::vector<std::size_t> tup(A);
        for (std::size_t i = 0; i < A; ++i) tup[i] = pb[ut[i]];
        return th.hom_encode(B, tup);
    };
    p.mult = [th, lst](std::size_t a, std::size_t b, std::size_t c, std::size_t x,
                       std::size_t y) {
        const std::size_t A = (*lst)[a], B = (*lst)[b], C = (*lst)[c];
        // x : B -> A, y : C -> B in the theory; composite x o y : C -> A
        return th.compose_hom(C, B, A, x, y);
    };
    return p;
}

namespace {

class ProfMonoidBackend final : public TheoryBackend {
public:
    ProfMonoidBackend(const ProfMonoid& p) {
        const auto& list = p.carrier.arity_list;
        const std::size_t one = p.carrier.pos_of(1);
        ZetaResult z = zeta(p.carrier);
        if (!z.is_iso)
            throw error("prof_monoid_to_theory: carrier not copresheaf-representable: " +
                        z.witness);
        arities_ = list;
        ops_.resize(list.size());
        projs_.resize(list.size());
        for (std::size_t n = 0; n < list.size(); ++n) {
            ops_[n] = p.carrier.value(one, n);
            projs_[n].resize(list[n]);
            for (std::size_t i = 0; i < list[n]; ++i) projs_[n][i] = p.unit(one, n, i);
        }
        // zeta inverse per (m,n): tuple of op(n) elements (length m) -> M(m,n)
        std::vector<std::vector<std::vector<std::size_t>>> zinv(list.size());
        for (std::size_t m = 0; m < list.size(); ++m) {
            zinv[m].resize(list.size());
            for (std::size_t n = 0; n < list.size(); ++n) {
                const std::size_t sz = p.carrier.value(m, n).size;
                zinv[m][n].assign(sz, std::size_t(-1));
                for (std::size_t y = 0; y < sz; ++y) zinv[m][n][z.components[m][n][y]] = y;
            }
        }
        subst_.resize(list.size());
        for (std::size_t m = 0; m < list.size(); ++m) {
            subst_[m].resize(list.size());
            for (std::size_t n = 0; n < list.size(); ++n) {
                const std::size_t cnt = ops_[m].size;
                const std::size_t ntup = pow_sz(ops_[n].size, list[m]);
                subst_[m][n].assign(cnt * ntup, 0);
                for (std::size_t enc = 0; enc < ntup; ++enc) {
                    std::size_t y = zinv[m][n][enc];
                    for (std::size_t t = 0; t < cnt; ++t)
                        subst_[m][n][t * ntup + enc] = p.mult(one, m, n, t, y);
                }
            }
        }
    }

    FinSet op(std::size_t arity) const override { return ops_[pos(arity)]; }

    std::vector<std::size_t> proj(std::size_t arity) const override { return projs_[pos(arity)]; }

    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const override {
        std::size_t mp = pos(m), np = pos(n);
        const std::size_t ntup = pow_sz(ops_[np].size, m);
        std::size_t enc = tuple_encode(args, std::max<std::size_t>(ops_[np].size, 1));
        return subst_[mp][np][t * ntup + enc];
    }

private:
    std::size_t pos(std::size_t arity) const {
        for (std::size_t i = 0; i < arities_.size(); ++i)
            if (arities_[i] == arity) return i;
        throw error("prof-monoid theory: arity not materialized");
    }

    std::vector<std::size_t> arities_;
    std::vector<FinSet> ops_;
    std::vector<std::vector<std::size_t>> projs_;
    std::vector<std::vector<std::vector<std::size_t>>> subst_;
};

}  // namespace

Theory prof_monoid_to_theory(const ProfMonoid& p, std::string name) {
    ValidationReport rep = validate_prof_monoid(p);
    if (!rep.ok())
        throw error("prof_monoid_to_theory: monoid law violation: " + rep.violations.front());
    Theory t(std::move(name), p.carrier.arities, std::make_shared<ProfMonoidBackend>(p));
    ValidationReport tr = validate_theory(t);
    if (!tr.ok())
        throw error("prof_monoid_to_theory: rebuilt theory invalid: " + tr.violations.front());
    return t;
}

bool theories_table_equal(const Theory& a, const Theory& b, std::string* witness) {
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    if (a.represented() != b.represented()) return fail("represented arities differ");
    for (std::size_t n : a.represented()) {
        if (a.op(n).size != b.op(n).size)
            return fail("op sizes differ at arity " + std::to_string(n));
        if (a.proj(n) != b.proj(n)) return fail("projections differ at arity " + std::to_string(n));
    }
    for (std::size_t m : a.represented())
        for (std::size_t n : a.represented()) {
            const std::size_t cnt = a.op(m).size;
            const std::size_t opn = a.op(n).size;
            const std::size_t ntup = pow_sz(opn, m);
            for (std::size_t t = 0; t < cnt; ++t)
                for (std::size_t enc = 0; enc < ntup; ++enc) {
                    auto args = tuple_decode(enc, m, opn);
                    if (a.subst(m, t, n, args) != b.subst(m, t, n, args))
                        return fail("subst differs at arities (" + std::to_string(m) + "," +
                                    std::to_string(n) + "), op #" + std::to_string(t));
                }
        }
    return true;
}

}  // namespace alth
