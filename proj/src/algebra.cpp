#include "alth/algebra.hpp"

#include <algorithm>

namespace alth {

namespace {

bool next_tuple(std::vector<std::size_t>& sel, std::size_t bound) {
    for (std::size_t pos = sel.size(); pos-- > 0;) {
        if (++sel[pos] < bound) return true;
        sel[pos] = 0;
    }
    return false;
}

}  // namespace

ValidationReport validate_algebra(const Algebra& a) {
    ValidationReport rep;
    const auto& arities = a.theory.represented();
    const std::size_t c = a.carrier.size;
    if (a.interp.size() != arities.size()) {
        rep.add("interp arity count mismatch");
        return rep;
    }
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t pts = pow_sz(c, n);
        if (a.interp[ai].size() != a.theory.op(n).size) {
            rep.add("interp op count mismatch at arity " + std::to_string(n));
            return rep;
        }
        for (const auto& tb : a.interp[ai]) {
            if (tb.size() != pts) {
                rep.add("interp table length mismatch at arity " + std::to_string(n));
                return rep;
            }
            for (std::size_t v : tb)
                if (v >= c) {
                    rep.add("interp value out of carrier at arity " + std::to_string(n));
                    return rep;
                }
        }
    }
    // projections act as coordinate projections
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        auto p = a.theory.proj(n);
        const std::size_t pts = pow_sz(c, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t pt = 0; pt < pts; ++pt)
                if (a.interp[ai][p[i]][pt] != tuple_decode(pt, n, c)[i]) {
                    rep.add("projection law fails at arity " + std::to_string(n) +
                            ", coordinate " + std::to_string(i));
                    pt = pts;
                }
    }
    // substitution respected: interp(t o args) = interp(t) o (interp(args))
    for (std::size_t mi = 0; mi < arities.size(); ++mi) {
        const std::size_t m = arities[mi];
        const std::size_t opm = a.theory.op(m).size;
        for (std::size_t ni = 0; ni < arities.size(); ++ni) {
            const std::size_t n = arities[ni];
            const std::size_t opn = a.theory.op(n).size;
            const std::size_t pts = pow_sz(c, n);
            const std::size_t ntup = pow_sz(opn, m);
            std::vector<std::size_t> args(m);
            for (std::size_t enc = 0; enc < ntup; ++enc) {
                args = tuple_decode(enc, m, opn);
                for (std::size_t t = 0; t < opm; ++t) {
                    std::size_t composite = a.theory.subst(m, t, n, args);
                    for (std::size_t pt = 0; pt < pts; ++pt) {
                        std::vector<std::size_t> mid(m);
                        for (std::size_t i = 0; i < m; ++i) mid[i] = a.interp[ni][args[i]][pt];
                        std::size_t rhs = a.interp[mi][t][tuple_encode(mid, c)];
                        if (a.interp[ni][composite][pt] != rhs) {
                            rep.add("substitution law fails at arities (" + std::to_string(m) +
                                    "," + std::to_string(n) + "), op #" + std::to_string(t) +
                                    ", args #" + std::to_string(enc) + ", point " +
                                    std::to_string(pt));
                            if (rep.violations.size() > 8) return rep;
                            pt = pts;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

// evaluate a term at each point of carrier^n given signature op tables
std::vector<std::size_t> eval_term_table(const Term& t, std::size_t n, std::size_t c,
                                         const std::vector<std::vector<std::size_t>>& ops,
                                         const std::vector<SigOp>& sig) {
    const std::size_t pts = pow_sz(c, n);
    if (t.var >= 0) {
        std::vector<std::size_t> r(pts);
        for (std::size_t p = 0; p < pts; ++p) r[p] = tuple_decode(p, n, c)[t.var];
        return r;
    }
    std::vector<std::vector<std::size_t>> argv;
    argv.reserve(t.args.size());
    for (const Term& a : t.args) argv.push_back(eval_term_table(a, n, c, ops, sig));
    const auto& table = ops[t.op];
    std::vector<std::size_t> r(pts);
    std::vector<std::size_t> tup(t.args.size());
    for (std::size_t p = 0; p < pts; ++p) {
        for (std::size_t i = 0; i < tup.size(); ++i) tup[i] = argv[i][p];
        r[p] = table[tuple_encode(tup, c)];
    }
    (void)sig;
    return r;
}

}  // namespace

std::optional<Algebra> algebra_from_op_tables(const Theory& t, const FinSet& carrier,
                                              const std::vector<std::vector<std::size_t>>& ops) {
    auto sig = t.signature();
    if (!sig) throw error("algebra_from_op_tables: theory exposes no signature");
    if (ops.size() != sig->size()) throw error("algebra_from_op_tables: op table count mismatch");
    const std::size_t c = carrier.size;
    for (std::size_t i = 0; i < sig->size(); ++i)
        if (ops[i].size() != pow_sz(c, (*sig)[i].arity))
            throw error("algebra_from_op_tables: table length mismatch for op " +
                        (*sig)[i].name);

    Algebra a;
    a.theory = t;
    a.carrier = carrier;
    const auto& arities = t.represented();
    a.interp.resize(arities.size());
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t cnt = t.op(n).size;
        a.interp[ai].resize(cnt);
        for (std::size_t e = 0; e < cnt; ++e) {
            auto term = t.backend().term_of(n, e);
            if (!term) throw error("algebra_from_op_tables: backend has no terms");
            a.interp[ai][e] = eval_term_table(*term, n, c, ops, *sig);
        }
    }
    // one-step closure: the tables respect each signature operation applied
    // to arbitrary abstract operations; with the projection law this pins
    // down the whole substitution structure
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t cnt = t.op(n).size;
        const std::size_t pts = pow_sz(c, n);
        for (std::size_t oi = 0; oi < sig->size(); ++oi) {
            const std::size_t k = (*sig)[oi].arity;
            auto se = t.backend().sig_elem(oi);
            if (!se) throw error("algebra_from_op_tables: missing sig element");
            if (k > 0 && cnt == 0) continue;
            std::vector<std::size_t> sel(k, 0);
            do {
                std::size_t composite = t.subst(k, *se, n, sel);
                std::vector<std::size_t> tup(k);
                for (std::size_t p = 0; p < pts; ++p) {
                    for (std::size_t i = 0; i < k; ++i) tup[i] = a.interp[ai][sel[i]][p];
                    if (a.interp[ai][composite][p] != ops[oi][tuple_encode(tup, c)])
                        return std::nullopt;
                }
            } while (next_tuple(sel, cnt));
        }
    }
    return a;
}

Algebra terminal_algebra(const Theory& t) {
    std::vector<std::vector<std::size_t>> ops;
    auto sig = t.signature();
    if (sig)
        for (const auto& o : *sig) ops.emplace_back(pow_sz(1, o.arity), 0);
    auto a = algebra_from_op_tables(t, FinSet(1), ops);
    if (!a) throw error("terminal algebra rejected (internal)");
    return *a;
}

std::vector<Algebra> enumerate_algebras(const Theory& t, std::size_t max_carrier,
                                        std::size_t cap) {
    auto sig = t.signature();
    if (!sig)
        throw error("enumerate_algebras: theory '" + t.name() + "' exposes no generating signature");
    std::vector<Algebra> out;
    for (std::size_t c = 0; c <= max_carrier; ++c) {
        // candidate count = prod over ops of c^(c^k)
        std::size_t total = 1;
        bool empty_impossible = false;
        for (const auto& o : *sig) {
            std::size_t slots = pow_sz(c, o.arity);
            if (c == 0 && slots > 0) {
                empty_impossible = true;
                break;
            }
            std::size_t cnt = pow_sz(std::max<std::size_t>(c, 1), slots);
            if (total > cap / std::max<std::size_t>(cnt, 1))
                throw cap_exceeded("enumerate_algebras: candidate count exceeds cap at carrier " +
                                   std::to_string(c));
            total *= cnt;
        }
        if (empty_impossible) continue;
        // odometer over all candidate table families, lexicographic
        std::vector<std::vector<std::size_t>> ops(sig->size());
        for (std::size_t i = 0; i < sig->size(); ++i)
            ops[i].assign(pow_sz(c, (*sig)[i].arity), 0);
        for (std::size_t cand = 0; cand < total; ++cand) {
            if (auto a = algebra_from_op_tables(t, FinSet(c), ops)) out.push_back(std::move(*a));
            // advance: last op table, last entry least significant
            bool carry = true;
            for (std::size_t oi = sig->size(); oi-- > 0 && carry;)
                if (next_tuple(ops[oi], c)) carry = false;
            if (carry) break;
        }
    }
    return out;
}

bool is_algebra_hom(const Algebra& a, const Algebra& b, const FinFn& h) {
    const auto& arities = a.theory.represented();
    const std::size_t ca = a.carrier.size;
    const std::size_t cb = b.carrier.size;
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t cnt = a.theory.op(n).size;
        const std::size_t pts = pow_sz(ca, n);
        for (std::size_t e = 0; e < cnt; ++e)
            for (std::size_t p = 0; p < pts; ++p) {
                auto xs = tuple_decode(p, n, ca);
                for (auto& x : xs) x = h.table[x];
                if (h.table[a.interp[ai][e][p]] != b.interp[ai][e][tuple_encode(xs, cb)])
                    return false;
            }
    }
    return true;
}

std::vector<FinFn> enumerate_homs(const Algebra& a, const Algebra& b) {
    if (a.theory.represented() != b.theory.represented())
        throw error("enumerate_homs: different theories");
    std::vector<FinFn> out;
    const std::size_t ca = a.carrier.size;
    const std::size_t cb = b.carrier.size;
    if (ca == 0) {
        out.push_back(FinFn(a.carrier, b.carrier, {}));
        return out;
    }
    if (cb == 0) return out;
    std::vector<std::size_t> tab(ca, 0);
    do {
        FinFn h(a.carrier, b.carrier, tab);
        if (is_algebra_hom(a, b, h)) out.push_back(std::move(h));
    } while (next_tuple(tab, cb));
    return out;
}

Algebra representable_algebra(const Theory& t, std::size_t j) {
    if (!t.arities().contains(j)) throw error("representable_algebra: arity not in system");
    Algebra a;
    a.theory = t;
    a.carrier = t.op(j);
    const auto& arities = t.represented();
    const std::size_t cj = a.carrier.size;
    a.interp.resize(arities.size());
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t cnt = t.op(n).size;
        const std::size_t pts = pow_sz(cj, n);
        a.interp[ai].resize(cnt);
        for (std::size_t e = 0; e < cnt; ++e) {
            std::vector<std::size_t> tb(pts);
            for (std::size_t p = 0; p < pts; ++p) {
                auto tup = tuple_decode(p, n, cj);
                tb[p] = t.subst(n, e, j, tup);
            }
            a.interp[ai][e] = std::move(tb);
        }
    }
    ValidationReport rep = validate_algebra(a);
    if (!rep.ok()) throw error("representable_algebra invalid: " + rep.violations.front());
    return a;
}

bool check_rel_adjunction(const Theory& t, std::size_t j, const Algebra& a, std::string* witness) {
    Algebra phi = representable_algebra(t, j);
    auto homs = enumerate_homs(phi, a);
    auto gamma = t.proj(j);  // gamma_J : j |-> proj(J)[j], elements of the carrier of phi(J)
    const std::size_t target = pow_sz(a.carrier.size, j);
    if (homs.size() != target) {
        if (witness)
            *witness = "|Alg(phi(" + std::to_string(j) + "),A)| = " + std::to_string(homs.size()) +
                       " but |A|^J = " + std::to_string(target);
        return false;
    }
    std::vector<bool> hit(target, false);
    for (const auto& h : homs) {
        std::vector<std::size_t> tup(j);
        for (std::size_t i = 0; i < j; ++i) tup[i] = h.table[gamma[i]];
        std::size_t enc = tuple_encode(tup, std::max<std::size_t>(a.carrier.size, 1));
        if (hit[enc]) {
            if (witness) *witness = "restriction along gamma_J not injective";
            return false;
        }
        hit[enc] = true;
    }
    return true;
}

Algebra restrict_along(const TheoryMorphism& m, const Algebra& b) {
    std::string w;
    if (!check_theory_morphism(m, &w)) throw error("restrict_along: invalid theory morphism: " + w);
    if (b.theory.represented() != m.cod.represented())
        throw error("restrict_along: algebra not over the morphism codomain");
    Algebra a;
    a.theory = m.dom;
    a.carrier = b.carrier;
    const auto& arities = m.dom.represented();
    a.interp.resize(arities.size());
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t cnt = m.dom.op(arities[ai]).size;
        a.interp[ai].resize(cnt);
        for (std::size_t e = 0; e < cnt; ++e) a.interp[ai][e] = b.interp[ai][m.op_map[ai][e]];
    }
    ValidationReport rep = validate_algebra(a);
    if (!rep.ok()) throw error("restrict_along produced invalid algebra: " + rep.violations.front());
    return a;
}

// ---------------------------------------------------------------------------
// General data and normalization.
// ---------------------------------------------------------------------------

GeneralAlgebraData general_of_algebra(const Algebra& a) {
    GeneralAlgebraData g;
    g.theory = a.theory;
    const auto& arities = a.theory.represented();
    const std::size_t c = a.carrier.size;
    g.obj.resize(arities.size());
    for (std::size_t ai = 0; ai < arities.size(); ++ai)
        g.obj[ai] = FinSet(pow_sz(c, arities[ai]));
    g.act.resize(arities.size());
    for (std::size_t mi = 0; mi < arities.size(); ++mi) {
        const std::size_t m = arities[mi];
        g.act[mi].resize(arities.size());
        for (std::size_t ni = 0; ni < arities.size(); ++ni) {
            const std::size_t n = arities[ni];
            const std::size_t nh = a.theory.hom_size(m, n);
            g.act[mi][ni].resize(nh);
            for (std::size_t h = 0; h < nh; ++h) {
                auto tup = a.theory.hom_decode(m, n, h);
                std::vector<std::size_t> tb(g.obj[mi].size);
                for (std::size_t p = 0; p < g.obj[mi].size; ++p) {
                    std::vector<std::size_t> vals(n);
                    for (std::size_t i = 0; i < n; ++i) vals[i] = a.interp[mi][tup[i]][p];
                    tb[p] = tuple_encode(vals, c);
                }
                g.act[mi][ni][h] = std::move(tb);
            }
        }
    }
    return g;
}

ValidationReport validate_general_algebra(const GeneralAlgebraData& g) {
    ValidationReport rep;
    const auto& arities = g.theory.represented();
    const std::size_t na = arities.size();
    if (g.obj.size() != na || g.act.size() != na) {
        rep.add("shape mismatch");
        return rep;
    }
    for (std::size_t mi = 0; mi < na; ++mi) {
        std::size_t idh = g.theory.identity_hom(arities[mi]);
        const auto& tb = g.act[mi][mi][idh];
        for (std::size_t p = 0; p < g.obj[mi].size; ++p)
            if (tb[p] != p) {
                rep.add("identity hom does not act as identity at arity " +
                        std::to_string(arities[mi]));
                break;
            }
    }
    for (std::size_t ai = 0; ai < na; ++ai)
        for (std::size_t bi = 0; bi < na; ++bi)
            for (std::size_t ci = 0; ci < na; ++ci) {
                const std::size_t nh1 = g.theory.hom_size(arities[ai], arities[bi]);
                const std::size_t nh2 = g.theory.hom_size(arities[bi], arities[ci]);
                for (std::size_t h2 = 0; h2 < nh2; ++h2)
                    for (std::size_t h1 = 0; h1 < nh1; ++h1) {
                        std::size_t comp = g.theory.compose_hom(arities[ai], arities[bi],
                                                                arities[ci], h2, h1);
                        const auto& t21 = g.act[ai][ci][comp];
                        const auto& t1 = g.act[ai][bi][h1];
                        const auto& t2 = g.act[bi][ci][h2];
                        for (std::size_t p = 0; p < g.obj[ai].size; ++p)
                            if (t21[p] != t2[t1[p]]) {
                                rep.add("functoriality fails at arities (" +
                                        std::to_string(arities[ai]) + "," +
                                        std::to_string(arities[bi]) + "," +
                                        std::to_string(arities[ci]) + ")");
                                p = g.obj[ai].size;
                                h1 = nh1;
                                h2 = nh2;
                            }
                    }
            }
    return rep;
}

std::variant<Normalization, NotAnAlgebra> normalize(const GeneralAlgebraData& g) {
    const auto& arities = g.theory.represented();
    auto unit_it = std::find(arities.begin(), arities.end(), std::size_t(1));
    if (unit_it == arities.end()) throw error("normalize: unit arity not represented");
    const std::size_t one_pos = std::size_t(unit_it - arities.begin());
    const FinSet carrier = g.obj[one_pos];
    const std::size_t c = carrier.size;

    // kappa_n : obj(n) -> carrier^n from the cotensor counits (projections)
    std::vector<FinFn> kappa(arities.size());
    bool identity_witness = true;
    for (std::size_t ni = 0; ni < arities.size(); ++ni) {
        const std::size_t n = arities[ni];
        auto proj = g.theory.proj(n);
        const std::size_t pts = pow_sz(c, n);
        if (g.obj[ni].size != pts)
            return NotAnAlgebra{n, "counting obstruction: |obj(" + std::to_string(n) + ")| = " +
                                       std::to_string(g.obj[ni].size) + " != |carrier|^n = " +
                                       std::to_string(pts)};
        std::vector<std::size_t> kt(g.obj[ni].size);
        std::vector<bool> hit(pts, false);
        for (std::size_t x = 0; x < g.obj[ni].size; ++x) {
            std::vector<std::size_t> tup(n);
            for (std::size_t i = 0; i < n; ++i) tup[i] = g.act[ni][one_pos][proj[i]][x];
            std::size_t enc = tuple_encode(tup, std::max<std::size_t>(c, 1));
            if (hit[enc])
                return NotAnAlgebra{n, "kappa component not injective at arity " +
                                           std::to_string(n)};
            hit[enc] = true;
            kt[x] = enc;
            if (enc != x) identity_witness = false;
        }
        kappa[ni] = FinFn(g.obj[ni], FinSet(pts), std::move(kt));
    }

    Normalization norm;
    norm.kappa = std::move(kappa);
    norm.identity_witness = identity_witness;
    norm.algebra.theory = g.theory;
    norm.algebra.carrier = carrier;
    norm.algebra.interp.resize(arities.size());
    for (std::size_t ni = 0; ni < arities.size(); ++ni) {
        const std::size_t n = arities[ni];
        const std::size_t cnt = g.theory.op(n).size;
        const std::size_t pts = pow_sz(c, n);
        // inverse of kappa_n
        std::vector<std::size_t> kinv(pts);
        for (std::size_t x = 0; x < pts; ++x) kinv[norm.kappa[ni].table[x]] = x;
        norm.algebra.interp[ni].resize(cnt);
        for (std::size_t e = 0; e < cnt; ++e) {
            std::vector<std::size_t> tb(pts);
            for (std::size_t q = 0; q < pts; ++q) {
                // act by e as a hom(n,1) element, then through kappa_1
                std::size_t x = kinv[q];
                std::size_t y = g.act[ni][one_pos][e][x];
                tb[q] = norm.kappa[one_pos].table[y];
            }
            norm.algebra.interp[ni][e] = std::move(tb);
        }
    }
    ValidationReport rep = validate_algebra(norm.algebra);
    if (!rep.ok())
        return NotAnAlgebra{0, "normalized data is not an algebra: " + rep.violations.front()};
    return norm;
}

// ---------------------------------------------------------------------------
// Coequalizers of algebras.
// ---------------------------------------------------------------------------

std::variant<AlgebraCoequalizer, StabilityFailure> coequalize_algebras(const Algebra& a,
                                                                       const Algebra& b,
                                                                       const FinFn& f,
                                                                       const FinFn& g) {
    if (!same_card(f.dom, a.carrier) || !same_card(g.dom, a.carrier) ||
        !same_card(f.cod, b.carrier) || !same_card(g.cod, b.carrier))
        throw error("coequalize_algebras: maps do not form a parallel pair A => B");
    if (!is_algebra_hom(a, b, f) || !is_algebra_hom(a, b, g))
        throw error("coequalize_algebras: f,g are not algebra homomorphisms");

    Quotient q = coequalizer(f, g);
    const std::size_t cq = q.classes.size();
    const std::size_t ca = a.carrier.size;
    const std::size_t cb = b.carrier.size;
    const auto& arities = a.theory.represented();

    // J-stability: coeq(f^n, g^n) -> Q^n must be a bijection
    for (std::size_t n : arities) {
        const std::size_t an = pow_sz(ca, n);
        const std::size_t bn = pow_sz(cb, n);
        const std::size_t qn = pow_sz(cq, n);
        std::vector<std::size_t> fn(an), gn(an);
        for (std::size_t p = 0; p < an; ++p) {
            auto tup = tuple_decode(p, n, ca);
            std::vector<std::size_t> ftup(n), gtup(n);
            for (std::size_t i = 0; i < n; ++i) {
                ftup[i] = f.table[tup[i]];
                gtup[i] = g.table[tup[i]];
            }
            fn[p] = tuple_encode(ftup, std::max<std::size_t>(cb, 1));
            gn[p] = tuple_encode(gtup, std::max<std::size_t>(cb, 1));
        }
        Quotient qn_colim = coequalizer(FinFn(FinSet(an), FinSet(bn), fn),
                                        FinFn(FinSet(an), FinSet(bn), gn));
        if (qn_colim.classes.size() != qn)
            return StabilityFailure{n, qn_colim.classes.size(), qn};
        // canonical map: class of a B^n point |-> tuple of carrier classes
        std::vector<bool> hit(qn, false);
        for (std::size_t cls = 0; cls < qn_colim.classes.size(); ++cls) {
            std::size_t p = qn_colim.classes[cls][0];
            auto tup = tuple_decode(p, n, std::max<std::size_t>(cb, 1));
            std::vector<std::size_t> qt(n);
            for (std::size_t i = 0; i < n; ++i) qt[i] = q.proj.table[tup[i]];
            std::size_t enc = tuple_encode(qt, std::max<std::size_t>(cq, 1));
            if (hit[enc]) return StabilityFailure{n, qn_colim.classes.size(), qn};
            hit[enc] = true;
        }
    }

    // lift the structure: forced by proj being a homomorphism; consistency
    // over all preimages doubles as the well-definedness assertion
    AlgebraCoequalizer out;
    out.carrier_quotient = q;
    out.algebra.theory = a.theory;
    out.algebra.carrier = FinSet(cq);
    out.algebra.interp.resize(arities.size());
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        const std::size_t n = arities[ai];
        const std::size_t cnt = a.theory.op(n).size;
        const std::size_t bn = pow_sz(cb, n);
        const std::size_t qn = pow_sz(cq, n);
        out.algebra.interp[ai].assign(cnt, std::vector<std::size_t>(qn, std::size_t(-1)));
        for (std::size_t e = 0; e < cnt; ++e) {
            auto& tb = out.algebra.interp[ai][e];
            for (std::size_t p = 0; p < bn; ++p) {
                auto tup = tuple_decode(p, n, std::max<std::size_t>(cb, 1));
                std::vector<std::size_t> qt(n);
                for (std::size_t i = 0; i < n; ++i) qt[i] = q.proj.table[tup[i]];
                std::size_t qp = tuple_encode(qt, std::max<std::size_t>(cq, 1));
                std::size_t val = q.proj.table[b.interp[ai][e][p]];
                if (tb[qp] != std::size_t(-1) && tb[qp] != val)
                    throw error("coequalize_algebras: lift not well defined (internal)");
                tb[qp] = val;
            }
            for (std::size_t qp = 0; qp < qn; ++qp)
                if (tb[qp] == std::size_t(-1))
                    throw error("coequalize_algebras: lift not total (internal)");
        }
    }
    ValidationReport rep = validate_algebra(out.algebra);
    if (!rep.ok())
        throw error("coequalize_algebras: lifted structure invalid (internal): " +
                    rep.violations.front());
    return out;
}

}  // namespace alth
