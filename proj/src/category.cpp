#include "alth/category.hpp"

#include <sstream>

namespace alth {

namespace {

std::string mor_str(const EnrichedCategory& c, std::size_t a, std::size_t b, std::size_t f) {
    std::ostringstream os;
    os << c.objects[a] << "->" << c.objects[b] << "#" << f;
    return os.str();
}

}  // namespace

ValidationReport validate_category(const EnrichedCategory& c) {
    ValidationReport rep;
    const std::size_t n = c.n_objects();
    if (c.hom.size() != n || c.comp.size() != n || c.id.size() != n) {
        rep.add("shape: hom/comp/id tables do not match object count");
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (c.id[a] >= c.hom[a][a].size) {
            rep.add("id[" + c.objects[a] + "] out of range");
            return rep;
        }
    }
    // unit laws
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t f = 0; f < c.hom[a][b].size; ++f) {
                if (c.compose(a, b, b, c.id[b], f) != f)
                    rep.add("left unit fails at " + mor_str(c, a, b, f));
                if (c.compose(a, a, b, f, c.id[a]) != f)
                    rep.add("right unit fails at " + mor_str(c, a, b, f));
            }
    // associativity
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t h = 0; h < c.hom[cc][d].size; ++h)
                        for (std::size_t g = 0; g < c.hom[b][cc].size; ++g)
                            for (std::size_t f = 0; f < c.hom[a][b].size; ++f) {
                                std::size_t lhs =
                                    c.compose(a, b, d, c.compose(b, cc, d, h, g), f);
                                std::size_t rhs =
                                    c.compose(a, cc, d, h, c.compose(a, b, cc, g, f));
                                if (lhs != rhs)
                                    rep.add("associativity fails at h=" + mor_str(c, cc, d, h) +
                                            " g=" + mor_str(c, b, cc, g) +
                                            " f=" + mor_str(c, a, b, f));
                            }
    return rep;
}

EnrichedCategory one_object_category(const FinSet& elems, const std::vector<std::size_t>& mult,
                                     std::size_t unit, const std::string& obname) {
    if (mult.size() != elems.size * elems.size) throw error("one_object_category: bad mult table");
    EnrichedCategory c;
    c.objects = {obname};
    c.hom = {{elems}};
    c.comp = {{{mult}}};
    c.id = {unit};
    return c;
}

EnrichedFunctor EnrichedFunctor::identity(CategoryPtr c) {
    EnrichedFunctor f;
    f.dom = c;
    f.cod = c;
    const std::size_t n = c->n_objects();
    f.ob_map.resize(n);
    for (std::size_t a = 0; a < n; ++a) f.ob_map[a] = a;
    f.hom_map.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        f.hom_map[a].resize(n);
        for (std::size_t b = 0; b < n; ++b) {
            f.hom_map[a][b].resize(c->hom[a][b].size);
            for (std::size_t i = 0; i < c->hom[a][b].size; ++i) f.hom_map[a][b][i] = i;
        }
    }
    return f;
}

ValidationReport validate_functor(const EnrichedFunctor& f) {
    ValidationReport rep;
    const auto& d = *f.dom;
    const auto& c = *f.cod;
    const std::size_t n = d.n_objects();
    if (f.ob_map.size() != n || f.hom_map.size() != n) {
        rep.add("shape: ob_map/hom_map do not match domain");
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a)
        if (f.ob_map[a] >= c.n_objects()) {
            rep.add("ob_map out of range at " + d.objects[a]);
            return rep;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (f.hom_map[a][b].size() != d.hom[a][b].size) {
                rep.add("hom_map shape mismatch at (" + d.objects[a] + "," + d.objects[b] + ")");
                return rep;
            }
            for (std::size_t i = 0; i < d.hom[a][b].size; ++i)
                if (f.hom_map[a][b][i] >= c.hom[f.ob_map[a]][f.ob_map[b]].size) {
                    rep.add("hom_map value out of range at " + mor_str(d, a, b, i));
                    return rep;
                }
        }
    for (std::size_t a = 0; a < n; ++a)
        if (f.map_hom(a, a, d.id[a]) != c.id[f.ob_map[a]])
            rep.add("identity not preserved at " + d.objects[a]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t g = 0; g < d.hom[b][cc].size; ++g)
                    for (std::size_t ff = 0; ff < d.hom[a][b].size; ++ff) {
                        std::size_t lhs = f.map_hom(a, cc, d.compose(a, b, cc, g, ff));
                        std::size_t rhs = c.compose(f.ob_map[a], f.ob_map[b], f.ob_map[cc],
                                                    f.map_hom(b, cc, g), f.map_hom(a, b, ff));
                        if (lhs != rhs)
                            rep.add("composition not preserved at g=" + mor_str(d, b, cc, g) +
                                    " f=" + mor_str(d, a, b, ff));
                    }
    return rep;
}

ValidationReport validate_nat(const NatTrans& nt) {
    ValidationReport rep;
    const auto& f = nt.source;
    const auto& g = nt.target;
    if (f.dom.get() != g.dom.get() || f.cod.get() != g.cod.get()) {
        rep.add("source and target are not parallel functors");
        return rep;
    }
    const auto& d = *f.dom;
    const auto& c = *f.cod;
    const std::size_t n = d.n_objects();
    if (nt.component.size() != n) {
        rep.add("component count != object count");
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a)
        if (nt.component[a] >= c.hom[f.ob_map[a]][g.ob_map[a]].size) {
            rep.add("component out of range at " + d.objects[a]);
            return rep;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t m = 0; m < d.hom[a][b].size; ++m) {
                // G(m) . alpha_a  =  alpha_b . F(m)
                std::size_t lhs = c.compose(f.ob_map[a], g.ob_map[a], g.ob_map[b],
                                            g.map_hom(a, b, m), nt.component[a]);
                std::size_t rhs = c.compose(f.ob_map[a], f.ob_map[b], g.ob_map[b],
                                            nt.component[b], f.map_hom(a, b, m));
                if (lhs != rhs) rep.add("naturality fails at " + mor_str(d, a, b, m));
            }
    return rep;
}

bool check_cotensor(const EnrichedCategory& c, std::size_t power, std::size_t tgt,
                    std::size_t cand, const std::vector<std::size_t>& counit,
                    std::string* witness) {
    if (counit.size() != power) {
        if (witness) *witness = "counit length != power";
        return false;
    }
    const std::size_t n = c.n_objects();
    // the induced map hom(D,cand) -> hom(D,tgt)^power must be a bijection
    std::vector<std::vector<std::size_t>> images(n);
    for (std::size_t d = 0; d < n; ++d) {
        const std::size_t hd = c.hom[d][cand].size;
        const std::size_t ht = c.hom[d][tgt].size;
        if (hd != pow_sz(ht, power)) {
            if (witness)
                *witness = "counting obstruction at object " + c.objects[d] + ": |hom(D,cand)|=" +
                           std::to_string(hd) + " but |hom(D,tgt)|^power=" +
                           std::to_string(pow_sz(ht, power));
            return false;
        }
        images[d].resize(hd);
        std::vector<bool> seen(hd, false);
        std::vector<std::size_t> tup(power);
        for (std::size_t f = 0; f < hd; ++f) {
            for (std::size_t i = 0; i < power; ++i)
                tup[i] = c.compose(d, cand, tgt, counit[i], f);
            std::size_t enc = tuple_encode(tup, ht);
            images[d][f] = enc;
            if (seen[enc]) {
                if (witness)
                    *witness = "induced map not injective at object " + c.objects[d] + ", f=" +
                               std::to_string(f);
                return false;
            }
            seen[enc] = true;
        }
    }
    // naturality in D: the square for every g : D' -> D commutes
    for (std::size_t d2 = 0; d2 < n; ++d2)
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t g = 0; g < c.hom[d2][d].size; ++g)
                for (std::size_t f = 0; f < c.hom[d][cand].size; ++f) {
                    std::size_t fg = c.compose(d2, d, cand, f, g);
                    const std::size_t ht2 = c.hom[d2][tgt].size;
                    std::vector<std::size_t> lhs = tuple_decode(images[d2][fg], power, ht2);
                    std::vector<std::size_t> rhs = tuple_decode(images[d][f], power,
                                                                c.hom[d][tgt].size);
                    for (std::size_t i = 0; i < power; ++i)
                        rhs[i] = c.compose(d2, d, tgt, rhs[i], g);
                    if (lhs != rhs) {
                        if (witness)
                            *witness = "naturality fails for g=" + mor_str(c, d2, d, g) + ", f=" +
                                       std::to_string(f);
                        return false;
                    }
                }
    return true;
}

ValidationReport validate_bifunctor(const Bifunctor& f, std::size_t budget) {
    ValidationReport rep;
    const auto& c = *f.base;
    const std::size_t n = c.n_objects();
    // identities, exhaustively
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Mor ida{a, a, c.id[a]};
            Mor idb{b, b, c.id[b]};
            FinFn act = f.action(ida, idb);
            FinSet v = f.value(a, b);
            if (act.table.size() != v.size) {
                rep.add("action(id,id) has wrong domain at (" + c.objects[a] + "," +
                        c.objects[b] + ")");
                continue;
            }
            for (std::size_t x = 0; x < v.size; ++x)
                if (act.table[x] != x) {
                    rep.add("identity action not identity at (" + c.objects[a] + "," +
                            c.objects[b] + ") x=" + std::to_string(x));
                    break;
                }
        }
    // composition in the contravariant variable:
    //   F(h2.h1, id_d) = F(h1, id_d) . F(h2, id_d)   for h1 : a->b, h2 : b->e
    std::size_t spent = 0;
    bool done = true;
    for (std::size_t a = 0; a < n && done; ++a)
        for (std::size_t b = 0; b < n && done; ++b)
            for (std::size_t e = 0; e < n && done; ++e)
                for (std::size_t d = 0; d < n && done; ++d)
                    for (std::size_t h2 = 0; h2 < c.hom[b][e].size && done; ++h2)
                        for (std::size_t h1 = 0; h1 < c.hom[a][b].size; ++h1) {
                            std::size_t sz = f.value(e, d).size + 16;
                            if (spent + sz > budget) {
                                done = false;
                                break;
                            }
                            spent += sz;
                            Mor idd{d, d, c.id[d]};
                            Mor m1{a, b, h1}, m2{b, e, h2};
                            Mor m21{a, e, c.compose(a, b, e, h2, h1)};
                            FinFn lhs = f.action(m21, idd);
                            FinFn rhs = compose(f.action(m1, idd), f.action(m2, idd));
                            if (lhs.table != rhs.table) {
                                rep.add("contravariant composition fails at h2=" +
                                        mor_str(c, b, e, h2) + " h1=" + mor_str(c, a, b, h1) +
                                        " obj=" + c.objects[d]);
                                done = false;
                                break;
                            }
                        }
    // composition in the covariant variable:
    //   F(id_a, k2.k1) = F(id_a, k2) . F(id_a, k1)   for k1 : b->e, k2 : e->d
    for (std::size_t a = 0; a < n && done; ++a)
        for (std::size_t b = 0; b < n && done; ++b)
            for (std::size_t e = 0; e < n && done; ++e)
                for (std::size_t d = 0; d < n && done; ++d)
                    for (std::size_t k2 = 0; k2 < c.hom[e][d].size && done; ++k2)
                        for (std::size_t k1 = 0; k1 < c.hom[b][e].size; ++k1) {
                            std::size_t sz = f.value(a, b).size + 16;
                            if (spent + sz > budget) {
                                done = false;
                                break;
                            }
                            spent += sz;
                            Mor ida{a, a, c.id[a]};
                            Mor m1{b, e, k1}, m2{e, d, k2};
                            Mor m21{b, d, c.compose(b, e, d, k2, k1)};
                            FinFn lhs = f.action(ida, m21);
                            FinFn rhs = compose(f.action(ida, m2), f.action(ida, m1));
                            if (lhs.table != rhs.table) {
                                rep.add("covariant composition fails at k2=" +
                                        mor_str(c, e, d, k2) + " k1=" + mor_str(c, b, e, k1) +
                                        " obj=" + c.objects[a]);
                                done = false;
                                break;
                            }
                        }
    // the two actions interchange: F(h,k) = F(id,k) . F(h,id)
    for (std::size_t a = 0; a < n && done; ++a)
        for (std::size_t b = 0; b < n && done; ++b)
            for (std::size_t e = 0; e < n && done; ++e)
                for (std::size_t d = 0; d < n && done; ++d)
                    for (std::size_t h = 0; h < c.hom[a][b].size && done; ++h)
                        for (std::size_t k = 0; k < c.hom[e][d].size; ++k) {
                            std::size_t sz = f.value(b, e).size + 16;
                            if (spent + sz > budget) {
                                done = false;
                                break;
                            }
                            spent += sz;
                            Mor mh{a, b, h}, mk{e, d, k};
                            Mor ida{a, a, c.id[a]}, ide{e, e, c.id[e]};
                            FinFn joint = f.action(mh, mk);
                            FinFn split = compose(f.action(ida, mk), f.action(mh, ide));
                            if (joint.table != split.table) {
                                rep.add("interchange fails at h=" + mor_str(c, a, b, h) +
                                        " k=" + mor_str(c, e, d, k));
                                done = false;
                                break;
                            }
                        }
    rep.complete = done;
    if (!done && rep.ok())
        rep.coverage_note = "composition sweep truncated by budget after " +
                            std::to_string(spent) + " comparisons";
    return rep;
}

std::pair<std::size_t, std::size_t> CoendResult::representative(std::size_t cls_idx) const {
    // least element of the class in disjoint-union order
    for (std::size_t i = 0; i < proj.table.size(); ++i) {
        if (proj.table[i] == cls_idx) {
            std::size_t obj = 0;
            while (obj + 1 < offsets.size() && offsets[obj + 1] <= i) ++obj;
            return {obj, i - offsets[obj]};
        }
    }
    throw error("CoendResult: no representative for class");
}

CoendResult coend(const Bifunctor& f, std::size_t validation_budget) {
    ValidationReport rep = validate_bifunctor(f, validation_budget);
    if (!rep.ok()) throw error("coend: bifunctoriality violation: " + rep.violations.front());

    const auto& c = *f.base;
    const std::size_t n = c.n_objects();
    CoendResult r;
    r.offsets.resize(n, 0);
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; ++a) {
        r.offsets[a] = total;
        total += f.value(a, a).size;
    }
    FinSet disj(total);

    std::vector<std::pair<std::size_t, std::size_t>> rels;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t nh = c.hom[a][b].size;
            for (std::size_t h = 0; h < nh; ++h) {
                Mor mh{a, b, h};
                Mor ida{a, a, c.id[a]};
                Mor idb{b, b, c.id[b]};
                // left: F(h,1_a) : F(b,a) -> F(a,a); right: F(1_b,h) : F(b,a) -> F(b,b)
                FinFn left = f.action(mh, ida);
                FinFn right = f.action(idb, mh);
                const std::size_t sz = f.value(b, a).size;
                for (std::size_t x = 0; x < sz; ++x)
                    rels.emplace_back(r.offsets[a] + left.table[x], r.offsets[b] + right.table[x]);
            }
        }
    Quotient q = quotient_by_pairs(disj, rels);
    r.value = FinSet(q.classes.size());
    r.proj = std::move(q.proj);
    return r;
}

}  // namespace alth
