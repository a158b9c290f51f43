#include "alth/monad.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace alth {

namespace {

bool next_tuple(std::vector<std::size_t>& sel, std::size_t bound) {
    for (std::size_t pos = sel.size(); pos-- > 0;) {
        if (++sel[pos] < bound) return true;
        sel[pos] = 0;
    }
    return false;
}

std::vector<std::size_t> identity_table(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return t;
}

ArityFunctor theory_op_functor(const Theory& t) {
    ArityFunctor f;
    f.base = t.arities();
    f.value = [t](std::size_t arity) { return t.op(arity); };
    f.action = [t](std::size_t a, std::size_t b, std::size_t u) {
        auto ut = fn_decode(u, a, b);
        auto pb = t.proj(b);
        std::vector<std::size_t> args(a);
        for (std::size_t i = 0; i < a; ++i) args[i] = pb[ut[i]];
        const std::size_t cnt = t.op(a).size;
        std::vector<std::size_t> act(cnt);
        for (std::size_t e = 0; e < cnt; ++e) act[e] = t.subst(a, e, b, args);
        return act;
    };
    return f;
}

}  // namespace

Endofunctor Monad::endofunctor() const {
    Endofunctor e;
    auto im = impl;
    e.value = [im](const FinSet& v) { return im->value(v); };
    e.map = [im](const FinFn& f) { return im->map(f); };
    return e;
}

// ---------------------------------------------------------------------------
// Identity and writer monads.
// ---------------------------------------------------------------------------

namespace {

class IdentityMonadImpl final : public MonadImpl {
public:
    FinSet value(const FinSet& v) const override { return FinSet(v.size); }
    FinFn map(const FinFn& f) const override {
        return FinFn(FinSet(f.dom.size), FinSet(f.cod.size), f.table);
    }
    FinFn unit(const FinSet& v) const override { return FinFn::identity(FinSet(v.size)); }
    FinFn mult(const FinSet& v) const override { return FinFn::identity(FinSet(v.size)); }
};

class WriterMonadImpl final : public MonadImpl {
public:
    WriterMonadImpl(FinSet monoid, std::vector<std::size_t> mult, std::size_t unit)
        : m_(std::move(monoid)), mult_(std::move(mult)), e_(unit) {
        if (mult_.size() != m_.size * m_.size) throw error("writer monad: bad monoid table");
    }

    FinSet value(const FinSet& v) const override { return FinSet(v.size * m_.size); }

    FinFn map(const FinFn& f) const override {
        const std::size_t k = m_.size;
        std::vector<std::size_t> t(f.dom.size * k);
        for (std::size_t v = 0; v < f.dom.size; ++v)
            for (std::size_t m = 0; m < k; ++m) t[v * k + m] = f.table[v] * k + m;
        return FinFn(FinSet(f.dom.size * k), FinSet(f.cod.size * k), std::move(t));
    }

    FinFn unit(const FinSet& v) const override {
        const std::size_t k = m_.size;
        std::vector<std::size_t> t(v.size);
        for (std::size_t i = 0; i < v.size; ++i) t[i] = i * k + e_;
        return FinFn(FinSet(v.size), FinSet(v.size * k), std::move(t));
    }

    FinFn mult(const FinSet& v) const override {
        // ((v,m1),m2) |-> (v, m2*m1): outer operation composes after inner
        const std::size_t k = m_.size;
        std::vector<std::size_t> t(v.size * k * k);
        for (std::size_t i = 0; i < v.size; ++i)
            for (std::size_t m1 = 0; m1 < k; ++m1)
                for (std::size_t m2 = 0; m2 < k; ++m2)
                    t[(i * k + m1) * k + m2] = i * k + mult_[m2 * k + m1];
        return FinFn(FinSet(v.size * k * k), FinSet(v.size * k), std::move(t));
    }

private:
    FinSet m_;
    std::vector<std::size_t> mult_;
    std::size_t e_;
};

}  // namespace

Monad identity_monad(const AritySystem& s) {
    Monad m;
    m.name = "identity";
    m.arities = s;
    m.impl = std::make_shared<IdentityMonadImpl>();
    return m;
}

Monad writer_monad(const AritySystem& s, const FinSet& monoid,
                   const std::vector<std::size_t>& mult_table, std::size_t unit_elem,
                   std::string name) {
    Monad m;
    m.name = std::move(name);
    m.arities = s;
    m.impl = std::make_shared<WriterMonadImpl>(monoid, mult_table, unit_elem);
    return m;
}

// ---------------------------------------------------------------------------
// Induced free-algebra monads.
// ---------------------------------------------------------------------------

FreeAlgebraComparison compare_free_algebra_routes(const Theory& t, const FinSet& v,
                                                  std::size_t window) {
    if (!t.supports_all_arities())
        throw error("compare_free_algebra_routes: theory has no exact op(n) route");
    FreeAlgebraComparison cmp;
    cmp.lan = lan_along_j(theory_op_functor(t), v, window);
    cmp.exact = t.op(v.size);
    if (t.arities().is_fin_card() && !cmp.lan.stabilized) {
        cmp.note = "truncated coend unstabilized at window " + std::to_string(window);
        return cmp;
    }
    if (cmp.lan.value.size != cmp.exact.size) {
        cmp.note = "sizes differ: coend " + std::to_string(cmp.lan.value.size) + " vs exact " +
                   std::to_string(cmp.exact.size);
        return cmp;
    }
    // canonical map: class of (f : J -> V, t) |-> t relabelled along f
    std::vector<std::size_t> image(cmp.lan.value.size, std::size_t(-1));
    auto pv = t.proj(v.size);
    for (std::size_t pos = 0; pos < cmp.lan.arities.size(); ++pos) {
        const std::size_t j = cmp.lan.arities[pos];
        const std::size_t wsz = pow_sz(v.size, j);
        const std::size_t tsz = cmp.lan.functor_values[pos].size;
        for (std::size_t f = 0; f < wsz; ++f) {
            auto ft = fn_decode(f, j, v.size);
            std::vector<std::size_t> args(j);
            for (std::size_t i = 0; i < j; ++i) args[i] = pv[ft[i]];
            for (std::size_t x = 0; x < tsz; ++x) {
                std::size_t cls = cmp.lan.insert(pos, f, x);
                std::size_t val = t.subst(j, x, v.size, args);
                if (image[cls] != std::size_t(-1) && image[cls] != val) {
                    cmp.note = "canonical map not constant on a coend class";
                    return cmp;
                }
                image[cls] = val;
            }
        }
    }
    std::vector<bool> hit(cmp.exact.size, false);
    for (std::size_t c = 0; c < cmp.lan.value.size; ++c) {
        if (image[c] == std::size_t(-1)) {
            cmp.note = "unreached coend class";
            return cmp;
        }
        if (hit[image[c]]) {
            cmp.note = "canonical map not injective";
            return cmp;
        }
        hit[image[c]] = true;
    }
    cmp.bijective = true;
    return cmp;
}

namespace {

class DirectTheoryMonadImpl final : public MonadImpl {
public:
    DirectTheoryMonadImpl(Theory t, std::size_t crosscheck_window)
        : theory_(std::move(t)), ccwin_(crosscheck_window) {}

    FinSet value(const FinSet& v) const override {
        crosscheck(v);
        return FinSet(theory_.op(v.size).size);
    }

    FinFn map(const FinFn& f) const override {
        const std::size_t nv = f.dom.size;
        const std::size_t nw = f.cod.size;
        auto pw = theory_.proj(nw);
        std::vector<std::size_t> args(nv);
        for (std::size_t i = 0; i < nv; ++i) args[i] = pw[f.table[i]];
        const std::size_t cnt = theory_.op(nv).size;
        std::vector<std::size_t> t(cnt);
        for (std::size_t e = 0; e < cnt; ++e) t[e] = theory_.subst(nv, e, nw, args);
        return FinFn(FinSet(cnt), FinSet(theory_.op(nw).size), std::move(t));
    }

    FinFn unit(const FinSet& v) const override {
        auto pv = theory_.proj(v.size);
        return FinFn(FinSet(v.size), FinSet(theory_.op(v.size).size), pv);
    }

    FinFn mult(const FinSet& v) const override {
        const std::size_t n = v.size;
        const std::size_t tn = theory_.op(n).size;
        const std::size_t ttn = theory_.op(tn).size;
        std::vector<std::size_t> all = identity_table(tn);
        std::vector<std::size_t> t(ttn);
        for (std::size_t w = 0; w < ttn; ++w) t[w] = theory_.subst(tn, w, n, all);
        return FinFn(FinSet(ttn), FinSet(tn), std::move(t));
    }

    FinFn kleisli_extend(std::size_t n, const FinFn& g) const override {
        // pointwise: the extension of g substitutes the op(n) elements g(i)
        // for the generators; equals mu_n . T(g) by associativity of
        // substitution, which validate_theory checks independently
        const std::size_t m = g.dom.size;
        const std::size_t tm = theory_.op(m).size;
        const std::size_t tn = theory_.op(n).size;
        std::vector<std::size_t> t(tm);
        std::vector<std::size_t> args(g.table.begin(), g.table.end());
        for (std::size_t e = 0; e < tm; ++e) t[e] = theory_.subst(m, e, n, args);
        return FinFn(FinSet(tm), FinSet(tn), std::move(t));
    }

    std::optional<std::size_t> free_insert(const FinSet& v, std::size_t j,
                                           std::span<const std::size_t> f,
                                           std::size_t t) const override {
        auto pv = theory_.proj(v.size);
        std::vector<std::size_t> args(j);
        for (std::size_t i = 0; i < j; ++i) args[i] = pv[f[i]];
        return theory_.subst(j, t, v.size, args);
    }

    std::optional<std::tuple<std::size_t, std::vector<std::size_t>, std::size_t>> free_decode(
        const FinSet& v, std::size_t elem) const override {
        return std::make_tuple(v.size, identity_table(v.size), elem);
    }

    const Theory* source_theory() const override { return &theory_; }

private:
    void crosscheck(const FinSet& v) const {
        if (!theory_.arities().is_fin_card() || v.size + 1 > ccwin_) return;
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (checked_.count(v.size)) return;
            checked_.insert(v.size);
        }
        FreeAlgebraComparison cmp = compare_free_algebra_routes(theory_, v, v.size + 1);
        if (!cmp.bijective && cmp.lan.stabilized)
            throw error("induced monad cross-check failed at |V|=" + std::to_string(v.size) +
                        ": " + cmp.note);
    }

    Theory theory_;
    std::size_t ccwin_;
    mutable std::mutex mu_;
    mutable std::set<std::size_t> checked_;
};

class CoendTheoryMonadImpl final : public MonadImpl {
public:
    explicit CoendTheoryMonadImpl(Theory t) : theory_(std::move(t)) {
        if (theory_.arities().is_fin_card())
            throw error("coend monad evaluator requires a finite arity system");
    }

    FinSet value(const FinSet& v) const override { return lan(v.size).value; }

    FinFn map(const FinFn& f) const override {
        const LanResult& lv = lan(f.dom.size);
        const LanResult& lw = lan(f.cod.size);
        std::vector<std::size_t> t(lv.value.size, std::size_t(-1));
        for (std::size_t pos = 0; pos < lv.arities.size(); ++pos) {
            const std::size_t j = lv.arities[pos];
            const std::size_t wsz = pow_sz(f.dom.size, j);
            const std::size_t tsz = lv.functor_values[pos].size;
            for (std::size_t g = 0; g < wsz; ++g) {
                auto gt = fn_decode(g, j, f.dom.size);
                for (auto& x : gt) x = f.table[x];
                std::size_t fg = fn_encode(gt, f.cod.size);
                for (std::size_t x = 0; x < tsz; ++x) {
                    std::size_t src = lv.insert(pos, g, x);
                    std::size_t dst = lw.insert(pos, fg, x);
                    if (t[src] != std::size_t(-1) && t[src] != dst)
                        throw error("coend monad map not well defined (internal)");
                    t[src] = dst;
                }
            }
        }
        return FinFn(FinSet(lv.value.size), FinSet(lw.value.size), std::move(t));
    }

    FinFn unit(const FinSet& v) const override {
        const LanResult& lv = lan(v.size);
        std::size_t one_pos = arity_pos(1);
        auto p1 = theory_.proj(1);
        std::vector<std::size_t> t(v.size);
        for (std::size_t i = 0; i < v.size; ++i) t[i] = lv.insert(one_pos, i, p1[0]);
        return FinFn(FinSet(v.size), FinSet(lv.value.size), std::move(t));
    }

    FinFn mult(const FinSet& v) const override {
        const LanResult& lv = lan(v.size);
        const LanResult& ltv = lan(lv.value.size);
        const auto& arities = theory_.represented();
        std::vector<std::size_t> t(ltv.value.size);
        for (std::size_t c = 0; c < ltv.value.size; ++c) {
            auto [kpos, genc, telem] = ltv.decode(c);
            const std::size_t k = arities[kpos];
            auto g = fn_decode(genc, k, lv.value.size);
            // find (J, h : J -> V, w : K -> op(J)) with insert(J,h,w(k)) = g(k)
            bool found = false;
            for (std::size_t jpos = 0; jpos < arities.size() && !found; ++jpos) {
                const std::size_t j = arities[jpos];
                const std::size_t opj = theory_.op(j).size;
                const std::size_t nh = pow_sz(v.size, j);
                for (std::size_t h = 0; h < nh && !found; ++h) {
                    if (opj == 0 && k > 0) continue;
                    std::vector<std::size_t> w(k, 0);
                    bool more = true;
                    while (more) {
                        bool match = true;
                        for (std::size_t kk = 0; kk < k && match; ++kk)
                            if (lv.insert(jpos, h, w[kk]) != g[kk]) match = false;
                        if (match) {
                            std::size_t composed = theory_.subst(k, telem, j, w);
                            t[c] = lv.insert(jpos, h, composed);
                            found = true;
                            break;
                        }
                        more = next_tuple(w, opj);
                    }
                }
            }
            if (!found)
                throw error("coend monad mult: no copresheaf representation found "
                            "(arity system not eleutheric here?)");
        }
        return FinFn(FinSet(ltv.value.size), FinSet(lv.value.size), std::move(t));
    }

    std::optional<std::size_t> free_insert(const FinSet& v, std::size_t j,
                                           std::span<const std::size_t> f,
                                           std::size_t t) const override {
        const LanResult& lv = lan(v.size);
        std::vector<std::size_t> ft(f.begin(), f.end());
        return lv.insert(arity_pos(j), fn_encode(ft, v.size), t);
    }

    std::optional<std::tuple<std::size_t, std::vector<std::size_t>, std::size_t>> free_decode(
        const FinSet& v, std::size_t elem) const override {
        const LanResult& lv = lan(v.size);
        auto [pos, fenc, t] = lv.decode(elem);
        return std::make_tuple(lv.arities[pos], fn_decode(fenc, lv.arities[pos], v.size), t);
    }

    const Theory* source_theory() const override { return &theory_; }

private:
    std::size_t arity_pos(std::size_t arity) const {
        auto i = theory_.arities().index_of(arity);
        if (!i) throw error("coend monad: arity not represented");
        return *i;
    }

    const LanResult& lan(std::size_t size) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(size);
        if (it != memo_.end()) return it->second;
        LanResult r = lan_along_j(theory_op_functor(theory_), FinSet(size));
        return memo_.emplace(size, std::move(r)).first->second;
    }

    Theory theory_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, LanResult> memo_;
};

}  // namespace

Monad induced_monad(const Theory& t) {
    std::size_t ccwin = t.arities().is_fin_card() ? std::max<std::size_t>(4, t.arities().window)
                                                  : 0;
    return induced_monad(t, ccwin);
}

Monad induced_monad(const Theory& t, std::size_t crosscheck_window) {
    Monad m;
    m.name = "free(" + t.name() + ")";
    m.arities = t.arities();
    m.provenance = Monad::Provenance::induced;
    if (!t.arities().is_fin_card()) {
        // finite systems: the exact coend over the member arities (the
        // all-arity clone route would compute a different monad)
        m.impl = std::make_shared<CoendTheoryMonadImpl>(t);
    } else if (t.supports_all_arities()) {
        m.impl = std::make_shared<DirectTheoryMonadImpl>(t, crosscheck_window);
    } else {
        throw error("induced_monad: fin_card theory '" + t.name() +
                    "' cannot evaluate beyond its window (no exact op(n) route)");
    }
    return m;
}

// ---------------------------------------------------------------------------
// Tabled monads.
// ---------------------------------------------------------------------------

namespace {

class TabledMonadImpl final : public MonadImpl {
public:
    explicit TabledMonadImpl(TabledData d) : d_(std::move(d)) {}

    FinSet value(const FinSet& v) const override { return FinSet(tsize(v.size)); }

    FinFn map(const FinFn& f) const override {
        auto it = d_.maps.find({f.dom.size, f.cod.size, fn_encode(f.table, f.cod.size)});
        if (it == d_.maps.end())
            throw error("tabled monad: evaluator leaves the window (map at |V|=" +
                        std::to_string(f.dom.size) + ", |W|=" + std::to_string(f.cod.size) + ")");
        return FinFn(FinSet(tsize(f.dom.size)), FinSet(tsize(f.cod.size)), it->second);
    }

    FinFn unit(const FinSet& v) const override {
        auto it = d_.unit.find(v.size);
        if (it == d_.unit.end()) throw error("tabled monad: evaluator leaves the window (unit)");
        return FinFn(FinSet(v.size), FinSet(tsize(v.size)), it->second);
    }

    FinFn mult(const FinSet& v) const override {
        auto it = d_.mult.find(v.size);
        if (it == d_.mult.end()) throw error("tabled monad: evaluator leaves the window (mult)");
        std::size_t tn = tsize(v.size);
        std::size_t ttn = tsize(tn);
        return FinFn(FinSet(ttn), FinSet(tn), it->second);
    }

private:
    std::size_t tsize(std::size_t n) const {
        auto it = d_.tsize.find(n);
        if (it == d_.tsize.end())
            throw error("tabled monad: evaluator leaves the window (|V|=" + std::to_string(n) +
                        ")");
        return it->second;
    }

    TabledData d_;
};

}  // namespace

Monad monad_from_tables(std::string name, const AritySystem& s, TabledData data) {
    Monad m;
    m.name = std::move(name);
    m.arities = s;
    m.provenance = Monad::Provenance::tabled;
    m.impl = std::make_shared<TabledMonadImpl>(std::move(data));
    return m;
}

TabledData materialize_monad(const Monad& m, std::vector<std::size_t> sizes) {
    TabledData d;
    d.sizes = sizes;
    std::set<std::size_t> all(sizes.begin(), sizes.end());
    // close under one and two applications of T, so unit/mult typecheck
    for (std::size_t s : sizes) {
        std::size_t t1 = m.value(FinSet(s)).size;
        std::size_t t2 = m.value(FinSet(t1)).size;
        all.insert(t1);
        all.insert(t2);
    }
    for (std::size_t s : all) d.tsize[s] = m.value(FinSet(s)).size;
    for (std::size_t s : sizes) {
        d.unit[s] = m.unit(FinSet(s)).table;
        d.mult[s] = m.mult(FinSet(s)).table;
    }
    for (std::size_t s1 : all)
        for (std::size_t s2 : all) {
            if (pow_sz(s2, s1) > 4096) continue;
            const std::size_t nf = pow_sz(s2, s1);
            for (std::size_t f = 0; f < nf; ++f)
                d.maps[{s1, s2, f}] =
                    m.map(hom_element(FinSet(s1), FinSet(s2), f)).table;
        }
    return d;
}

Monad tabled_monad(std::string name, const AritySystem& s, const Monad& from,
                   std::vector<std::size_t> sizes) {
    return monad_from_tables(std::move(name), s, materialize_monad(from, std::move(sizes)));
}

// ---------------------------------------------------------------------------
// Monad laws.
// ---------------------------------------------------------------------------

MonadReport validate_monad(const Monad& m, const std::vector<std::size_t>& window_sizes,
                           std::size_t assoc_cap) {
    MonadReport rep;
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
    auto skip = [&](const std::string& s) { rep.skipped.push_back(s); };

    for (std::size_t s : window_sizes) {
        FinSet v(s);
        try {
            // functor identity
            FinFn idm = m.map(FinFn::identity(v));
            if (idm.table != identity_table(idm.table.size()))
                bad("T(id) != id at |V|=" + std::to_string(s));
            ++rep.squares_checked;
        } catch (const cap_exceeded& e) {
            skip(std::string("functor identity at |V|=") + std::to_string(s) + ": " + e.what());
        }
    }
    // functor composition and eta naturality over all window pairs/triples
    for (std::size_t s1 : window_sizes)
        for (std::size_t s2 : window_sizes) {
            const std::size_t nf = pow_sz(s2, s1);
            for (std::size_t f = 0; f < nf; ++f) {
                FinFn ff = hom_element(FinSet(s1), FinSet(s2), f);
                FinFn tf = m.map(ff);
                // eta natural
                FinFn lhs = compose(tf, m.unit(FinSet(s1)));
                FinFn rhs = compose(m.unit(FinSet(s2)), ff);
                if (lhs.table != rhs.table)
                    bad("eta not natural at f: " + std::to_string(s1) + "->" +
                        std::to_string(s2) + " #" + std::to_string(f));
                ++rep.squares_checked;
                for (std::size_t s3 : window_sizes) {
                    const std::size_t ng = pow_sz(s3, s2);
                    for (std::size_t g = 0; g < ng; ++g) {
                        FinFn gg = hom_element(FinSet(s2), FinSet(s3), g);
                        if (m.map(compose(gg, ff)).table != compose(m.map(gg), tf).table) {
                            bad("T(g o f) != T(g) o T(f) at " + std::to_string(s1) + "->" +
                                std::to_string(s2) + "->" + std::to_string(s3));
                            g = ng;
                        }
                        ++rep.squares_checked;
                    }
                }
            }
        }
    // mu naturality
    for (std::size_t s1 : window_sizes)
        for (std::size_t s2 : window_sizes) {
            std::size_t t1, t2;
            try {
                t1 = m.value(FinSet(s1)).size;
                t2 = m.value(FinSet(s2)).size;
            } catch (const cap_exceeded&) {
                skip("mu naturality sizes at (" + std::to_string(s1) + "," + std::to_string(s2) +
                     ")");
                continue;
            }
            if (t1 > assoc_cap || t2 > assoc_cap) {
                skip("mu naturality at (" + std::to_string(s1) + "," + std::to_string(s2) +
                     "): |T(V)| exceeds cap " + std::to_string(assoc_cap));
                continue;
            }
            const std::size_t nf = pow_sz(s2, s1);
            try {
                for (std::size_t f = 0; f < nf; ++f) {
                    FinFn ff = hom_element(FinSet(s1), FinSet(s2), f);
                    FinFn tf = m.map(ff);
                    FinFn ttf = m.map(tf);
                    FinFn lhs = compose(m.mult(FinSet(s2)), ttf);
                    FinFn rhs = compose(tf, m.mult(FinSet(s1)));
                    if (lhs.table != rhs.table)
                        bad("mu not natural at f: " + std::to_string(s1) + "->" +
                            std::to_string(s2) + " #" + std::to_string(f));
                    ++rep.squares_checked;
                }
            } catch (const cap_exceeded& e) {
                skip("mu naturality at (" + std::to_string(s1) + "," + std::to_string(s2) +
                     "): " + e.what());
            }
        }
    // unit laws and associativity per object
    for (std::size_t s : window_sizes) {
        std::size_t ts;
        try {
            ts = m.value(FinSet(s)).size;
        } catch (const cap_exceeded& e) {
            skip("object |V|=" + std::to_string(s) + ": " + e.what());
            continue;
        }
        try {
            FinFn mu = m.mult(FinSet(s));
            FinFn l1 = compose(mu, m.unit(FinSet(ts)));
            if (l1.table != identity_table(ts))
                bad("mu o eta_T != id at |V|=" + std::to_string(s));
            FinFn l2 = compose(mu, m.map(m.unit(FinSet(s))));
            if (l2.table != identity_table(ts))
                bad("mu o T(eta) != id at |V|=" + std::to_string(s));
            rep.squares_checked += 2;
        } catch (const cap_exceeded& e) {
            skip("unit laws at |V|=" + std::to_string(s) + ": " + e.what());
        }
        std::size_t tts;
        try {
            tts = m.value(FinSet(ts)).size;
        } catch (const cap_exceeded& e) {
            skip("associativity at |V|=" + std::to_string(s) + ": " + e.what());
            continue;
        }
        if (tts > assoc_cap) {
            skip("associativity at |V|=" + std::to_string(s) + ": |TTV|=" +
                 std::to_string(tts) + " exceeds cap " + std::to_string(assoc_cap));
            continue;
        }
        try {
            FinFn mu = m.mult(FinSet(s));
            FinFn lhs = compose(mu, m.mult(FinSet(ts)));
            FinFn rhs = compose(mu, m.map(mu));
            if (lhs.table != rhs.table)
                bad("mu associativity fails at |V|=" + std::to_string(s));
            ++rep.squares_checked;
        } catch (const cap_exceeded& e) {
            skip("associativity at |V|=" + std::to_string(s) + ": " + e.what());
        }
    }
    return rep;
}

CheckResult check_jary(const Monad& m, const std::vector<std::size_t>& window_sizes) {
    std::size_t w = m.arities.is_fin_card() ? m.arities.window : 0;
    for (std::size_t s : window_sizes) w = std::max(w, s + 1);
    return check_jary(m, window_sizes, w);
}

CheckResult check_jary(const Monad& m, const std::vector<std::size_t>& window_sizes,
                       std::size_t lan_window) {
    Endofunctor e = m.endofunctor();
    bool inconclusive = false;
    std::string note;
    for (std::size_t s : window_sizes) {
        CheckResult r = check_xi_iso(m.arities, e, FinSet(s), lan_window);
        if (r.verdict == Verdict::fail)
            return {Verdict::fail, "xi fails at |V|=" + std::to_string(s) + ": " + r.note};
        if (r.verdict == Verdict::inconclusive) {
            inconclusive = true;
            note = "at |V|=" + std::to_string(s) + ": " + r.note;
        }
    }
    if (inconclusive) return {Verdict::inconclusive, note};
    return {Verdict::pass, ""};
}

// ---------------------------------------------------------------------------
// Kleisli theory.
// ---------------------------------------------------------------------------

namespace {

class KleisliBackend final : public TheoryBackend {
public:
    explicit KleisliBackend(Monad m) : m_(std::move(m)) {}

    FinSet op(std::size_t arity) const override { return FinSet(m_.value(FinSet(arity)).size); }

    std::vector<std::size_t> proj(std::size_t arity) const override {
        return m_.unit(FinSet(arity)).table;
    }

    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const override {
        // f : J -> TK, g : K -> TL  |->  mu_L . T(g) . f ; here t plays f at
        // J = 1 transposed, i.e. t in T(m), args give g : m -> T(n)
        std::vector<std::size_t> key(args.begin(), args.end());
        return extend_table(m, n, key)[t];
    }

    bool supports_all_arities() const override { return true; }

    std::string describe_op(std::size_t arity, std::size_t elem) const override {
        return "T(" + std::to_string(arity) + ")#" + std::to_string(elem);
    }

    const Monad& monad() const { return m_; }

private:
    const std::vector<std::size_t>& extend_table(std::size_t m, std::size_t n,
                                                 const std::vector<std::size_t>& g) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(m, n, g);
        auto it = exts_.find(key);
        if (it != exts_.end()) return it->second;
        FinFn gf(FinSet(m), FinSet(op(n).size), g);
        return exts_.emplace(std::move(key), m_.impl->kleisli_extend(n, gf).table).first->second;
    }

    Monad m_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>,
                     std::vector<std::size_t>>
        exts_;
};

}  // namespace

Theory kleisli_theory(const Monad& m) {
    Theory t("kleisli(" + m.name + ")", m.arities, std::make_shared<KleisliBackend>(m));
    ValidationReport rep = validate_theory(t);
    if (!rep.ok())
        throw error("kleisli_theory: constructed data fails theory validation: " +
                    rep.violations.front());
    return t;
}

// ---------------------------------------------------------------------------
// Round trips.
// ---------------------------------------------------------------------------

TheoryRoundtrip roundtrip_theory(const Theory& t) {
    TheoryRoundtrip rt;
    rt.monad = induced_monad(t);
    rt.kleisli = kleisli_theory(rt.monad);
    rt.iso.dom = t;
    rt.iso.cod = rt.kleisli;
    for (std::size_t n : t.represented()) {
        const std::size_t cnt = t.op(n).size;
        const std::size_t cnt2 = rt.kleisli.op(n).size;
        if (cnt != cnt2) {
            rt.note = "hom size mismatch at arity " + std::to_string(n) + ": " +
                      std::to_string(cnt) + " vs " + std::to_string(cnt2);
            return rt;
        }
        std::vector<std::size_t> mapn(cnt);
        std::vector<bool> hit(cnt2, false);
        auto id = identity_table(n);
        for (std::size_t e = 0; e < cnt; ++e) {
            auto ins = rt.monad.impl->free_insert(FinSet(n), n, id, e);
            if (!ins) {
                rt.note = "monad exposes no coend insertions";
                return rt;
            }
            mapn[e] = *ins;
            if (hit[*ins]) {
                rt.note = "canonical functor not injective at arity " + std::to_string(n);
                return rt;
            }
            hit[*ins] = true;
        }
        rt.iso.op_map.push_back(std::move(mapn));
    }
    std::string w;
    if (!check_theory_morphism(rt.iso, &w)) {
        rt.note = "canonical map is not a theory morphism: " + w;
        return rt;
    }
    rt.ok = true;
    return rt;
}

MonadRoundtrip roundtrip_monad(const Monad& m, const std::vector<std::size_t>& window_sizes) {
    std::size_t w = m.arities.is_fin_card() ? m.arities.window : 0;
    for (std::size_t s : window_sizes) w = std::max(w, s + 1);
    return roundtrip_monad(m, window_sizes, w);
}

MonadRoundtrip roundtrip_monad(const Monad& m, const std::vector<std::size_t>& window_sizes,
                               std::size_t lan_window) {
    MonadRoundtrip rt;
    Theory k = kleisli_theory(m);
    ArityFunctor opf = theory_op_functor(k);

    // xi comparison per window object: Lan of the Kleisli operations back to M
    std::vector<LanResult> lans;
    std::vector<std::vector<std::size_t>> xis;
    for (std::size_t s : window_sizes) {
        LanResult lan = lan_along_j(opf, FinSet(s), lan_window);
        if (m.arities.is_fin_card() && !lan.stabilized) {
            rt.verdict = Verdict::inconclusive;
            rt.note = "unstabilized truncation at |V|=" + std::to_string(s) + ", window " +
                      std::to_string(lan_window);
            return rt;
        }
        FinSet tv = m.value(FinSet(s));
        rt.witness_sizes.push_back(tv.size);
        if (lan.value.size != tv.size) {
            rt.note = "induced monad of the Kleisli theory differs at |V|=" + std::to_string(s) +
                      ": " + std::to_string(lan.value.size) + " vs " + std::to_string(tv.size);
            return rt;
        }
        std::vector<std::size_t> xi(lan.value.size, std::size_t(-1));
        std::vector<bool> hit(tv.size, false);
        for (std::size_t pos = 0; pos < lan.arities.size(); ++pos) {
            const std::size_t j = lan.arities[pos];
            const std::size_t nh = pow_sz(s, j);
            const std::size_t tsz = lan.functor_values[pos].size;
            for (std::size_t f = 0; f < nh; ++f) {
                FinFn tf = m.map(hom_element(FinSet(j), FinSet(s), f));
                for (std::size_t x = 0; x < tsz; ++x) {
                    std::size_t cls = lan.insert(pos, f, x);
                    std::size_t val = tf.table[x];
                    if (xi[cls] != std::size_t(-1) && xi[cls] != val) {
                        rt.note = "xi not constant on a class at |V|=" + std::to_string(s);
                        return rt;
                    }
                    xi[cls] = val;
                }
            }
        }
        for (std::size_t c = 0; c < xi.size(); ++c) {
            if (xi[c] == std::size_t(-1)) {
                rt.note = "unreached class at |V|=" + std::to_string(s);
                return rt;
            }
            if (hit[xi[c]]) {
                rt.note = "xi not injective at |V|=" + std::to_string(s);
                return rt;
            }
            hit[xi[c]] = true;
        }
        lans.push_back(std::move(lan));
        xis.push_back(std::move(xi));
    }
    // naturality of the comparison
    for (std::size_t i1 = 0; i1 < window_sizes.size(); ++i1)
        for (std::size_t i2 = 0; i2 < window_sizes.size(); ++i2) {
            const std::size_t s1 = window_sizes[i1], s2 = window_sizes[i2];
            const std::size_t nf = pow_sz(s2, s1);
            for (std::size_t f = 0; f < nf; ++f) {
                FinFn ff = hom_element(FinSet(s1), FinSet(s2), f);
                FinFn tf = m.map(ff);
                // Lan(f): class(J,g,x) -> class(J, f o g, x); compare xi images
                const LanResult& l1 = lans[i1];
                const LanResult& l2 = lans[i2];
                for (std::size_t pos = 0; pos < l1.arities.size(); ++pos) {
                    const std::size_t j = l1.arities[pos];
                    const std::size_t nh = pow_sz(s1, j);
                    const std::size_t tsz = l1.functor_values[pos].size;
                    for (std::size_t g = 0; g < nh; ++g) {
                        auto gt = fn_decode(g, j, s1);
                        for (auto& x : gt) x = ff.table[x];
                        std::size_t fg = fn_encode(gt, s2);
                        for (std::size_t x = 0; x < tsz; ++x) {
                            std::size_t lhs = xis[i2][l2.insert(pos, fg, x)];
                            std::size_t rhs = tf.table[xis[i1][l1.insert(pos, g, x)]];
                            if (lhs != rhs) {
                                rt.note = "xi not natural at f: " + std::to_string(s1) + "->" +
                                          std::to_string(s2) + " #" + std::to_string(f);
                                return rt;
                            }
                        }
                    }
                }
            }
        }
    rt.verdict = Verdict::pass;
    return rt;
}

// ---------------------------------------------------------------------------
// Eilenberg-Moore algebras.
// ---------------------------------------------------------------------------

std::vector<EmAlgebra> em_algebras(const Monad& m, std::size_t max_carrier, std::size_t cap) {
    std::vector<EmAlgebra> out;
    for (std::size_t c = 0; c <= max_carrier; ++c) {
        FinSet x(c);
        FinSet tx = m.value(x);
        FinFn eta = m.unit(x);
        FinFn mu = m.mult(x);
        if (c == 0) {
            if (tx.size == 0) out.push_back({x, FinFn(tx, x, {})});
            continue;
        }
        // unit law pins a on the eta image
        std::vector<std::size_t> forced(tx.size, std::size_t(-1));
        for (std::size_t i = 0; i < c; ++i) forced[eta.table[i]] = i;
        std::vector<std::size_t> free_slots;
        for (std::size_t e = 0; e < tx.size; ++e)
            if (forced[e] == std::size_t(-1)) free_slots.push_back(e);
        if (free_slots.size() > 0 && pow_sz(c, free_slots.size()) > cap)
            throw cap_exceeded("em_algebras: candidate count exceeds cap at carrier " +
                               std::to_string(c));
        std::vector<std::size_t> sel(free_slots.size(), 0);
        do {
            std::vector<std::size_t> a(tx.size);
            for (std::size_t e = 0; e < tx.size; ++e) a[e] = forced[e];
            for (std::size_t i = 0; i < free_slots.size(); ++i) a[free_slots[i]] = sel[i];
            FinFn af(tx, x, a);
            FinFn ta = m.map(af);
            // a o mu = a o T(a)
            bool ok = true;
            for (std::size_t z = 0; z < ta.table.size() && ok; ++z)
                if (a[mu.table[z]] != a[ta.table[z]]) ok = false;
            if (ok) out.push_back({x, af});
        } while (next_tuple(sel, c));
    }
    return out;
}

std::vector<FinFn> em_homs(const Monad& m, const EmAlgebra& x, const EmAlgebra& y) {
    std::vector<FinFn> out;
    const std::size_t cx = x.carrier.size;
    const std::size_t cy = y.carrier.size;
    if (cx == 0) {
        out.push_back(FinFn(x.carrier, y.carrier, {}));
        return out;
    }
    if (cy == 0) return out;
    std::vector<std::size_t> tab(cx, 0);
    do {
        FinFn h(x.carrier, y.carrier, tab);
        FinFn th = m.map(h);
        bool ok = true;
        for (std::size_t z = 0; z < th.table.size() && ok; ++z)
            if (h.table[x.structure.table[z]] != y.structure.table[th.table[z]]) ok = false;
        if (ok) out.push_back(std::move(h));
    } while (next_tuple(tab, cy));
    return out;
}

EmAlgComparison check_em_equals_alg(const Theory& t, std::size_t max_carrier) {
    EmAlgComparison cmp;
    Monad m = induced_monad(t);
    std::vector<Algebra> algs = enumerate_algebras(t, max_carrier);
    std::vector<EmAlgebra> ems = em_algebras(m, max_carrier);
    if (algs.size() != ems.size()) {
        cmp.note = "counts differ: " + std::to_string(algs.size()) + " T-algebras vs " +
                   std::to_string(ems.size()) + " EM algebras";
        return cmp;
    }
    cmp.count = algs.size();
    const auto& arities = t.represented();

    auto em_index = [&](const FinFn& a, std::size_t carrier) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < ems.size(); ++i)
            if (ems[i].carrier.size == carrier && ems[i].structure.table == a.table) return i;
        return std::nullopt;
    };

    std::vector<std::size_t> match(algs.size(), std::size_t(-1));
    std::vector<bool> used(ems.size(), false);
    for (std::size_t i = 0; i < algs.size(); ++i) {
        const Algebra& a = algs[i];
        FinSet x = a.carrier;
        FinSet tx = m.value(x);
        // structure map: class of (f : J -> X, t) evaluated through interp
        std::vector<std::size_t> st(tx.size);
        for (std::size_t e = 0; e < tx.size; ++e) {
            auto dec = m.impl->free_decode(x, e);
            if (!dec) {
                cmp.note = "monad exposes no coend representatives";
                return cmp;
            }
            auto [j, f, tt] = *dec;
            auto pos = t.arities().index_of(j);
            if (!pos) {
                cmp.note = "representative arity not represented";
                return cmp;
            }
            st[e] = a.interp[*pos][tt][tuple_encode(f, std::max<std::size_t>(x.size, 1))];
        }
        auto idx = em_index(FinFn(tx, x, st), x.size);
        if (!idx) {
            cmp.note = "structure map of algebra #" + std::to_string(i) +
                       " is not an enumerated EM algebra";
            return cmp;
        }
        if (used[*idx]) {
            cmp.note = "correspondence not injective";
            return cmp;
        }
        used[*idx] = true;
        match[i] = *idx;
        if (ems[*idx].carrier.size != x.size) {
            cmp.note = "carrier not preserved";
            return cmp;
        }
        // inverse direction: rebuild interp from the structure map
        for (std::size_t ai = 0; ai < arities.size(); ++ai) {
            const std::size_t n = arities[ai];
            const std::size_t cnt = t.op(n).size;
            const std::size_t pts = pow_sz(x.size, n);
            for (std::size_t e = 0; e < cnt; ++e)
                for (std::size_t p = 0; p < pts; ++p) {
                    auto g = tuple_decode(p, n, std::max<std::size_t>(x.size, 1));
                    auto ins = m.impl->free_insert(x, n, g, e);
                    if (!ins) {
                        cmp.note = "monad exposes no coend insertions";
                        return cmp;
                    }
                    if (st[*ins] != a.interp[ai][e][p]) {
                        cmp.note = "round trip through the structure map disagrees with interp";
                        return cmp;
                    }
                }
        }
    }
    // hom counts match pairwise under the correspondence
    for (std::size_t i = 0; i < algs.size(); ++i)
        for (std::size_t j = 0; j < algs.size(); ++j) {
            std::size_t lhs = enumerate_homs(algs[i], algs[j]).size();
            std::size_t rhs = em_homs(m, ems[match[i]], ems[match[j]]).size();
            if (lhs != rhs) {
                cmp.note = "hom counts differ between algebra pair (" + std::to_string(i) + "," +
                           std::to_string(j) + "): " + std::to_string(lhs) + " vs " +
                           std::to_string(rhs);
                return cmp;
            }
        }
    cmp.ok = true;
    return cmp;
}

}  // namespace alth
