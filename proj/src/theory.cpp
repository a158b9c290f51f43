#include "alth/theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace alth {

Term Term::v(int i) {
    Term t;
    t.var = i;
    return t;
}

Term Term::app(int op_index, std::vector<Term> as) {
    Term t;
    t.op = op_index;
    t.args = std::move(as);
    return t;
}

std::size_t Term::depth() const {
    if (var >= 0) return 0;
    std::size_t d = 0;
    for (const Term& a : args) d = std::max(d, a.depth());
    return d + 1;
}

int Term::max_var() const {
    if (var >= 0) return var;
    int m = -1;
    for (const Term& a : args) m = std::max(m, a.max_var());
    return m;
}

bool Term::operator==(const Term& o) const {
    return var == o.var && op == o.op && args == o.args;
}

std::string Term::show(const std::vector<SigOp>& sig) const {
    if (var >= 0) return "x" + std::to_string(var);
    std::string s = op >= 0 && std::size_t(op) < sig.size() ? sig[op].name
                                                           : "op" + std::to_string(op);
    if (args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += args[i].show(sig);
    }
    return s + ")";
}

Theory::Theory(std::string name, AritySystem arities,
               std::shared_ptr<const TheoryBackend> backend)
    : name_(std::move(name)), arities_(std::move(arities)), backend_(std::move(backend)) {}

std::size_t Theory::hom_size(std::size_t n, std::size_t m) const {
    return pow_sz(op(n).size, m);
}

std::size_t Theory::hom_encode(std::size_t n, std::span<const std::size_t> tuple) const {
    return tuple_encode(tuple, op(n).size);
}

std::vector<std::size_t> Theory::hom_decode(std::size_t n, std::size_t m, std::size_t h) const {
    return tuple_decode(h, m, op(n).size);
}

std::size_t Theory::identity_hom(std::size_t n) const {
    auto p = proj(n);
    return hom_encode(n, p);
}

std::size_t Theory::compose_hom(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                                std::size_t f) const {
    auto gt = hom_decode(b, c, g);
    auto ft = hom_decode(a, b, f);
    std::vector<std::size_t> r(c);
    for (std::size_t i = 0; i < c; ++i) r[i] = subst(b, gt[i], a, ft);
    return hom_encode(a, r);
}

std::size_t Theory::eval_term(std::size_t n, const Term& t) const {
    if (t.var >= 0) {
        auto p = proj(n);
        if (std::size_t(t.var) >= p.size()) throw error("eval_term: variable out of arity");
        return p[t.var];
    }
    auto sig = signature();
    if (!sig || std::size_t(t.op) >= sig->size()) throw error("eval_term: unknown signature op");
    auto se = backend_->sig_elem(t.op);
    if (!se) throw error("eval_term: backend has no signature elements");
    std::vector<std::size_t> args(t.args.size());
    for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(n, t.args[i]);
    return subst((*sig)[t.op].arity, *se, n, args);
}

std::vector<std::size_t> theory_cotensor_counit(const Theory& t, std::size_t j, std::size_t k) {
    if (!t.arities().contains(j * k) || !t.arities().contains(k))
        throw error("theory_cotensor_counit: arity not represented");
    auto p = t.proj(j * k);
    std::vector<std::size_t> out(j);
    for (std::size_t jj = 0; jj < j; ++jj) {
        std::vector<std::size_t> comp(k);
        for (std::size_t kk = 0; kk < k; ++kk) comp[kk] = p[jj * k + kk];
        out[jj] = t.hom_encode(j * k, comp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Initial theory: hom(n,m) is the opposite of the arity category.
// ---------------------------------------------------------------------------

namespace {

class InitialBackend final : public TheoryBackend {
public:
    FinSet op(std::size_t arity) const override { return FinSet(arity); }

    std::vector<std::size_t> proj(std::size_t arity) const override {
        std::vector<std::size_t> p(arity);
        for (std::size_t i = 0; i < arity; ++i) p[i] = i;
        return p;
    }

    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const override {
        (void)m;
        (void)n;
        if (t >= args.size()) throw error("initial theory subst: bad projection index");
        return args[t];
    }

    bool supports_all_arities() const override { return true; }
    std::optional<std::vector<SigOp>> signature() const override {
        return std::vector<SigOp>{};
    }
    std::optional<Term> term_of(std::size_t, std::size_t elem) const override {
        return Term::v(int(elem));
    }
    std::string describe_op(std::size_t, std::size_t elem) const override {
        return "x" + std::to_string(elem);
    }
};

}  // namespace

Theory initial_theory(const AritySystem& s) {
    return Theory("initial" + s.describe(), s, std::make_shared<InitialBackend>());
}

// ---------------------------------------------------------------------------
// Clone compiler.
// ---------------------------------------------------------------------------

namespace {

/// advance an odometer over [0,bound)^k; false after the last tuple
bool next_tuple(std::vector<std::size_t>& sel, std::size_t bound) {
    for (std::size_t pos = sel.size(); pos-- > 0;) {
        if (++sel[pos] < bound) return true;
        sel[pos] = 0;
    }
    return false;
}

struct CloneData {
    std::vector<std::vector<std::size_t>> tables;  // element -> function table base^n -> base
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<Term> terms;
    std::vector<std::size_t> projections;  // n entries
};

class CloneBackend final : public TheoryBackend {
public:
    CloneBackend(GeneratingAlgebra g, std::size_t cap) : gen_(std::move(g)), cap_(cap) {
        if (gen_.base.size == 0) throw error("clone compiler: base must be nonempty");
        for (const auto& o : gen_.ops)
            if (o.table.size() != pow_sz(gen_.base.size, o.arity))
                throw error("clone compiler: op '" + o.name + "' table has wrong length");
        sig_elems_.resize(gen_.ops.size());
        for (std::size_t i = 0; i < gen_.ops.size(); ++i) {
            const CloneData& d = clone(gen_.ops[i].arity);
            auto it = d.index.find(gen_.ops[i].table);
            if (it == d.index.end()) throw error("clone compiler: signature op not in own clone");
            sig_elems_[i] = it->second;
        }
    }

    const CloneData& clone(std::size_t arity) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(arity);
        if (it != memo_.end()) return it->second;
        CloneData d = generate(arity);
        return memo_.emplace(arity, std::move(d)).first->second;
    }

    FinSet op(std::size_t arity) const override { return FinSet(clone(arity).tables.size()); }

    std::vector<std::size_t> proj(std::size_t arity) const override {
        return clone(arity).projections;
    }

    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const override {
        const CloneData& dm = clone(m);
        const CloneData& dn = clone(n);
        if (args.size() != m) throw error("clone subst: arg count != m");
        const std::size_t b = gen_.base.size;
        const std::size_t pts = pow_sz(b, n);
        const auto& tt = dm.tables[t];
        std::vector<std::size_t> r(pts);
        std::vector<std::size_t> tup(m);
        for (std::size_t p = 0; p < pts; ++p) {
            for (std::size_t i = 0; i < m; ++i) tup[i] = dn.tables[args[i]][p];
            r[p] = tt[tuple_encode(tup, b)];
        }
        auto it = dn.index.find(r);
        if (it == dn.index.end()) throw error("clone subst: result not in clone (internal)");
        return it->second;
    }

    bool supports_all_arities() const override { return true; }

    std::optional<std::vector<SigOp>> signature() const override {
        std::vector<SigOp> s;
        for (const auto& o : gen_.ops) s.push_back({o.name, o.arity});
        return s;
    }

    std::optional<std::size_t> sig_elem(std::size_t i) const override {
        if (i >= sig_elems_.size()) return std::nullopt;
        return sig_elems_[i];
    }

    std::optional<Term> term_of(std::size_t arity, std::size_t elem) const override {
        const CloneData& d = clone(arity);
        if (elem >= d.terms.size()) return std::nullopt;
        return d.terms[elem];
    }

    std::string describe_op(std::size_t arity, std::size_t elem) const override {
        const CloneData& d = clone(arity);
        std::ostringstream os;
        os << d.terms[elem].show(*signature()) << " = [";
        const auto& tb = d.tables[elem];
        for (std::size_t p = 0; p < tb.size(); ++p) {
            if (p) os << ",";
            os << gen_.base.label(tb[p]);
        }
        os << "]";
        return os.str();
    }

    const GeneratingAlgebra& generating_algebra() const { return gen_; }

private:
    CloneData generate(std::size_t arity) const {
        CloneData d;
        const std::size_t b = gen_.base.size;
        const std::size_t pts = pow_sz(b, arity);
        auto add = [&](std::vector<std::size_t> table, Term term) {
            auto it = d.index.find(table);
            if (it != d.index.end()) return it->second;
            std::size_t idx = d.tables.size();
            if (idx + 1 > cap_)
                throw cap_exceeded("clone at arity " + std::to_string(arity) +
                                   " exceeds cap " + std::to_string(cap_) + " (reached " +
                                   std::to_string(idx + 1) + ")");
            d.index.emplace(table, idx);
            d.tables.push_back(std::move(table));
            d.terms.push_back(std::move(term));
            return idx;
        };
        // projections first, in coordinate order
        d.projections.resize(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            std::vector<std::size_t> table(pts);
            for (std::size_t p = 0; p < pts; ++p)
                table[p] = tuple_decode(p, arity, b)[i];
            d.projections[i] = add(std::move(table), Term::v(int(i)));
        }
        // close under the signature operations, pass by pass
        bool grew = true;
        while (grew) {
            grew = false;
            const std::size_t frozen = d.tables.size();
            for (std::size_t oi = 0; oi < gen_.ops.size(); ++oi) {
                const auto& o = gen_.ops[oi];
                const std::size_t k = o.arity;
                if (k > 0 && frozen == 0) continue;
                std::vector<std::size_t> sel(k, 0);
                do {
                    std::vector<std::size_t> table(pts);
                    std::vector<std::size_t> tup(k);
                    for (std::size_t p = 0; p < pts; ++p) {
                        for (std::size_t i = 0; i < k; ++i) tup[i] = d.tables[sel[i]][p];
                        table[p] = o.table[tuple_encode(tup, b)];
                    }
                    std::vector<Term> argterms(k);
                    for (std::size_t i = 0; i < k; ++i) argterms[i] = d.terms[sel[i]];
                    std::size_t before = d.tables.size();
                    add(std::move(table), Term::app(int(oi), std::move(argterms)));
                    if (d.tables.size() > before) grew = true;
                } while (next_tuple(sel, frozen));
            }
        }
        return d;
    }

    GeneratingAlgebra gen_;
    std::size_t cap_;
    std::vector<std::size_t> sig_elems_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, CloneData> memo_;
};

}  // namespace

Theory theory_from_clone(const GeneratingAlgebra& g, const AritySystem& s, std::size_t clone_cap,
                         std::string name) {
    auto backend = std::make_shared<CloneBackend>(g, clone_cap);
    // force represented arities now so caps surface at compile time
    for (std::size_t a : s.members) backend->clone(a);
    return Theory(std::move(name), s, backend);
}

// ---------------------------------------------------------------------------
// Presentation compiler: bounded saturation.
// ---------------------------------------------------------------------------

namespace {

struct TermTable {
    // hash-consed nodes: var >= 0 for leaves, else (op, args)
    struct Node {
        int var;
        int op;
        std::vector<std::size_t> args;
        std::size_t depth;
    };
    std::vector<Node> nodes;
    std::map<std::tuple<int, int, std::vector<std::size_t>>, std::size_t> index;

    std::optional<std::size_t> find(int var, int op, const std::vector<std::size_t>& args) const {
        auto it = index.find({var, op, args});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    std::size_t add(int var, int op, std::vector<std::size_t> args) {
        auto key = std::make_tuple(var, op, args);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t d = 0;
        for (std::size_t a : args) d = std::max(d, nodes[a].depth);
        if (var < 0) d += 1;
        nodes.push_back({var, op, std::move(args), d});
        index.emplace(std::move(key), nodes.size() - 1);
        return nodes.size() - 1;
    }

    Term to_term(std::size_t id) const {
        const Node& n = nodes[id];
        if (n.var >= 0) return Term::v(n.var);
        std::vector<Term> as;
        as.reserve(n.args.size());
        for (std::size_t a : n.args) as.push_back(to_term(a));
        return Term::app(n.op, as);
    }
};

struct Saturation {
    TermTable terms;
    std::vector<std::size_t> cls;        // term id -> class
    std::vector<std::size_t> class_rep;  // class -> term id (min depth, then min id)
    std::size_t n_classes = 0;
};

// all terms over x0..x{n-1} of depth <= bound
TermTable enumerate_terms(const Presentation& p, std::size_t n, std::size_t bound,
                          std::size_t cap) {
    TermTable t;
    for (std::size_t i = 0; i < n; ++i) t.add(int(i), -1, {});
    for (std::size_t d = 1; d <= bound; ++d) {
        const std::size_t frozen = t.nodes.size();
        for (std::size_t oi = 0; oi < p.ops.size(); ++oi) {
            const std::size_t k = p.ops[oi].arity;
            if (k == 0) {
                if (d == 1) t.add(-1, int(oi), {});
                continue;
            }
            if (frozen == 0) continue;
            std::vector<std::size_t> sel(k, 0);
            do {
                std::size_t dm = 0;
                for (std::size_t i = 0; i < k; ++i) dm = std::max(dm, t.nodes[sel[i]].depth);
                if (dm == d - 1) {
                    t.add(-1, int(oi), std::vector<std::size_t>(sel.begin(), sel.end()));
                    if (t.nodes.size() > cap)
                        throw cap_exceeded("presentation term enumeration exceeds cap " +
                                           std::to_string(cap));
                }
            } while (next_tuple(sel, frozen));
        }
    }
    return t;
}

// instantiate `t` substituting variables by the term ids in `sub`; lookup
// only, nullopt when the instance is outside the enumerated bound
std::optional<std::size_t> instantiate(const TermTable& table, const Term& t,
                                       const std::vector<std::size_t>& sub) {
    if (t.var >= 0) {
        if (std::size_t(t.var) >= sub.size()) return std::nullopt;
        return sub[t.var];
    }
    std::vector<std::size_t> args(t.args.size());
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        auto a = instantiate(table, t.args[i], sub);
        if (!a) return std::nullopt;
        args[i] = *a;
    }
    return table.find(-1, t.op, args);
}

Saturation saturate(const Presentation& p, std::size_t n, std::size_t bound, std::size_t cap) {
    Saturation s;
    s.terms = enumerate_terms(p, n, bound, cap);
    const std::size_t nt = s.terms.nodes.size();
    // union-find over term ids
    std::vector<std::size_t> parent(nt);
    for (std::size_t i = 0; i < nt; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    // seed: all equation instances that stay within the bound
    for (const auto& [lhs, rhs] : p.equations) {
        int mv = std::max(lhs.max_var(), rhs.max_var());
        std::size_t k = std::size_t(mv + 1);
        if (k > 0 && nt == 0) continue;
        std::vector<std::size_t> sub(k, 0);
        do {
            auto l = instantiate(s.terms, lhs, sub);
            auto r = instantiate(s.terms, rhs, sub);
            if (l && r) unite(*l, *r);
        } while (next_tuple(sub, nt));
    }
    // congruence fixpoint: equal ops applied to equivalent args are equivalent
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> canon;
        for (std::size_t i = 0; i < nt; ++i) {
            const auto& node = s.terms.nodes[i];
            if (node.var >= 0) continue;
            std::vector<std::size_t> key(node.args.size());
            for (std::size_t j = 0; j < node.args.size(); ++j) key[j] = find(node.args[j]);
            auto [it, inserted] = canon.try_emplace({node.op, std::move(key)}, i);
            if (!inserted && find(it->second) != find(i)) {
                unite(it->second, i);
                changed = true;
            }
        }
    }
    // classes numbered by least term id
    s.cls.assign(nt, std::size_t(-1));
    for (std::size_t i = 0; i < nt; ++i) {
        std::size_t r = find(i);
        if (s.cls[r] == std::size_t(-1)) {
            s.cls[r] = s.n_classes++;
            s.class_rep.push_back(r);
        }
        s.cls[i] = s.cls[r];
    }
    // representative: minimal depth, then least id
    for (std::size_t i = 0; i < nt; ++i) {
        std::size_t c = s.cls[i];
        if (s.terms.nodes[i].depth < s.terms.nodes[s.class_rep[c]].depth) s.class_rep[c] = i;
    }
    return s;
}

class PresentationBackend final : public TheoryBackend {
public:
    PresentationBackend(Presentation p, std::size_t bound, std::size_t cap)
        : pres_(std::move(p)), bound_(bound), cap_(cap) {}

    /// nullopt on success, NonConvergence otherwise
    std::optional<NonConvergence> converge(std::size_t arity) const {
        std::lock_guard<std::mutex> lock(mu_);
        return converge_locked(arity);
    }

    FinSet op(std::size_t arity) const override { return FinSet(sat(arity).n_classes); }

    std::vector<std::size_t> proj(std::size_t arity) const override {
        const Saturation& s = sat(arity);
        std::vector<std::size_t> p(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            auto id = s.terms.find(int(i), -1, {});
            if (!id) throw error("presentation: variable term missing");
            p[i] = s.cls[*id];
        }
        return p;
    }

    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const override {
        const Saturation& sm = sat(m);
        const Saturation& sn = sat(n);
        Term rep = sm.terms.to_term(sm.class_rep[t]);
        std::vector<std::size_t> sub(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) sub[i] = sn.class_rep[args[i]];
        auto inst = instantiate(sn.terms, rep, sub);
        if (!inst)
            throw error("presentation subst fell outside the saturation bound (internal)");
        return sn.cls[*inst];
    }

    bool supports_all_arities() const override { return true; }

    std::optional<std::vector<SigOp>> signature() const override { return pres_.ops; }

    std::optional<std::size_t> sig_elem(std::size_t i) const override {
        if (i >= pres_.ops.size()) return std::nullopt;
        const std::size_t k = pres_.ops[i].arity;
        const Saturation& s = sat(k);
        std::vector<Term> vars;
        for (std::size_t v = 0; v < k; ++v) vars.push_back(Term::v(int(v)));
        std::vector<std::size_t> ids(k);
        for (std::size_t v = 0; v < k; ++v) {
            auto id = s.terms.find(int(v), -1, {});
            if (!id) return std::nullopt;
            ids[v] = *id;
        }
        auto node = s.terms.find(-1, int(i), ids);
        if (!node) return std::nullopt;
        return s.cls[*node];
    }

    std::optional<Term> term_of(std::size_t arity, std::size_t elem) const override {
        const Saturation& s = sat(arity);
        if (elem >= s.n_classes) return std::nullopt;
        return s.terms.to_term(s.class_rep[elem]);
    }

    std::string describe_op(std::size_t arity, std::size_t elem) const override {
        auto t = term_of(arity, elem);
        return t ? t->show(pres_.ops) : "#" + std::to_string(elem);
    }

private:
    const Saturation& sat(std::size_t arity) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto nc = converge_locked(arity))
            throw error("presentation saturation did not converge at arity " +
                        std::to_string(arity) + " (classes " + std::to_string(nc->prev_classes) +
                        " -> " + std::to_string(nc->last_classes) + ")");
        return memo_.at(arity);
    }

    std::optional<NonConvergence> converge_locked(std::size_t arity) const {
        auto it = memo_.find(arity);
        if (it != memo_.end()) return std::nullopt;
        if (failed_.count(arity)) return failed_.at(arity);
        Saturation prev = saturate(pres_, arity, bound_ >= 1 ? bound_ - 1 : 0, cap_);
        Saturation last = saturate(pres_, arity, bound_, cap_);
        NonConvergence nc{arity, prev.n_classes, last.n_classes};
        if (prev.n_classes != last.n_classes || bound_ < 1) {
            failed_.emplace(arity, nc);
            return nc;
        }
        // representatives must leave room for one substitution inside the bound
        for (std::size_t c = 0; c < last.n_classes; ++c)
            if (last.terms.nodes[last.class_rep[c]].depth > bound_ / 2) {
                failed_.emplace(arity, nc);
                return nc;
            }
        memo_.emplace(arity, std::move(last));
        return std::nullopt;
    }

    Presentation pres_;
    std::size_t bound_;
    std::size_t cap_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, Saturation> memo_;
    mutable std::map<std::size_t, NonConvergence> failed_;
};

}  // namespace

std::variant<Theory, NonConvergence> theory_from_presentation(const Presentation& p,
                                                              const AritySystem& s,
                                                              std::size_t depth_bound,
                                                              std::size_t term_cap,
                                                              std::string name) {
    auto backend = std::make_shared<PresentationBackend>(p, depth_bound, term_cap);
    for (std::size_t a : s.members)
        if (auto nc = backend->converge(a)) return *nc;
    return Theory(std::move(name), s, backend);
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

ValidationReport validate_theory(const Theory& t) { return validate_theory(t, 3, 50'000'000); }

ValidationReport validate_theory(const Theory& t, std::size_t max_arity, std::size_t budget) {
    ValidationReport rep;
    std::vector<std::size_t> arities;
    for (std::size_t a : t.represented())
        if (a <= max_arity) arities.push_back(a);
    if (!t.arities().contains(1)) {
        rep.add("arity system lacks the unit arity 1");
        return rep;
    }

    std::size_t spent = 0;
    auto charge = [&](std::size_t units) {
        spent += units;
        return spent <= budget;
    };

    // shapes and standardness
    for (std::size_t n : arities) {
        auto p = t.proj(n);
        FinSet opn = t.op(n);
        if (p.size() != n) {
            rep.add("proj(" + std::to_string(n) + ") has " + std::to_string(p.size()) +
                    " entries, expected " + std::to_string(n));
            return rep;
        }
        for (std::size_t e : p)
            if (e >= opn.size) {
                rep.add("proj(" + std::to_string(n) + ") entry out of range");
                return rep;
            }
    }
    {
        auto p1 = t.proj(1);
        // standardness: [I,C] = C with identity counit; with homs stored as
        // powers this is exactly "proj(1) is the one-element identity list",
        // which the unit laws below pin down
        if (p1.size() != 1) rep.add("proj(1) is not a singleton");
    }

    // projection law == the cotensor bijection in normal form:
    // subst(proj(m)[i]; f_1..f_m) = f_i
    bool complete = true;
    for (std::size_t m : arities) {
        auto pm = t.proj(m);
        for (std::size_t n : arities) {
            const std::size_t opn = t.op(n).size;
            const std::size_t ntup = pow_sz(opn, m);
            if (!charge(ntup * m)) {
                complete = false;
                break;
            }
            std::vector<std::size_t> args(m);
            for (std::size_t enc = 0; enc < ntup; ++enc) {
                args = tuple_decode(enc, m, opn);
                for (std::size_t i = 0; i < m; ++i)
                    if (t.subst(m, pm[i], n, args) != args[i]) {
                        rep.add("cotensor bijection fails: proj(" + std::to_string(m) + ")[" +
                                std::to_string(i) + "] o args != args[" + std::to_string(i) +
                                "] at arity " + std::to_string(n) + ", args #" +
                                std::to_string(enc));
                        if (rep.violations.size() > 8) return rep;
                    }
            }
        }
    }

    // right unit: t o proj(n) = t
    for (std::size_t n : arities) {
        auto pn = t.proj(n);
        const std::size_t opn = t.op(n).size;
        if (!charge(opn)) {
            complete = false;
            break;
        }
        for (std::size_t e = 0; e < opn; ++e)
            if (t.subst(n, e, n, pn) != e) {
                rep.add("right unit fails at arity " + std::to_string(n) + ", op #" +
                        std::to_string(e));
                if (rep.violations.size() > 8) return rep;
            }
    }

    // componentwise associativity: since homs are literal powers, this is
    // equivalent to associativity of the underlying category
    for (std::size_t c : arities) {
        const std::size_t opc = t.op(c).size;
        for (std::size_t b : arities) {
            const std::size_t opb = t.op(b).size;
            const std::size_t ng = pow_sz(opb, c);
            for (std::size_t a : arities) {
                const std::size_t opa = t.op(a).size;
                const std::size_t nf = pow_sz(opa, b);
                if (!charge(opc * ng * nf)) {
                    complete = false;
                    break;
                }
                for (std::size_t genc = 0; genc < ng; ++genc) {
                    auto g = tuple_decode(genc, c, opb);
                    for (std::size_t fenc = 0; fenc < nf; ++fenc) {
                        auto f = tuple_decode(fenc, b, opa);
                        std::vector<std::size_t> gf(c);
                        for (std::size_t j = 0; j < c; ++j) gf[j] = t.subst(b, g[j], a, f);
                        for (std::size_t e = 0; e < opc; ++e) {
                            std::size_t lhs = t.subst(b, t.subst(c, e, b, g), a, f);
                            std::size_t rhs = t.subst(c, e, a, gf);
                            if (lhs != rhs) {
                                rep.add("associativity fails: op #" + std::to_string(e) +
                                        " at arities (" + std::to_string(a) + "," +
                                        std::to_string(b) + "," + std::to_string(c) + "), g #" +
                                        std::to_string(genc) + ", f #" + std::to_string(fenc));
                                if (rep.violations.size() > 8) return rep;
                            }
                        }
                    }
                }
            }
        }
    }

    // the generic cotensor condition on a materialized category, when small
    if (rep.ok()) {
        try {
            CategoryPtr tc = theory_category(t, arities, budget > spent ? budget - spent : 0);
            auto unit_pos = std::find(arities.begin(), arities.end(), std::size_t(1));
            if (unit_pos != arities.end()) {
                std::size_t unit_idx = std::size_t(unit_pos - arities.begin());
                for (std::size_t ai = 0; ai < arities.size(); ++ai) {
                    std::vector<std::size_t> counit;
                    for (std::size_t e : t.proj(arities[ai]))
                        counit.push_back(t.hom_encode(arities[ai], std::vector<std::size_t>{e}));
                    std::string w;
                    if (!check_cotensor(*tc, arities[ai], unit_idx, ai, counit, &w))
                        rep.add("cotensor condition fails at arity " +
                                std::to_string(arities[ai]) + ": " + w);
                }
            }
        } catch (const cap_exceeded&) {
            complete = false;
        }
    }

    rep.complete = complete;
    if (!complete)
        rep.coverage_note = "validation truncated by budget (arities<=" +
                            std::to_string(max_arity) + ")";
    return rep;
}

CategoryPtr theory_category(const Theory& t, const std::vector<std::size_t>& arities,
                            std::size_t budget) {
    std::size_t cost = 0;
    for (std::size_t a : arities)
        for (std::size_t b : arities)
            for (std::size_t c : arities) {
                cost += t.hom_size(b, c) * t.hom_size(a, b);
                if (cost > budget) throw cap_exceeded("theory_category: budget exceeded");
            }
    auto cat = std::make_shared<EnrichedCategory>();
    const std::size_t n = arities.size();
    cat->objects.resize(n);
    for (std::size_t i = 0; i < n; ++i) cat->objects[i] = std::to_string(arities[i]);
    cat->hom.assign(n, std::vector<FinSet>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            cat->hom[a][b] = FinSet(t.hom_size(arities[a], arities[b]));
    cat->comp.assign(n, std::vector<std::vector<std::vector<std::size_t>>>(
                            n, std::vector<std::vector<std::size_t>>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t ng = cat->hom[b][c].size;
                const std::size_t nf = cat->hom[a][b].size;
                std::vector<std::size_t> table(ng * nf);
                for (std::size_t g = 0; g < ng; ++g)
                    for (std::size_t f = 0; f < nf; ++f)
                        table[g * nf + f] =
                            t.compose_hom(arities[a], arities[b], arities[c], g, f);
                cat->comp[a][b][c] = std::move(table);
            }
    cat->id.resize(n);
    for (std::size_t a = 0; a < n; ++a) cat->id[a] = t.identity_hom(arities[a]);
    return cat;
}

CategoryPtr arity_category_op(const std::vector<std::size_t>& arities) {
    auto c = std::make_shared<EnrichedCategory>();
    const std::size_t n = arities.size();
    c->objects.resize(n);
    for (std::size_t i = 0; i < n; ++i) c->objects[i] = std::to_string(arities[i]);
    c->hom.assign(n, std::vector<FinSet>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            c->hom[a][b] = hom_set(FinSet(arities[b]), FinSet(arities[a]));
    c->comp.assign(n, std::vector<std::vector<std::vector<std::size_t>>>(
                          n, std::vector<std::vector<std::size_t>>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                const std::size_t ng = c->hom[b][cc].size;  // functions c -> b
                const std::size_t nf = c->hom[a][b].size;   // functions b -> a
                std::vector<std::size_t> table(ng * nf);
                for (std::size_t g = 0; g < ng; ++g) {
                    auto gt = fn_decode(g, arities[cc], arities[b]);
                    for (std::size_t f = 0; f < nf; ++f) {
                        auto ft = fn_decode(f, arities[b], arities[a]);
                        std::vector<std::size_t> r(arities[cc]);
                        for (std::size_t i = 0; i < arities[cc]; ++i) r[i] = ft[gt[i]];
                        table[g * nf + f] = fn_encode(r, arities[a]);
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

EnrichedFunctor theory_tau(const Theory& t, const std::vector<std::size_t>& arities,
                           CategoryPtr jop, CategoryPtr tc) {
    EnrichedFunctor f;
    f.dom = jop;
    f.cod = tc;
    const std::size_t n = arities.size();
    f.ob_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.ob_map[i] = i;
    f.hom_map.assign(n, {});
    for (std::size_t a = 0; a < n; ++a) {
        f.hom_map[a].resize(n);
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t nh = jop->hom[a][b].size;  // functions b -> a
            f.hom_map[a][b].resize(nh);
            auto pa = t.proj(arities[a]);
            for (std::size_t u = 0; u < nh; ++u) {
                auto ut = fn_decode(u, arities[b], arities[a]);
                std::vector<std::size_t> tup(arities[b]);
                for (std::size_t i = 0; i < arities[b]; ++i) tup[i] = pa[ut[i]];
                f.hom_map[a][b][u] = t.hom_encode(arities[a], tup);
            }
        }
    }
    return f;
}

bool check_theory_morphism(const TheoryMorphism& m, std::string* witness) {
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    const auto& dom = m.dom;
    const auto& cod = m.cod;
    if (dom.arities().kind != cod.arities().kind ||
        dom.arities().members != cod.arities().members)
        return fail("arity systems differ");
    const auto& arities = dom.represented();
    if (m.op_map.size() != arities.size()) return fail("op_map arity count mismatch");
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        std::size_t n = arities[ai];
        if (m.op_map[ai].size() != dom.op(n).size)
            return fail("op_map size mismatch at arity " + std::to_string(n));
        for (std::size_t e : m.op_map[ai])
            if (e >= cod.op(n).size) return fail("op_map value out of range");
    }
    // proj to proj, elementwise
    for (std::size_t ai = 0; ai < arities.size(); ++ai) {
        std::size_t n = arities[ai];
        auto pd = dom.proj(n);
        auto pc = cod.proj(n);
        for (std::size_t i = 0; i < n; ++i)
            if (m.op_map[ai][pd[i]] != pc[i])
                return fail("projection not preserved at arity " + std::to_string(n) +
                            " coordinate " + std::to_string(i));
    }
    // substitution preserved
    for (std::size_t mi = 0; mi < arities.size(); ++mi) {
        std::size_t mm = arities[mi];
        for (std::size_t ni = 0; ni < arities.size(); ++ni) {
            std::size_t nn = arities[ni];
            const std::size_t opn = dom.op(nn).size;
            const std::size_t ntup = pow_sz(opn, mm);
            for (std::size_t tt = 0; tt < dom.op(mm).size; ++tt)
                for (std::size_t enc = 0; enc < ntup; ++enc) {
                    auto args = tuple_decode(enc, mm, opn);
                    std::vector<std::size_t> margs(mm);
                    for (std::size_t i = 0; i < mm; ++i) margs[i] = m.op_map[ni][args[i]];
                    std::size_t lhs = m.op_map[ni][dom.subst(mm, tt, nn, args)];
                    std::size_t rhs = cod.subst(mm, m.op_map[mi][tt], nn, margs);
                    if (lhs != rhs)
                        return fail("substitution not preserved at arities (" +
                                    std::to_string(mm) + "," + std::to_string(nn) + "), op #" +
                                    std::to_string(tt) + ", args #" + std::to_string(enc));
                }
        }
    }
    return true;
}

TheoryMorphism identity_morphism(const Theory& t) {
    TheoryMorphism m;
    m.dom = t;
    m.cod = t;
    for (std::size_t n : t.represented()) {
        std::vector<std::size_t> id(t.op(n).size);
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        m.op_map.push_back(std::move(id));
    }
    return m;
}

TheoryMorphism initial_morphism(const Theory& t) {
    TheoryMorphism m;
    m.dom = initial_theory(t.arities());
    m.cod = t;
    for (std::size_t n : t.represented()) {
        m.op_map.push_back(t.proj(n));
    }
    return m;
}

}  // namespace alth
