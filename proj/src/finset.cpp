#include "alth/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace alth {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

FinSet::FinSet(std::size_t n, std::vector<std::string> ls) : size(n), labels(std::move(ls)) {
    if (!labels.empty()) {
        if (labels.size() != size) throw error("FinSet: label count != size");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw error("FinSet: labels not pairwise distinct");
    }
}

FinSet FinSet::labeled(std::vector<std::string> ls) {
    std::size_t n = ls.size();
    return FinSet(n, std::move(ls));
}

std::string FinSet::label(std::size_t i) const {
    if (i < labels.size()) return labels[i];
    return std::to_string(i);
}

std::optional<std::size_t> FinSet::index_of_label(const std::string& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
    return std::nullopt;
}

bool same_card(const FinSet& a, const FinSet& b) { return a.size == b.size; }

FinFn::FinFn(FinSet d, FinSet c, std::vector<std::size_t> t)
    : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
    if (table.size() != dom.size) throw error("FinFn: table length != |dom|");
    for (std::size_t v : table)
        if (v >= cod.size) throw error("FinFn: table entry out of codomain");
}

FinFn FinFn::identity(const FinSet& x) {
    std::vector<std::size_t> t(x.size);
    std::iota(t.begin(), t.end(), 0);
    return FinFn(x, x, std::move(t));
}

FinFn FinFn::constant(const FinSet& d, const FinSet& c, std::size_t v) {
    return FinFn(d, c, std::vector<std::size_t>(d.size, v));
}

bool FinFn::is_injective() const {
    std::vector<bool> hit(cod.size, false);
    for (std::size_t v : table) {
        if (hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

bool FinFn::is_surjective() const {
    std::vector<bool> hit(cod.size, false);
    for (std::size_t v : table) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool FinFn::is_bijective() const { return dom.size == cod.size && is_injective(); }

FinFn compose(const FinFn& g, const FinFn& f) {
    if (!same_card(f.cod, g.dom)) throw error("compose: cod(f) != dom(g)");
    std::vector<std::size_t> t(f.dom.size);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
    return FinFn(f.dom, g.cod, std::move(t));
}

bool same_fn(const FinFn& f, const FinFn& g) {
    return same_card(f.dom, g.dom) && same_card(f.cod, g.cod) && f.table == g.table;
}

std::size_t pow_sz(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > (std::size_t(-1) / (base == 0 ? 1 : base)))
            throw cap_exceeded("pow_sz: overflow computing " + std::to_string(base) + "^" +
                               std::to_string(exp));
        r *= base;
    }
    return r;
}

std::size_t tuple_encode(std::span<const std::size_t> xs, std::size_t base) {
    std::size_t idx = 0;
    for (std::size_t x : xs) {
        if (x >= base) throw error("tuple_encode: coordinate out of range");
        idx = idx * base + x;
    }
    return idx;
}

std::vector<std::size_t> tuple_decode(std::size_t idx, std::size_t len, std::size_t base) {
    std::vector<std::size_t> xs(len, 0);
    for (std::size_t i = len; i-- > 0;) {
        xs[i] = idx % base;
        idx /= base;
    }
    return xs;
}

ProductSet product(const FinSet& x, const FinSet& y) {
    ProductSet p;
    p.set = FinSet(x.size * y.size);
    p.xsize = x.size;
    p.ysize = y.size;
    return p;
}

FinSet hom_set(const FinSet& x, const FinSet& y) { return FinSet(pow_sz(y.size, x.size)); }

std::size_t fn_encode(std::span<const std::size_t> table, std::size_t cod_size) {
    return tuple_encode(table, cod_size);
}

std::vector<std::size_t> fn_decode(std::size_t idx, std::size_t dom_size, std::size_t cod_size) {
    return tuple_decode(idx, dom_size, cod_size);
}

FinFn hom_element(const FinSet& x, const FinSet& y, std::size_t idx) {
    return FinFn(x, y, fn_decode(idx, x.size, y.size));
}

Quotient Quotient::discrete(const FinSet& x) {
    Quotient q;
    q.source = x;
    q.classes.resize(x.size);
    for (std::size_t i = 0; i < x.size; ++i) q.classes[i] = {i};
    q.proj = FinFn::identity(x);
    q.proj.cod = FinSet(x.size);
    return q;
}

namespace {

// plain union-find with path halving and union by size; scratch state is
// call-local per the concurrency contract
struct UnionFind {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::size_t find(std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

Quotient quotient_from_uf(const FinSet& source, UnionFind& uf) {
    const std::size_t n = source.size;
    std::vector<std::size_t> cls(n, std::size_t(-1));
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = uf.find(i);
        if (cls[r] == std::size_t(-1)) {
            cls[r] = classes.size();
            classes.emplace_back();
        }
        cls[i] = cls[r];
        classes[cls[r]].push_back(i);
    }
    Quotient q;
    q.source = source;
    q.classes = std::move(classes);
    q.proj = FinFn(source, FinSet(q.classes.size()), std::move(cls));
    return q;
}

}  // namespace

Quotient quotient_by_pairs(const FinSet& source,
                           std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    UnionFind uf(source.size);
    for (auto [a, b] : pairs) {
        if (a >= source.size || b >= source.size)
            throw error("quotient_by_pairs: element out of range");
        uf.unite(a, b);
    }
    return quotient_from_uf(source, uf);
}

Quotient coequalizer(const FinFn& f, const FinFn& g) {
    if (!same_card(f.dom, g.dom) || !same_card(f.cod, g.cod))
        throw error("coequalizer: f,g are not a parallel pair");
    UnionFind uf(f.cod.size);
    for (std::size_t x = 0; x < f.dom.size; ++x) uf.unite(f.table[x], g.table[x]);
    return quotient_from_uf(f.cod, uf);
}

}  // namespace alth
