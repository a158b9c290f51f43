#ifndef ALTH_FINSET_HPP
#define ALTH_FINSET_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alth {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_exceeded : error {
    using error::error;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// Outcome of a check that may be undecidable under truncation.
struct CheckResult {
    Verdict verdict = Verdict::fail;
    std::string note;

    bool passed() const { return verdict == Verdict::pass; }
};

/// A finite set with elements canonically indexed 0..size-1.
/// Labels are display decoration only; when present they are pairwise
/// distinct and labels.size() == size.
struct FinSet {
    std::size_t size = 0;
    std::vector<std::string> labels;

    FinSet() = default;
    explicit FinSet(std::size_t n) : size(n) {}
    FinSet(std::size_t n, std::vector<std::string> ls);

    static FinSet labeled(std::vector<std::string> ls);

    std::string label(std::size_t i) const;
    std::optional<std::size_t> index_of_label(const std::string& l) const;
};

bool same_card(const FinSet& a, const FinSet& b);

/// A total function between finite sets, tabulated on the domain.
struct FinFn {
    FinSet dom;
    FinSet cod;
    std::vector<std::size_t> table;

    FinFn() = default;
    FinFn(FinSet d, FinSet c, std::vector<std::size_t> t);

    static FinFn identity(const FinSet& x);
    static FinFn constant(const FinSet& d, const FinSet& c, std::size_t v);

    std::size_t operator()(std::size_t i) const { return table[i]; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const;
};

/// g after f.
FinFn compose(const FinFn& g, const FinFn& f);

bool same_fn(const FinFn& f, const FinFn& g);

// ---------------------------------------------------------------------------
// Canonical encodings.
//
// Tuples (x_0,...,x_{n-1}) over a base of size b are encoded with x_0 most
// significant: index = sum x_i * b^(n-1-i).  Functions X -> Y are identified
// with their tables and enumerated lexicographically under the same scheme,
// so hom-set indices are reproducible bit for bit.  The binary product uses
// the row-major pairing (i,j) |-> i*|Y|+j, the n=2 case of the tuple code.
// ---------------------------------------------------------------------------

std::size_t pow_sz(std::size_t base, std::size_t exp);

std::size_t tuple_encode(std::span<const std::size_t> xs, std::size_t base);
std::vector<std::size_t> tuple_decode(std::size_t idx, std::size_t len, std::size_t base);

struct ProductSet {
    FinSet set;
    std::size_t xsize = 0;
    std::size_t ysize = 0;

    std::size_t pair(std::size_t i, std::size_t j) const { return i * ysize + j; }
    std::pair<std::size_t, std::size_t> unpair(std::size_t k) const {
        return {k / ysize, k % ysize};
    }
};

ProductSet product(const FinSet& x, const FinSet& y);

/// The set of all functions X -> Y, size |Y|^|X|.
FinSet hom_set(const FinSet& x, const FinSet& y);

std::size_t fn_encode(std::span<const std::size_t> table, std::size_t cod_size);
std::vector<std::size_t> fn_decode(std::size_t idx, std::size_t dom_size, std::size_t cod_size);

/// The idx-th element of hom_set(x,y) as a FinFn.
FinFn hom_element(const FinSet& x, const FinSet& y, std::size_t idx);

// ---------------------------------------------------------------------------
// Quotients.  Class representatives are least-index elements and classes are
// numbered in order of their least element, so output is deterministic.
// ---------------------------------------------------------------------------

struct Quotient {
    FinSet source;
    std::vector<std::vector<std::size_t>> classes;  // each sorted ascending
    FinFn proj;                                     // source -> class set

    static Quotient discrete(const FinSet& x);

    std::size_t cls(std::size_t i) const { return proj.table[i]; }
};

/// Quotient of `source` by the equivalence generated by the given pairs.
Quotient quotient_by_pairs(const FinSet& source,
                           std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// Coequalizer of a parallel pair f,g : X -> Y, as the quotient of Y by the
/// equivalence generated by f(x) ~ g(x).
Quotient coequalizer(const FinFn& f, const FinFn& g);

}  // namespace alth

#endif
