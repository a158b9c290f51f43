#ifndef ALTH_MONAD_HPP
#define ALTH_MONAD_HPP

#include <map>

#include "alth/algebra.hpp"

namespace alth {

/// Pointwise monad evaluator.  T(V), eta_V and mu_V are computed per object;
/// implementations memoize per carrier size behind a lock.
class MonadImpl {
public:
    virtual ~MonadImpl() = default;

    virtual FinSet value(const FinSet& v) const = 0;
    virtual FinFn map(const FinFn& f) const = 0;
    virtual FinFn unit(const FinSet& v) const = 0;
    virtual FinFn mult(const FinSet& v) const = 0;

    /// Kleisli extension mu_n . T(g) : T(m) -> T(n) for g : m -> T(n).  The
    /// default materializes the composite; theory-backed evaluators override
    /// it with the pointwise substitution route (the two agree by
    /// substitution associativity, asserted in the test suite).
    virtual FinFn kleisli_extend(std::size_t n, const FinFn& g) const {
        FinFn tg = map(g);           // T(m) -> T(T(n))
        FinFn mu = mult(FinSet(n));  // T(T(n)) -> T(n)
        return compose(mu, tg);
    }

    /// coend insertion of (f : J -> V, t in op(J)) for theory-induced monads
    virtual std::optional<std::size_t> free_insert(const FinSet& v, std::size_t j,
                                                   std::span<const std::size_t> f,
                                                   std::size_t t) const {
        (void)v;
        (void)j;
        (void)f;
        (void)t;
        return std::nullopt;
    }
    /// canonical representative (J, f, t) of an element of T(V)
    virtual std::optional<std::tuple<std::size_t, std::vector<std::size_t>, std::size_t>>
    free_decode(const FinSet& v, std::size_t elem) const {
        (void)v;
        (void)elem;
        return std::nullopt;
    }

    virtual const Theory* source_theory() const { return nullptr; }
};

struct Monad {
    enum class Provenance { evaluator, tabled, induced };

    std::string name;
    AritySystem arities;
    Provenance provenance = Provenance::evaluator;
    std::shared_ptr<const MonadImpl> impl;

    FinSet value(const FinSet& v) const { return impl->value(v); }
    FinFn map(const FinFn& f) const { return impl->map(f); }
    FinFn unit(const FinSet& v) const { return impl->unit(v); }
    FinFn mult(const FinSet& v) const { return impl->mult(v); }

    Endofunctor endofunctor() const;
};

Monad identity_monad(const AritySystem& s);

/// V |-> V x M for a monoid given by its multiplication table (row-major
/// (a,b) |-> a*|M|+b) and unit; requires the one-object arity system.
Monad writer_monad(const AritySystem& s, const FinSet& monoid,
                   const std::vector<std::size_t>& mult_table, std::size_t unit_elem,
                   std::string name = "writer");

/// The free-algebra monad of a theory.  Theories whose backend computes
/// op(n) for every n get the exact evaluator T(V) = op(|V|); finite-kind
/// systems get the exact finite coend evaluator.  For fin_card theories each
/// evaluation at |V| < crosscheck_window is cross-checked against the
/// truncated-coend route (the two must be in canonical bijection).
Monad induced_monad(const Theory& t);
Monad induced_monad(const Theory& t, std::size_t crosscheck_window);

/// Explicit evaluation of the truncated-coend route together with the
/// canonical comparison onto the exact evaluator; used by the cross-check
/// and by the free-algebra acceptance tests.
struct FreeAlgebraComparison {
    LanResult lan;
    FinSet exact;
    bool bijective = false;
    std::string note;
};
FreeAlgebraComparison compare_free_algebra_routes(const Theory& t, const FinSet& v,
                                                  std::size_t window);

/// A window-tabled monad (negative controls and user experiments); evaluating
/// outside the window throws.
Monad tabled_monad(std::string name, const AritySystem& s, const Monad& from,
                   std::vector<std::size_t> sizes);

/// Mutable view used to corrupt tabled monads in tests.
struct TabledData {
    std::vector<std::size_t> sizes;
    std::map<std::size_t, std::size_t> tsize;                      // |T(V)| per size
    std::map<std::size_t, std::vector<std::size_t>> unit, mult;    // tables per size
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<std::size_t>> maps;
};
Monad monad_from_tables(std::string name, const AritySystem& s, TabledData data);
TabledData materialize_monad(const Monad& m, std::vector<std::size_t> sizes);

struct MonadReport {
    std::vector<std::string> violations;
    std::size_t squares_checked = 0;
    std::vector<std::string> skipped;

    bool ok() const { return violations.empty(); }
};

/// Checks functoriality, eta/mu naturality, unit laws and associativity on
/// every object of the window; squares whose intermediate object exceeds
/// `assoc_cap` are skipped (listed in the report), everything else is
/// exhaustive.
MonadReport validate_monad(const Monad& m, const std::vector<std::size_t>& window_sizes,
                           std::size_t assoc_cap = 64);

/// J-ary test: xi iso at every window object (lan window for fin_card
/// defaults to max size + 1).
CheckResult check_jary(const Monad& m, const std::vector<std::size_t>& window_sizes);
CheckResult check_jary(const Monad& m, const std::vector<std::size_t>& window_sizes,
                       std::size_t lan_window);

/// The Kleisli theory t(T) = J_T^op: op(n) = T(n), projections eta, and
/// substitution mu_n . T(g) . t.
Theory kleisli_theory(const Monad& m);

struct TheoryRoundtrip {
    bool ok = false;
    std::string note;
    Theory kleisli;
    Monad monad;
    TheoryMorphism iso;  // T -> kleisli(induced(T)), bijective per arity
};

/// t(m(T)) ~ T, realized by the coend insertion at (identity, t).
TheoryRoundtrip roundtrip_theory(const Theory& t);

struct MonadRoundtrip {
    Verdict verdict = Verdict::fail;
    std::string note;
    std::vector<std::size_t> witness_sizes;  // |T(V)| per window object
};

/// m(t(M)) ~ M on the window: the xi comparison from the Kleisli theory's
/// operation functor back to M, bijective and natural.
MonadRoundtrip roundtrip_monad(const Monad& m, const std::vector<std::size_t>& window_sizes);
MonadRoundtrip roundtrip_monad(const Monad& m, const std::vector<std::size_t>& window_sizes,
                               std::size_t lan_window);

struct EmAlgebra {
    FinSet carrier;
    FinFn structure;  // a : T(X) -> X
};

std::vector<EmAlgebra> em_algebras(const Monad& m, std::size_t max_carrier,
                                   std::size_t cap = 2'000'000);

std::vector<FinFn> em_homs(const Monad& m, const EmAlgebra& x, const EmAlgebra& y);

struct EmAlgComparison {
    bool ok = false;
    std::string note;
    std::size_t count = 0;  // objects on each side
};

/// The explicit bijection between Eilenberg-Moore algebras of the induced
/// monad and normal T-algebras, with matching carriers and hom counts.
EmAlgComparison check_em_equals_alg(const Theory& t, std::size_t max_carrier);

}  // namespace alth

#endif
