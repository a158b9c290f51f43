#ifndef ALTH_THEORY_HPP
#define ALTH_THEORY_HPP

#include <variant>

#include "alth/arity.hpp"

namespace alth {

/// A signature operation symbol.
struct SigOp {
    std::string name;
    std::size_t arity = 0;
};

/// First-order term over a signature, variables x0..x{k-1}.
struct Term {
    int var = -1;  // >= 0 : variable index (leaf)
    int op = -1;   // >= 0 : signature op index (node)
    std::vector<Term> args;

    static Term v(int i);
    static Term app(int op_index, std::vector<Term> as);

    std::size_t depth() const;
    int max_var() const;
    bool operator==(const Term& o) const;
    std::string show(const std::vector<SigOp>& sig) const;
};

// ---------------------------------------------------------------------------
// Theories.
//
// hom(n,m) is stored as the literal m-th power of hom(n,1), so the cotensor
// bijection is the identity and every compiled theory is normal by
// construction.  A backend supplies the abstract operation sets op(n) =
// hom(n,1), the designated projections, and substitution; categorical
// composition is substitution componentwise.
// ---------------------------------------------------------------------------

class TheoryBackend {
public:
    virtual ~TheoryBackend() = default;

    virtual FinSet op(std::size_t arity) const = 0;
    virtual std::vector<std::size_t> proj(std::size_t arity) const = 0;
    /// t in op(m) substituted with m elements of op(n); yields an op(n) element
    virtual std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                              std::span<const std::size_t> args) const = 0;

    /// fin_card backends that can produce op(n) for every n (not just the
    /// window) enable the exact induced-monad evaluator
    virtual bool supports_all_arities() const { return false; }

    /// generating signature, when the theory was compiled from one
    virtual std::optional<std::vector<SigOp>> signature() const { return std::nullopt; }
    /// the element of op(sig.arity) the signature op evaluates to
    virtual std::optional<std::size_t> sig_elem(std::size_t sig_index) const {
        (void)sig_index;
        return std::nullopt;
    }
    /// a term over the signature evaluating to the given element
    virtual std::optional<Term> term_of(std::size_t arity, std::size_t elem) const {
        (void)arity;
        (void)elem;
        return std::nullopt;
    }

    virtual std::string describe_op(std::size_t arity, std::size_t elem) const {
        (void)arity;
        return "#" + std::to_string(elem);
    }
};

class Theory {
public:
    Theory() = default;
    Theory(std::string name, AritySystem arities, std::shared_ptr<const TheoryBackend> backend);

    const std::string& name() const { return name_; }
    const AritySystem& arities() const { return arities_; }
    const std::vector<std::size_t>& represented() const { return arities_.members; }
    const TheoryBackend& backend() const { return *backend_; }

    FinSet op(std::size_t n) const { return backend_->op(n); }
    std::vector<std::size_t> proj(std::size_t n) const { return backend_->proj(n); }
    std::size_t subst(std::size_t m, std::size_t t, std::size_t n,
                      std::span<const std::size_t> args) const {
        return backend_->subst(m, t, n, args);
    }

    bool supports_all_arities() const { return backend_->supports_all_arities(); }
    std::optional<std::vector<SigOp>> signature() const { return backend_->signature(); }
    std::string describe_op(std::size_t n, std::size_t elem) const {
        return backend_->describe_op(n, elem);
    }

    // hom(n,m) = op(n)^m under the canonical tuple encoding
    std::size_t hom_size(std::size_t n, std::size_t m) const;
    std::size_t hom_encode(std::size_t n, std::span<const std::size_t> tuple) const;
    std::vector<std::size_t> hom_decode(std::size_t n, std::size_t m, std::size_t h) const;
    std::size_t identity_hom(std::size_t n) const;
    /// composition hom(b,c) x hom(a,b) -> hom(a,c), componentwise substitution
    std::size_t compose_hom(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                            std::size_t f) const;

    std::size_t eval_term(std::size_t n, const Term& t) const;

private:
    std::string name_;
    AritySystem arities_;
    std::shared_ptr<const TheoryBackend> backend_;
};

/// gamma^K_J: the J components (elements of hom(J*K, K)) exhibiting J*K as
/// the cotensor [J,K]; under the row-major pairing these are projection
/// shuffles, derived here rather than stored.
std::vector<std::size_t> theory_cotensor_counit(const Theory& t, std::size_t j, std::size_t k);

// ---------------------------------------------------------------------------
// Compilers.
// ---------------------------------------------------------------------------

struct GeneratingAlgebra {
    struct Op {
        std::string name;
        std::size_t arity = 0;
        std::vector<std::size_t> table;  // base^arity entries, row-major
    };
    FinSet base;
    std::vector<Op> ops;
};

/// Clone generation: op(n) is the closure of the n projections under the
/// signature operations, elements canonicalized as tables base^n -> base.
Theory theory_from_clone(const GeneratingAlgebra& g, const AritySystem& s,
                         std::size_t clone_cap = 200000, std::string name = "clone");

struct Presentation {
    std::vector<SigOp> ops;
    std::vector<std::pair<Term, Term>> equations;
};

struct NonConvergence {
    std::size_t arity = 0;
    std::size_t prev_classes = 0;
    std::size_t last_classes = 0;
};

/// Depth-bounded term enumeration plus congruence closure by fixpoint.
/// Returns NonConvergence when classes have not stabilized at the bound or
/// class representatives are too deep to close under substitution.
std::variant<Theory, NonConvergence> theory_from_presentation(const Presentation& p,
                                                              const AritySystem& s,
                                                              std::size_t depth_bound,
                                                              std::size_t term_cap = 100000,
                                                              std::string name = "presented");

Theory initial_theory(const AritySystem& s);

// ---------------------------------------------------------------------------
// Validation and morphisms.
// ---------------------------------------------------------------------------

/// Checks, over represented arities up to max_arity and within budget:
/// standardness of proj(1), the projection laws (the cotensor bijection in
/// normal form), right unit, componentwise associativity, and the generic
/// cotensor condition on a materialized category when small enough.
ValidationReport validate_theory(const Theory& t);
ValidationReport validate_theory(const Theory& t, std::size_t max_arity, std::size_t budget);

/// Materializes the underlying enriched category on the given arities
/// (throws cap_exceeded when the tables would exceed the budget).
CategoryPtr theory_category(const Theory& t, const std::vector<std::size_t>& arities,
                            std::size_t budget = 20'000'000);

/// The opposite of the arity category on the given arities.
CategoryPtr arity_category_op(const std::vector<std::size_t>& arities);

/// tau : J^op -> T as an EnrichedFunctor between materialized categories.
EnrichedFunctor theory_tau(const Theory& t, const std::vector<std::size_t>& arities,
                           CategoryPtr jop, CategoryPtr tc);

struct TheoryMorphism {
    Theory dom;
    Theory cod;
    // per represented arity of dom: op_dom(n) -> op_cod(n)
    std::vector<std::vector<std::size_t>> op_map;
};

/// Identity on objects, proj to proj, substitution preserved.
bool check_theory_morphism(const TheoryMorphism& m, std::string* witness = nullptr);

TheoryMorphism identity_morphism(const Theory& t);
/// The unique morphism from initial_theory(t.arities()) into t.
TheoryMorphism initial_morphism(const Theory& t);

}  // namespace alth

#endif
