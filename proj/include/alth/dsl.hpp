#ifndef ALTH_DSL_HPP
#define ALTH_DSL_HPP

#include <map>

#include "alth/algebra.hpp"
#include "alth/gallery.hpp"

namespace alth {

struct parse_error : error {
    parse_error(std::size_t line, std::size_t col, const std::string& what)
        : error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line),
          col(col) {}
    std::size_t line;
    std::size_t col;
};

// ---------------------------------------------------------------------------
// Abstract syntax.  The grammar is line-oriented with brace blocks:
//
//   arities <Name> = {n,...} | fincard(window=N)
//   theory <Name> on <Arities> = clone { base = {labels}; op <name>/<k> = [rows]; }
//   theory <Name> on <Arities> = presentation { op <name>/<k>; eq <t> = <t>; bound = D; }
//   algebra <Name> : <Theory> = { carrier = {labels}; op <name> = [rows]; }
//
// '#' starts a comment.  Op tables are row-major over the canonical tuple
// order (first coordinate most significant); entries are base labels.
// ---------------------------------------------------------------------------

struct AstArities {
    std::string name;
    bool fincard = false;
    std::vector<std::size_t> members;
    std::size_t window = 0;
};

struct AstOpTable {
    std::string name;
    std::size_t arity = 0;  // clone decls carry the arity; algebra decls infer it
    bool has_arity = false;
    std::vector<std::string> entries;
};

struct AstTheory {
    enum class Kind { clone, presentation };
    std::string name;
    std::string arities_ref;
    Kind kind = Kind::clone;
    std::vector<std::string> base_labels;       // clone
    std::vector<AstOpTable> clone_ops;          // clone
    std::vector<SigOp> pres_ops;                // presentation
    std::vector<std::pair<Term, Term>> equations;
    std::size_t bound = 0;
};

struct AstAlgebra {
    std::string name;
    std::string theory_ref;
    std::vector<std::string> carrier_labels;
    std::vector<AstOpTable> ops;
};

struct Workspace {
    std::vector<AstArities> arity_decls;
    std::vector<AstTheory> theory_decls;
    std::vector<AstAlgebra> algebra_decls;

    std::map<std::string, AritySystem> arity_systems;
    std::map<std::string, Theory> theories;
    std::map<std::string, Algebra> algebras;

    const Theory& theory(const std::string& name) const;
    const Algebra& algebra(const std::string& name) const;
    const AritySystem& arity_system(const std::string& name) const;
};

/// Parse and compile; throws parse_error with line/column diagnostics (table
/// shape errors, unresolved names and arity-system closure failures surface
/// here too).
Workspace parse(const std::string& source);

/// Canonical source text; parse(pretty_print(w)) reproduces the declarations.
std::string pretty_print(const Workspace& w);

bool ast_equal(const Workspace& a, const Workspace& b);

/// The built-in gallery as a workspace (Init1, Init01, InitFin, Z2,
/// PointedZ2, SemiLat plus the Swap/Meet/Join sample algebras).
Workspace builtin_workspace(std::size_t fincard_window = 3);

/// The bundled gallery source (same content as gallery.alth at the repo root).
std::string builtin_gallery_source();

}  // namespace alth

#endif
