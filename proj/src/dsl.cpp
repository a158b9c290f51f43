#include "alth/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace alth {

namespace {

struct Tok {
    enum class Kind { ident, number, punct, end };
    Kind kind = Kind::end;
    std::string text;
    std::size_t line = 0;
    std::size_t col = 0;
};

std::vector<Tok> lex(const std::string& src) {
    std::vector<Tok> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok::Kind k, std::string t, std::size_t l, std::size_t c) {
        out.push_back({k, std::move(t), l, c});
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        std::size_t tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string t;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t += src[i++];
                ++col;
            }
            // a number directly followed by letters is a single label token
            if (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                   src[i] == '_')) {
                while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                          src[i] == '_')) {
                    t += src[i++];
                    ++col;
                }
                push(Tok::Kind::ident, std::move(t), tl, tc);
            } else {
                push(Tok::Kind::number, std::move(t), tl, tc);
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string t;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                t += src[i++];
                ++col;
            }
            push(Tok::Kind::ident, std::move(t), tl, tc);
            continue;
        }
        if (std::string("{}()[]=,;:/").find(c) != std::string::npos) {
            push(Tok::Kind::punct, std::string(1, c), tl, tc);
            ++i;
            ++col;
            continue;
        }
        throw parse_error(line, col, std::string("unexpected character '") + c + "'");
    }
    push(Tok::Kind::end, "", line, col);
    return out;
}

struct Parser {
    std::vector<Tok> toks;
    std::size_t pos = 0;

    const Tok& peek() const { return toks[pos]; }
    const Tok& next() { return toks[pos++]; }
    bool at_end() const { return toks[pos].kind == Tok::Kind::end; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Tok& t = toks[pos];
        throw parse_error(t.line, t.col, msg + (t.kind == Tok::Kind::end
                                                    ? " (at end of input)"
                                                    : " (got '" + t.text + "')"));
    }

    void expect_punct(const std::string& p) {
        if (peek().kind != Tok::Kind::punct || peek().text != p) fail("expected '" + p + "'");
        ++pos;
    }

    bool accept_punct(const std::string& p) {
        if (peek().kind == Tok::Kind::punct && peek().text == p) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != Tok::Kind::ident) fail("expected " + what);
        return next().text;
    }

    std::size_t expect_number(const std::string& what) {
        if (peek().kind != Tok::Kind::number) fail("expected " + what);
        return std::stoul(next().text);
    }

    std::string expect_label() {
        if (peek().kind != Tok::Kind::ident && peek().kind != Tok::Kind::number)
            fail("expected a label");
        return next().text;
    }

    bool accept_keyword(const std::string& kw) {
        if (peek().kind == Tok::Kind::ident && peek().text == kw) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect_keyword(const std::string& kw) {
        if (!accept_keyword(kw)) fail("expected '" + kw + "'");
    }

    std::vector<std::string> label_set() {
        expect_punct("{");
        std::vector<std::string> out;
        if (!accept_punct("}")) {
            out.push_back(expect_label());
            while (accept_punct(",")) out.push_back(expect_label());
            expect_punct("}");
        }
        return out;
    }

    std::vector<std::string> label_list() {
        expect_punct("[");
        std::vector<std::string> out;
        if (!accept_punct("]")) {
            out.push_back(expect_label());
            while (accept_punct(",")) out.push_back(expect_label());
            expect_punct("]");
        }
        return out;
    }

    Term term(const std::vector<SigOp>& ops) {
        const Tok& t = peek();
        std::string name = expect_ident("a term");
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            return Term::v(std::stoi(name.substr(1)));
        }
        auto it = std::find_if(ops.begin(), ops.end(),
                               [&](const SigOp& o) { return o.name == name; });
        if (it == ops.end())
            throw parse_error(t.line, t.col, "unresolved op '" + name + "' in term");
        std::vector<Term> args;
        if (accept_punct("(")) {
            if (!accept_punct(")")) {
                args.push_back(term(ops));
                while (accept_punct(",")) args.push_back(term(ops));
                expect_punct(")");
            }
        }
        if (args.size() != it->arity)
            throw parse_error(t.line, t.col, "op '" + name + "' expects " +
                                                 std::to_string(it->arity) + " arguments, got " +
                                                 std::to_string(args.size()));
        return Term::app(int(it - ops.begin()), std::move(args));
    }
};

std::size_t resolve_label(const FinSet& set, const std::string& label, std::size_t line,
                          std::size_t col) {
    if (auto i = set.index_of_label(label)) return *i;
    // allow plain indices when the set is unlabeled
    if (set.labels.empty() && !label.empty() &&
        std::all_of(label.begin(), label.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        std::size_t v = std::stoul(label);
        if (v < set.size) return v;
    }
    throw parse_error(line, col, "unknown element label '" + label + "'");
}

}  // namespace

const Theory& Workspace::theory(const std::string& name) const {
    auto it = theories.find(name);
    if (it == theories.end()) throw error("no theory named '" + name + "'");
    return it->second;
}

const Algebra& Workspace::algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw error("no algebra named '" + name + "'");
    return it->second;
}

const AritySystem& Workspace::arity_system(const std::string& name) const {
    auto it = arity_systems.find(name);
    if (it == arity_systems.end()) throw error("no arity system named '" + name + "'");
    return it->second;
}

Workspace parse(const std::string& source) {
    Workspace w;
    Parser p{lex(source)};

    while (!p.at_end()) {
        const Tok& head = p.peek();
        if (p.accept_keyword("arities")) {
            AstArities d;
            d.name = p.expect_ident("an arity-system name");
            p.expect_punct("=");
            if (p.accept_keyword("fincard")) {
                d.fincard = true;
                p.expect_punct("(");
                p.expect_keyword("window");
                p.expect_punct("=");
                d.window = p.expect_number("a window bound");
                p.expect_punct(")");
            } else {
                for (const std::string& l : p.label_set()) {
                    if (!std::all_of(l.begin(), l.end(), [](char c) {
                            return std::isdigit(static_cast<unsigned char>(c));
                        }))
                        throw parse_error(head.line, head.col,
                                          "arity members must be cardinals, got '" + l + "'");
                    d.members.push_back(std::stoul(l));
                }
            }
            if (w.arity_systems.count(d.name))
                throw parse_error(head.line, head.col, "duplicate arity system '" + d.name + "'");
            try {
                w.arity_systems.emplace(d.name, d.fincard ? AritySystem::fin_card(d.window)
                                                          : mk_arity_system(d.members));
            } catch (const error& e) {
                throw parse_error(head.line, head.col, e.what());
            }
            w.arity_decls.push_back(std::move(d));
            continue;
        }
        if (p.accept_keyword("theory")) {
            AstTheory d;
            d.name = p.expect_ident("a theory name");
            p.expect_keyword("on");
            d.arities_ref = p.expect_ident("an arity-system name");
            if (!w.arity_systems.count(d.arities_ref))
                throw parse_error(head.line, head.col,
                                  "unresolved arity system '" + d.arities_ref + "'");
            p.expect_punct("=");
            if (p.accept_keyword("clone")) {
                d.kind = AstTheory::Kind::clone;
                p.expect_punct("{");
                p.expect_keyword("base");
                p.expect_punct("=");
                d.base_labels = p.label_set();
                p.expect_punct(";");
                while (p.accept_keyword("op")) {
                    AstOpTable t;
                    t.name = p.expect_ident("an op name");
                    p.expect_punct("/");
                    t.arity = p.expect_number("an arity");
                    t.has_arity = true;
                    p.expect_punct("=");
                    t.entries = p.label_list();
                    p.expect_punct(";");
                    d.clone_ops.push_back(std::move(t));
                }
                p.expect_punct("}");
            } else if (p.accept_keyword("presentation")) {
                d.kind = AstTheory::Kind::presentation;
                p.expect_punct("{");
                bool have_bound = false;
                while (!p.accept_punct("}")) {
                    if (p.accept_keyword("op")) {
                        SigOp o;
                        o.name = p.expect_ident("an op name");
                        p.expect_punct("/");
                        o.arity = p.expect_number("an arity");
                        d.pres_ops.push_back(std::move(o));
                        p.expect_punct(";");
                    } else if (p.accept_keyword("eq")) {
                        Term lhs = p.term(d.pres_ops);
                        p.expect_punct("=");
                        Term rhs = p.term(d.pres_ops);
                        d.equations.emplace_back(std::move(lhs), std::move(rhs));
                        p.expect_punct(";");
                    } else if (p.accept_keyword("bound")) {
                        p.expect_punct("=");
                        d.bound = p.expect_number("a depth bound");
                        have_bound = true;
                        p.expect_punct(";");
                    } else {
                        p.fail("expected 'op', 'eq', 'bound' or '}'");
                    }
                }
                if (!have_bound)
                    throw parse_error(head.line, head.col,
                                      "presentation block needs 'bound = D;'");
            } else {
                p.fail("expected 'clone' or 'presentation'");
            }
            if (w.theories.count(d.name))
                throw parse_error(head.line, head.col, "duplicate theory '" + d.name + "'");
            // compile
            const AritySystem& sys = w.arity_systems.at(d.arities_ref);
            try {
                if (d.kind == AstTheory::Kind::clone) {
                    GeneratingAlgebra g;
                    g.base = FinSet::labeled(d.base_labels);
                    for (const auto& t : d.clone_ops) {
                        GeneratingAlgebra::Op o;
                        o.name = t.name;
                        o.arity = t.arity;
                        std::size_t want = pow_sz(g.base.size, t.arity);
                        if (t.entries.size() != want)
                            throw parse_error(head.line, head.col,
                                              "arity mismatch at op '" + t.name + "': table has " +
                                                  std::to_string(t.entries.size()) +
                                                  " entries, expected " + std::to_string(want));
                        for (const std::string& l : t.entries)
                            o.table.push_back(resolve_label(g.base, l, head.line, head.col));
                        g.ops.push_back(std::move(o));
                    }
                    w.theories.emplace(d.name, theory_from_clone(g, sys, 200000, d.name));
                } else {
                    Presentation pr;
                    pr.ops = d.pres_ops;
                    pr.equations = d.equations;
                    auto r = theory_from_presentation(pr, sys, d.bound, 100000, d.name);
                    if (auto* nc = std::get_if<NonConvergence>(&r))
                        throw parse_error(head.line, head.col,
                                          "presentation did not converge at arity " +
                                              std::to_string(nc->arity) + " (classes " +
                                              std::to_string(nc->prev_classes) + " -> " +
                                              std::to_string(nc->last_classes) + ")");
                    w.theories.emplace(d.name, std::get<Theory>(std::move(r)));
                }
            } catch (const parse_error&) {
                throw;
            } catch (const error& e) {
                throw parse_error(head.line, head.col, e.what());
            }
            w.theory_decls.push_back(std::move(d));
            continue;
        }
        if (p.accept_keyword("algebra")) {
            AstAlgebra d;
            d.name = p.expect_ident("an algebra name");
            p.expect_punct(":");
            d.theory_ref = p.expect_ident("a theory name");
            if (!w.theories.count(d.theory_ref))
                throw parse_error(head.line, head.col,
                                  "unresolved theory '" + d.theory_ref + "'");
            p.expect_punct("=");
            p.expect_punct("{");
            p.expect_keyword("carrier");
            p.expect_punct("=");
            d.carrier_labels = p.label_set();
            p.expect_punct(";");
            while (p.accept_keyword("op")) {
                AstOpTable t;
                t.name = p.expect_ident("an op name");
                p.expect_punct("=");
                t.entries = p.label_list();
                p.expect_punct(";");
                d.ops.push_back(std::move(t));
            }
            p.expect_punct("}");
            if (w.algebras.count(d.name))
                throw parse_error(head.line, head.col, "duplicate algebra '" + d.name + "'");
            // compile
            const Theory& th = w.theories.at(d.theory_ref);
            auto sig = th.signature();
            if (!sig)
                throw parse_error(head.line, head.col,
                                  "theory '" + d.theory_ref + "' has no signature");
            try {
                FinSet carrier = FinSet::labeled(d.carrier_labels);
                std::vector<std::vector<std::size_t>> tables(sig->size());
                std::vector<bool> given(sig->size(), false);
                for (const auto& t : d.ops) {
                    auto it = std::find_if(sig->begin(), sig->end(),
                                           [&](const SigOp& o) { return o.name == t.name; });
                    if (it == sig->end())
                        throw parse_error(head.line, head.col,
                                          "op '" + t.name + "' is not in the signature of '" +
                                              d.theory_ref + "'");
                    std::size_t oi = std::size_t(it - sig->begin());
                    std::size_t want = pow_sz(carrier.size, it->arity);
                    if (t.entries.size() != want)
                        throw parse_error(head.line, head.col,
                                          "arity mismatch at op '" + t.name + "': table has " +
                                              std::to_string(t.entries.size()) +
                                              " entries, expected " + std::to_string(want));
                    for (const std::string& l : t.entries)
                        tables[oi].push_back(resolve_label(carrier, l, head.line, head.col));
                    given[oi] = true;
                }
                for (std::size_t i = 0; i < sig->size(); ++i)
                    if (!given[i])
                        throw parse_error(head.line, head.col,
                                          "missing table for op '" + (*sig)[i].name + "'");
                auto alg = algebra_from_op_tables(th, carrier, tables);
                if (!alg)
                    throw parse_error(head.line, head.col,
                                      "tables do not satisfy the equations of '" + d.theory_ref +
                                          "'");
                w.algebras.emplace(d.name, std::move(*alg));
            } catch (const parse_error&) {
                throw;
            } catch (const error& e) {
                throw parse_error(head.line, head.col, e.what());
            }
            w.algebra_decls.push_back(std::move(d));
            continue;
        }
        p.fail("expected 'arities', 'theory' or 'algebra'");
    }
    return w;
}

namespace {

std::string show_term(const Term& t, const std::vector<SigOp>& ops) { return t.show(ops); }

}  // namespace

std::string pretty_print(const Workspace& w) {
    std::ostringstream os;
    for (const auto& d : w.arity_decls) {
        os << "arities " << d.name << " = ";
        if (d.fincard) {
            os << "fincard(window=" << d.window << ")";
        } else {
            os << "{";
            for (std::size_t i = 0; i < d.members.size(); ++i)
                os << (i ? "," : "") << d.members[i];
            os << "}";
        }
        os << "\n";
    }
    for (const auto& d : w.theory_decls) {
        os << "theory " << d.name << " on " << d.arities_ref << " = ";
        if (d.kind == AstTheory::Kind::clone) {
            os << "clone { base = {";
            for (std::size_t i = 0; i < d.base_labels.size(); ++i)
                os << (i ? "," : "") << d.base_labels[i];
            os << "}; ";
            for (const auto& t : d.clone_ops) {
                os << "op " << t.name << "/" << t.arity << " = [";
                for (std::size_t i = 0; i < t.entries.size(); ++i)
                    os << (i ? "," : "") << t.entries[i];
                os << "]; ";
            }
            os << "}";
        } else {
            os << "presentation { ";
            for (const auto& o : d.pres_ops) os << "op " << o.name << "/" << o.arity << "; ";
            for (const auto& [l, r] : d.equations)
                os << "eq " << show_term(l, d.pres_ops) << " = " << show_term(r, d.pres_ops)
                   << "; ";
            os << "bound = " << d.bound << "; }";
        }
        os << "\n";
    }
    for (const auto& d : w.algebra_decls) {
        os << "algebra " << d.name << " : " << d.theory_ref << " = { carrier = {";
        for (std::size_t i = 0; i < d.carrier_labels.size(); ++i)
            os << (i ? "," : "") << d.carrier_labels[i];
        os << "}; ";
        for (const auto& t : d.ops) {
            os << "op " << t.name << " = [";
            for (std::size_t i = 0; i < t.entries.size(); ++i)
                os << (i ? "," : "") << t.entries[i];
            os << "]; ";
        }
        os << "}\n";
    }
    return os.str();
}

namespace {

bool term_eq(const Term& a, const Term& b) { return a == b; }

bool optable_eq(const AstOpTable& a, const AstOpTable& b) {
    return a.name == b.name && a.arity == b.arity && a.has_arity == b.has_arity &&
           a.entries == b.entries;
}

}  // namespace

bool ast_equal(const Workspace& a, const Workspace& b) {
    if (a.arity_decls.size() != b.arity_decls.size() ||
        a.theory_decls.size() != b.theory_decls.size() ||
        a.algebra_decls.size() != b.algebra_decls.size())
        return false;
    for (std::size_t i = 0; i < a.arity_decls.size(); ++i) {
        const auto& x = a.arity_decls[i];
        const auto& y = b.arity_decls[i];
        if (x.name != y.name || x.fincard != y.fincard || x.members != y.members ||
            x.window != y.window)
            return false;
    }
    for (std::size_t i = 0; i < a.theory_decls.size(); ++i) {
        const auto& x = a.theory_decls[i];
        const auto& y = b.theory_decls[i];
        if (x.name != y.name || x.arities_ref != y.arities_ref || x.kind != y.kind ||
            x.base_labels != y.base_labels || x.bound != y.bound)
            return false;
        if (x.clone_ops.size() != y.clone_ops.size() || x.pres_ops.size() != y.pres_ops.size() ||
            x.equations.size() != y.equations.size())
            return false;
        for (std::size_t j = 0; j < x.clone_ops.size(); ++j)
            if (!optable_eq(x.clone_ops[j], y.clone_ops[j])) return false;
        for (std::size_t j = 0; j < x.pres_ops.size(); ++j)
            if (x.pres_ops[j].name != y.pres_ops[j].name ||
                x.pres_ops[j].arity != y.pres_ops[j].arity)
                return false;
        for (std::size_t j = 0; j < x.equations.size(); ++j)
            if (!term_eq(x.equations[j].first, y.equations[j].first) ||
                !term_eq(x.equations[j].second, y.equations[j].second))
                return false;
    }
    for (std::size_t i = 0; i < a.algebra_decls.size(); ++i) {
        const auto& x = a.algebra_decls[i];
        const auto& y = b.algebra_decls[i];
        if (x.name != y.name || x.theory_ref != y.theory_ref ||
            x.carrier_labels != y.carrier_labels || x.ops.size() != y.ops.size())
            return false;
        for (std::size_t j = 0; j < x.ops.size(); ++j)
            if (!optable_eq(x.ops[j], y.ops[j])) return false;
    }
    return true;
}

std::string builtin_gallery_source() {
    return R"(# Built-in instance gallery: arity systems, theories, sample algebras.

arities U = {1}
arities A01 = {0,1}
arities F = fincard(window=3)

theory Z2 on U = clone { base = {0,1}; op e/1 = [0,1]; op a/1 = [1,0]; }
theory PointedZ2 on A01 = clone { base = {0,1}; op a/1 = [1,0]; op z/0 = [0]; }
theory SemiLat on F = clone { base = {0,1}; op meet/2 = [0,0,0,1]; }
theory IdOnly on U = presentation { op u/1; eq u(x0) = x0; bound = 2; }

algebra Swap : Z2 = { carrier = {p,q}; op e = [p,q]; op a = [q,p]; }
algebra IdAct : Z2 = { carrier = {p,q}; op e = [p,q]; op a = [p,q]; }
algebra Meet : SemiLat = { carrier = {0,1}; op meet = [0,0,0,1]; }
algebra Join : SemiLat = { carrier = {0,1}; op meet = [0,1,1,1]; }
)";
}

Workspace builtin_workspace(std::size_t fincard_window) {
    Workspace w = parse(builtin_gallery_source());
    // initial theories are primitive, not expressible in the DSL
    w.theories.emplace("Init1", gallery::initial_one());
    w.theories.emplace("Init01", gallery::initial_zero_one());
    w.theories.emplace("InitFin", gallery::initial_fincard(std::max<std::size_t>(fincard_window, 1)));
    return w;
}

}  // namespace alth
