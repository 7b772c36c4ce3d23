#ifndef HYPERAFF_IO_HPP
#define HYPERAFF_IO_HPP

#include "hyperaff/normal_form.hpp"

namespace hyperaff {

/// Exact scalar literal grammar:
///   rational ::= int | int "/" int
///   atom     ::= rational | "sqrt(" rational ")" | symbol-name
///   term     ::= atom ("*" atom)*
///   scalar   ::= ("+"|"-")? term (("+"|"-") term)*
/// Symbol names resolve through the registry (reciprocal names give
/// exponent -1). Throws std::invalid_argument with the offending position.
SymScalar parse_scalar(const std::string& text, const SymbolRegistry& registry);

/// Canonical grammar-conforming rendering; inverse of parse_scalar. Negative
/// exponents require a declared reciprocal name.
std::string scalar_to_grammar(const SymScalar& x, const SymbolRegistry& registry);

struct SymbolDecl {
    std::string name;
    double value = 0.0;          // ignored for reciprocal declarations
    std::string reciprocal_of;   // empty = plain transcendental
    friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

/// Self-contained problem document (JSON on disk; exact entries are grammar
/// strings, floats are plain numbers, complex values are {"re": .., "im": ..}).
struct ProblemFile {
    std::size_t n = 0;
    std::string mode = "auto";  // exact | numeric | auto
    std::vector<SymbolDecl> symbol_decls;
    bool independence_declared = false;
    std::vector<AffineMap> generators;
    std::vector<AffineMap> witnesses;  // optional f' list
    std::optional<CMatrix> normal_form_P;
    std::optional<Partition> normal_form_eta;
    SymbolRegistry registry;  // built from symbol_decls during parsing
};

ProblemFile parse_problem(const std::string& json_text);
std::string serialize_problem(const ProblemFile& pf);

}  // namespace hyperaff

#endif
