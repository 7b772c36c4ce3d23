#ifndef HYPERAFF_SYMBOLS_HPP
#define HYPERAFF_SYMBOLS_HPP

#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "hyperaff/rational.hpp"

namespace hyperaff {

/// A named transcendental constant with its high-precision shadow value.
/// Radicals are not Symbols: they live directly in Monomial as a squarefree
/// radicand, since their value is determined by the integer alone.
struct Symbol {
    std::string name;
    long double approx = 0.0L;

    // Identity is the name; approx is metadata and must agree across uses.
    friend bool operator==(const Symbol& a, const Symbol& b) { return a.name == b.name; }
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        return a.name <=> b.name;
    }
};

inline Symbol pi_symbol() { return Symbol{"pi", 3.14159265358979323846264338327950288L}; }

/// Auto-registered symbol for log(p), p prime; used by exact logarithms of
/// rational cone diagonals. log of a general rational is a Z-combination of
/// these, which keeps the declared symbol set Q-linearly honest.
inline Symbol log_prime_symbol(const Int& p) {
    return Symbol{"log(" + p.str() + ")", std::log(static_cast<long double>(p))};
}

/// Declared symbol table for one problem context. Transcendental names are
/// unique; a symbol may be declared as the reciprocal of another, in which
/// case it denotes base^(-1) and shares the base's Laurent axis.
class SymbolRegistry {
public:
    SymbolRegistry() { declare_transcendental("pi", pi_symbol().approx); }

    void declare_transcendental(const std::string& name, long double approx) {
        auto it = symbols_.find(name);
        if (it != symbols_.end()) {
            if (std::abs(it->second.approx - approx) > 1e-15L * (1 + std::abs(approx)))
                throw std::invalid_argument("symbol '" + name + "' redeclared with different value");
            return;
        }
        symbols_.emplace(name, Symbol{name, approx});
    }

    /// Declares `name` to mean base^(-1); base must already be declared.
    void declare_reciprocal(const std::string& name, const std::string& base) {
        if (!symbols_.count(base))
            throw std::invalid_argument("reciprocal base '" + base + "' not declared");
        reciprocals_[name] = base;
    }

    bool has(const std::string& name) const {
        return symbols_.count(name) || reciprocals_.count(name);
    }

    /// Resolves a name to (symbol, exponent sign): reciprocal names resolve
    /// to their base with exponent -1.
    std::pair<Symbol, int> resolve(const std::string& name) const {
        if (auto it = reciprocals_.find(name); it != reciprocals_.end())
            return {symbols_.at(it->second), -1};
        if (auto it = symbols_.find(name); it != symbols_.end()) return {it->second, +1};
        throw std::invalid_argument("unknown symbol '" + name + "'");
    }

    void set_independence_declared(bool v) { independence_declared_ = v; }
    bool independence_declared() const { return independence_declared_; }

    const std::map<std::string, Symbol>& symbols() const { return symbols_; }
    const std::map<std::string, std::string>& reciprocals() const { return reciprocals_; }

private:
    std::map<std::string, Symbol> symbols_;
    std::map<std::string, std::string> reciprocals_;
    bool independence_declared_ = false;
};

}  // namespace hyperaff

#endif
