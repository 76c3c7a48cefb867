#pragma once

// Primitive projective residue classes on a hypersurface modulo p^k.
//
// A class is a primitive coordinate vector mod p^k whose first p-adic unit coordinate is
// normalised to 1, so every primitive Z_p-point reduces to exactly one class at each
// precision. Refinement to precision k+1 uses the first-order expansion
//   G(x + p^k δ) ≡ G(x) + p^k ∇G(x)·δ   (mod p^{k+1}),  k ≥ 1,
// which turns the lift condition into a linear system over F_p.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbarith/poly.hpp"

namespace orbarith {

struct ResidueClass {
    std::vector<std::uint64_t> x;  // entries in [0, p^k)
    int k = 1;
    int norm = 0;  // index of the coordinate normalised to 1
};

/// A polynomial compiled modulo p^D together with its gradient.
struct CompiledForm {
    ModPoly f;
    std::vector<ModPoly> grad;
    int degree = 0;
};

struct HenselInfo {
    int var = -1;  // -1 when there is no equation to lift
    int e = 0;     // exact valuation of the chosen partial derivative
};

class ResidueSpace {
public:
    /// `equation` may be empty (the ambient space is P^{n}); at most one equation.
    /// The working precision is clamped so that p^depth stays below 2^62.
    ResidueSpace(int nvars, std::span<const Poly> equations, std::uint64_t p, int max_depth);

    std::uint64_t prime() const { return p_; }
    int nvars() const { return nvars_; }
    int max_depth() const { return depth_; }
    std::uint64_t power(int k) const { return pow_.at(k); }
    bool has_equation() const { return has_eq_; }

    CompiledForm compile(const Poly& g) const;

    /// Value of g at the class, reduced mod p^prec (prec <= cls.k).
    std::uint64_t value(const CompiledForm& g, const ResidueClass& cls, int prec) const;

    /// Valuation of g at the class, read at precision prec; returns prec when g ≡ 0 mod p^prec.
    int valuation(const CompiledForm& g, const ResidueClass& cls, int prec) const;

    /// Classes at precision 1 on the hypersurface.
    std::vector<ResidueClass> level_one() const;

    /// Children at precision k+1. Every form in `also_zero` must vanish mod p^{k+1} as well
    /// (each must already vanish mod p^k, otherwise no child qualifies).
    std::vector<ResidueClass> children(const ResidueClass& cls,
                                       std::span<const CompiledForm* const> also_zero = {}) const;

    /// Hensel data: smallest e with some ∂F/∂x_j of exact valuation e and k >= 2e + 1.
    std::optional<HenselInfo> hensel(const ResidueClass& cls) const;

    /// Reduce a class to a lower precision, renormalising.
    ResidueClass truncate(const ResidueClass& cls, int prec) const;

    /// Normalise an arbitrary primitive vector mod p^k; nullopt if not primitive.
    std::optional<ResidueClass> normalise(std::span<const std::uint64_t> x, int k) const;

private:
    int nvars_;
    std::uint64_t p_;
    int depth_;
    std::vector<std::uint64_t> pow_;
    bool has_eq_ = false;
    CompiledForm eq_;
};

/// Roots in [0, p) of a univariate polynomial over F_p (coefficients reduced mod p);
/// `all` is set when the polynomial vanishes identically.
std::vector<std::uint64_t> roots_mod_p(std::span<const std::uint64_t> coeffs, std::uint64_t p, bool* all);

/// Square root mod an odd prime, if a is a square.
std::optional<std::uint64_t> sqrt_mod_p(std::uint64_t a, std::uint64_t p);

}  // namespace orbarith
