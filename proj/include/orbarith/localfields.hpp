#pragma once

// Local arithmetic at a place of Q: Hilbert symbols, isotropy of diagonal forms, and
// p-adic solubility of hypersurfaces by refinement of primitive residue classes.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbarith/bigint.hpp"
#include "orbarith/poly.hpp"

namespace orbarith {

class Place {
public:
    static Place real() { return Place(); }
    static Place finite(const BigInt& p);  // throws NonPrimeModulus
    static Place finite(std::uint64_t p) { return finite(BigInt(static_cast<unsigned long>(p))); }

    bool is_real() const { return real_; }
    const BigInt& prime() const { return p_; }
    std::uint64_t prime_u64() const;
    std::string to_string() const;  // "inf" or the prime

    friend bool operator==(const Place& a, const Place& b) { return a.real_ == b.real_ && a.p_ == b.p_; }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.real_ != b.real_) return a.real_;
        return a.p_ < b.p_;
    }

private:
    Place() = default;
    bool real_ = true;
    BigInt p_ = 0;
};

/// (a, b)_v for nonzero integers.
int hilbert_symbol(const BigInt& a, const BigInt& b, const Place& v);
/// (a, b)_v for nonzero rationals; n/d is replaced by n·d, which has the same square class.
int hilbert_symbol(const BigRat& a, const BigRat& b, const Place& v);

/// True when a nonzero integer is a square in Q_v.
bool is_local_square(const BigInt& a, const Place& v);

/// Nontrivial zero of a diagonal form of rank 3 or 4 over Q_v.
bool is_isotropic_local(std::span<const BigInt> diag, const Place& v);

/// Does Σ diag_i x_i² = target have a real solution?
bool real_points_exist(std::span<const BigInt> diag, const BigInt& target);

struct ResidueClassSolution {
    int modulus_exponent = 1;
    BigInt prime;
    std::vector<BigInt> coords;
    bool primitive = true;
};

struct HenselCertificate {
    ResidueClassSolution solution;
    int derivative_valuation = 0;
    int witness_precision = 1;
    int variable = -1;  // coordinate whose partial derivative has the stated valuation
};

enum class Status { Yes, No, Inconclusive };
const char* to_string(Status s);

struct SolubilityVerdict {
    Status status = Status::Inconclusive;
    std::optional<HenselCertificate> certificate;  // YES
    int exhaustion_precision = 0;                   // NO: deepest precision any class reached
    bool bound_certified = false;                   // NO: refuted via the quadric bound (else the tree died out)
    int depth_reached = 0;
};

/// Precision beyond which a primitive class of a nondegenerate quadric without a Hensel
/// certificate contains no Z_p-point: 2·v_p(det H) + 1, H the integer Hessian.
/// nullopt for non-quadrics and degenerate quadrics.
std::optional<int> quadric_exhaustion_bound(const Poly& f, const BigInt& p);

struct ZpOptions {
    int max_depth = 12;
    std::vector<Poly> unit_forms;  // restrict to points where each of these is a p-adic unit
    std::uint64_t node_budget = 20'000'000;
};

/// Primitive Z_p-points on the projective hypersurface f = 0.
SolubilityVerdict zp_points_on_hypersurface(const Poly& f, const BigInt& p, const ZpOptions& opts = {});

}  // namespace orbarith
