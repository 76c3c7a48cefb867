#pragma once

// Quaternion Brauer classes (g, h) on an orbifold model: local invariants at points,
// invariant profiles over local semi-integral points, and the adelic obstruction test.
//
// Invariants are kept in half-units: 0 stands for 0 and 1 for 1/2 in (1/2)Z/Z.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orbarith/localfields.hpp"
#include "orbarith/orbifold.hpp"

namespace orbarith {

/// One representative (num/den, second) of the class. The second slot is the class
/// constant unless a rational function is given.
struct QuaternionRep {
    Poly num, den;
    std::optional<Poly> second_num, second_den;
};

struct QuaternionClass {
    std::vector<QuaternionRep> reps;
    BigInt d = 1;

    void validate(int nvars) const;  // throws InvalidModel
    bool constant_second_slot() const;
};

struct InvariantValue {
    int half = 0;  // 0 or 1
    std::string to_string() const { return half ? "1/2" : "0"; }
    friend bool operator==(const InvariantValue&, const InvariantValue&) = default;
};

InvariantValue invariant_at_point(const QuaternionClass& A, const ProjPointQ& P, const Place& v);

/// Σ_v inv_v over every place where the symbol can be nontrivial, in half-units mod 2.
int global_invariant_sum(const QuaternionClass& A, const ProjPointQ& P);

enum class ModeKind { Integral, Darmon, Campana };

/// The mode assigns its weight to every divisor component of weight other than 1;
/// INTEGRAL treats all of them as weight ∞.
struct Mode {
    ModeKind kind = ModeKind::Integral;
    unsigned long m = 0;

    static Mode integral() { return {ModeKind::Integral, 0}; }
    static Mode darmon(unsigned long m);
    static Mode campana(unsigned long m);
    std::string to_string() const;
};

Mode parse_mode(const std::string& kind, unsigned long m);

struct ProfileWitness {
    InvariantValue value;
    ResidueClassSolution cls;
    int derivative_valuation = 0;  // Hensel data: the point is determined mod p^(k - e)
    int hensel_variable = -1;
};

struct InvariantProfile {
    Place place = Place::real();
    Mode mode;
    std::array<bool, 2> achieved{false, false};
    bool empty = false;  // the local point set of this mode is empty
    std::uint64_t undecided = 0;
    int depth_used = 0;
    bool exhaustive = true;  // false when real values come from sampling
    std::vector<ProfileWitness> witnesses;
    std::vector<ProjPointQ> real_samples;

    bool both() const { return achieved[0] && achieved[1]; }
    bool only(int half) const { return achieved[half] && !achieved[1 - half]; }
    std::string achieved_string() const;
};

struct ProfileOptions {
    int max_depth = 0;  // 0: 12 for p <= 5, else 6
    std::uint64_t node_budget = 4'000'000;
    bool stop_when_both = true;
    std::uint64_t real_height = 12;
};

InvariantProfile invariant_profile(const QuaternionClass& A, const OrbifoldModelZ& M, const Place& v, const Mode& mode,
                                   const ProfileOptions& opts = {});

struct ObstructionOptions {
    std::uint64_t prime_bound = 50;  // good primes up to here are profiled
    std::vector<BigInt> extra_bad_primes;
    ProfileOptions profile;
    int jobs = 0;
};

struct ObstructionReport {
    Mode mode;
    std::vector<InvariantProfile> profiles;  // REAL first, then primes ascending
    std::vector<BigInt> bad_primes;
    std::uint64_t prime_bound = 0;
    bool obstructed = false;
    bool locally_empty = false;
    bool inconclusive = false;  // undecided classes could change the verdict
    std::optional<std::vector<std::pair<Place, InvariantValue>>> zero_sum_witness;
    std::vector<std::string> assumptions;
};

/// Primes dividing 2, d and every coefficient of the model and of the representatives.
std::vector<BigInt> bad_primes(const QuaternionClass& A, const OrbifoldModelZ& M);

ObstructionReport adelic_obstruction(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode,
                                     const ObstructionOptions& opts = {});

struct HarariReport {
    std::vector<BigInt> two_valued;
    std::vector<BigInt> inconclusive;
    std::size_t primes_scanned = 0;
    double fraction() const {
        return primes_scanned ? static_cast<double>(two_valued.size()) / static_cast<double>(primes_scanned) : 0.0;
    }
};

HarariReport harari_scan(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode, std::uint64_t lo,
                         std::uint64_t hi, const ProfileOptions& opts = {}, int jobs = 0);
HarariReport harari_scan_serial(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode,
                                std::uint64_t lo, std::uint64_t hi, const ProfileOptions& opts = {});

}  // namespace orbarith
