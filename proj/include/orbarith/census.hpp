#pragma once

// The lower-bound family 5ab²x² − 25ad²y² + 16c²z² = t² with divisor Z(t) and class
// ((t − 4cz)/t, 5): membership, per-member verification, and the exact count of members
// with coefficients bounded by B.
//
// Members differing only in the signs of b, c, d define the same quadric, so the census
// counts b, c, d > 0.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbarith/brauer.hpp"

namespace orbarith {

struct FamilyMember {
    std::int64_t a = 0, b = 0, c = 0, d = 0;
    std::string to_string() const;
    friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

bool member_valid(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
inline bool member_valid(const FamilyMember& m) { return member_valid(m.a, m.b, m.c, m.d); }

struct FamilyModel {
    OrbifoldModelZ model;
    QuaternionClass cls;
};

/// Variables x, y, z, t. Throws InvalidMember.
FamilyModel member_to_model(const FamilyMember& m, const Weight& w);

/// The 5-adic point [5 : c² : −5cd : d·5^m], lifted in z by Newton's method.
struct DarmonWitness {
    unsigned long m = 0;
    std::vector<BigInt> residue;  // the point mod 125
    std::vector<BigInt> lifted;   // z lifted modulo 5^precision; the rest is exact
    int precision = 0;
    int derivative_valuation = 0;  // v_5(∂F/∂z) at the point
    int t_valuation = 0;
    InvariantValue invariant;
    bool certified = false;  // F ≡ 0 mod 125, Hensel applies, v_5(t) = m
};

DarmonWitness darmon_witness_at_5(const FamilyMember& m, unsigned long weight);

struct DarmonCheck {
    unsigned long m = 0;
    DarmonWitness witness;
    bool obstructed = true;
    bool passed() const { return witness.certified && witness.invariant.half == 0 && !obstructed; }
};

struct MemberVerdict {
    FamilyMember member;
    bool locally_soluble = false;      // integral points at REAL and every profiled prime
    bool integral_obstructed = false;
    std::vector<DarmonCheck> darmon;
    std::uint64_t height_bound = 0;
    std::optional<ProjPointQ> integral_point;  // a counterexample, if the search found one
    bool passed() const;
};

struct VerifyOptions {
    std::vector<unsigned long> weights{2, 3, 4, 5};
    std::uint64_t height_bound = 200;  // 0 skips the integral point search
    int jobs = 0;
    ProfileOptions profile = [] {
        ProfileOptions o;
        o.node_budget = 500'000;
        return o;
    }();
};

/// Throws Inconclusive when a profile could not decide a verdict.
MemberVerdict verify_member(const FamilyMember& m, const VerifyOptions& opts = {});

struct CensusOptions {
    int jobs = 0;
    double verify_fraction = 1e-3;
    std::uint64_t sample_floor = 25;
    bool verify_all = false;
    bool verify = true;
    std::uint64_t seed = 20240917;
    VerifyOptions verify_opts;
    std::string checkpoint;  // empty: no checkpoint file
};

struct CensusResult {
    std::uint64_t bound = 0;
    std::uint64_t count = 0;
    std::vector<MemberVerdict> samples;
    double elapsed = 0.0;
    std::int64_t resumed_from = -1;  // last a-shard read from the checkpoint, -1 if none
};

/// Number of members with 5ab², 25ad², 16c² ≤ B and b, c, d > 0.
std::uint64_t count_members(std::uint64_t B, int jobs = 0);
std::uint64_t count_members_serial(std::uint64_t B);

/// The sampled members: `n` distinct positions in enumeration order, drawn with `seed`.
std::vector<FamilyMember> sample_members(std::uint64_t B, std::uint64_t n, std::uint64_t seed);

/// Exact count plus verification of a seeded sample. Throws (with the member) if a sampled
/// member fails verification.
CensusResult count_lower_bound(std::uint64_t B, const CensusOptions& opts = {});

struct GrowthRow {
    std::uint64_t bound = 0;
    std::uint64_t count = 0;
    double ratio = 0.0;  // N(B) / (B^{3/2} log B)
};

std::vector<GrowthRow> growth_table(const std::vector<std::uint64_t>& bounds, int jobs = 0);

}  // namespace orbarith
