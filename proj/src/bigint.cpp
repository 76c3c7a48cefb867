#include "orbarith/bigint.hpp"

#include <limits>

#include "orbarith/errors.hpp"

namespace orbarith {

bool fits_i64(const BigInt& v) {
    static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    return v >= lo && v <= hi;
}

std::int64_t to_i64(const BigInt& v) {
    if (!fits_i64(v)) throw Error(ErrorKind::Unsupported, "integer does not fit in 64 bits: " + v.get_str());
    // mpz_get_si is exact for values in range on LP64.
    return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

std::uint64_t to_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        throw Error(ErrorKind::Unsupported, "integer does not fit in unsigned 64 bits: " + v.get_str());
    return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
    BigInt r;
    BigInt mm(static_cast<unsigned long>(m));
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
    return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
}

BigInt parse_bigint(const std::string& s) {
    BigInt r;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || mpz_set_str(r.get_mpz_t(), t.c_str(), 10) != 0)
        throw Error(ErrorKind::ParseError, "not an integer: '" + s + "'");
    return r;
}

bool is_square(const BigInt& n, BigInt* root) {
    if (sgn(n) < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

}  // namespace orbarith
