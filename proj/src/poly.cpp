#include "orbarith/poly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "orbarith/errors.hpp"

namespace orbarith {

Poly Poly::constant(int nvars, const BigInt& c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int index) {
    Exponents e(nvars, 0);
    e.at(index) = 1;
    return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& exps, const BigInt& c) {
    Poly p(static_cast<int>(exps.size()));
    p.add_term(exps, c);
    return p;
}

void Poly::add_term(const Exponents& e, const BigInt& c) {
    if (static_cast<int>(e.size()) != nvars_) throw Error(ErrorKind::InvalidModel, "exponent arity mismatch");
    for (int x : e)
        if (x < 0) throw Error(ErrorKind::InvalidModel, "negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

int Poly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
}

bool Poly::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = std::accumulate(e.begin(), e.end(), 0);
        if (d >= 0 && s != d) return false;
        d = s;
    }
    return true;
}

BigInt Poly::content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) g = gcd_big(g, c);
    return g;
}

Poly Poly::derivative(int var) const {
    Poly d(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e.at(var) == 0) continue;
        Exponents f = e;
        --f[var];
        d.add_term(f, c * e[var]);
    }
    return d;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(nvars_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

BigInt Poly::eval(std::span<const BigInt> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw Error(ErrorKind::InvalidModel, "point arity mismatch");
    BigInt s = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) t *= pow_big(x[i], e[i]);
        s += t;
    }
    return s;
}

BigInt Poly::constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? BigInt(0) : it->second;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw Error(ErrorKind::InvalidModel, "variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw Error(ErrorKind::InvalidModel, "variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const BigInt& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly& Poly::divide_exact(const BigInt& c) {
    for (auto& [e, v] : terms_) {
        if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t()))
            throw Error(ErrorKind::InvalidModel, "inexact polynomial division");
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    }
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw Error(ErrorKind::InvalidModel, "variable count mismatch");
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

int Poly::power_of(const Poly& base) const {
    if (is_zero() || base.is_zero() || base.total_degree() <= 0) return 0;
    int deg = total_degree(), bdeg = base.total_degree();
    if (deg % bdeg != 0) return 0;
    const int j = deg / bdeg;
    if (j == 0) return 0;
    Poly bj = base.pow(static_cast<unsigned>(j));
    // this == (c_this / c_bj) * bj  with the ratio read off any common leading term
    const auto& [e0, c0] = *terms_.begin();
    auto it = bj.terms_.find(e0);
    if (it == bj.terms_.end() || bj.terms_.size() != terms_.size()) return 0;
    Poly lhs = *this * it->second;
    Poly rhs = bj * c0;
    return lhs == rhs ? j : 0;
}

std::vector<std::string> default_var_names(int nvars) {
    std::vector<std::string> v;
    for (int i = 0; i < nvars; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

std::string Poly::to_string(const std::vector<std::string>& names_in) const {
    const auto names = names_in.empty() ? default_var_names(nvars_) : names_in;
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest-degree terms first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool has_var = false;
        std::ostringstream mon;
        for (int i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            if (has_var) mon << "*";
            mon << names.at(i);
            if (e[i] > 1) mon << "^" << e[i];
            has_var = true;
        }
        if (!has_var) os << a.get_str();
        else if (a == 1) os << mon.str();
        else os << a.get_str() << "*" << mon.str();
    }
    return os.str();
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    int nvars() const { return static_cast<int>(names_.size()); }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                p += term();
            } else if (c == '-') {
                ++pos_;
                p -= term();
            } else {
                return p;
            }
        }
    }

    bool starts_atom(char c) const {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_' || c == '(';
    }

    Poly term() {
        Poly p = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                p = p * unary();
            } else if (starts_atom(c)) {
                p = p * unary();
            } else {
                return p;
            }
        }
    }

    Poly unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly power() {
        Poly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Poly atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Poly::constant(nvars(), parse_bigint(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            for (int i = 0; i < nvars(); ++i)
                if (names_[i] == id) return Poly::variable(nvars(), i);
            fail("unknown variable '" + id + "'");
        }
        fail("unexpected character");
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const std::string& expr, const std::vector<std::string>& var_names) {
    return Parser(expr, var_names).parse();
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

ModPoly::ModPoly(const Poly& p, std::uint64_t modulus) : modulus_(modulus), nvars_(p.nvars()) {
    if (modulus == 0 || modulus >= (1ULL << 63)) throw Error(ErrorKind::Unsupported, "modulus out of range");
    for (const auto& [e, c] : p.terms()) {
        std::uint64_t r = mod_u64(c, modulus);
        if (r == 0) continue;
        for (int x : e) {
            if (x > 255) throw Error(ErrorKind::Unsupported, "exponent too large");
            exps_.push_back(static_cast<std::uint8_t>(x));
        }
        coeffs_.push_back(r);
    }
}

std::uint64_t ModPoly::eval(std::span<const std::uint64_t> x) const {
    std::uint64_t s = 0;
    const std::uint8_t* e = exps_.data();
    for (std::size_t t = 0; t < coeffs_.size(); ++t, e += nvars_) {
        std::uint64_t v = coeffs_[t];
        for (int i = 0; i < nvars_ && v; ++i)
            for (int k = 0; k < e[i]; ++k) v = mulmod(v, x[i], modulus_);
        s = addmod(s, v, modulus_);
    }
    return s;
}

std::vector<std::uint64_t> ModPoly::univariate(int var, std::span<const std::uint64_t> x) const {
    std::vector<std::uint64_t> out;
    const std::uint8_t* e = exps_.data();
    for (std::size_t t = 0; t < coeffs_.size(); ++t, e += nvars_) {
        std::uint64_t v = coeffs_[t];
        for (int i = 0; i < nvars_ && v; ++i) {
            if (i == var) continue;
            for (int k = 0; k < e[i]; ++k) v = mulmod(v, x[i], modulus_);
        }
        std::size_t d = e[var];
        if (out.size() <= d) out.resize(d + 1, 0);
        out[d] = addmod(out[d], v, modulus_);
    }
    return out;
}

}  // namespace orbarith
