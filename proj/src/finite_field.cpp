#include "weilsum/finite_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weilsum {

namespace {

constexpr std::int64_t kMaxQ = std::int64_t{1} << 20;

// Dense polynomials over F_p, constant term first. Trailing zeros allowed.
using Poly = std::vector<std::int32_t>;

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i] != 0) return i;
    }
    return -1;
}

// Remainder of f modulo a monic divisor.
Poly poly_rem(Poly f, const Poly& m, std::int64_t p) {
    const int dm = degree(m);
    for (int df = degree(f); df >= dm; df = degree(f)) {
        const std::int64_t lead = f[df];
        for (int i = 0; i <= dm; ++i) {
            std::int64_t v = f[df - dm + i] - lead * m[i] % p;
            f[df - dm + i] = static_cast<std::int32_t>((v % p + p) % p);
        }
    }
    f.resize(std::max(dm, 1));
    return f;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::int32_t>((prod[i + j] + std::int64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_rem(std::move(prod), m, p);
}

Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
    Poly result{1};
    base = poly_rem(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, m, p);
        base = poly_mul_mod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

// Exhaustive irreducibility test: trial division by every monic polynomial
// of degree 1..deg(f)/2. Adequate at the supported field sizes.
bool is_irreducible(const Poly& f, std::int64_t p) {
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    for (int d = 1; 2 * d <= n; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::int64_t rest = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<std::int32_t>(rest % p);
                rest /= p;
            }
            g[d] = 1;
            if (degree(poly_rem(f, g, p)) < 0) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree n over F_p,
// comparing coefficient tuples from the constant term up.
Poly smallest_irreducible(std::int64_t p, int n) {
    Poly f(n + 1, 0);
    f[n] = 1;
    std::vector<std::int64_t> tuple(n, 0);
    while (true) {
        for (int i = 0; i < n; ++i) f[i] = static_cast<std::int32_t>(tuple[i]);
        if (is_irreducible(f, p)) return f;
        // increment with the constant term as the most significant digit
        int i = n - 1;
        while (i >= 0 && tuple[i] == p - 1) tuple[i--] = 0;
        if (i < 0) throw Error("no irreducible polynomial found");  // unreachable
        ++tuple[i];
    }
}

std::vector<std::int64_t> prime_factors(std::int64_t m) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

}  // namespace

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = (base % m + m) % m;
    while (e > 0) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return result;
}

bool is_invertible_exponent(std::int64_t q, std::uint64_t s) {
    if (s == 0) return false;
    return std::gcd(static_cast<std::uint64_t>(q - 1), s) == 1;
}

std::uint64_t mod_inverse(std::uint64_t s, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(s % m);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t quot = r0 / r1;
        std::int64_t tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - quot * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) {
        throw NotCoprimeError("mod_inverse: arguments are not coprime");
    }
    return static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(m) + static_cast<std::int64_t>(m)) %
                                      static_cast<std::int64_t>(m));
}

std::int64_t primitive_root_mod_p(std::int64_t p) {
    if (!is_prime(p)) throw NotPrimeError("primitive_root_mod_p: p is not prime");
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (std::int64_t g = 1; g < p; ++g) {
        bool ok = true;
        for (std::int64_t ell : factors) {
            if (pow_mod(g, static_cast<std::uint64_t>((p - 1) / ell), p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("primitive_root_mod_p: search failed");  // unreachable for prime p
}

Field::Field(std::int64_t p, int n, std::vector<std::int32_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw NotPrimeError("p = " + std::to_string(p_) + " is not prime");
    if (n_ < 1) throw Error("extension degree must be at least 1");

    q_ = 1;
    for (int i = 0; i < n_; ++i) {
        q_ *= p_;
        if (q_ > kMaxQ) throw TooLargeError("q = p^n exceeds the supported range (q <= 2^20)");
    }

    if (modulus_.empty()) {
        modulus_ = (n_ == 1) ? Poly{0, 1} : smallest_irreducible(p_, n_);
    } else {
        if (static_cast<int>(modulus_.size()) != n_ + 1 || modulus_[n_] != 1) {
            throw ReducibleModulusError("modulus must be monic of degree n");
        }
        for (std::int32_t c : modulus_) {
            if (c < 0 || c >= p_) throw ReducibleModulusError("modulus coefficients must lie in [0,p)");
        }
        if (n_ > 1 && !is_irreducible(modulus_, p_)) {
            throw ReducibleModulusError("modulus factors over F_p");
        }
    }

    weights_.resize(n_);
    weights_[n_ - 1] = 1;
    for (int i = n_ - 2; i >= 0; --i) weights_[i] = weights_[i + 1] * p_;
    one_ = static_cast<std::uint32_t>(weights_[0]);

    digits_.resize(static_cast<std::size_t>(q_) * n_);
    for (std::int64_t code = 0; code < q_; ++code) {
        std::int64_t rest = code;
        for (int i = n_ - 1; i >= 0; --i) {
            digits_[code * n_ + i] = static_cast<std::int32_t>(rest % p_);
            rest /= p_;
        }
    }

    // Trace is F_p-linear, so tabulate it from the traces of the power basis:
    // Tr(x^i) = sum over k of (x^{p^k})^i.
    std::vector<Poly> frob(n_);
    Poly x{0, 1};
    for (int k = 0; k < n_; ++k) {
        std::uint64_t e = 1;
        for (int i = 0; i < k; ++i) e *= static_cast<std::uint64_t>(p_);
        frob[k] = poly_pow_mod(x, e, modulus_, p_);
    }
    std::vector<std::int32_t> basis_trace(n_, 0);
    for (int i = 0; i < n_; ++i) {
        Poly acc(n_, 0);
        for (int k = 0; k < n_; ++k) {
            Poly term = poly_pow_mod(frob[k], static_cast<std::uint64_t>(i), modulus_, p_);
            term.resize(n_, 0);
            for (int j = 0; j < n_; ++j) acc[j] = static_cast<std::int32_t>((acc[j] + term[j]) % p_);
        }
        if (degree(acc) > 0) throw Error("trace of basis element is not scalar");
        basis_trace[i] = acc.empty() ? 0 : acc[0];
    }
    trace_.resize(q_);
    for (std::int64_t code = 0; code < q_; ++code) {
        std::int64_t t = 0;
        for (int i = 0; i < n_; ++i) t += std::int64_t{digits_[code * n_ + i]} * basis_trace[i];
        trace_[code] = static_cast<std::int32_t>(t % p_);
    }

    // Find the first primitive element in enumeration order, then build the
    // antilog/log tables from it.
    const auto factors = prime_factors(q_ - 1);
    auto decode_poly = [&](std::uint32_t code) {
        Poly f(n_);
        for (int i = 0; i < n_; ++i) f[i] = digits_[std::int64_t{code} * n_ + i];
        return f;
    };
    auto encode_poly = [&](const Poly& f) {
        std::int64_t code = 0;
        for (int i = 0; i < n_; ++i) code += std::int64_t{f[i]} * weights_[i];
        return static_cast<std::uint32_t>(code);
    };
    generator_ = 0;
    for (std::uint32_t cand = 1; cand < q_; ++cand) {
        const Poly f = decode_poly(cand);
        bool ok = true;
        for (std::int64_t ell : factors) {
            Poly e = poly_pow_mod(f, static_cast<std::uint64_t>((q_ - 1) / ell), modulus_, p_);
            e.resize(n_, 0);
            if (encode_poly(e) == one_) {
                ok = false;
                break;
            }
        }
        if (ok) {
            generator_ = cand;
            break;
        }
    }
    if (generator_ == 0 && q_ > 2) throw Error("no primitive element found");
    if (q_ == 2) generator_ = one_;

    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Poly g = decode_poly(generator_);
    Poly cur{1};
    cur.resize(n_, 0);
    for (std::int64_t i = 0; i < q_ - 1; ++i) {
        const std::uint32_t code = encode_poly(cur);
        exp_[i] = code;
        log_[code] = static_cast<std::uint32_t>(i);
        cur = poly_mul_mod(cur, g, modulus_, p_);
        cur.resize(n_, 0);
    }
}

std::uint32_t Field::encode(const FieldElement& x) const {
    if (static_cast<int>(x.coeffs.size()) != n_) throw Error("element has wrong number of coefficients");
    std::int64_t code = 0;
    for (int i = 0; i < n_; ++i) {
        if (x.coeffs[i] < 0 || x.coeffs[i] >= p_) throw Error("element coefficient out of range");
        code += std::int64_t{x.coeffs[i]} * weights_[i];
    }
    return static_cast<std::uint32_t>(code);
}

FieldElement Field::decode(std::uint32_t code) const {
    FieldElement x;
    x.coeffs.resize(n_);
    for (int i = 0; i < n_; ++i) x.coeffs[i] = digits_[std::int64_t{code} * n_ + i];
    return x;
}

std::uint32_t Field::from_prime_subfield(std::int64_t a) const {
    a = (a % p_ + p_) % p_;
    return static_cast<std::uint32_t>(a * weights_[0]);
}

std::uint32_t Field::add_code(std::uint32_t a, std::uint32_t b) const {
    std::int64_t code = 0;
    const std::int32_t* da = &digits_[std::int64_t{a} * n_];
    const std::int32_t* db = &digits_[std::int64_t{b} * n_];
    for (int i = 0; i < n_; ++i) {
        std::int32_t v = da[i] + db[i];
        if (v >= p_) v -= static_cast<std::int32_t>(p_);
        code += std::int64_t{v} * weights_[i];
    }
    return static_cast<std::uint32_t>(code);
}

std::uint32_t Field::sub_code(std::uint32_t a, std::uint32_t b) const {
    std::int64_t code = 0;
    const std::int32_t* da = &digits_[std::int64_t{a} * n_];
    const std::int32_t* db = &digits_[std::int64_t{b} * n_];
    for (int i = 0; i < n_; ++i) {
        std::int32_t v = da[i] - db[i];
        if (v < 0) v += static_cast<std::int32_t>(p_);
        code += std::int64_t{v} * weights_[i];
    }
    return static_cast<std::uint32_t>(code);
}

std::uint32_t Field::neg_code(std::uint32_t a) const { return sub_code(0, a); }

std::uint32_t Field::mul_code(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(std::uint64_t{log_[a]} + log_[b]) % (q_ - 1)];
}

std::uint32_t Field::inv_code(std::uint32_t a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t Field::pow_code(std::uint32_t x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? one_ : 0;
    const std::uint64_t n = static_cast<std::uint64_t>(q_ - 1);
    return exp_[(std::uint64_t{log_[x]} * (e % n)) % n];
}

std::uint32_t Field::log_code(std::uint32_t x) const {
    if (x == 0) throw DivisionByZeroError("discrete log of zero");
    return log_[x];
}

FieldHandle make_field(std::int64_t p, int n, std::optional<std::vector<std::int32_t>> modulus) {
    return std::make_shared<const Field>(p, n, modulus.value_or(std::vector<std::int32_t>{}));
}

FieldHandle parse_field_spec(const std::string& spec) {
    std::string base = spec;
    std::optional<std::vector<std::int32_t>> modulus;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        base = spec.substr(0, colon);
        std::vector<std::int32_t> coeffs;
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(std::stoi(item));
        modulus = std::move(coeffs);
    }
    std::int64_t p = 0;
    int n = 1;
    if (const auto caret = base.find('^'); caret != std::string::npos) {
        p = std::stoll(base.substr(0, caret));
        n = std::stoi(base.substr(caret + 1));
    } else {
        p = std::stoll(base);
    }
    return make_field(p, n, std::move(modulus));
}

std::int64_t trace(const Field& K, const FieldElement& x) { return K.trace_code(K.encode(x)); }

FieldElement add(const Field& K, const FieldElement& a, const FieldElement& b) {
    return K.decode(K.add_code(K.encode(a), K.encode(b)));
}

FieldElement sub(const Field& K, const FieldElement& a, const FieldElement& b) {
    return K.decode(K.sub_code(K.encode(a), K.encode(b)));
}

FieldElement neg(const Field& K, const FieldElement& a) { return K.decode(K.neg_code(K.encode(a))); }

FieldElement mul(const Field& K, const FieldElement& a, const FieldElement& b) {
    return K.decode(K.mul_code(K.encode(a), K.encode(b)));
}

FieldElement inv(const Field& K, const FieldElement& a) { return K.decode(K.inv_code(K.encode(a))); }

FieldElement pow(const Field& K, const FieldElement& x, std::uint64_t e) {
    return K.decode(K.pow_code(K.encode(x), e));
}

FieldElement primitive_element(const Field& K) { return K.decode(K.generator_code()); }

std::vector<FieldElement> enumerate(const Field& K) {
    std::vector<FieldElement> out;
    out.reserve(K.q());
    for (std::int64_t code = 0; code < K.q(); ++code) out.push_back(K.decode(static_cast<std::uint32_t>(code)));
    return out;
}

std::vector<FieldElement> units(const Field& K) {
    std::vector<FieldElement> out;
    out.reserve(K.q() - 1);
    for (std::int64_t code = 1; code < K.q(); ++code) out.push_back(K.decode(static_cast<std::uint32_t>(code)));
    return out;
}

}  // namespace weilsum
