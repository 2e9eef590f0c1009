#pragma once

// Finite field tower F_p < F_q < F_qhat < F_{qhat^s} with an explicit modulus.
// Elements are digit vectors over F_p in the power basis of the modulus, so
// all arithmetic is bit-exact reproducible from the configuration alone.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ffjet/errors.hpp"

namespace ffjet {

using Digits = std::vector<uint32_t>; // little-endian F_p digits

struct FFElem {
    Digits d; // length = extension degree, entries in [0, p)

    bool operator==(const FFElem& o) const { return d == o.d; }
    bool is_zero() const {
        for (uint32_t x : d)
            if (x)
                return false;
        return true;
    }
};

namespace detail {

inline bool is_prime_u32(uint32_t n) {
    if (n < 2)
        return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Dense F_p[x] helpers (little-endian, trailing zeros allowed).
inline void fpx_trim(Digits& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int fpx_deg(const Digits& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)])
            return i;
    return -1;
}

inline Digits fpx_mul(const Digits& a, const Digits& b, uint32_t p) {
    if (a.empty() || b.empty())
        return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    fpx_trim(r);
    return r;
}

// a mod m, m monic-normalizable
inline Digits fpx_mod(Digits a, const Digits& m, uint32_t p) {
    int dm = fpx_deg(m);
    uint32_t lead = m[static_cast<size_t>(dm)];
    // multiply by lead^-1 on the fly via Fermat inverse
    uint32_t lead_inv = 1;
    {
        uint32_t e = p - 2, b = lead, acc = 1;
        while (e) {
            if (e & 1)
                acc = static_cast<uint64_t>(acc) * b % p;
            b = static_cast<uint64_t>(b) * b % p;
            e >>= 1;
        }
        lead_inv = acc;
    }
    fpx_trim(a);
    while (fpx_deg(a) >= dm) {
        int da = fpx_deg(a);
        uint32_t c = static_cast<uint64_t>(a[static_cast<size_t>(da)]) * lead_inv % p;
        int shift = da - dm;
        for (int i = 0; i <= dm; ++i) {
            uint64_t sub = static_cast<uint64_t>(c) * m[static_cast<size_t>(i)] % p;
            uint32_t& t = a[static_cast<size_t>(i + shift)];
            t = static_cast<uint32_t>((t + p - sub) % p);
        }
        fpx_trim(a);
    }
    return a;
}

inline bool fpx_is_zero(const Digits& a) { return fpx_deg(a) < 0; }

} // namespace detail

// FieldSpec fixes the whole tower: q = p^h, qhat = q^f, and the coefficient
// field F_{qhat^s} = F_p[x]/(modulus) with deg(modulus) = h*f*s.
class FieldSpec {
  public:
    uint32_t p = 0;
    int h = 0, f = 0, s = 0;
    Digits modulus; // monic irreducible over F_p, degree h*f*s

    FieldSpec() = default;

    FieldSpec(uint32_t p_, int h_, int f_, int s_, Digits mod_)
        : p(p_), h(h_), f(f_), s(s_), modulus(std::move(mod_)) {
        if (!detail::is_prime_u32(p))
            throw ConfigError("field: p = " + std::to_string(p) + " is not prime");
        if (h < 1 || f < 1 || s < 1)
            throw ConfigError("field: h, f, s must be >= 1");
        if (p == 2 && h == 1)
            throw ConfigError("field: q = 2 is rejected (the theory assumes q >= 3)");
        deg_ = h * f * s;
        if (detail::fpx_deg(modulus) != deg_)
            throw ConfigError("field: modulus degree must equal h*f*s = " + std::to_string(deg_));
        for (uint32_t c : modulus)
            if (c >= p)
                throw ConfigError("field: modulus digit out of range");
        if (modulus.back() != 1)
            throw ConfigError("field: modulus must be monic");
        if (!irreducible_over_fp(modulus))
            throw ConfigError("field: modulus is reducible over F_p");
        q_ = 1;
        for (int i = 0; i < h; ++i)
            q_ *= p;
        qhat_ = 1;
        for (int i = 0; i < f; ++i)
            qhat_ *= q_;
        order_ = 1;
        for (int i = 0; i < deg_; ++i)
            order_ *= p;
    }

    int degree() const { return deg_; }
    uint64_t q() const { return q_; }
    uint64_t qhat() const { return qhat_; }
    uint64_t card() const { return order_; } // |F_{qhat^s}|

    FFElem zero() const { return FFElem{Digits(static_cast<size_t>(deg_), 0)}; }
    FFElem one() const {
        FFElem e = zero();
        if (deg_ > 0)
            e.d[0] = 1;
        return e;
    }
    FFElem from_int(uint64_t n) const {
        FFElem e = zero();
        e.d[0] = static_cast<uint32_t>(n % p);
        return e;
    }

    FFElem add(const FFElem& a, const FFElem& b) const {
        FFElem r = a;
        for (int i = 0; i < deg_; ++i)
            r.d[static_cast<size_t>(i)] =
                (r.d[static_cast<size_t>(i)] + b.d[static_cast<size_t>(i)]) % p;
        return r;
    }

    FFElem sub(const FFElem& a, const FFElem& b) const {
        FFElem r = a;
        for (int i = 0; i < deg_; ++i)
            r.d[static_cast<size_t>(i)] =
                (r.d[static_cast<size_t>(i)] + p - b.d[static_cast<size_t>(i)]) % p;
        return r;
    }

    FFElem neg(const FFElem& a) const { return sub(zero(), a); }

    FFElem mul(const FFElem& a, const FFElem& b) const {
        Digits prod = detail::fpx_mul(a.d, b.d, p);
        Digits red = detail::fpx_mod(std::move(prod), modulus, p);
        red.resize(static_cast<size_t>(deg_), 0);
        return FFElem{std::move(red)};
    }

    FFElem pow_u64(const FFElem& a, uint64_t e) const {
        FFElem acc = one();
        FFElem b = a;
        while (e) {
            if (e & 1)
                acc = mul(acc, b);
            b = mul(b, b);
            e >>= 1;
        }
        return acc;
    }

    // a^(q^j); the exponent is reduced modulo the multiplicative order, so j
    // may be arbitrarily large.
    FFElem pow_qj(const FFElem& a, uint64_t j) const {
        if (a.is_zero())
            return a;
        uint64_t e = 1;
        uint64_t modord = order_ - 1;
        for (uint64_t i = 0; i < j; ++i)
            e = e * (q_ % modord) % modord;
        if (e == 0)
            e = modord; // q^j = 0 mod ord means exponent is a multiple of ord
        return pow_u64(a, e);
    }

    FFElem frobenius_qhat(const FFElem& a) const { return pow_u64(a, qhat_); }

    FFElem inv(const FFElem& a) const {
        if (a.is_zero())
            throw NotAUnit("field: inverse of zero");
        return pow_u64(a, order_ - 2);
    }

    bool in_subfield_q(const FFElem& a) const { return pow_u64(a, q_) == a; }
    bool in_subfield_qhat(const FFElem& a) const { return pow_u64(a, qhat_) == a; }

    // Deterministic search for a generator of the multiplicative group.
    FFElem multiplicative_generator() const {
        for (uint64_t n = 1; n < order_; ++n) {
            FFElem c = element_by_index(n);
            if (c.is_zero())
                continue;
            if (multiplicative_order(c) == order_ - 1)
                return c;
        }
        throw ConfigError("field: no multiplicative generator found");
    }

    uint64_t multiplicative_order(const FFElem& a) const {
        if (a.is_zero())
            return 0;
        FFElem acc = a;
        uint64_t k = 1;
        while (!(acc == one())) {
            acc = mul(acc, a);
            ++k;
        }
        return k;
    }

    // Index <-> element bijection (base-p digit expansion); used for
    // deterministic enumeration and random sampling.
    FFElem element_by_index(uint64_t n) const {
        FFElem e = zero();
        for (int i = 0; i < deg_ && n; ++i) {
            e.d[static_cast<size_t>(i)] = static_cast<uint32_t>(n % p);
            n /= p;
        }
        return e;
    }

    // Basis of the F_q subfield as kernel of (Frobenius_q - id) over F_p.
    std::vector<FFElem> subfield_q_basis() const {
        int n = deg_;
        // columns: images of basis vectors under x -> x^q - x
        std::vector<Digits> m(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            FFElem b = zero();
            b.d[static_cast<size_t>(j)] = 1;
            FFElem im = sub(pow_u64(b, q_), b);
            m[static_cast<size_t>(j)] = im.d;
        }
        // kernel of the n x n matrix whose j-th column is m[j]
        std::vector<Digits> rows(static_cast<size_t>(n), Digits(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    m[static_cast<size_t>(j)][static_cast<size_t>(i)];
        std::vector<int> pivot_col;
        int rank = 0;
        for (int col = 0; col < n && rank < n; ++col) {
            int sel = -1;
            for (int i = rank; i < n; ++i)
                if (rows[static_cast<size_t>(i)][static_cast<size_t>(col)]) {
                    sel = i;
                    break;
                }
            if (sel < 0)
                continue;
            std::swap(rows[static_cast<size_t>(sel)], rows[static_cast<size_t>(rank)]);
            uint32_t piv = rows[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            uint32_t piv_inv = 1;
            {
                uint32_t e = p - 2, b2 = piv, acc = 1;
                while (e) {
                    if (e & 1)
                        acc = static_cast<uint64_t>(acc) * b2 % p;
                    b2 = static_cast<uint64_t>(b2) * b2 % p;
                    e >>= 1;
                }
                piv_inv = acc;
            }
            for (int j = 0; j < n; ++j)
                rows[static_cast<size_t>(rank)][static_cast<size_t>(j)] =
                    static_cast<uint64_t>(rows[static_cast<size_t>(rank)][static_cast<size_t>(j)]) * piv_inv % p;
            for (int i = 0; i < n; ++i) {
                if (i == rank)
                    continue;
                uint32_t c = rows[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (!c)
                    continue;
                for (int j = 0; j < n; ++j) {
                    uint64_t sub2 = static_cast<uint64_t>(c) *
                                    rows[static_cast<size_t>(rank)][static_cast<size_t>(j)] % p;
                    uint32_t& t = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    t = static_cast<uint32_t>((t + p - sub2) % p);
                }
            }
            pivot_col.push_back(col);
            ++rank;
        }
        std::vector<bool> is_pivot(static_cast<size_t>(n), false);
        for (int c : pivot_col)
            is_pivot[static_cast<size_t>(c)] = true;
        std::vector<FFElem> basis;
        for (int free = 0; free < n; ++free) {
            if (is_pivot[static_cast<size_t>(free)])
                continue;
            FFElem v = zero();
            v.d[static_cast<size_t>(free)] = 1;
            for (int i = 0; i < rank; ++i) {
                uint32_t c = rows[static_cast<size_t>(i)][static_cast<size_t>(free)];
                if (c)
                    v.d[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
                        static_cast<uint32_t>((p - c) % p);
            }
            basis.push_back(v);
        }
        return basis;
    }

    bool operator==(const FieldSpec& o) const {
        return p == o.p && h == o.h && f == o.f && s == o.s && modulus == o.modulus;
    }

  private:
    int deg_ = 0;
    uint64_t q_ = 0, qhat_ = 0, order_ = 0;

    // Trial factorization: divide by every monic polynomial of degree
    // 1..deg/2. Fine at configuration scale.
    bool irreducible_over_fp(const Digits& m) const {
        int dm = detail::fpx_deg(m);
        if (dm <= 0)
            return false;
        if (dm == 1)
            return true;
        for (int dd = 1; dd <= dm / 2; ++dd) {
            // enumerate monic divisor candidates of degree dd
            uint64_t count = 1;
            for (int i = 0; i < dd; ++i)
                count *= p;
            for (uint64_t idx = 0; idx < count; ++idx) {
                Digits cand(static_cast<size_t>(dd) + 1, 0);
                uint64_t t = idx;
                for (int i = 0; i < dd; ++i) {
                    cand[static_cast<size_t>(i)] = static_cast<uint32_t>(t % p);
                    t /= p;
                }
                cand[static_cast<size_t>(dd)] = 1;
                if (detail::fpx_is_zero(detail::fpx_mod(m, cand, p)))
                    return false;
            }
        }
        return true;
    }
};

// Deterministic cross-platform RNG (splitmix64); std:: distributions are
// implementation-defined and would break byte-identical sweeps.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0)
            return 0;
        uint64_t threshold = (~n + 1) % n; // 2^64 mod n
        for (;;) {
            uint64_t r = next();
            if (r >= threshold)
                return r % n;
        }
    }

    FFElem field_elem(const FieldSpec& F) { return F.element_by_index(below(F.card())); }

    FFElem nonzero_field_elem(const FieldSpec& F) {
        return F.element_by_index(1 + below(F.card() - 1));
    }
};

} // namespace ffjet
