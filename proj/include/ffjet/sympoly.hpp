#pragma once

// Exact multivariate polynomials over F_p[pi]: the flat symbolic carrier.
// A monomial is (pi-exponent, variable exponent vector); coefficients live in
// F_p. Since qhat is a power of p, Frobenius powers act by multiplying every
// exponent (including the pi-exponent) and fixing prime-field coefficients,
// which keeps universal Witt polynomials tiny in this equal-characteristic
// setting.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffjet/errors.hpp"

namespace ffjet {

struct SymCtx {
    uint32_t p;
    int nvars;
};

struct SymMonomial {
    int64_t pi_exp;
    std::vector<int64_t> v; // length nvars

    bool operator<(const SymMonomial& o) const {
        if (pi_exp != o.pi_exp)
            return pi_exp < o.pi_exp;
        return v < o.v;
    }
    bool operator==(const SymMonomial& o) const { return pi_exp == o.pi_exp && v == o.v; }
};

class SymPoly {
  public:
    SymPoly() = default;
    explicit SymPoly(const SymCtx& ctx) : ctx_(&ctx) {}

    static SymPoly zero(const SymCtx& ctx) { return SymPoly(ctx); }

    static SymPoly constant(const SymCtx& ctx, uint32_t c) {
        SymPoly r(ctx);
        if (c % ctx.p)
            r.t_[SymMonomial{0, std::vector<int64_t>(static_cast<size_t>(ctx.nvars), 0)}] =
                c % ctx.p;
        return r;
    }

    static SymPoly variable(const SymCtx& ctx, int i) {
        SymPoly r(ctx);
        SymMonomial m{0, std::vector<int64_t>(static_cast<size_t>(ctx.nvars), 0)};
        m.v[static_cast<size_t>(i)] = 1;
        r.t_[m] = 1;
        return r;
    }

    static SymPoly pi(const SymCtx& ctx, int64_t k = 1) {
        SymPoly r(ctx);
        r.t_[SymMonomial{k, std::vector<int64_t>(static_cast<size_t>(ctx.nvars), 0)}] = 1;
        return r;
    }

    const SymCtx& ctx() const { return *ctx_; }
    const std::map<SymMonomial, uint32_t>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t n_terms() const { return t_.size(); }

    SymPoly operator+(const SymPoly& o) const {
        SymPoly r = *this;
        for (auto& [m, c] : o.t_)
            r.bump(m, c);
        return r;
    }

    SymPoly operator-() const {
        SymPoly r = *this;
        for (auto& [m, c] : r.t_)
            c = ctx_->p - c;
        return r;
    }

    SymPoly operator-(const SymPoly& o) const { return *this + (-o); }

    SymPoly operator*(const SymPoly& o) const {
        SymPoly r(*ctx_);
        for (auto& [m1, c1] : t_)
            for (auto& [m2, c2] : o.t_) {
                SymMonomial m = m1;
                m.pi_exp += m2.pi_exp;
                for (size_t i = 0; i < m.v.size(); ++i)
                    m.v[i] += m2.v[i];
                r.bump(m, static_cast<uint64_t>(c1) * c2 % ctx_->p);
            }
        return r;
    }

    // f^e for e a power of p: in characteristic p this is the e-th power
    // Frobenius, so exponents scale and coefficients are fixed (c^p = c in F_p).
    SymPoly p_power(uint64_t e) const {
        SymPoly r(*ctx_);
        for (auto& [m, c] : t_) {
            SymMonomial m2 = m;
            m2.pi_exp *= static_cast<int64_t>(e);
            for (auto& x : m2.v)
                x *= static_cast<int64_t>(e);
            r.t_[m2] = c;
        }
        return r;
    }

    SymPoly shifted(int64_t k) const { // * pi^k
        SymPoly r(*ctx_);
        for (auto& [m, c] : t_) {
            SymMonomial m2 = m;
            m2.pi_exp += k;
            r.t_[m2] = c;
        }
        return r;
    }

    SymPoly div_pi_exact(int64_t k) const {
        SymPoly r(*ctx_);
        for (auto& [m, c] : t_) {
            if (m.pi_exp < k)
                throw NotDivisible("SymPoly: pi-exponent " + std::to_string(m.pi_exp) +
                                   " < " + std::to_string(k));
            SymMonomial m2 = m;
            m2.pi_exp -= k;
            r.t_[m2] = c;
        }
        return r;
    }

    friend bool eq(const SymPoly& a, const SymPoly& b) { return (a - b).is_zero(); }

  private:
    const SymCtx* ctx_ = nullptr;
    std::map<SymMonomial, uint32_t> t_;

    void bump(const SymMonomial& m, uint64_t c) {
        if (!c)
            return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_[m] = static_cast<uint32_t>(c % ctx_->p);
            if (t_[m] == 0)
                t_.erase(m);
        } else {
            it->second = static_cast<uint32_t>((it->second + c) % ctx_->p);
            if (it->second == 0)
                t_.erase(it);
        }
    }
};

} // namespace ffjet
