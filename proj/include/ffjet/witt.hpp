#pragma once

// Truncated pi-typical Witt vectors W_n(B) = B^(n+1) over carriers B, with
// ghost/unghost, componentwise addition, F, V, Teichmueller, the scalar
// embedding R -> W_n(R), and the FV - VF normal form.
//
// Ghost components: w_i = x_0^(qhat^i) + pi x_1^(qhat^(i-1)) + ... + pi^i x_i.
//
// Two multiplication paths: ghost/unghost over flat carriers (the correctness
// oracle), and evaluation of universal product polynomials over truncated
// carriers. The universal polynomials are computed once over F_p[pi] where
// every division is exact, so evaluating them loses no precision.

#include <memory>
#include <mutex>
#include <vector>

#include "ffjet/additive.hpp"
#include "ffjet/errors.hpp"
#include "ffjet/local.hpp"
#include "ffjet/sympoly.hpp"

namespace ffjet {

template <class C>
using WittVec = std::vector<C>; // components x_0 .. x_n

// Per-carrier hooks for the generic ghost algebra.
template <class C>
struct WittOps;

template <>
struct WittOps<LocalElem> {
    static LocalElem zero_like(const LocalElem& a) { return LocalElem::zero(a.ring()); }
    static LocalElem qhat_pow(const LocalElem& a, int m) {
        return a.pow_qj(static_cast<uint64_t>(m) * static_cast<uint64_t>(a.ring().field.f));
    }
    static LocalElem shift(const LocalElem& a, int k) { return a.shifted(k); }
    static LocalElem div_pi(const LocalElem& a, int k) { return a.div_pi_exact(k); }
    static LocalElem mul(const LocalElem& a, const LocalElem& b) { return a * b; }
};

template <>
struct WittOps<SymPoly> {
    static SymPoly zero_like(const SymPoly& a) { return SymPoly::zero(a.ctx()); }
    static SymPoly qhat_pow(const SymPoly& a, int m) {
        // qhat known only to callers; carried via ctx-free exponent argument
        // below. SymPoly stores no field data, so the exponent is supplied by
        // witt code through qhat_pow_e.
        (void)a;
        (void)m;
        throw ArithmeticError("SymPoly qhat_pow requires explicit exponent");
    }
    static SymPoly shift(const SymPoly& a, int k) { return a.shifted(k); }
    static SymPoly div_pi(const SymPoly& a, int k) { return a.div_pi_exact(k); }
    static SymPoly mul(const SymPoly& a, const SymPoly& b) { return a * b; }
};

template <>
struct WittOps<AdditiveForm> {
    static AdditiveForm zero_like(const AdditiveForm& a) { return AdditiveForm::zero(a.ring()); }
    static AdditiveForm qhat_pow(const AdditiveForm& a, int m) { return a.qhat_power(m); }
    static AdditiveForm shift(const AdditiveForm& a, int k) { return a.shifted(k); }
    static AdditiveForm div_pi(const AdditiveForm& a, int k) { return a.div_pi_exact(k); }
    static AdditiveForm mul(const AdditiveForm&, const AdditiveForm&) {
        throw ArithmeticError("products of additive forms are not additive");
    }
};

namespace wittdetail {

// qhat^m as a plain exponent, for the symbolic carrier
inline uint64_t pow_u64(uint64_t b, int m) {
    uint64_t e = 1;
    for (int i = 0; i < m; ++i)
        e *= b;
    return e;
}

template <class C>
C qhat_pow_e(const C& a, int m, uint64_t /*qhat*/) {
    return WittOps<C>::qhat_pow(a, m);
}

template <>
inline SymPoly qhat_pow_e<SymPoly>(const SymPoly& a, int m, uint64_t qhat) {
    return a.p_power(pow_u64(qhat, m));
}

} // namespace wittdetail

// ---------------------------------------------------------------------------
// Generic ghost algebra. qhat is passed explicitly so the symbolic carrier
// (which has no field attached) can participate.

template <class C>
std::vector<C> witt_ghost(const WittVec<C>& v, uint64_t qhat) {
    std::vector<C> w;
    w.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        C acc = wittdetail::qhat_pow_e(v[0], static_cast<int>(i), qhat);
        for (size_t k = 1; k <= i; ++k) {
            C t = wittdetail::qhat_pow_e(v[k], static_cast<int>(i - k), qhat);
            acc = acc + WittOps<C>::shift(t, static_cast<int>(k));
        }
        w.push_back(acc);
    }
    return w;
}

// Inverse of the ghost map; throws NotInGhostImage when a pi^i-division fails.
template <class C>
WittVec<C> witt_unghost(const std::vector<C>& w, uint64_t qhat) {
    WittVec<C> z;
    z.reserve(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        C acc = w[i];
        for (size_t k = 0; k < i; ++k) {
            C t = wittdetail::qhat_pow_e(z[k], static_cast<int>(i - k), qhat);
            acc = acc - WittOps<C>::shift(t, static_cast<int>(k));
        }
        try {
            z.push_back(WittOps<C>::div_pi(acc, static_cast<int>(i)));
        } catch (const NotDivisible& e) {
            throw NotInGhostImage(std::string("unghost: ") + e.what());
        }
    }
    return z;
}

template <class C>
WittVec<C> witt_add(const WittVec<C>& u, const WittVec<C>& v) {
    if (u.size() != v.size())
        throw LengthMismatch("witt_add: length mismatch");
    WittVec<C> r;
    r.reserve(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        r.push_back(u[i] + v[i]); // addition is performed componentwise
    return r;
}

template <class C>
WittVec<C> witt_sub(const WittVec<C>& u, const WittVec<C>& v) {
    if (u.size() != v.size())
        throw LengthMismatch("witt_sub: length mismatch");
    WittVec<C> r;
    r.reserve(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        r.push_back(u[i] - v[i]);
    return r;
}

// Multiplication through the ghost ring; exact over flat carriers.
template <class C>
WittVec<C> witt_mul_ghost(const WittVec<C>& u, const WittVec<C>& v, uint64_t qhat) {
    if (u.size() != v.size())
        throw LengthMismatch("witt_mul: length mismatch");
    std::vector<C> gu = witt_ghost(u, qhat);
    std::vector<C> gv = witt_ghost(v, qhat);
    std::vector<C> gw;
    gw.reserve(gu.size());
    for (size_t i = 0; i < gu.size(); ++i)
        gw.push_back(WittOps<C>::mul(gu[i], gv[i]));
    return witt_unghost(gw, qhat);
}

// Frobenius F: W_n -> W_(n-1): ghost(F v)_j = ghost(v)_(j+1); solved by the
// same triangular recursion as unghost.
template <class C>
WittVec<C> witt_frobenius_direct(const WittVec<C>& v, uint64_t qhat) {
    if (v.size() < 2)
        throw LengthMismatch("frobenius: need length >= 2");
    std::vector<C> g = witt_ghost(v, qhat);
    std::vector<C> shifted(g.begin() + 1, g.end());
    return witt_unghost(shifted, qhat);
}

template <class C>
WittVec<C> witt_verschiebung(const WittVec<C>& v) {
    WittVec<C> r;
    r.reserve(v.size() + 1);
    r.push_back(WittOps<C>::zero_like(v[0]));
    for (auto& c : v)
        r.push_back(c);
    return r;
}

template <class C>
WittVec<C> witt_teichmueller(const C& b, int n) {
    WittVec<C> r;
    r.reserve(static_cast<size_t>(n) + 1);
    r.push_back(b);
    for (int i = 0; i < n; ++i)
        r.push_back(WittOps<C>::zero_like(b));
    return r;
}

template <class C>
bool witt_is_zero(const WittVec<C>& v) {
    for (auto& c : v)
        if (!c.is_zero())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Universal polynomials over F_p[pi], cached per (p, h, f, n, op).

enum class UnivOp { Mul, Frobenius, QPow };

struct UnivEntry {
    SymCtx ctx;
    std::vector<SymPoly> polys;
};

namespace wittdetail {

struct UnivKey {
    uint32_t p;
    int h, f, n;
    UnivOp op;
    bool operator<(const UnivKey& o) const {
        if (p != o.p)
            return p < o.p;
        if (h != o.h)
            return h < o.h;
        if (f != o.f)
            return f < o.f;
        if (n != o.n)
            return n < o.n;
        return static_cast<int>(op) < static_cast<int>(o.op);
    }
};

inline std::shared_ptr<const UnivEntry> compute_universal(const UnivKey& key) {
    uint64_t q = 1;
    for (int i = 0; i < key.h; ++i)
        q *= key.p;
    uint64_t qhat = 1;
    for (int i = 0; i < key.f; ++i)
        qhat *= q;
    int n = key.n;
    auto entry = std::make_shared<UnivEntry>();
    int nvars = (key.op == UnivOp::Mul) ? 2 * (n + 1) : (n + 1);
    entry->ctx = SymCtx{key.p, nvars};
    const SymCtx& ctx = entry->ctx;

    WittVec<SymPoly> x;
    for (int i = 0; i <= n; ++i)
        x.push_back(SymPoly::variable(ctx, i));

    switch (key.op) {
    case UnivOp::Mul: {
        WittVec<SymPoly> y;
        for (int i = 0; i <= n; ++i)
            y.push_back(SymPoly::variable(ctx, n + 1 + i));
        entry->polys = witt_mul_ghost(x, y, qhat);
        break;
    }
    case UnivOp::Frobenius:
        entry->polys = witt_frobenius_direct(x, qhat);
        break;
    case UnivOp::QPow: {
        // x -> x^q in the Witt ring: ghost components are raised to the q
        std::vector<SymPoly> g = witt_ghost(x, qhat);
        for (auto& w : g)
            w = w.p_power(q);
        entry->polys = witt_unghost(g, qhat);
        break;
    }
    }
    return entry;
}

inline std::shared_ptr<const UnivEntry> universal(const UnivKey& key) {
    static std::mutex mu;
    static std::map<UnivKey, std::shared_ptr<const UnivEntry>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    // compute outside the lock; concurrent misses may duplicate work but the
    // computation is deterministic, so entries are identical
    auto entry = compute_universal(key);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(entry));
    return it->second;
}

inline bool is_p_power(uint64_t e, uint32_t p) {
    if (e == 0)
        return false;
    while (e % p == 0)
        e /= p;
    return e == 1;
}

} // namespace wittdetail

inline std::shared_ptr<const UnivEntry> universal_polys(const FieldSpec& F, int n, UnivOp op) {
    return wittdetail::universal(wittdetail::UnivKey{F.p, F.h, F.f, n, op});
}

// Evaluate one universal polynomial at Witt components (and a second vector
// for products). Exponents are p-powers by construction; asserted anyway.
inline LocalElem eval_universal(const SymPoly& poly, const std::vector<LocalElem>& args,
                                const Ring& R) {
    LocalElem acc = LocalElem::zero(R);
    for (auto& [m, c] : poly.terms()) {
        LocalElem term = LocalElem::from_ff(R, R.field.from_int(c));
        for (size_t i = 0; i < m.v.size(); ++i) {
            int64_t e = m.v[i];
            if (e == 0)
                continue;
            if (i >= args.size())
                throw ArithmeticError("eval_universal: missing argument");
            LocalElem pw = wittdetail::is_p_power(static_cast<uint64_t>(e), R.field.p)
                               ? args[i].p_power(static_cast<uint64_t>(e))
                               : [&] {
                                     LocalElem r = LocalElem::one(R);
                                     for (int64_t k = 0; k < e; ++k)
                                         r = r * args[i];
                                     return r;
                                 }();
            term = term * pw;
        }
        acc = acc + term.shifted(static_cast<int>(m.pi_exp));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Truncated-carrier operations via universal polynomials (no precision loss
// beyond the inputs' own).

inline WittVec<LocalElem> witt_mul(const WittVec<LocalElem>& u, const WittVec<LocalElem>& v) {
    if (u.size() != v.size())
        throw LengthMismatch("witt_mul: length mismatch");
    const Ring& R = u[0].ring();
    int n = static_cast<int>(u.size()) - 1;
    auto entry = universal_polys(R.field, n, UnivOp::Mul);
    std::vector<LocalElem> args = u;
    args.insert(args.end(), v.begin(), v.end());
    WittVec<LocalElem> r;
    r.reserve(u.size());
    for (auto& poly : entry->polys)
        r.push_back(eval_universal(poly, args, R));
    return r;
}

inline WittVec<LocalElem> witt_frobenius(const WittVec<LocalElem>& v) {
    if (v.size() < 2)
        throw LengthMismatch("frobenius: need length >= 2");
    const Ring& R = v[0].ring();
    int n = static_cast<int>(v.size()) - 1;
    auto entry = universal_polys(R.field, n, UnivOp::Frobenius);
    WittVec<LocalElem> r;
    r.reserve(v.size() - 1);
    for (auto& poly : entry->polys)
        r.push_back(eval_universal(poly, v, R));
    return r;
}

inline WittVec<LocalElem> witt_qpow(const WittVec<LocalElem>& v, int j) {
    if (j == 0)
        return v;
    const Ring& R = v[0].ring();
    int n = static_cast<int>(v.size()) - 1;
    auto entry = universal_polys(R.field, n, UnivOp::QPow);
    WittVec<LocalElem> r = v;
    for (int k = 0; k < j; ++k) {
        WittVec<LocalElem> next;
        next.reserve(r.size());
        for (auto& poly : entry->polys)
            next.push_back(eval_universal(poly, r, R));
        r = std::move(next);
    }
    return r;
}

inline WittVec<AdditiveForm> witt_frobenius(const WittVec<AdditiveForm>& v) {
    return witt_frobenius_direct(v, v[0].ring().field.qhat());
}

// ---------------------------------------------------------------------------
// Scalar embedding g: R -> W_n(R), the universal lift with ghost
// (r, phi(r), ..., phi^n(r)). Component i is known to prec - i.

inline WittVec<LocalElem> scalar_embed(const LocalElem& r, int n) {
    const Ring& R = r.ring();
    if (r.known_prec() < n)
        throw InsufficientPrecision("scalar_embed: need known precision >= order");
    std::vector<LocalElem> ghost;
    ghost.reserve(static_cast<size_t>(n) + 1);
    LocalElem cur = r;
    for (int i = 0; i <= n; ++i) {
        ghost.push_back(cur);
        cur = cur.frobenius();
    }
    return witt_unghost(ghost, R.field.qhat());
}

inline WittVec<LocalElem> witt_scalar_mul(const LocalElem& r, const WittVec<LocalElem>& v) {
    return witt_mul(scalar_embed(r, static_cast<int>(v.size()) - 1), v);
}

// k-scalars act componentwise (the Witt polynomials are k-linear)
inline WittVec<LocalElem> witt_k_scale(const FFElem& c, const WittVec<LocalElem>& v) {
    WittVec<LocalElem> r;
    r.reserve(v.size());
    for (auto& x : v)
        r.push_back(x.scaled(c));
    return r;
}

// ---------------------------------------------------------------------------
// The FV - VF normal form of Lemma-comm type: (FV - VF)(x_0,...,x_n) =
// (pi x_0, c_1 x_0^qhat, c_2 x_0^(qhat^2), ...). Returns (c_1, ..., c_n)
// mapped into the given ring; computed exactly over F_p[pi].

inline std::vector<LocalElem> fv_minus_vf_form(const Ring& R, int n) {
    if (n < 1)
        throw ArithmeticError("fv_minus_vf_form: need n >= 1");
    uint64_t qhat = R.field.qhat();
    SymCtx ctx{R.field.p, n + 1};
    WittVec<SymPoly> x;
    for (int i = 0; i <= n; ++i)
        x.push_back(SymPoly::variable(ctx, i));
    WittVec<SymPoly> fv = witt_frobenius_direct(witt_verschiebung(x), qhat);
    WittVec<SymPoly> vf = witt_verschiebung(witt_frobenius_direct(x, qhat));
    WittVec<SymPoly> d = witt_sub(fv, vf);

    // component 0 must be pi*x_0
    SymPoly expect0 = SymPoly::variable(ctx, 0).shifted(1);
    if (!eq(d[0], expect0))
        throw ConsistencyFailure("fv_minus_vf_form: component 0 is not pi*x_0");

    std::vector<LocalElem> cs;
    for (int j = 1; j <= n; ++j) {
        // component j must be c_j * x_0^(qhat^j) with c_j in F_p[pi]
        uint64_t e = wittdetail::pow_u64(qhat, j);
        LocalElem cj = LocalElem::zero(R);
        for (auto& [m, c] : d[static_cast<size_t>(j)].terms()) {
            bool pure = true;
            for (size_t i = 0; i < m.v.size(); ++i) {
                int64_t want = (i == 0) ? static_cast<int64_t>(e) : 0;
                if (m.v[i] != want)
                    pure = false;
            }
            if (!pure)
                throw ConsistencyFailure("fv_minus_vf_form: component " + std::to_string(j) +
                                         " is not a multiple of x_0^(qhat^j)");
            if (m.pi_exp < static_cast<int64_t>(R.prec))
                cj = cj + LocalElem::from_ff(R, R.field.from_int(c))
                              .shifted(static_cast<int>(m.pi_exp));
        }
        cs.push_back(cj);
    }
    return cs;
}

// per-component precision contract: component i of a derived vector is
// guaranteed to prec - i
inline bool meets_component_contract(const WittVec<LocalElem>& v) {
    const Ring& R = v[0].ring();
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i].known_prec() < R.prec - static_cast<int>(i))
            return false;
    return true;
}

} // namespace ffjet
