#pragma once

// F_q-additive (twisted/Ore) polynomials sum_j c_j x^(q^j), stored sparsely by
// tau-degree j with commutation tau * b = b^q * tau. These are the coordinate
// forms of all morphisms between admissible module schemes.
//
// AdditiveForm extends the same data to several input slots
// (x_1, ..., x_k) -> sum_s sum_j c_{s,j} x_s^(q^j); that is the symbolic
// carrier used for jet-space points, since addition on function-field Witt
// vectors is componentwise and every map in sight is additive.

#include <map>
#include <utility>
#include <vector>

#include "ffjet/errors.hpp"
#include "ffjet/local.hpp"

namespace ffjet {

class AdditivePoly {
  public:
    AdditivePoly() = default;
    explicit AdditivePoly(const Ring& R) : ring_(&R) {}

    static AdditivePoly zero(const Ring& R) { return AdditivePoly(R); }

    static AdditivePoly identity(const Ring& R) { // x = tau^0
        AdditivePoly f(R);
        f.set(0, LocalElem::one(R));
        return f;
    }

    static AdditivePoly monomial(const Ring& R, int j, LocalElem c) {
        AdditivePoly f(R);
        f.set(j, std::move(c));
        return f;
    }

    static AdditivePoly from_coeffs(const Ring& R, const std::vector<LocalElem>& cs) {
        AdditivePoly f(R);
        for (size_t j = 0; j < cs.size(); ++j)
            f.set(static_cast<int>(j), cs[j]);
        return f;
    }

    const Ring& ring() const { return *ring_; }
    const std::map<int, LocalElem>& terms() const { return t_; }

    void set(int j, LocalElem c) {
        if (j < 0)
            throw ArithmeticError("AdditivePoly: negative tau-degree");
        if (c.is_zero() && c.known_prec() >= ring_->prec)
            t_.erase(j);
        else
            t_.insert_or_assign(j, std::move(c));
    }

    LocalElem coeff(int j) const {
        auto it = t_.find(j);
        if (it != t_.end())
            return it->second;
        return LocalElem::zero(*ring_);
    }

    LocalElem linear_coefficient() const { return coeff(0); }

    bool is_zero() const {
        for (auto& [j, c] : t_)
            if (!c.is_zero())
                return false;
        return true;
    }

    // largest j whose coefficient is nonzero at its known precision
    int support_max() const {
        int m = -1;
        for (auto& [j, c] : t_)
            if (!c.is_zero())
                m = j;
        return m;
    }

    AdditivePoly operator+(const AdditivePoly& o) const {
        AdditivePoly r = *this;
        for (auto& [j, c] : o.t_)
            r.set(j, r.coeff(j) + c);
        return r;
    }

    AdditivePoly operator-() const {
        AdditivePoly r = *this;
        for (auto& [j, c] : r.t_)
            c = -c;
        return r;
    }

    AdditivePoly operator-(const AdditivePoly& o) const { return *this + (-o); }

    AdditivePoly scaled(const LocalElem& a) const { // a * f (left coefficient)
        AdditivePoly r(*ring_);
        for (auto& [j, c] : t_)
            r.set(j, a * c);
        return r;
    }

    // x -> f(x)^(q^k): coefficients to the q^k power, support shifted by k
    AdditivePoly q_twist(int k) const {
        if (k == 0)
            return *this;
        AdditivePoly r(*ring_);
        for (auto& [j, c] : t_)
            r.set(j + k, c.pow_qj(static_cast<uint64_t>(k)));
        return r;
    }

    // Ore composition: (f . g)(x) = f(g(x)); coefficient n = sum_{i+j=n} f_i g_j^(q^i)
    AdditivePoly compose(const AdditivePoly& g) const {
        AdditivePoly r(*ring_);
        for (auto& [i, fi] : t_) {
            if (fi.is_zero() && fi.known_prec() >= ring_->prec)
                continue;
            for (auto& [j, gj] : g.t_)
                r.set(i + j, r.coeff(i + j) + fi * gj.pow_qj(static_cast<uint64_t>(i)));
        }
        return r;
    }

    AdditivePoly truncated(int degree_bound) const {
        AdditivePoly r(*ring_);
        for (auto& [j, c] : t_)
            if (j <= degree_bound)
                r.set(j, c);
        return r;
    }

    LocalElem evaluate(const LocalElem& x) const {
        LocalElem acc = LocalElem::zero(*ring_);
        for (auto& [j, c] : t_)
            acc = acc + c * x.pow_qj(static_cast<uint64_t>(j));
        return acc;
    }

    AdditivePoly frobenius() const { // apply phi to every coefficient
        AdditivePoly r(*ring_);
        for (auto& [j, c] : t_)
            r.set(j, c.frobenius());
        return r;
    }

    // membership in S-dagger: b_0 a unit and v(b_i) >= i for all i
    bool in_sdagger(std::string* why = nullptr) const {
        LocalElem b0 = coeff(0);
        if (b0.is_zero() || b0.valuation_or(1) != 0) {
            if (why)
                *why = "constant coefficient is not a unit";
            return false;
        }
        for (auto& [j, c] : t_) {
            if (j == 0 || c.is_zero())
                continue;
            if (c.valuation_or(c.known_prec()) < j) {
                if (why)
                    *why = "v(b_" + std::to_string(j) + ") < " + std::to_string(j);
                return false;
            }
        }
        return true;
    }

    friend bool eq(const AdditivePoly& a, const AdditivePoly& b) { return (a - b).is_zero(); }

  private:
    const Ring* ring_ = nullptr;
    std::map<int, LocalElem> t_;
};

// Compositional inverse inside S-dagger, up to tau-degree degree_bound:
// c_0 = b_0^-1 and c_n = -b_0^(-q^n) (c_0 b_n + c_1 b_{n-1}^q + ... + c_{n-1} b_1^(q^{n-1})).
inline AdditivePoly invert_sdagger(const AdditivePoly& f, int degree_bound) {
    std::string why;
    if (!f.in_sdagger(&why))
        throw NotInSDagger("invert_sdagger: " + why);
    const Ring& R = f.ring();
    LocalElem b0inv = f.coeff(0).invert();
    AdditivePoly g(R);
    g.set(0, b0inv);
    for (int n = 1; n <= degree_bound; ++n) {
        LocalElem acc = LocalElem::zero(R);
        for (int i = 0; i < n; ++i) {
            LocalElem bni = f.coeff(n - i);
            if (bni.is_zero())
                continue;
            acc = acc + g.coeff(i) * bni.pow_qj(static_cast<uint64_t>(i));
        }
        g.set(n, -(b0inv.pow_qj(static_cast<uint64_t>(n)) * acc));
    }
    return g;
}

// Solve f . phi_src(t) = phi_tgt(t) . f for f = sum b_i tau^i with given b_0.
// src/tgt are the full coefficient lists (a_0, a_1, ...) with a_0 = pi
// (strictness). Recursion:
//   b_r (pi - pi^(q^r)) = sum_{i=0}^{r-1} (b_i a_{r-i}^(q^i) - c_{r-i} b_i^(q^(r-i))).
inline AdditivePoly solve_intertwiner(const std::vector<LocalElem>& src,
                                      const std::vector<LocalElem>& tgt,
                                      const LocalElem& b0, int degree_bound) {
    if (src.empty() || tgt.empty())
        throw StrictnessViolation("solve_intertwiner: empty coefficient list");
    const Ring& R = b0.ring();
    LocalElem pi = LocalElem::pi(R);
    if (!eq(src[0], pi) || !eq(tgt[0], pi))
        throw StrictnessViolation("solve_intertwiner: constant terms must equal pi");
    if (b0.known_prec() <= 1)
        throw InsufficientPrecision("solve_intertwiner: need known precision > 1");

    AdditivePoly f(R);
    f.set(0, b0);
    std::vector<LocalElem> b{b0};
    for (int r = 1; r <= degree_bound; ++r) {
        LocalElem acc = LocalElem::zero(R);
        for (int i = 0; i < r; ++i) {
            int j = r - i;
            if (j < static_cast<int>(src.size()) && !src[static_cast<size_t>(j)].is_zero())
                acc = acc + b[static_cast<size_t>(i)] *
                                src[static_cast<size_t>(j)].pow_qj(static_cast<uint64_t>(i));
            if (j < static_cast<int>(tgt.size()) && !tgt[static_cast<size_t>(j)].is_zero())
                acc = acc - tgt[static_cast<size_t>(j)] *
                                b[static_cast<size_t>(i)].pow_qj(static_cast<uint64_t>(j));
        }
        // divide by pi - pi^(q^r) = pi * (1 - pi^(q^r - 1))
        LocalElem unit = LocalElem::one(R);
        LocalElem pipow = pi.pow_qj(static_cast<uint64_t>(r)).div_pi_exact(1);
        LocalElem br = acc.div_pi_exact(1) * (unit - pipow).invert();
        b.push_back(br);
        f.set(r, br);
    }
    return f;
}

inline LocalElem linear_coefficient(const AdditivePoly& f) { return f.linear_coefficient(); }

// ---------------------------------------------------------------------------
// Multi-slot additive forms: symbolic points whose components are additive
// expressions in the input slots. Keyed by (slot, tau-degree).

class AdditiveForm {
  public:
    AdditiveForm() = default;
    explicit AdditiveForm(const Ring& R) : ring_(&R) {}

    static AdditiveForm zero(const Ring& R) { return AdditiveForm(R); }

    static AdditiveForm slot(const Ring& R, int s) { // the coordinate x_s itself
        AdditiveForm f(R);
        f.set(s, 0, LocalElem::one(R));
        return f;
    }

    static AdditiveForm from_poly(const Ring& R, int s, const AdditivePoly& p) {
        AdditiveForm f(R);
        for (auto& [j, c] : p.terms())
            f.set(s, j, c);
        return f;
    }

    const Ring& ring() const { return *ring_; }
    const std::map<std::pair<int, int>, LocalElem>& terms() const { return t_; }

    void set(int s, int j, LocalElem c) {
        if (c.is_zero() && c.known_prec() >= ring_->prec)
            t_.erase({s, j});
        else
            t_.insert_or_assign({s, j}, std::move(c));
    }

    LocalElem coeff(int s, int j) const {
        auto it = t_.find({s, j});
        return it != t_.end() ? it->second : LocalElem::zero(*ring_);
    }

    bool is_zero() const {
        for (auto& [k, c] : t_)
            if (!c.is_zero())
                return false;
        return true;
    }

    // minimum known precision over stored coefficients (ring precision if none)
    int min_known_prec() const {
        int k = ring_->prec;
        for (auto& [key, c] : t_)
            k = std::min(k, c.known_prec());
        return k;
    }

    AdditiveForm operator+(const AdditiveForm& o) const {
        AdditiveForm r = *this;
        for (auto& [k, c] : o.t_)
            r.set(k.first, k.second, r.coeff(k.first, k.second) + c);
        return r;
    }

    AdditiveForm operator-() const {
        AdditiveForm r = *this;
        for (auto& [k, c] : r.t_)
            c = -c;
        return r;
    }

    AdditiveForm operator-(const AdditiveForm& o) const { return *this + (-o); }

    AdditiveForm scaled(const LocalElem& a) const {
        AdditiveForm r(*ring_);
        for (auto& [k, c] : t_)
            r.set(k.first, k.second, a * c);
        return r;
    }

    AdditiveForm q_power(int k) const { // form -> form^(q^k)
        if (k == 0)
            return *this;
        AdditiveForm r(*ring_);
        for (auto& [key, c] : t_)
            r.set(key.first, key.second + k, c.pow_qj(static_cast<uint64_t>(k)));
        return r;
    }

    AdditiveForm qhat_power(int k) const { return q_power(k * ring_->field.f); }

    AdditiveForm div_pi_exact(int k) const {
        AdditiveForm r(*ring_);
        for (auto& [key, c] : t_)
            r.set(key.first, key.second, c.div_pi_exact(k));
        return r;
    }

    AdditiveForm shifted(int k) const { // multiply by pi^k
        AdditiveForm r(*ring_);
        for (auto& [key, c] : t_)
            r.set(key.first, key.second, c.shifted(k));
        return r;
    }

    // restrict to one slot as a univariate additive polynomial
    AdditivePoly slot_poly(int s) const {
        AdditivePoly p(*ring_);
        for (auto& [key, c] : t_)
            if (key.first == s)
                p.set(key.second, c);
        return p;
    }

    std::vector<int> slots() const {
        std::vector<int> out;
        for (auto& [key, c] : t_)
            if (out.empty() || out.back() != key.first)
                out.push_back(key.first);
        return out;
    }

    // numeric evaluation: substitute x_s = vals[s]
    LocalElem evaluate(const std::map<int, LocalElem>& vals) const {
        LocalElem acc = LocalElem::zero(*ring_);
        for (auto& [key, c] : t_) {
            auto it = vals.find(key.first);
            if (it == vals.end())
                throw ArithmeticError("AdditiveForm: missing slot value");
            acc = acc + c * it->second.pow_qj(static_cast<uint64_t>(key.second));
        }
        return acc;
    }

    friend bool eq(const AdditiveForm& a, const AdditiveForm& b) { return (a - b).is_zero(); }

  private:
    const Ring* ring_ = nullptr;
    std::map<std::pair<int, int>, LocalElem> t_;
};

// f(form) for a univariate additive f: substitute the form into each monomial
inline AdditiveForm compose_poly_form(const AdditivePoly& f, const AdditiveForm& x) {
    AdditiveForm r(f.ring());
    for (auto& [i, ci] : f.terms()) {
        AdditiveForm xi = x.q_power(i); // x^(q^i)
        r = r + xi.scaled(ci);
    }
    return r;
}

} // namespace ffjet
