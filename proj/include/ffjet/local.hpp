#pragma once

// The truncated discrete valuation ring R = F_{qhat^s}[[pi]]/pi^N with
// per-element known-precision tracking, the Frobenius lift phi (coefficientwise
// qhat-power) and the pi-derivation delta(x) = (phi(x) - x^qhat)/pi.
//
// Precision contract: a LocalElem is meaningful modulo pi^known_prec only.
// Every operation documents its precision delta; nothing is ever reported
// beyond its known precision.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffjet/errors.hpp"
#include "ffjet/field.hpp"

namespace ffjet {

struct Ring {
    FieldSpec field;
    int prec; // ambient truncation N

    Ring(FieldSpec f_, int prec_) : field(std::move(f_)), prec(prec_) {
        if (prec < 1)
            throw ConfigError("ring: precision must be >= 1");
    }

    bool operator==(const Ring& o) const { return prec == o.prec && field == o.field; }
};

class LocalElem {
  public:
    LocalElem() = default;

    static LocalElem zero(const Ring& R, int known = -1) {
        LocalElem x;
        x.ring_ = &R;
        x.known_ = known < 0 ? R.prec : known;
        return x;
    }

    static LocalElem one(const Ring& R) { return from_ff(R, R.field.one()); }

    static LocalElem pi(const Ring& R) {
        LocalElem x = zero(R);
        if (R.prec > 1) {
            x.c_.assign(2, R.field.zero());
            x.c_[1] = R.field.one();
        }
        return x;
    }

    static LocalElem from_ff(const Ring& R, const FFElem& c) {
        LocalElem x = zero(R);
        x.c_.assign(1, c);
        x.trim();
        return x;
    }

    static LocalElem from_coeffs(const Ring& R, std::vector<FFElem> cs, int known = -1) {
        LocalElem x = zero(R, known);
        if (static_cast<int>(cs.size()) > x.known_)
            cs.resize(static_cast<size_t>(x.known_));
        x.c_ = std::move(cs);
        x.trim();
        return x;
    }

    const Ring& ring() const { return *ring_; }
    int known_prec() const { return known_; }
    const std::vector<FFElem>& coeffs() const { return c_; }

    FFElem coeff(int i) const {
        if (i < 0 || i >= known_)
            throw InsufficientPrecision("coeff: index " + std::to_string(i) +
                                        " not known (prec " + std::to_string(known_) + ")");
        if (i < static_cast<int>(c_.size()))
            return c_[static_cast<size_t>(i)];
        return ring_->field.zero();
    }

    // zero modulo pi^known_prec
    bool is_zero() const { return c_.empty(); }

    // certified valuation; nullopt means "zero at known precision"
    std::optional<int> valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero())
                return static_cast<int>(i);
        return std::nullopt;
    }

    int valuation_or(int dflt) const {
        auto v = valuation();
        return v ? *v : dflt;
    }

    LocalElem restricted(int k) const { // truncate knowledge to min(known, k)
        LocalElem r = *this;
        if (k < r.known_) {
            r.known_ = k < 0 ? 0 : k;
            if (static_cast<int>(r.c_.size()) > r.known_)
                r.c_.resize(static_cast<size_t>(r.known_));
            r.trim();
        }
        return r;
    }

    LocalElem operator+(const LocalElem& o) const {
        check_ring(o);
        LocalElem r = zero(*ring_, std::min(known_, o.known_));
        size_t n = std::max(c_.size(), o.c_.size());
        n = std::min(n, static_cast<size_t>(r.known_));
        r.c_.assign(n, ring_->field.zero());
        for (size_t i = 0; i < n; ++i) {
            FFElem a = i < c_.size() ? c_[i] : ring_->field.zero();
            FFElem b = i < o.c_.size() ? o.c_[i] : ring_->field.zero();
            r.c_[i] = ring_->field.add(a, b);
        }
        r.trim();
        return r;
    }

    LocalElem operator-(const LocalElem& o) const { return *this + (-o); }

    LocalElem operator-() const {
        LocalElem r = *this;
        for (auto& c : r.c_)
            c = ring_->field.neg(c);
        return r;
    }

    LocalElem operator*(const LocalElem& o) const {
        check_ring(o);
        const Ring& R = *ring_;
        int va = valuation_or(known_);
        int vb = o.valuation_or(o.known_);
        int kr = std::min({known_ + vb, o.known_ + va, R.prec});
        if (kr < 0)
            kr = 0;
        LocalElem r = zero(R, kr);
        if (c_.empty() || o.c_.empty())
            return r;
        size_t n = std::min(c_.size() + o.c_.size() - 1, static_cast<size_t>(kr));
        r.c_.assign(n, R.field.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            for (size_t j = 0; j < o.c_.size() && i + j < n; ++j) {
                if (o.c_[j].is_zero())
                    continue;
                r.c_[i + j] = R.field.add(r.c_[i + j], R.field.mul(c_[i], o.c_[j]));
            }
        }
        r.trim();
        return r;
    }

    LocalElem scaled(const FFElem& c) const {
        LocalElem r = *this;
        for (auto& x : r.c_)
            x = ring_->field.mul(x, c);
        r.trim();
        return r;
    }

    // multiply by pi^k (k >= 0)
    LocalElem shifted(int k) const {
        const Ring& R = *ring_;
        LocalElem r = zero(R, std::min(known_ + k, R.prec));
        size_t n = std::min(c_.size() + static_cast<size_t>(k), static_cast<size_t>(r.known_));
        if (n > static_cast<size_t>(k)) {
            r.c_.assign(n, R.field.zero());
            for (size_t i = 0; i + static_cast<size_t>(k) < n; ++i)
                r.c_[i + static_cast<size_t>(k)] = c_[i];
        }
        r.trim();
        return r;
    }

    // Frobenius lift: coefficient of pi^i goes to its qhat-th power. Exact,
    // fixes the subring generated by F_qhat and pi.
    LocalElem frobenius() const {
        LocalElem r = *this;
        for (auto& c : r.c_)
            c = ring_->field.frobenius_qhat(c);
        return r;
    }

    LocalElem frobenius_iter(int k) const {
        LocalElem r = *this;
        for (int i = 0; i < k; ++i)
            r = r.frobenius();
        return r;
    }

    // x^e for e a power of p: char-p Frobenius spreads coefficients,
    // (sum a_i pi^i)^e = sum a_i^e pi^(i*e). Gains precision.
    LocalElem p_power(uint64_t e) const {
        const Ring& R = *ring_;
        if (e == 1)
            return *this;
        int kr = R.prec;
        if (known_ < R.prec) {
            // known*e, saturating
            kr = (known_ == 0) ? 0
                 : (e >= static_cast<uint64_t>(R.prec))
                     ? R.prec
                     : static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(known_) * e,
                                                           static_cast<uint64_t>(R.prec)));
        }
        LocalElem r = zero(R, kr);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            uint64_t idx = static_cast<uint64_t>(i) * e;
            if (idx >= static_cast<uint64_t>(kr))
                continue;
            if (r.c_.size() <= idx)
                r.c_.resize(static_cast<size_t>(idx) + 1, R.field.zero());
            r.c_[static_cast<size_t>(idx)] = R.field.pow_u64(c_[i], e);
        }
        r.trim();
        return r;
    }

    // x^(q^j); q^j is a p-power, exponent saturates against the truncation
    LocalElem pow_qj(uint64_t j) const {
        const Ring& R = *ring_;
        uint64_t q = R.field.q();
        uint64_t e = 1;
        bool sat = false;
        for (uint64_t i = 0; i < j; ++i) {
            if (e > static_cast<uint64_t>(R.prec)) {
                sat = true;
                break;
            }
            e *= q;
        }
        if (sat || e > static_cast<uint64_t>(R.prec) * 2 + 2) {
            // only the constant term survives below pi^prec
            LocalElem r = zero(R, known_ == 0 ? 0 : R.prec);
            if (!c_.empty() && !c_[0].is_zero())
                r.c_.assign(1, R.field.pow_qj(c_[0], j));
            r.trim();
            return r;
        }
        return p_power(e);
    }

    LocalElem pow_qhat() const { return pow_qj(static_cast<uint64_t>(ring_->field.f)); }

    // delta(x) = (phi(x) - x^qhat)/pi ; costs one unit of precision
    LocalElem delta() const {
        if (known_ < 1)
            throw InsufficientPrecision("delta: operand has no known precision");
        LocalElem num = frobenius() - pow_qhat();
        return num.div_pi_exact(1);
    }

    LocalElem delta_iter(int k) const {
        LocalElem r = *this;
        for (int i = 0; i < k; ++i)
            r = r.delta();
        return r;
    }

    LocalElem div_pi_exact(int k) const {
        if (k == 0)
            return *this;
        if (known_ < k)
            throw InsufficientPrecision("div_pi_exact: known precision " +
                                        std::to_string(known_) + " < divisor exponent " +
                                        std::to_string(k));
        for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
            if (!c_[static_cast<size_t>(i)].is_zero())
                throw NotDivisible("div_pi_exact: coefficient of pi^" + std::to_string(i) +
                                   " is nonzero");
        LocalElem r = zero(*ring_, known_ - k);
        if (static_cast<int>(c_.size()) > k)
            r.c_.assign(c_.begin() + k, c_.end());
        r.trim();
        return r;
    }

    LocalElem invert() const {
        const Ring& R = *ring_;
        if (known_ < 1)
            throw InsufficientPrecision("invert: operand has no known precision");
        if (c_.empty() || c_[0].is_zero())
            throw NotAUnit("invert: valuation is positive");
        // power series inversion: r_n determined by sum_{i<=n} x_i r_{n-i} = [n==0]
        FFElem c0inv = R.field.inv(c_[0]);
        LocalElem r = zero(R, known_);
        r.c_.assign(static_cast<size_t>(known_), R.field.zero());
        for (int n = 0; n < known_; ++n) {
            FFElem acc = (n == 0) ? R.field.one() : R.field.zero();
            for (int i = 1; i <= n && i < static_cast<int>(c_.size()); ++i)
                acc = R.field.sub(acc, R.field.mul(c_[static_cast<size_t>(i)],
                                                   r.c_[static_cast<size_t>(n - i)]));
            r.c_[static_cast<size_t>(n)] = R.field.mul(acc, c0inv);
        }
        r.trim();
        return r;
    }

    // equality as far as both operands are known
    friend bool eq(const LocalElem& a, const LocalElem& b) { return (a - b).is_zero(); }

    friend bool eq_to_prec(const LocalElem& a, const LocalElem& b, int k) {
        LocalElem d = a - b;
        if (d.known_prec() < k)
            throw InsufficientPrecision("eq_to_prec: difference known only to " +
                                        std::to_string(d.known_prec()));
        return d.restricted(k).is_zero();
    }

    std::string str() const {
        std::string out;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            if (!first)
                out += " + ";
            first = false;
            out += "(";
            for (size_t j = 0; j < c_[i].d.size(); ++j) {
                if (j)
                    out += ",";
                out += std::to_string(c_[i].d[j]);
            }
            out += ")";
            if (i == 1)
                out += "*pi";
            else if (i > 1)
                out += "*pi^" + std::to_string(i);
        }
        if (first)
            out = "0";
        out += " + O(pi^" + std::to_string(known_) + ")";
        return out;
    }

  private:
    const Ring* ring_ = nullptr;
    int known_ = 0;
    std::vector<FFElem> c_; // size <= known_, trailing zeros trimmed

    void trim() {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    void check_ring(const LocalElem& o) const {
        if (ring_ != o.ring_)
            throw ArithmeticError("operands from different rings");
    }
};

inline LocalElem random_elem(const Ring& R, Rng& rng, int val_at_least = 0) {
    std::vector<FFElem> cs(static_cast<size_t>(R.prec), R.field.zero());
    for (int i = val_at_least; i < R.prec; ++i)
        cs[static_cast<size_t>(i)] = rng.field_elem(R.field);
    return LocalElem::from_coeffs(R, std::move(cs));
}

inline LocalElem random_unit(const Ring& R, Rng& rng) {
    std::vector<FFElem> cs(static_cast<size_t>(R.prec), R.field.zero());
    cs[0] = rng.nonzero_field_elem(R.field);
    for (int i = 1; i < R.prec; ++i)
        cs[static_cast<size_t>(i)] = rng.field_elem(R.field);
    return LocalElem::from_coeffs(R, std::move(cs));
}

// K = R[1/pi] via valuation bookkeeping: value = mant * pi^exp with exp in Z.
// The absolute precision of the value is exp + known_prec(mant).
class KElem {
  public:
    KElem() = default;
    KElem(LocalElem m, int e = 0) : mant_(std::move(m)), exp_(e) { normalize(); }

    static KElem zero(const Ring& R) { return KElem(LocalElem::zero(R), 0); }

    const LocalElem& mant() const { return mant_; }
    int exp() const { return exp_; }
    const Ring& ring() const { return mant_.ring(); }

    bool is_zero() const { return mant_.is_zero(); }
    int abs_prec() const { return exp_ + mant_.known_prec(); }

    // certified valuation; nullopt when zero at known precision
    std::optional<int> valuation() const {
        auto v = mant_.valuation();
        if (!v)
            return std::nullopt;
        return exp_ + *v;
    }

    KElem operator+(const KElem& o) const {
        int e = std::min(exp_, o.exp_);
        LocalElem a = mant_.shifted(exp_ - e);
        LocalElem b = o.mant_.shifted(o.exp_ - e);
        return KElem(a + b, e);
    }

    KElem operator-() const { return KElem(-mant_, exp_); }
    KElem operator-(const KElem& o) const { return *this + (-o); }
    KElem operator*(const KElem& o) const { return KElem(mant_ * o.mant_, exp_ + o.exp_); }

    KElem div_pi(int k) const { return KElem(mant_, exp_ - k); }

    KElem invert() const {
        if (mant_.is_zero())
            throw NotAUnit("KElem: inverse of (certified) zero");
        return KElem(mant_.invert(), -exp_);
    }

    KElem operator/(const KElem& o) const { return *this * o.invert(); }

    KElem frobenius() const { return KElem(mant_.frobenius(), exp_); } // phi fixes pi

    // integral part check: value in R, certified at current precision
    bool integral_certified(std::string* why = nullptr) const {
        if (exp_ >= 0)
            return true;
        auto v = mant_.valuation();
        if (v && *v + exp_ < 0) {
            if (why)
                *why = "certified valuation " + std::to_string(*v + exp_);
            return false;
        }
        if (!v && mant_.known_prec() + exp_ < 0) {
            if (why)
                *why = "cannot certify: precision too low";
            throw PrecisionTooLowToCertify("integrality check below available precision");
        }
        return true;
    }

    // materialize into R (requires integrality); truncates to ring precision
    LocalElem to_local() const {
        if (exp_ >= 0)
            return mant_.shifted(exp_);
        return mant_.div_pi_exact(-exp_);
    }

  private:
    LocalElem mant_;
    int exp_ = 0;

    // keep mant of valuation 0 where possible
    void normalize() {
        auto v = mant_.valuation();
        if (v && *v > 0) {
            mant_ = mant_.div_pi_exact(*v);
            exp_ += *v;
        }
    }
};

} // namespace ffjet
