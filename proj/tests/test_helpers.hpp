#pragma once

// Shared fixtures: small reference rings used across the test suites.

#include "ffjet/local.hpp"

namespace tst {

using namespace ffjet;

// F_3[[pi]]: p=3, h=1, f=1, s=1, modulus x + 1 (any degree-1 works)
inline const FieldSpec& f3() {
    static FieldSpec F(3, 1, 1, 1, Digits{1, 1});
    return F;
}

// F_9 as residue field with qhat = 9: p=3, h=1, f=2, s=1, modulus x^2 + 1
inline const FieldSpec& f9_qhat9() {
    static FieldSpec F(3, 1, 2, 1, Digits{1, 0, 1});
    return F;
}

// F_9 as quadratic extension with qhat = 3: p=3, h=1, f=1, s=2
inline const FieldSpec& f9_s2() {
    static FieldSpec F(3, 1, 1, 2, Digits{1, 0, 1});
    return F;
}

inline const Ring& r3(int prec = 16) {
    static Ring R(f3(), 16);
    static Ring R24(f3(), 24);
    if (prec == 16)
        return R;
    if (prec == 24)
        return R24;
    throw std::runtime_error("unsupported fixture precision");
}

inline const Ring& r9(int prec = 16) {
    static Ring R(f9_qhat9(), 16);
    static Ring R24(f9_qhat9(), 24);
    if (prec == 16)
        return R;
    if (prec == 24)
        return R24;
    throw std::runtime_error("unsupported fixture precision");
}

inline const Ring& r9s2() {
    static Ring R(f9_s2(), 16);
    return R;
}

} // namespace tst
