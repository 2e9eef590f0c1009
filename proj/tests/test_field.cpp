#include "doctest.h"

#include "ffjet/field.hpp"
#include "test_helpers.hpp"

using namespace ffjet;

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(FieldSpec(4, 1, 1, 1, Digits{1, 1}), ConfigError);     // p not prime
    CHECK_THROWS_AS(FieldSpec(2, 1, 1, 1, Digits{1, 1}), ConfigError);     // q = 2 rejected
    CHECK_THROWS_AS(FieldSpec(3, 1, 1, 2, Digits{1, 1, 1}), ConfigError);  // x^2+x+1 reducible? no:
    // x^2+x+1 has root 1 over F_3 (1+1+1=0), so it is reducible; the throw above is right.
    CHECK_NOTHROW(FieldSpec(3, 1, 1, 2, Digits{1, 0, 1}));  // x^2+1 irreducible over F_3
    CHECK_THROWS_AS(FieldSpec(3, 1, 2, 1, Digits{2, 0, 1}), ConfigError);  // x^2+2=(x+1)(x+2)
    CHECK_NOTHROW(FieldSpec(2, 2, 1, 1, Digits{1, 1, 1}));  // q = 4 is fine
}

TEST_CASE("basic field arithmetic in F_9") {
    const FieldSpec& F = tst::f9_qhat9();
    CHECK(F.q() == 3);
    CHECK(F.qhat() == 9);
    CHECK(F.card() == 9);

    FFElem i = F.element_by_index(3); // the class of x, since 3 = (0,1) base 3
    CHECK(F.mul(i, i) == F.neg(F.one())); // x^2 = -1 mod x^2+1

    FFElem g = F.multiplicative_generator();
    CHECK(F.multiplicative_order(g) == 8);

    // inverse
    for (uint64_t n = 1; n < 9; ++n) {
        FFElem a = F.element_by_index(n);
        CHECK(F.mul(a, F.inv(a)) == F.one());
    }

    // Frobenius q-power is the identity exactly on the F_q subfield
    int fixed = 0;
    for (uint64_t n = 0; n < 9; ++n) {
        FFElem a = F.element_by_index(n);
        if (F.in_subfield_q(a))
            ++fixed;
    }
    CHECK(fixed == 3);
    CHECK(F.subfield_q_basis().size() == 1);
}

TEST_CASE("pow_qj handles large twists") {
    const FieldSpec& F = tst::f9_qhat9();
    FFElem g = F.multiplicative_generator();
    // a^(q^j) cycles with period dividing deg over the prime q-field
    FFElem a = F.pow_qj(g, 2);
    CHECK(a == F.pow_u64(g, 9));
    // q^40 mod 8 = 3^40 mod 8 = 1, so g^(q^40) = g
    CHECK(F.pow_qj(g, 40) == g);
}
