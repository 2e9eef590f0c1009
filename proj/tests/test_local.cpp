#include "doctest.h"

#include "ffjet/local.hpp"
#include "test_helpers.hpp"

using namespace ffjet;

TEST_CASE("frobenius lift fixes pi and Teichmueller constants of F_qhat") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    CHECK(eq(pi.frobenius(), pi));

    const Ring& S = tst::r9s2(); // s = 2, qhat = 3
    LocalElem c = LocalElem::from_ff(S, S.field.multiplicative_generator());
    // phi(c) = c^qhat = c^3, and c generates F_9* so c^3 != c
    CHECK(eq(c.frobenius(), c.pow_qj(1)));
    CHECK_FALSE(eq(c.frobenius(), c));

    // phi(c*pi^2) = c^3 * pi^2: coefficientwise rule
    LocalElem x = c * LocalElem::pi(S) * LocalElem::pi(S);
    LocalElem want = c.pow_qj(1) * LocalElem::pi(S) * LocalElem::pi(S);
    CHECK(eq(x.frobenius(), want));
}

TEST_CASE("pi-derivation examples") {
    const Ring& R = tst::r3(); // qhat = 3
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);

    // delta(c) = 0 for constants
    LocalElem c = LocalElem::from_ff(R, R.field.from_int(2));
    CHECK(c.delta().is_zero());

    // delta(pi) = 1 - pi^2 over F_3[[pi]]
    LocalElem dpi = pi.delta();
    CHECK(eq(dpi, one - pi * pi));
    CHECK(dpi.known_prec() == R.prec - 1);

    // delta(c + pi) = 1 - pi^8 over F_9[[pi]], qhat = 9
    const Ring& S = tst::r9();
    LocalElem g = LocalElem::from_ff(S, S.field.multiplicative_generator());
    LocalElem x = g + LocalElem::pi(S);
    LocalElem pi8 = LocalElem::pi(S);
    for (int i = 0; i < 7; ++i)
        pi8 = pi8 * LocalElem::pi(S);
    CHECK(eq(x.delta(), LocalElem::one(S) - pi8));
}

TEST_CASE("delta axioms and phi reconstruction on random elements") {
    const Ring& R = tst::r9();
    Rng rng(42);
    LocalElem pi = LocalElem::pi(R);
    for (int t = 0; t < 200; ++t) {
        LocalElem x = random_elem(R, rng);
        LocalElem y = random_elem(R, rng);
        CHECK(eq((x + y).delta(), x.delta() + y.delta()));
        LocalElem lhs = (x * y).delta();
        LocalElem rhs = x.pow_qhat() * y.delta() + x.delta() * y.pow_qhat() +
                        pi * x.delta() * y.delta();
        CHECK(eq(lhs, rhs));
        // phi(x) = x^qhat + pi*delta(x)
        CHECK(eq(x.frobenius(), x.pow_qhat() + pi * x.delta()));
    }
}

TEST_CASE("phi is a ring homomorphism") {
    const Ring& R = tst::r9s2();
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        LocalElem x = random_elem(R, rng);
        LocalElem y = random_elem(R, rng);
        CHECK(eq((x + y).frobenius(), x.frobenius() + y.frobenius()));
        CHECK(eq((x * y).frobenius(), x.frobenius() * y.frobenius()));
    }
}

TEST_CASE("valuation") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    CHECK(!LocalElem::zero(R).valuation().has_value());
    CHECK(LocalElem::zero(R).known_prec() == R.prec);
    CHECK(*(pi * pi + pi * pi * pi).valuation() == 2);
    CHECK(*pi.delta().valuation() == 0); // 1 - pi^(qhat-1) is a unit

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        LocalElem x = random_elem(R, rng);
        LocalElem y = random_elem(R, rng);
        auto vx = x.valuation(), vy = y.valuation();
        if (vx && vy && *vx + *vy < R.prec) {
            CHECK(*(x * y).valuation() == *vx + *vy);
        }
    }
}

TEST_CASE("div_pi_exact") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);
    CHECK(eq((pi * pi).div_pi_exact(2), one));
    // (pi - pi^qhat)/pi = 1 - pi^(qhat-1)
    CHECK(eq((pi - pi.pow_qhat()).div_pi_exact(1), one - pi * pi));
    CHECK_THROWS_AS((one + pi).div_pi_exact(1), NotDivisible);
}

TEST_CASE("invert") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);
    CHECK(eq(one.invert(), one));

    // (1 - pi)^-1 = 1 + pi + pi^2 + ...
    LocalElem g = (one - pi).invert();
    std::vector<FFElem> cs(static_cast<size_t>(R.prec), R.field.one());
    CHECK(eq(g, LocalElem::from_coeffs(R, cs)));

    CHECK_THROWS_AS(pi.invert(), NotAUnit);

    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        LocalElem u = random_unit(R, rng);
        CHECK(eq(u.invert().invert(), u));
        CHECK(eq(u * u.invert(), one));
    }
}

TEST_CASE("KElem valuation bookkeeping") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);

    KElem a(one, -2);               // pi^-2
    KElem b(pi * pi, 0);            // pi^2
    CHECK((a * b).valuation() == 0);
    CHECK(eq((a * b).to_local(), one));

    KElem c = a + KElem(one, 0);    // pi^-2 + 1
    CHECK(c.valuation() == -2);
    CHECK_FALSE(c.integral_certified());
    CHECK((c - a).valuation() == 0);

    KElem d = KElem(one - pi, -1) / KElem(one - pi, -1);
    CHECK(eq(d.to_local(), one));
}
