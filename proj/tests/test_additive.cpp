#include "doctest.h"

#include "ffjet/additive.hpp"
#include "test_helpers.hpp"

using namespace ffjet;

namespace {

AdditivePoly random_poly(const Ring& R, Rng& rng, int max_deg) {
    AdditivePoly f(R);
    for (int j = 0; j <= max_deg; ++j)
        f.set(j, random_elem(R, rng));
    return f;
}

AdditivePoly random_sdagger(const Ring& R, Rng& rng, int max_deg) {
    AdditivePoly f(R);
    f.set(0, random_unit(R, rng));
    for (int j = 1; j <= max_deg; ++j)
        f.set(j, random_elem(R, rng, j)); // v(b_j) >= j
    return f;
}

} // namespace

TEST_CASE("Ore composition basics") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    AdditivePoly id = AdditivePoly::identity(R);
    AdditivePoly tau = AdditivePoly::monomial(R, 1, LocalElem::one(R));
    LocalElem c = LocalElem::from_ff(R, R.field.from_int(2));

    // compose(tau, c tau^0) = c^q tau
    AdditivePoly got = tau.compose(AdditivePoly::monomial(R, 0, c));
    CHECK(eq(got.coeff(1), c.pow_qj(1)));
    CHECK(got.coeff(0).is_zero());

    // identity is neutral
    Rng rng(1);
    AdditivePoly f = random_poly(R, rng, 4);
    CHECK(eq(f.compose(id), f));
    CHECK(eq(id.compose(f), f));

    // (1 + pi tau)^(o2) = 1 + 2 pi tau + pi^(1+q) tau^2
    AdditivePoly g(R);
    g.set(0, LocalElem::one(R));
    g.set(1, pi);
    AdditivePoly gg = g.compose(g);
    CHECK(eq(gg.coeff(0), LocalElem::one(R)));
    CHECK(eq(gg.coeff(1), pi + pi));
    CHECK(eq(gg.coeff(2), pi * pi.pow_qj(1)));
}

TEST_CASE("compose is associative and F_q-linear") {
    const Ring& R = tst::r9(); // q = 3, qhat = 9
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        AdditivePoly f = random_poly(R, rng, 3);
        AdditivePoly g = random_poly(R, rng, 3);
        AdditivePoly h = random_poly(R, rng, 3);
        CHECK(eq(f.compose(g).compose(h), f.compose(g.compose(h))));
        CHECK(eq(f.compose(g + h), f.compose(g) + f.compose(h)));
        CHECK(eq((f + g).compose(h), f.compose(h) + g.compose(h)));
    }
}

TEST_CASE("evaluation matches composition") {
    const Ring& R = tst::r3();
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        AdditivePoly f = random_poly(R, rng, 3);
        AdditivePoly g = random_poly(R, rng, 3);
        LocalElem x = random_elem(R, rng);
        CHECK(eq(f.compose(g).evaluate(x), f.evaluate(g.evaluate(x))));
    }
}

TEST_CASE("q_twist") {
    const Ring& R = tst::r3();
    LocalElem c = LocalElem::from_ff(R, R.field.from_int(2));
    AdditivePoly f = AdditivePoly::monomial(R, 0, c);
    AdditivePoly tw = f.q_twist(1);
    CHECK(eq(tw.coeff(1), c.pow_qj(1)));
    CHECK(eq(AdditivePoly::identity(R).q_twist(1).coeff(1), LocalElem::one(R)));
    Rng rng(2);
    AdditivePoly g = random_poly(R, rng, 3);
    CHECK(eq(g.q_twist(0), g));
    // q_twist(f,k) = tau^k . f as Ore elements
    AdditivePoly tauk = AdditivePoly::monomial(R, 2, LocalElem::one(R));
    CHECK(eq(g.q_twist(2), tauk.compose(g)));
}

TEST_CASE("invert_sdagger examples") {
    const Ring& R = tst::r3();
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);

    AdditivePoly id = AdditivePoly::identity(R);
    CHECK(eq(invert_sdagger(id, 8), id));

    // f = 1 + pi tau: inverse 1 - pi tau + pi^(1+q) tau^2 - ...
    AdditivePoly f(R);
    f.set(0, one);
    f.set(1, pi);
    AdditivePoly g = invert_sdagger(f, 10);
    CHECK(eq(g.coeff(0), one));
    CHECK(eq(g.coeff(1), -pi));
    CHECK(eq(g.coeff(2), pi * pi.pow_qj(1)));
    for (int j = 0; j <= 10; ++j)
        CHECK(g.coeff(j).valuation_or(j) >= j);
    CHECK(g.in_sdagger());
    CHECK(eq(g.compose(f).truncated(10), id));
    CHECK(eq(f.compose(g).truncated(10), id));

    // f = 2 + pi tau over F_3[[pi]]: c_0 = 2
    AdditivePoly f2(R);
    f2.set(0, one + one);
    f2.set(1, pi);
    CHECK(eq(invert_sdagger(f2, 4).coeff(0), one + one));

    CHECK_THROWS_AS(invert_sdagger(AdditivePoly::monomial(R, 1, one), 4), NotInSDagger);
}

TEST_CASE("S-dagger is a group: random two-sided inverses") {
    const Ring& R = tst::r9();
    Rng rng(77);
    AdditivePoly id = AdditivePoly::identity(R);
    for (int t = 0; t < 50; ++t) {
        AdditivePoly f = random_sdagger(R, rng, 6);
        AdditivePoly g = invert_sdagger(f, 8);
        CHECK(g.in_sdagger());
        CHECK(eq(g.compose(f).truncated(8), id));
        CHECK(eq(f.compose(g).truncated(8), id));
    }
}

TEST_CASE("solve_intertwiner") {
    const Ring& R = tst::r3(24);
    LocalElem pi = LocalElem::pi(R);
    LocalElem one = LocalElem::one(R);
    Rng rng(13);

    // identity intertwines a module with itself
    std::vector<LocalElem> src{pi, random_elem(R, rng), random_unit(R, rng)};
    AdditivePoly f = solve_intertwiner(src, src, one, 8);
    CHECK(eq(f, AdditivePoly::identity(R)));

    // b0 = 0 forces f = 0
    AdditivePoly z = solve_intertwiner(src, src, LocalElem::zero(R), 8);
    CHECK(z.is_zero());

    // one step of the recursion toward G_a: abar_1 = phi(a_1) pi^(q-1)
    LocalElem a1 = random_unit(R, rng);
    std::vector<LocalElem> kern{pi, a1.frobenius().shifted(2)}; // q = 3: pi^(q-1) = pi^2
    std::vector<LocalElem> ga{pi};
    AdditivePoly th = solve_intertwiner(kern, ga, one, 6);
    LocalElem b1_want = (one - pi * pi).invert() * a1.frobenius().shifted(1);
    CHECK(eq(th.coeff(1), b1_want));

    // uniqueness: two runs agree exactly
    AdditivePoly th2 = solve_intertwiner(kern, ga, one, 6);
    CHECK(eq(th, th2));

    // the intertwining identity f . phi_src(t) = phi_tgt(t) . f holds
    AdditivePoly src_poly = AdditivePoly::from_coeffs(R, kern);
    AdditivePoly tgt_poly = AdditivePoly::from_coeffs(R, ga);
    AdditivePoly lhs = th.compose(src_poly).truncated(6);
    AdditivePoly rhs = tgt_poly.compose(th).truncated(6);
    CHECK(eq(lhs, rhs));

    // strictness violations
    std::vector<LocalElem> bad{one};
    CHECK_THROWS_AS(solve_intertwiner(bad, ga, one, 4), StrictnessViolation);
}

TEST_CASE("additive forms") {
    const Ring& R = tst::r3();
    Rng rng(21);
    AdditiveForm x1 = AdditiveForm::slot(R, 1);
    AdditiveForm x2 = AdditiveForm::slot(R, 2);
    LocalElem pi = LocalElem::pi(R);

    AdditiveForm f = x1.q_power(1).scaled(pi) + x2; // pi*x1^q + x2
    std::map<int, LocalElem> vals{{1, random_elem(R, rng)}, {2, random_elem(R, rng)}};
    LocalElem direct = pi * vals.at(1).pow_qj(1) + vals.at(2);
    CHECK(eq(f.evaluate(vals), direct));

    AdditivePoly th(R);
    th.set(0, LocalElem::one(R));
    th.set(1, pi);
    AdditiveForm g = compose_poly_form(th, f); // th(f(x1,x2))
    LocalElem want = th.evaluate(direct);
    CHECK(eq(g.evaluate(vals), want));
}
