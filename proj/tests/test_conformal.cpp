#include <doctest.h>

#include <random>

#include "loewner/conformal.hpp"
#include "loewner/errors.hpp"

using namespace loewner;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

BoundaryPoint F(double x) { return BoundaryPoint::finite(x); }

}  // namespace

TEST_CASE("mobius_fixing closed forms") {
    MobiusMap m = mobius_fixing(F(0), F(1));
    CHECK(near(mobius_apply(m, Complex{0.3, 0.7}), Complex{0.3, 0.7} / (1.0 - Complex{0.3, 0.7})));
    CHECK(near(mobius_apply(m, Complex{0, 1}), Complex{-0.5, 0.5}));

    MobiusMap id = mobius_fixing(F(0), BoundaryPoint::infinity());
    CHECK(mobius_apply(id, Complex{3, 4}) == Complex{3, 4});

    MobiusMap inv = mobius_fixing(BoundaryPoint::infinity(), F(0));
    CHECK(near(mobius_apply(inv, Complex{2, 1}), -1.0 / Complex{2, 1}));
    BoundaryPoint at_inf = mobius_apply(inv, BoundaryPoint::infinity());
    CHECK(!at_inf.infinite);
    CHECK(at_inf.x == 0.0);
}

TEST_CASE("mobius_fixing sends endpoints to 0 and infinity with positive determinant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        if (a == b) continue;
        MobiusMap m = mobius_fixing(F(a), F(b));
        CHECK(m.det() > 0.0);
        BoundaryPoint pa = mobius_apply(m, F(a));
        CHECK(!pa.infinite);
        CHECK(std::abs(pa.x) <= 1e-12 * std::max(1.0, std::abs(a)));
        CHECK(mobius_apply(m, F(b)).infinite);
        // apex of the geodesic goes to i
        Complex apex{0.5 * (a + b), 0.5 * std::abs(a - b)};
        CHECK(near(mobius_apply(m, apex), Complex{0, 1}, 1e-12));
    }
}

TEST_CASE("mobius_fixing rejects equal endpoints") {
    CHECK_THROWS_AS(mobius_fixing(F(1), F(1)), InputError);
    CHECK_THROWS_AS(mobius_fixing(BoundaryPoint::infinity(), BoundaryPoint::infinity()), InputError);
}

TEST_CASE("interior points stay in the upper half-plane") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3), h(1e-6, 3);
    for (int i = 0; i < 500; ++i) {
        MobiusMap m = mobius_fixing(F(u(rng)), F(u(rng) + 7.0));
        Complex z{u(rng), h(rng)};
        CHECK(mobius_apply(m, z).imag() > 0.0);
    }
}

TEST_CASE("composition equals sequential application") {
    MobiusMap f{2, 1, -1, 3}, g{1, -2, 0.5, 1};
    Complex z{0.4, 1.3};
    CHECK(near(mobius_apply(compose(f, g), z), mobius_apply(f, mobius_apply(g, z))));
    CHECK(near(mobius_apply(compose(f, f.inverse()), z), z));
}

TEST_CASE("pole maps to infinity and validation") {
    MobiusMap m{1, 0, 1, -2};
    CHECK(mobius_apply(m, F(2)).infinite);
    CHECK(mobius_apply(m, BoundaryPoint::infinity()).x == 1.0);
    CHECK_THROWS_AS(validate(MobiusMap{1, 0, 0, -1}), InputError);
    CHECK_NOTHROW(validate(MobiusMap{1, 0, -1, 2}));
}
