#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"
#include "loewner/generators.hpp"
#include "loewner/surgery.hpp"

using namespace loewner;

namespace {

double to_segment(Complex z, Complex a, Complex b) {
    double len = std::norm(b - a);
    double t = len == 0 ? 0 : std::clamp(((z - a) * std::conj(b - a)).real() / len, 0.0, 1.0);
    return std::abs(z - (a + t * (b - a)));
}

// Hausdorff distance between two polylines
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto one_way = [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
        double worst = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            for (int k = 0; k < 8; ++k) {
                Complex z = p[i] + (p[i + 1] - p[i]) * (k / 8.0);
                double best = INFINITY;
                for (std::size_t j = 0; j + 1 < q.size(); ++j) best = std::min(best, to_segment(z, q[j], q[j + 1]));
                worst = std::max(worst, best);
            }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

std::vector<Complex> unit_arc(int n) {
    std::vector<Complex> out;
    for (int j = 0; j <= n; ++j) out.push_back(std::polar(1.0, std::numbers::pi * j / n));
    return out;
}

}  // namespace

TEST_CASE("geodesics in the empty domain are half-circles") {
    auto pts = hyperbolic_geodesic({}, PrimeEnd::at(-1), PrimeEnd::at(1), {5, 0});
    REQUIRE(pts.size() == 5);
    for (int j = 0; j < 5; ++j) {
        Complex expect = std::polar(1.0, std::numbers::pi * (5 - j) / 6);
        CHECK(std::abs(pts[j] - expect) <= 1e-14);
    }
    const double r = 0.7;
    for (auto z : hyperbolic_geodesic({}, PrimeEnd::at(0), PrimeEnd::at(2 * r), {9, 0}))
        CHECK(std::abs(std::abs(z - r) - r) <= 1e-14);
}

TEST_CASE("end refinement crowds samples toward the far end") {
    auto plain = hyperbolic_geodesic({}, PrimeEnd::at(-1), PrimeEnd::at(1), {8, 0});
    auto fine = hyperbolic_geodesic({}, PrimeEnd::at(-1), PrimeEnd::at(1), {8, 6});
    CHECK(fine.size() == plain.size() + 6);
    CHECK(std::abs(fine.back() - 1.0) < std::abs(plain.back() - 1.0) / 32);
    auto closed = closing_geodesic({}, PrimeEnd::at(-1), PrimeEnd::at(1), 8, Complex{1, 0}, 1e-4);
    CHECK(std::abs(closed.back() - 1.0) <= 1e-4);
}

TEST_CASE("geodesic from a slit tip has zero energy in the slit domain") {
    MapStack s{std::nullopt, {SlitElement::vertical(0, 1)}, std::nullopt};
    auto pts = hyperbolic_geodesic(s, PrimeEnd::last_tip(), PrimeEnd::at(1), {64, 0});
    CHECK(std::abs(pts.front() - Complex{0, 1}) < 0.1);
    CHECK(std::abs(pts.back() - 1.0) < 0.1);
    for (auto z : pts) {
        CHECK(z.imag() > 0);
        CHECK(std::abs(z.real()) > 1e-9);
    }
    CHECK(domain_energy(s, PrimeEnd::last_tip(), PrimeEnd::at(1), pts).energy <= 0.01);
}

TEST_CASE("capacity prefix cuts inside an element keeping capacity exact") {
    Chord c = named_chord("p1");
    ReversalState st = start_reversal(c);
    double total = st.times.back();
    for (double frac : {0.0, 0.1, 0.37, 0.5, 0.999, 1.0}) {
        std::size_t full = 0;
        auto pre = capacity_prefix(st.times, st.elements, frac * total, &full);
        double h = 0;
        for (const auto& e : pre) h += e.hcap();
        CHECK(std::abs(h - 2 * frac * total) <= 1e-12 * total);
        CHECK(full <= pre.size());
    }
}

TEST_CASE("first step pulls the half-circle back through the prefix alone") {
    Chord c = named_chord("p1");
    ReversalState st = start_reversal(c);
    double total = st.times.back();
    double eps = total / 8;
    ReversalState next = local_reversal_step(st, eps);
    CHECK(next.step == 1);
    CHECK(std::abs(next.t_cursor - (total - eps)) <= 1e-12 * total);

    MapStack g{std::nullopt, capacity_prefix(st.times, st.elements, total - eps), std::nullopt};
    auto expect = hyperbolic_geodesic(g, PrimeEnd::at(c.end), PrimeEnd::last_tip(), {});
    REQUIRE(next.eta.size() == expect.size() + 1);
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(next.eta[i] - expect[i]) <= 1e-9);
}

TEST_CASE("the geodesic chord is a fixed point") {
    Chord c = geodesic_chord(-1, 1, 200);
    ReversalState st = start_reversal(c);
    double eps = st.times.back() / 5;
    for (int i = 0; i < 4; ++i) {
        st = local_reversal_step(st, eps);
        for (auto z : st.eta) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-3);
    }
    ReversalResult r = reverse_chord(c, 8);
    CHECK(r.reversed.start == 1.0);
    CHECK(r.reversed.end == -1.0);
    std::vector<Complex> path{r.reversed.start};
    path.insert(path.end(), r.reversed.vertices.begin(), r.reversed.vertices.end());
    path.push_back(r.reversed.end);
    std::vector<Complex> arc = unit_arc(400);
    std::reverse(arc.begin(), arc.end());
    CHECK(hausdorff(path, arc) <= 0.02);
}

TEST_CASE("ledger on G1: energy never grows, capacities stay bounded") {
    Chord c = named_chord("g1");
    ReversalState st = start_reversal(c);
    double total = st.times.back();
    double eps = total / 16;
    ReversalState one = local_reversal_step(st, eps);
    REQUIRE(one.ledger.rows.size() == 1);
    CHECK(one.ledger.rows[0].energy_total <= st.ledger.initial_energy + 1e-3);

    ReversalResult r = reverse_chord(c, 16);
    REQUIRE(r.ledger.rows.size() == 16);
    double prev = r.ledger.initial_energy;
    // fitted on g1, p1 and the geodesic at k = 4 and 16: the geodesic step carries exactly 2 eps
    // and the joint hull never exceeds 2T
    const double geodesic_constant = 2.0, joint_constant = 1.0;
    for (std::size_t i = 0; i < r.ledger.rows.size(); ++i) {
        const LedgerRow& row = r.ledger.rows[i];
        CHECK(row.step == static_cast<int>(i));
        CHECK(row.energy_total <= prev + 1e-3);
        prev = row.energy_total;
        CHECK(row.geodesic_hcap <= geodesic_constant * eps * (1 + 1e-6));
        CHECK(row.joint_hcap <= 2 * total + joint_constant * (total - row.t_cursor) + 1e-9);
    }
    CHECK(r.ledger.rows.back().t_cursor == 0.0);
}

TEST_CASE("reversal swaps the endpoints exactly") {
    for (const char* name : {"p1", "p1-mirror"}) {
        Chord c = named_chord(name);
        ReversalResult r = reverse_chord(c, 4);
        CHECK(r.reversed.start == c.end);
        CHECK(r.reversed.end == c.start);
        CHECK_NOTHROW(validate(r.reversed));
    }
}

TEST_CASE("reversal rejects bad step sizes") {
    ReversalState st = start_reversal(named_chord("p1"));
    CHECK_THROWS_AS(local_reversal_step(st, 0.0), InputError);
    CHECK_THROWS_AS(local_reversal_step(st, 2 * st.t_cursor), InputError);
    CHECK_THROWS_AS(reverse_chord(named_chord("p1"), 0), InputError);
}

TEST_CASE("commutation of energies") {
    auto slit = [](double x, double h, int n) {
        CurveSegment s{x, {}};
        for (int i = 1; i <= n; ++i) s.vertices.push_back({x, h * i / n});
        return s;
    };
    SUBCASE("two slits") {
        CommutationResult r = commutation_defect(slit(0, 0.3, 800), slit(1, 0.3, 800));
        CHECK(std::abs(r.lhs - r.rhs) <= 0.01);
    }
    SUBCASE("mirror pair") {
        CurveSegment g{0, {}}, m{1, {}};
        for (int i = 1; i <= 200; ++i) {
            double t = i / 200.0;
            Complex z{0.2 * std::sin(3 * t), 0.4 * t};
            g.vertices.push_back(z);
            m.vertices.push_back(Complex{1 - z.real(), z.imag()});
        }
        CommutationResult r = commutation_defect(g, m);
        CHECK(std::abs(r.lhs - r.rhs) <= 1e-9);
    }
    SUBCASE("empty first segment") {
        CurveSegment eta = slit(1, 0.3, 100);
        CommutationResult r = commutation_defect(CurveSegment{0, {}}, eta);
        CHECK(r.lhs == r.rhs);
        CHECK(r.lhs == partial_energy(eta, PrimeEnd::at(0)));
    }
    SUBCASE("crossing segments are rejected") {
        CurveSegment a{0, {{0.5, 0.5}, {1.2, 0.6}}};
        CurveSegment b{1, {{1, 0.3}, {1, 1.0}}};
        CHECK_THROWS_AS(commutation_defect(a, b), InputError);
    }
}
