#include "preisach/remnant.hpp"

#include "preisach/errors.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "support.hpp"

using namespace preisach;

namespace {

const PlaneBounds kBounds(-400.0, 400.0);

WeightField uniform_unit() { return WeightField::uniform(kBounds, 1.0 / 320000.0); }

}  // namespace

TEST_CASE("switched region: canonical cases") {
    const auto reset_neg = InterfaceLine::post_reset(kBounds, +1);

    const auto none = switched_region(reset_neg, 0.0);
    CHECK(none.empty());
    CHECK(none.area() == 0.0);

    const auto rect = switched_region(reset_neg, 240.0);
    CHECK(rect.sign == +1);
    const std::vector<PlanePoint> want{{0, 0}, {240, 0}, {240, -400}, {0, -400}};
    CHECK(rect.polygon == want);
    CHECK(rect.area() == doctest::Approx(240.0 * 400.0));

    // negative pulse after a positive reset carves the rows just below zero
    const auto reset_pos = InterfaceLine::post_reset(kBounds, -1);
    const auto strip = switched_region(reset_pos, -100.0);
    CHECK(strip.sign == -1);
    const std::vector<PlanePoint> want_strip{{0, -100}, {400, -100}, {400, 0}, {0, 0}};
    CHECK(strip.polygon == want_strip);
    CHECK(strip.area() == doctest::Approx(400.0 * 100.0));

    // a negative pulse on the negative-reset interface switches nothing
    CHECK(switched_region(reset_neg, -100.0).empty());

    CHECK_THROWS_AS(static_cast<void>(switched_region(reset_neg, 500.0)), InputRangeError);
}

TEST_CASE("switched region is empty exactly when the wipe is a no-op") {
    auto eng = sample_stream(0x0e6a, 23);
    for (int k = 0; k < 200; ++k) {
        const auto line = test::random_resting_interface(eng, kBounds);
        const double a = uniform_in(eng, -399.0, 399.0);
        const auto region = switched_region(line, a);
        const bool wipes_nothing = line.wipe(a) == line;
        CHECK(region.empty() == wipes_nothing);
        CHECK((region.area() == 0.0) == wipes_nothing);
    }
}

TEST_CASE("pulse on the grid equals the analytic wipe, relay for relay") {
    auto eng = sample_stream(0x1f1e, 29);
    for (int k = 0; k < 200; ++k) {
        const auto line = test::random_resting_interface(eng, kBounds);
        const double a = uniform_in(eng, -399.0, 399.0);

        DiscretePreisach pulsed(150, kBounds, 1.0);
        pulsed.load_interface(line);
        const std::array<double, 2> pulse{a, 0.0};
        pulsed.apply_input(pulse);

        DiscretePreisach wiped(150, kBounds, 1.0);
        wiped.load_interface(line.wipe(a));

        CHECK(pulsed.interface() == wiped.interface());
    }
}

TEST_CASE("uniform remnant curve: exact values") {
    const auto base = InterfaceLine::post_reset(kBounds, +1);
    const RemnantCurve curve(base, uniform_unit());

    CHECK(curve.value_at_zero() == doctest::Approx(-0.5));
    CHECK(curve.value(0.0) == doctest::Approx(-0.5));
    CHECK(curve.value(240.0) == doctest::Approx(0.1));
    CHECK(curve.value(400.0) == doctest::Approx(0.5));
    // flat for negative amplitudes: the reset already erased that side
    CHECK(curve.value(-250.0) == doctest::Approx(-0.5));

    for (const double a : {1.0, 97.3, 240.0, 399.0}) {
        CHECK(curve.derivative(a) == doctest::Approx(0.0025));
    }

    CHECK_THROWS_AS(static_cast<void>(curve.value(401.0)), InputRangeError);
    CHECK_THROWS_AS(static_cast<void>(curve.derivative(-401.0)), InputRangeError);
}

TEST_CASE("negative-polarity uniform curve mirrors the positive one") {
    const auto base = InterfaceLine::post_reset(kBounds, -1);
    const RemnantCurve curve(base, uniform_unit());
    CHECK(curve.value_at_zero() == doctest::Approx(0.5));
    CHECK(curve.value(-200.0) == doctest::Approx(0.0));
    CHECK(curve.value(-400.0) == doctest::Approx(-0.5));
    CHECK(curve.derivative(-137.0) == doctest::Approx(0.0025));
}

TEST_CASE("grid backend agrees with the closed form on the benchmark setup") {
    const auto base = InterfaceLine::post_reset(kBounds, +1);
    const RemnantCurve grid(base, uniform_unit(), RemnantCurve::Backend::grid, 1000);
    for (const double a : {0.0, 50.0, 100.0, 240.0, 333.3, 400.0}) {
        CHECK(std::abs(grid.value(a) - test::uniform_remnant(a)) <= 0.005);
    }
}

TEST_CASE("derivative conventions at interface vertices") {
    // one corner at 240: flat below it, full column integral from it on
    const auto base = InterfaceLine::post_reset(kBounds, +1).wipe(240.0);
    const RemnantCurve curve(base, uniform_unit());
    CHECK(curve.derivative(120.0) == 0.0);  // re-pulsing below the peak wipes nothing
    CHECK(curve.derivative(240.0) == doctest::Approx(0.0025));  // outward side at the corner
    CHECK(curve.derivative(300.0) == doctest::Approx(0.0025));

    const auto zero_weight = WeightField::uniform(kBounds, 0.0);
    const RemnantCurve flat(InterfaceLine::post_reset(kBounds, +1), zero_weight);
    for (const double a : {-300.0, 0.0, 150.0, 399.0}) CHECK(flat.derivative(a) == 0.0);
}

TEST_CASE("gaussian derivative matches central differences") {
    const auto w = WeightField::gaussian(kBounds, 150.0, -150.0, 120.0, 1.0);
    const RemnantCurve curve(InterfaceLine::post_reset(kBounds, +1), w);
    const double step = 1e-3 * 400.0;
    for (const double a : {40.0, 137.0, 260.0, 380.0}) {
        const double fd = (curve.value(a + step) - curve.value(a - step)) / (2.0 * step);
        CHECK(curve.derivative(a) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("derivative vs finite differences on random smooth fields") {
    auto eng = sample_stream(0xfd00, 31);
    int checked = 0;
    while (checked < 200) {
        const auto w = test::random_gaussian_weight(eng, kBounds);
        const auto base = test::random_resting_interface(eng, kBounds);
        const RemnantCurve curve(base, w);
        const double step = 1e-3 * 400.0;
        const double a = uniform_in(eng, -380.0, 380.0);
        // keep clear of curve kinks: interface vertices and zero
        bool near_kink = std::abs(a) < 4.0 * step;
        for (const auto& p : base.vertices()) {
            near_kink = near_kink || std::abs(a - p.alpha) < 4.0 * step ||
                        std::abs(a - p.beta) < 4.0 * step;
        }
        if (near_kink) continue;
        const double fd = (curve.value(a + step) - curve.value(a - step)) / (2.0 * step);
        const double d = curve.derivative(a);
        if (std::abs(fd) < 1e-12 * w.total_mass()) {
            CHECK(std::abs(d) <= 1e-9 * w.total_mass());
        } else {
            CHECK(d == doctest::Approx(fd).epsilon(1e-3));
        }
        ++checked;
    }
}

TEST_CASE("curve sampling") {
    const RemnantCurve curve(InterfaceLine::post_reset(kBounds, +1), uniform_unit());

    const std::array<double, 1> single{0.0};
    const auto one = curve.sample(single);
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == doctest::Approx(-0.5));
    CHECK(one[0].slope == doctest::Approx(0.0025));

    const std::array<double, 5> grid{0.0, 100.0, 200.0, 300.0, 400.0};
    const auto rows = curve.sample(grid);
    const std::array<double, 5> want{-0.5, -0.25, 0.0, 0.25, 0.5};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == doctest::Approx(want[i]));
    }

    const std::array<double, 3> unsorted{0.0, 200.0, 100.0};
    CHECK_THROWS_AS(static_cast<void>(curve.sample(unsorted)), std::invalid_argument);

    std::ostringstream csv;
    write_curve_csv(csv, rows);
    CHECK(csv.str().rfind("A,rho,drho_dA\n0,-0.5,0.0025\n", 0) == 0);
}

TEST_CASE("monotone for strictly positive weights") {
    auto eng = sample_stream(0x300d, 37);
    for (int field = 0; field < 20; ++field) {
        const auto w = test::random_grid_weight(eng, kBounds);
        REQUIRE(w.strictly_positive());
        const auto base = test::random_resting_interface(eng, kBounds);
        const RemnantCurve curve(base, w);
        double prev = curve.value(-400.0);
        for (int i = 1; i <= 100; ++i) {
            const double a = -400.0 + 8.0 * i;
            const double v = curve.value(a);
            CHECK(v >= prev - 1e-12 * w.total_mass());
            prev = v;
        }
    }
}

TEST_CASE("analytic and grid backends agree within a grid cell") {
    auto eng = sample_stream(0xbac0, 41);
    for (int k = 0; k < 200; ++k) {
        const auto w = test::random_grid_weight(eng, kBounds);
        const auto base = test::random_resting_interface(eng, kBounds);
        const double a = uniform_in(eng, -399.0, 399.0);

        const RemnantCurve analytic(base, w);
        const RemnantCurve grid(base, w, RemnantCurve::Backend::grid, 160);

        DiscretePreisach probe = DiscretePreisach::discretize(w, 160);
        const double tolerance = 2.0 * probe.max_column_mass();
        CHECK(std::abs(analytic.value(a) - grid.value(a)) <= tolerance + 1e-12);
    }
}

TEST_CASE("remnant curve is Lipschitz with the sup-density constant") {
    auto eng = sample_stream(0x11b5, 43);
    for (int k = 0; k < 200; ++k) {
        const auto w = (k % 2 == 0) ? test::random_grid_weight(eng, kBounds)
                                    : test::random_gaussian_weight(eng, kBounds);
        const auto base = test::random_resting_interface(eng, kBounds);
        const RemnantCurve curve(base, w);
        const double constant = 2.0 * kBounds.span() * w.sup_bound();
        const double a1 = uniform_in(eng, -400.0, 400.0);
        const double a2 = uniform_in(eng, -400.0, 400.0);
        CHECK(std::abs(curve.value(a1) - curve.value(a2)) <=
              constant * std::abs(a1 - a2) + 1e-12);
    }
}
