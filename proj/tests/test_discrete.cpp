#include "preisach/discrete.hpp"

#include "preisach/errors.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "support.hpp"

using namespace preisach;

namespace {

const PlaneBounds kBounds(-400.0, 400.0);

DiscretePreisach benchmark_operator() {
    // 1000 levels -> 500500 relays of equal weight, total mass 1
    return DiscretePreisach(1000, kBounds, 1.0 / 500500.0);
}

}  // namespace

TEST_CASE("relay_update semantics") {
    CHECK(relay_update(-1, 5.0, 3.0, -3.0) == 1);   // input above alpha switches on
    CHECK(relay_update(-1, 0.0, 3.0, -3.0) == -1);  // in-band input holds
    CHECK(relay_update(+1, 0.0, 3.0, -3.0) == +1);
    CHECK(relay_update(+1, -4.0, 3.0, -3.0) == -1);  // input below beta switches off
    CHECK_THROWS_AS(relay_update(-1, 0.0, -3.0, 3.0), MalformedRelayError);
    CHECK_THROWS_AS(relay_update(0, 0.0, 3.0, -3.0), std::invalid_argument);
}

TEST_CASE("grid geometry") {
    const auto op = benchmark_operator();
    CHECK(op.levels() == 1000);
    CHECK(op.relay_count() == 500500);
    CHECK(op.spacing() == doctest::Approx(0.8));
    CHECK(op.level(0) == doctest::Approx(-399.6));
    CHECK(op.level(999) == doctest::Approx(399.6));
    CHECK(op.edge(0) == -400.0);
    CHECK(op.edge(1000) == 400.0);
    CHECK(op.total_weight_mass() == doctest::Approx(1.0));
    // tallest column is the rightmost one: 1000 relays
    CHECK(op.max_column_mass() == doctest::Approx(1000.0 / 500500.0));
}

TEST_CASE("apply_input: saturation, holds and errors") {
    auto op = benchmark_operator();
    CHECK(op.output() == doctest::Approx(-1.0));

    // The first sample is the initial input evaluation: relays with alpha
    // below zero are forced on, everything else holds. Matches the exhaustive
    // per-relay oracle bit for bit.
    const std::array<double, 1> zero{0.0};
    CHECK(op.apply_input(zero)[0] ==
          doctest::Approx(test::brute_force_output(1000, kBounds, 1.0 / 500500.0, zero))
              .epsilon(1e-12));
    CHECK(op.apply_input(zero)[0] == doctest::Approx(-250000.0 / 500500.0).epsilon(1e-12));

    // an in-band sample from a settled state changes nothing
    const auto settled = op.interface();
    op.apply_input(zero);
    CHECK(op.interface() == settled);

    // full positive saturation flips every relay
    const std::array<double, 1> sat{400.0};
    CHECK(op.apply_input(sat)[0] == doctest::Approx(1.0));

    // full negative saturation flips them all back
    const std::array<double, 1> neg{-400.0};
    CHECK(op.apply_input(neg)[0] == doctest::Approx(-1.0));

    const std::array<double, 2> bad{100.0, 400.5};
    CHECK_THROWS_AS(op.apply_input(bad), InputRangeError);
    try {
        op.apply_input(bad);
    } catch (const InputRangeError& e) {
        CHECK(e.index() == 1);
        CHECK(e.value() == 400.5);
    }
    CHECK_THROWS_AS(op.apply_input(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("benchmark pulse: remnant 0.1 at amplitude 240") {
    auto op = benchmark_operator();
    const std::array<double, 4> pulse{-400.0, 0.0, 240.0, 0.0};
    const auto outputs = op.apply_input(pulse);

    // closed-form uniform remnant
    CHECK(std::abs(outputs.back() - test::uniform_remnant(240.0)) <= 0.005);

    // exhaustive per-relay trajectory, no sweep shortcuts
    const double brute = test::brute_force_output(1000, kBounds, 1.0 / 500500.0, pulse);
    CHECK(outputs.back() == doctest::Approx(brute).epsilon(1e-12));

    // frozen exact value of the equal-weight grid at this amplitude
    CHECK(outputs.back() == doctest::Approx(50000.0 / 500500.0).epsilon(1e-12));
}

TEST_CASE("per-sample outputs match the brute-force trajectory") {
    auto eng = sample_stream(0xd15c, 11);
    for (int k = 0; k < 25; ++k) {
        const int n = 40 + static_cast<int>(uniform01(eng) * 40);
        const auto samples = test::random_samples(eng, kBounds, 8);
        DiscretePreisach op(n, kBounds, 1.0);
        const auto got = op.apply_input(samples);
        std::vector<double> prefix;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            prefix.push_back(samples[i]);
            CHECK(got[i] ==
                  doctest::Approx(test::brute_force_output(n, kBounds, 1.0, prefix))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("interface extraction: canonical states") {
    auto op = DiscretePreisach(10, kBounds, 1.0);
    CHECK(op.interface() == InterfaceLine::all_negative(kBounds));
    op.set_all(+1);
    CHECK(op.interface() == InterfaceLine::all_positive(kBounds));
}

TEST_CASE("interface extraction after a reset and pulse") {
    auto op = benchmark_operator();
    const std::array<double, 4> pulse{-400.0, 0.0, 240.0, 0.0};
    op.apply_input(pulse);
    const auto line = op.interface();
    // 240 and 0 are exact cell edges of the 0.8 grid
    const std::vector<PlanePoint> want{{0, 0}, {240, 0}, {240, -400}, {400, -400}};
    CHECK(line.vertices() == want);

    // matches the analytic wiping update of the post-reset interface
    CHECK(line == InterfaceLine::post_reset(kBounds, +1).wipe(240.0));
}

TEST_CASE("interface extraction rejects non-staircase states") {
    auto op = DiscretePreisach(8, kBounds, 1.0);
    // a +1 hole inside a -1 row breaks the prefix property
    op.set_relay_state(5, 2, +1);
    op.set_relay_state(3, 2, -1);
    CHECK_THROWS_AS(op.interface(), RepresentabilityError);

    // +1 above -1 within a column breaks row nesting
    op.set_all(-1);
    op.set_relay_state(6, 4, +1);
    op.set_relay_state(6, 3, -1);
    op.set_relay_state(5, 4, +1);
    op.set_relay_state(4, 4, +1);
    CHECK_THROWS_AS(op.interface(), RepresentabilityError);
}

TEST_CASE("load_interface round trips through extraction") {
    auto eng = sample_stream(0x10ad, 2);
    for (int k = 0; k < 50; ++k) {
        const auto line = test::random_resting_interface(eng, kBounds);
        DiscretePreisach op(200, kBounds, 1.0);
        op.load_interface(line);
        const auto extracted = op.interface();
        // quantization moves the boundary by at most one cell
        CHECK(test::profile_distance(line, extracted, 400, 2.0 * op.spacing()) <=
              op.spacing() + 1e-12);
        // reloading the quantized line is exact
        DiscretePreisach op2(200, kBounds, 1.0);
        op2.load_interface(extracted);
        CHECK(op2.interface() == extracted);
    }
}

TEST_CASE("staircase closure: every input history extracts cleanly") {
    auto eng = sample_stream(0xc105, 5);
    for (int k = 0; k < 200; ++k) {
        DiscretePreisach op(64, kBounds, 1.0);
        const auto samples = test::random_samples(eng, kBounds, 12);
        op.apply_input(samples);
        CHECK_NOTHROW(op.interface());
    }
}

TEST_CASE("rate independence: refining monotone segments never changes the result") {
    auto eng = sample_stream(0x7a7e, 1);
    for (int k = 0; k < 200; ++k) {
        const auto samples = test::random_samples(eng, kBounds, 8);
        DiscretePreisach direct(128, kBounds, 1.0);
        direct.apply_input(samples);

        // Insert intermediate points inside each monotone ramp between
        // samples. The first sample stays first: it is the initial input
        // evaluation, not the end of a ramp.
        std::vector<double> refined{samples.front()};
        for (std::size_t i = 1; i < samples.size(); ++i) {
            const double prev = samples[i - 1];
            const double s = samples[i];
            const int extra = static_cast<int>(uniform01(eng) * 4);
            for (int j = 1; j <= extra; ++j) {
                refined.push_back(prev + (s - prev) * j / (extra + 1.0));
            }
            refined.push_back(s);
        }
        DiscretePreisach warped(128, kBounds, 1.0);
        warped.apply_input(refined);

        CHECK(direct.output() == warped.output());
        CHECK(direct.interface() == warped.interface());
    }
}

TEST_CASE("output bounds and oracle equivalence for random weight grids") {
    auto eng = sample_stream(0x0c1e, 9);
    for (int k = 0; k < 200; ++k) {
        const auto w = test::random_grid_weight(eng, kBounds);
        auto op = DiscretePreisach::discretize(w, 160);
        const double mass = op.total_weight_mass();
        CHECK(mass == doctest::Approx(w.total_mass()).epsilon(1e-9));

        const auto samples = test::random_samples(eng, kBounds, 8);
        op.apply_input(samples);
        CHECK(std::abs(op.output()) <= mass + 1e-12);

        const double via_interface = output_from_interface(op.interface(), w);
        CHECK(std::abs(via_interface - op.output()) <= 2.0 * op.max_column_mass() + 1e-12);
    }
}
