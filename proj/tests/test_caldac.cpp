#include <doctest.h>

#include <cmath>

#include "oxcal/caldac.hpp"

using namespace oxcal;

TEST_CASE("cal code packs and unpacks losslessly") {
  for (int packed = 0; packed < kCalCodeCount; ++packed) {
    const CalCode code = CalCode::from_packed(packed);
    CHECK(code.packed() == packed);
  }
  CHECK(CalCode{3, 10, 5}.packed() == ((3 << 8) | (10 << 4) | 5));
  CHECK(CalCode::from_packed(0x3FF) == CalCode{3, 15, 15});
}

TEST_CASE("cal code field range is enforced") {
  CHECK_THROWS_AS(validate(CalCode{16, 0, 0}), ConfigError);
  CHECK_THROWS_AS(validate(CalCode{0, -1, 0}), ConfigError);
  CHECK_THROWS_AS(validate(CalCode{0, 0, 99}), ConfigError);
  CHECK_THROWS_AS(CalCode::from_packed(-1), ConfigError);
  CHECK_THROWS_AS(CalCode::from_packed(4096), ConfigError);
}

TEST_CASE("step sizes at the reference operating point") {
  const StepSizes steps = dac_step_sizes(LadderSpec{4.5, 15e-3});
  CHECK(steps.coarse == 1.875e-3);
  CHECK(steps.fine == 117.1875e-6);
  CHECK(steps.finer == 7.32421875e-6);
  // Offset-referred fine step stays below 0.1 mV at eta = 0.25.
  CHECK(0.25 * steps.fine == 2.9296875e-5);
  CHECK(0.25 * steps.fine < 1e-4);
}

TEST_CASE("degenerate ladder range collapses the steps") {
  const StepSizes steps = dac_step_sizes(LadderSpec{4.5, 0.0});
  CHECK(steps.coarse == 0.0);
  CHECK(steps.fine == 0.0);
  CHECK(steps.finer == 0.0);
}

TEST_CASE("dac output hits the documented taps") {
  const LadderSpec spec{4.5, 15e-3};
  CHECK(dac_output(CalCode{0, 0, 0}, spec) == 4.485);
  CHECK(dac_output(CalCode{8, 0, 0}, spec) == 4.5);
  CHECK(dac_output(CalCode{15, 15, 15}, spec) == 4.51499267578125);
}

TEST_CASE("dac transfer is strictly monotone with uniform steps") {
  const LadderSpec spec{4.5, 15e-3};
  const StepSizes steps = dac_step_sizes(spec);
  double prev = dac_output(CalCode::from_packed(0), spec);
  CHECK(prev == spec.v_ref - spec.v_d);
  for (int packed = 1; packed < kCalCodeCount; ++packed) {
    const double v = dac_output(CalCode::from_packed(packed), spec);
    CHECK(v > prev);
    CHECK(std::abs((v - prev) - steps.finer) <= 1e-15);
    prev = v;
  }
  CHECK(std::abs(prev - (spec.v_ref + spec.v_d - steps.finer)) <= 1e-15);
}

TEST_CASE("later stages subdivide one segment of the previous stage") {
  const LadderSpec spec{4.5, 15e-3};
  const StepSizes steps = dac_step_sizes(spec);
  // Fine sweep inside coarse segment 5 spans [tap, tap + 15*fine].
  const double seg = dac_output(CalCode{5, 0, 0}, spec);
  const double top = dac_output(CalCode{5, 15, 0}, spec);
  CHECK(top - seg == doctest::Approx(15 * steps.fine).epsilon(1e-12));
  CHECK(top < dac_output(CalCode{6, 0, 0}, spec));
}
