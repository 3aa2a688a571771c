#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oxcal/devices.hpp"
#include "oxcal/rng.hpp"

using namespace oxcal;

TEST_CASE("cell parameter invariants") {
  CHECK_THROWS_AS(OxRamCell::make(0.0, 845.9e3), ConfigError);
  CHECK_THROWS_AS(OxRamCell::make(-5.0, 845.9e3), ConfigError);
  CHECK_THROWS_AS(OxRamCell::make(13.7e3, 13.7e3), ConfigError);
  const OxRamCell cell = OxRamCell::make(13.7e3, 845.9e3);
  CHECK(cell.state == CellState::Pristine);
  CHECK_THROWS_AS(cell.resistance(), DeviceError);
}

TEST_CASE("pulse validation") {
  CHECK_THROWS_AS(validate(PulseSpec{0.3, 3.8, 0.0, {}}), ConfigError);
  CHECK_THROWS_AS(validate(PulseSpec{0.3, -1.0, 100e-9, {}}), ConfigError);
  CHECK_THROWS_AS(validate(PulseSpec{4.0, 1.0, 10e-6, -1e-6}), ConfigError);
  CHECK_NOTHROW(validate(PulseSpec::form()));
}

TEST_CASE("pulse classification windows") {
  CHECK(classify_pulse(PulseSpec::form()) == PulseKind::Form);
  CHECK(classify_pulse(PulseSpec::set()) == PulseKind::Set);
  CHECK(classify_pulse(PulseSpec::reset()) == PulseKind::Reset);
  CHECK(classify_pulse(PulseSpec::read()) == PulseKind::None);
  // Window edges.
  CHECK(classify_pulse(PulseSpec{3.99, 1.0, 10e-6, {}}) == PulseKind::None);
  CHECK(classify_pulse(PulseSpec{5.01, 1.0, 10e-6, {}}) == PulseKind::None);
  CHECK(classify_pulse(PulseSpec{4.2, 1.0, 5e-6, {}}) == PulseKind::None);  // too short for FORM
  CHECK(classify_pulse(PulseSpec{2.4, 1.2, 100e-9, {}}) == PulseKind::None);  // gate below SET window
  CHECK(classify_pulse(PulseSpec{2.4, 1.9, 100e-9, {}}) == PulseKind::None);
  CHECK(classify_pulse(PulseSpec{-2.9, kGateRail, 100e-9, {}}) == PulseKind::None);
  CHECK(classify_pulse(PulseSpec{-3.0, 2.0, 100e-9, {}}) == PulseKind::None);  // gate not fully on
  CHECK(classify_pulse(PulseSpec{3.5, 3.0, 100e-9, {}}) == PulseKind::None);  // between SET and FORM
}

TEST_CASE("state machine transition table") {
  const OxRamCell pristine = OxRamCell::make(13.7e3, 845.9e3, CellState::Pristine);
  const OxRamCell lrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Lrs);
  const OxRamCell hrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Hrs);

  // FORM: one-shot pristine -> LRS.
  CHECK(apply_pulse(pristine, PulseSpec::form()).state == CellState::Lrs);
  CHECK_THROWS_AS(apply_pulse(lrs, PulseSpec::form()), DeviceError);
  CHECK_THROWS_AS(apply_pulse(hrs, PulseSpec::form()), DeviceError);
  // SET: HRS -> LRS, idempotent on LRS, rejected on pristine.
  CHECK(apply_pulse(hrs, PulseSpec::set()).state == CellState::Lrs);
  CHECK(apply_pulse(lrs, PulseSpec::set()).state == CellState::Lrs);
  CHECK_THROWS_AS(apply_pulse(pristine, PulseSpec::set()), DeviceError);
  // RESET: LRS -> HRS, idempotent on HRS, rejected on pristine.
  CHECK(apply_pulse(lrs, PulseSpec::reset()).state == CellState::Hrs);
  CHECK(apply_pulse(hrs, PulseSpec::reset()).state == CellState::Hrs);
  CHECK_THROWS_AS(apply_pulse(pristine, PulseSpec::reset()), DeviceError);
  // READ is non-destructive everywhere.
  CHECK(apply_pulse(pristine, PulseSpec::read()).state == CellState::Pristine);
  CHECK(apply_pulse(lrs, PulseSpec::read()).state == CellState::Lrs);
  CHECK(apply_pulse(hrs, PulseSpec::read()).state == CellState::Hrs);
  // Read with the documented gate bias keeps LRS untouched.
  CHECK(apply_pulse(lrs, PulseSpec{0.3, 3.8, 100e-9, {}}).state == CellState::Lrs);
}

TEST_CASE("random sub-1V pulses never mutate state") {
  Rng rng(20260810);
  const OxRamCell cells[3] = {
      OxRamCell::make(13.7e3, 845.9e3, CellState::Pristine),
      OxRamCell::make(13.7e3, 845.9e3, CellState::Lrs),
      OxRamCell::make(13.7e3, 845.9e3, CellState::Hrs)};
  for (int i = 0; i < 1000000; ++i) {
    const PulseSpec pulse{rng.uniform(-1.0, 1.0), rng.uniform(0.0, 5.0),
                          rng.uniform(1e-9, 20e-6), {}};
    const OxRamCell& cell = cells[i % 3];
    CHECK(apply_pulse(cell, pulse).state == cell.state);
  }
}

TEST_CASE("random pulse sequences keep the machine closed and form once") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    OxRamCell cell = OxRamCell::make(13.7e3, 845.9e3);
    bool formed = false;
    for (int i = 0; i < 200; ++i) {
      const double pick = rng.uniform(0.0, 1.0);
      PulseSpec pulse;
      if (pick < 0.25) pulse = PulseSpec::form();
      else if (pick < 0.5) pulse = PulseSpec::set();
      else if (pick < 0.75) pulse = PulseSpec::reset();
      else pulse = PulseSpec{rng.uniform(-1.0, 1.0), rng.uniform(0.0, 5.0), 100e-9, {}};
      const PulseKind kind = classify_pulse(pulse);
      const bool expect_error =
          (kind == PulseKind::Form && formed) ||
          ((kind == PulseKind::Set || kind == PulseKind::Reset) && !formed);
      if (expect_error) {
        CHECK_THROWS_AS(apply_pulse(cell, pulse), DeviceError);
      } else {
        cell = apply_pulse(cell, pulse);
        if (kind == PulseKind::Form) formed = true;
      }
      CHECK((cell.state == CellState::Pristine || cell.state == CellState::Lrs ||
             cell.state == CellState::Hrs));
      CHECK((cell.state != CellState::Pristine) == formed);
    }
  }
}

TEST_CASE("path conductance") {
  const OxRamCell lrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Lrs);
  const OxRamCell hrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Hrs);
  const OxRamCell pristine = OxRamCell::make(13.7e3, 845.9e3);

  CHECK(cell_path_conductance(lrs, SelectorModel{0.0, 0.0}, true) ==
        doctest::Approx(7.299270072992701e-5).epsilon(1e-12));
  CHECK(cell_path_conductance(lrs, SelectorModel{0.0, 0.0}, false) == 0.0);
  CHECK(cell_path_conductance(hrs, SelectorModel{0.0, 0.0}, false) == 0.0);
  CHECK(cell_path_conductance(hrs, SelectorModel{36.3e3, 0.0}, true) ==
        doctest::Approx(1.1335298118340512e-6).epsilon(1e-12));
  // Pristine cell is an open circuit apart from the leakage floor.
  CHECK(cell_path_conductance(pristine, SelectorModel{0.0, 1e-9}, true) == 1e-9);
  CHECK(cell_path_conductance(lrs, SelectorModel{0.0, 1e-9}, false) == 1e-9);
}

TEST_CASE("read current follows Ohm's law inside the validity range") {
  const OxRamCell lrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Lrs);
  const OxRamCell hrs = OxRamCell::make(13.7e3, 845.9e3, CellState::Hrs);
  const SelectorModel ideal{0.0, 0.0};

  CHECK(read_current(lrs, ideal, 0.3) ==
        doctest::Approx(2.18978102189781e-5).epsilon(1e-12));
  CHECK(read_current(lrs, ideal, 0.0) == 0.0);
  CHECK(read_current(hrs, ideal, 0.3) ==
        doctest::Approx(3.546518501004847e-7).epsilon(1e-12));
  CHECK_THROWS_AS(read_current(lrs, ideal, 1.5), DeviceError);
  CHECK_THROWS_AS(read_current(lrs, ideal, -1.01), DeviceError);
}

TEST_CASE("read current is linear in voltage and monotone in conductance") {
  const SelectorModel r_ons[] = {{0.0, 0.0}, {10e3, 0.0}, {36.3e3, 0.0}};
  const OxRamCell states[] = {
      OxRamCell::make(13.7e3, 845.9e3, CellState::Lrs),
      OxRamCell::make(13.7e3, 845.9e3, CellState::Hrs)};
  for (const auto& cell : states) {
    for (const auto& sel : r_ons) {
      const double i1 = read_current(cell, sel, 0.25);
      for (double a : {-2.0, -0.5, 0.5, 2.0, 3.2}) {
        const double v = 0.25 * a;
        if (std::abs(v) > 1.0) continue;
        CHECK(read_current(cell, sel, v) == doctest::Approx(a * i1).epsilon(1e-12));
      }
    }
  }
  // Larger conductance, larger current at fixed positive voltage.
  for (double v : {0.1, 0.3, 1.0}) {
    double prev = -1.0;
    for (double g : {1e-7, 1e-6, 1e-5, 7.299270072992701e-5}) {
      const double r = 1.0 / g;
      const OxRamCell cell = OxRamCell::make(r, r * 100, CellState::Lrs);
      const double i = read_current(cell, SelectorModel{0.0, 0.0}, v);
      CHECK(i > prev);
      prev = i;
    }
  }
}

TEST_CASE("offset correction is linear, odd, and warns out of range") {
  const BodyBiasModel body{0.25, 4.5};
  CHECK(offset_correction(body, 4.5) == 0.0);
  CHECK(offset_correction(body, 4.515) == doctest::Approx(3.75e-3).epsilon(1e-12));
  CHECK(offset_correction(body, 4.485) == doctest::Approx(-3.75e-3).epsilon(1e-12));

  // Odd around v_calibref: f(c + x) == -f(c - x) bitwise.
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform(0.0, 0.5);
    CHECK(offset_correction(body, 4.5 + x) == -offset_correction(body, 4.5 - x));
  }

  oxtest::WarningCapture capture;
  const double v = offset_correction(body, 5.5);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(capture.messages().size() == 1);
}

TEST_CASE("selector and body-bias validation") {
  CHECK_THROWS_AS(validate(SelectorModel{-1.0, 0.0}, 845.9e3), ConfigError);
  CHECK_THROWS_AS(validate(SelectorModel{0.0, -1e-9}, 845.9e3), ConfigError);
  {
    oxtest::WarningCapture capture;
    validate(SelectorModel{36.3e3, 1e-9}, 845.9e3);
    CHECK(capture.messages().empty());
    validate(SelectorModel{36.3e3, 1e-6}, 845.9e3);  // comparable to the HRS path
    CHECK(capture.messages().size() == 1);
  }
  CHECK_THROWS_AS(validate(BodyBiasModel{1.0, 4.5}), ConfigError);
  CHECK_THROWS_AS(validate(BodyBiasModel{-1.2, 4.5}), ConfigError);
  {
    oxtest::WarningCapture capture;
    validate(BodyBiasModel{0.0, 4.5});  // dead calibration port is allowed, flagged
    CHECK(capture.messages().size() == 1);
  }
}
