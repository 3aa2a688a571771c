#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "oxcal/autocal.hpp"
#include "oxcal/commands.hpp"
#include "oxcal/config.hpp"
#include "oxcal/protocol.hpp"

namespace py = pybind11;
using namespace oxcal;

PYBIND11_MODULE(_oxcal, m) {
  m.doc() = "Behavioral OxRAM 1T1R crossbar simulator with three-stage row "
            "offset calibration";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ProtocolError>(m, "ProtocolError");
  py::register_exception<DeviceError>(m, "DeviceError");

  py::enum_<CellState>(m, "CellState")
      .value("PRISTINE", CellState::Pristine)
      .value("LRS", CellState::Lrs)
      .value("HRS", CellState::Hrs);
  py::enum_<MemOp>(m, "MemOp")
      .value("FORM", MemOp::Form)
      .value("SET", MemOp::Set)
      .value("RESET", MemOp::Reset)
      .value("READ", MemOp::Read);
  py::enum_<PulseKind>(m, "PulseKind")
      .value("NONE", PulseKind::None)
      .value("FORM", PulseKind::Form)
      .value("SET", PulseKind::Set)
      .value("RESET", PulseKind::Reset);
  py::enum_<ClockEdge>(m, "ClockEdge")
      .value("RISING", ClockEdge::Rising)
      .value("FALLING", ClockEdge::Falling);

  py::class_<OxRamCell>(m, "OxRamCell")
      .def(py::init(&OxRamCell::make), py::arg("r_lrs") = 13.7e3,
           py::arg("r_hrs") = 845.9e3, py::arg("state") = CellState::Pristine)
      .def_readonly("state", &OxRamCell::state)
      .def_readonly("r_lrs", &OxRamCell::r_lrs)
      .def_readonly("r_hrs", &OxRamCell::r_hrs)
      .def("resistance", &OxRamCell::resistance);

  py::class_<SelectorModel>(m, "SelectorModel")
      .def(py::init([](double r_on, double g_off) {
             return SelectorModel{r_on, g_off};
           }),
           py::arg("r_on") = 36.3e3, py::arg("g_off") = 1e-9)
      .def_readwrite("r_on", &SelectorModel::r_on)
      .def_readwrite("g_off", &SelectorModel::g_off);

  py::class_<PulseSpec>(m, "PulseSpec")
      .def(py::init([](double v_ts, double v_gate, double width,
                       std::optional<double> compliance) {
             return PulseSpec{v_ts, v_gate, width, compliance};
           }),
           py::arg("v_ts"), py::arg("v_gate"), py::arg("width") = 100e-9,
           py::arg("compliance") = std::nullopt)
      .def_static("form", &PulseSpec::form)
      .def_static("set", &PulseSpec::set)
      .def_static("reset", &PulseSpec::reset)
      .def_static("read", &PulseSpec::read, py::arg("v_read") = 0.3)
      .def_readwrite("v_ts", &PulseSpec::v_ts)
      .def_readwrite("v_gate", &PulseSpec::v_gate)
      .def_readwrite("width", &PulseSpec::width)
      .def_readwrite("compliance", &PulseSpec::compliance);

  py::class_<BodyBiasModel>(m, "BodyBiasModel")
      .def(py::init([](double eta, double v_calibref) {
             BodyBiasModel model{eta, v_calibref};
             validate(model);
             return model;
           }),
           py::arg("eta") = 0.25, py::arg("v_calibref") = 4.5)
      .def_readwrite("eta", &BodyBiasModel::eta)
      .def_readwrite("v_calibref", &BodyBiasModel::v_calibref);

  m.def("classify_pulse", &classify_pulse);
  m.def("apply_pulse", &apply_pulse);
  m.def("cell_path_conductance", &cell_path_conductance, py::arg("cell"),
        py::arg("selector"), py::arg("gate_on"));
  m.def("read_current", &read_current, py::arg("cell"), py::arg("selector"),
        py::arg("v_read"));
  m.def("offset_correction", &offset_correction, py::arg("model"),
        py::arg("v_cal"));

  py::class_<CalCode>(m, "CalCode")
      .def(py::init([](int coarse, int fine, int finer) {
             CalCode code{coarse, fine, finer};
             validate(code);
             return code;
           }),
           py::arg("coarse") = 0, py::arg("fine") = 0, py::arg("finer") = 0)
      .def_static("from_packed", &CalCode::from_packed)
      .def("packed", &CalCode::packed)
      .def_readwrite("coarse", &CalCode::coarse)
      .def_readwrite("fine", &CalCode::fine)
      .def_readwrite("finer", &CalCode::finer)
      .def(py::self == py::self)
      .def("__repr__", [](const CalCode& c) {
        std::ostringstream os;
        os << "CalCode(coarse=" << c.coarse << ", fine=" << c.fine
           << ", finer=" << c.finer << ")";
        return os.str();
      });

  py::class_<LadderSpec>(m, "LadderSpec")
      .def(py::init([](double v_ref, double v_d) {
             LadderSpec spec{v_ref, v_d};
             validate(spec);
             return spec;
           }),
           py::arg("v_ref") = 4.5, py::arg("v_d") = 15e-3)
      .def_readwrite("v_ref", &LadderSpec::v_ref)
      .def_readwrite("v_d", &LadderSpec::v_d)
      .def_readonly_static("taps_per_stage", &LadderSpec::taps_per_stage);

  py::class_<StepSizes>(m, "StepSizes")
      .def_readonly("coarse", &StepSizes::coarse)
      .def_readonly("fine", &StepSizes::fine)
      .def_readonly("finer", &StepSizes::finer);

  m.def("dac_step_sizes", &dac_step_sizes);
  m.def("dac_output", &dac_output, py::arg("code"), py::arg("spec"));

  py::class_<MeasurementResult>(m, "MeasurementResult")
      .def_readonly("mean", &MeasurementResult::mean)
      .def_readonly("sigma_per_sample", &MeasurementResult::sigma_per_sample)
      .def_readonly("n_samples", &MeasurementResult::n_samples)
      .def_readonly("seed", &MeasurementResult::seed)
      .def("standard_error", &MeasurementResult::standard_error);

  py::class_<RowDriverState>(m, "RowDriverState")
      .def_readonly("v_os_random", &RowDriverState::v_os_random)
      .def_readonly("body", &RowDriverState::body)
      .def_readonly("cal_code", &RowDriverState::cal_code)
      .def_readonly("ipot_code", &RowDriverState::ipot_code);

  py::class_<CrossbarParams>(m, "CrossbarParams")
      .def(py::init<>())
      .def_readwrite("rows", &CrossbarParams::rows)
      .def_readwrite("cols", &CrossbarParams::cols)
      .def_readwrite("r_lrs", &CrossbarParams::r_lrs)
      .def_readwrite("r_hrs", &CrossbarParams::r_hrs)
      .def_readwrite("selector", &CrossbarParams::selector)
      .def_readwrite("ladder", &CrossbarParams::ladder)
      .def_readwrite("eta", &CrossbarParams::eta)
      .def_readwrite("v_calibref", &CrossbarParams::v_calibref)
      .def_readwrite("sigma_os", &CrossbarParams::sigma_os)
      .def_readwrite("sigma_os_truncate", &CrossbarParams::sigma_os_truncate)
      .def_readwrite("integ_cap", &CrossbarParams::integ_cap)
      .def_readwrite("comp_threshold", &CrossbarParams::comp_threshold);

  py::class_<CellRef>(m, "CellRef")
      .def(py::init([](int row, int col) { return CellRef{row, col}; }),
           py::arg("row"), py::arg("col"))
      .def_readwrite("row", &CellRef::row)
      .def_readwrite("col", &CellRef::col);

  py::class_<IntegrationResult>(m, "IntegrationResult")
      .def_readonly("v_int", &IntegrationResult::v_int)
      .def_readonly("bit", &IntegrationResult::bit)
      .def_readonly("clamped", &IntegrationResult::clamped);

  py::class_<Crossbar>(m, "Crossbar")
      .def(py::init<const CrossbarParams&, std::uint64_t>(), py::arg("params"),
           py::arg("seed"))
      .def_property_readonly("rows", &Crossbar::rows)
      .def_property_readonly("cols", &Crossbar::cols)
      .def_property_readonly("seed", &Crossbar::seed)
      .def("cell", &Crossbar::cell, py::return_value_policy::copy)
      .def("driver", &Crossbar::driver, py::return_value_policy::copy)
      .def("set_cal_code", &Crossbar::set_cal_code)
      .def("set_ipot_code", &Crossbar::set_ipot_code)
      .def("set_row_offset", &Crossbar::set_row_offset)
      .def("set_cell_state", &Crossbar::set_cell_state)
      .def("v_os_eff", &Crossbar::v_os_eff)
      .def("target_cell_op", &Crossbar::target_cell_op)
      .def("column_current", &Crossbar::column_current, py::arg("col"),
           py::arg("v_read"), py::arg("selected_rows"))
      .def("integrate_and_compare", &Crossbar::integrate_and_compare,
           py::arg("col"), py::arg("current"), py::arg("pulse_width"))
      .def("measure_row_offset", &Crossbar::measure_row_offset, py::arg("row"),
           py::arg("n_samples"), py::arg("noise_sigma"), py::arg("seed"),
           py::arg("force_per_sample") = false)
      .def("read_power", &Crossbar::read_power, py::arg("cells"),
           py::arg("v_read"));

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("code", &SweepPoint::code)
      .def_readonly("meas", &SweepPoint::meas);
  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("stage", &SweepRecord::stage)
      .def_readonly("fixed", &SweepRecord::fixed)
      .def_readonly("points", &SweepRecord::points);
  py::class_<Bracket>(m, "Bracket")
      .def_readonly("lo", &Bracket::lo)
      .def_readonly("hi", &Bracket::hi);
  py::class_<CalResult>(m, "CalResult")
      .def_readonly("best_code", &CalResult::best_code)
      .def_readonly("residual", &CalResult::residual)
      .def_readonly("bracketed", &CalResult::bracketed)
      .def_readonly("sweeps", &CalResult::sweeps);

  m.def("find_zero_crossing", &find_zero_crossing);
  m.def("sweep_stage", &sweep_stage, py::arg("xbar"), py::arg("row"),
        py::arg("stage"), py::arg("fixed_prefix"), py::arg("n_samples"),
        py::arg("noise_sigma"), py::arg("seed"),
        py::arg("exact_sampling") = false);
  m.def("calibrate_row", &calibrate_row, py::arg("xbar"), py::arg("row"),
        py::arg("n_samples"), py::arg("noise_sigma"), py::arg("seed"),
        py::arg("exact_sampling") = false);

  py::class_<RowControlWord>(m, "RowControlWord")
      .def(py::init([](int ipot, const CalCode& cal) {
             RowControlWord word{ipot, cal};
             validate(word);
             return word;
           }),
           py::arg("ipot") = 0, py::arg("cal") = CalCode{})
      .def_readwrite("ipot_code", &RowControlWord::ipot_code)
      .def_readwrite("cal", &RowControlWord::cal)
      .def(py::self == py::self);
  py::class_<ControlFrame>(m, "ControlFrame")
      .def(py::init([](std::vector<RowControlWord> rows) {
             return ControlFrame{std::move(rows)};
           }),
           py::arg("rows"))
      .def_readwrite("rows", &ControlFrame::rows)
      .def(py::self == py::self);

  m.def("encode_frame", &encode_frame);
  m.def("decode_frame", &decode_frame, py::arg("bits"), py::arg("n_rows"));

  py::class_<ShiftRegister>(m, "ShiftRegister")
      .def(py::init<int, double>(), py::arg("n_rows"),
           py::arg("clock_period_s") = 1.0 / 2000.0)
      .def("step", &ShiftRegister::step)
      .def("latch_outputs", &ShiftRegister::latch_outputs)
      .def("load", &ShiftRegister::load)
      .def_property_readonly("n_rows", &ShiftRegister::n_rows)
      .def("register_bits", &ShiftRegister::register_bits)
      .def("output_bits", &ShiftRegister::output_bits)
      .def("latched_frame", &ShiftRegister::latched_frame)
      .def("elapsed_s", &ShiftRegister::elapsed_s);

  py::class_<OpSelect>(m, "OpSelect")
      .def(py::init([](bool a, bool b, bool c) { return OpSelect{a, b, c}; }),
           py::arg("a") = false, py::arg("b") = false, py::arg("c") = false)
      .def_readwrite("a", &OpSelect::a)
      .def_readwrite("b", &OpSelect::b)
      .def_readwrite("c", &OpSelect::c);
  m.def("decode_opselect", &decode_opselect);
  m.def("encode_opselect", &encode_opselect);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("rows", &ExperimentConfig::rows)
      .def_readwrite("cols", &ExperimentConfig::cols)
      .def_readwrite("r_lrs", &ExperimentConfig::r_lrs)
      .def_readwrite("r_hrs", &ExperimentConfig::r_hrs)
      .def_readwrite("r_on", &ExperimentConfig::r_on)
      .def_readwrite("g_off", &ExperimentConfig::g_off)
      .def_readwrite("v_ref", &ExperimentConfig::v_ref)
      .def_readwrite("v_d", &ExperimentConfig::v_d)
      .def_readwrite("v_calibref", &ExperimentConfig::v_calibref)
      .def_readwrite("eta", &ExperimentConfig::eta)
      .def_readwrite("sigma_os", &ExperimentConfig::sigma_os)
      .def_readwrite("noise_sigma", &ExperimentConfig::noise_sigma)
      .def_readwrite("n_samples", &ExperimentConfig::n_samples)
      .def_readwrite("seed", &ExperimentConfig::seed);
  m.def("parse_config_json", &parse_config_json);
  m.def("config_json_text", &config_json_text);
  m.def("make_params", &make_params);
  m.def("run_montecarlo", &run_montecarlo, py::arg("config"), py::arg("trials"),
        py::arg("row") = 0, py::arg("truncate_frac") = 0.9,
        py::arg("threads") = 0, py::arg("opts") = OutputOptions{});

  py::class_<OutputOptions>(m, "OutputOptions")
      .def(py::init<>())
      .def_readwrite("exact_sampling", &OutputOptions::exact_sampling)
      .def_readwrite("with_timestamp", &OutputOptions::with_timestamp);
}
