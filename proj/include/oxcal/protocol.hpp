#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oxcal/caldac.hpp"
#include "oxcal/devices.hpp"

namespace oxcal {

inline constexpr int kIpotBits = 14;
inline constexpr int kCalBits = 12;
inline constexpr int kRowBits = kIpotBits + kCalBits;  // 26
inline constexpr int kIpotMax = (1 << kIpotBits) - 1;

// Per-row slice of the serial control word: I-pot bias code plus the
// calibration code.
struct RowControlWord {
  int ipot_code = 0;  // 14-bit
  CalCode cal;
  auto operator<=>(const RowControlWord&) const = default;
};
void validate(const RowControlWord& word);

// Control words for every row; rows[0] is row 1.
struct ControlFrame {
  std::vector<RowControlWord> rows;
  bool operator==(const ControlFrame&) const = default;
};

// Serial layout (frozen here; the single normalization point if hardware
// dumps ever disagree): row N is shifted first, down to row 1; within a row
// the 14 I-pot bits go MSB-first, then the 12 packed calibration bits
// MSB-first. The first-shifted bit is the leftmost character of the
// bitstring.
std::string encode_frame(const ControlFrame& frame);
ControlFrame decode_frame(std::string_view bits, int n_rows);

enum class ClockEdge { Rising, Falling };

// 26N-bit edge-triggered D-flip-flop shift chain with a parallel output
// latch. Data moves on rising edges only; latch_outputs() atomically copies
// the register onto the live outputs. The clock period only scales the
// reported elapsed time, never the values.
class ShiftRegister {
 public:
  explicit ShiftRegister(int n_rows, double clock_period_s = 1.0 / 2000.0);

  void step(bool bit_in, ClockEdge edge);
  void latch_outputs();

  int n_rows() const { return n_rows_; }
  std::string register_bits() const;
  std::string output_bits() const;
  ControlFrame latched_frame() const;

  // Serial-load convenience: one rising and one falling edge per bit, then a
  // latch.
  void load(std::string_view bits);

  double elapsed_s() const {
    return clock_period_s_ * static_cast<double>(rising_edges_);
  }

 private:
  int n_rows_;
  double clock_period_s_;
  std::uint64_t rising_edges_ = 0;
  std::size_t head_ = 0;  // ring-buffer origin; logical bit i lives at (head_+i) % size
  std::vector<char> reg_;
  std::vector<char> out_;
};

// (A,B,C) operation select. All-off means READ; FORM/SET/RESET are one-hot
// on A/B/C respectively, and any multi-hot code is rejected.
struct OpSelect {
  bool a = false;
  bool b = false;
  bool c = false;
  bool operator==(const OpSelect&) const = default;
};
MemOp decode_opselect(const OpSelect& op);
OpSelect encode_opselect(MemOp op);

}  // namespace oxcal
