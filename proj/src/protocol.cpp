#include "oxcal/protocol.hpp"

namespace oxcal {

void validate(const RowControlWord& word) {
  if (word.ipot_code < 0 || word.ipot_code > kIpotMax) {
    throw ProtocolError("I-pot code must fit in 14 bits");
  }
  try {
    validate(word.cal);
  } catch (const ConfigError& e) {
    throw ProtocolError(e.what());
  }
}

std::string encode_frame(const ControlFrame& frame) {
  if (frame.rows.empty()) {
    throw ProtocolError("frame must have at least one row");
  }
  std::string bits;
  bits.reserve(frame.rows.size() * kRowBits);
  // Row N is shifted first, down to row 1 (rows[0]).
  for (auto it = frame.rows.rbegin(); it != frame.rows.rend(); ++it) {
    validate(*it);
    for (int b = kIpotBits - 1; b >= 0; --b) {
      bits.push_back(((it->ipot_code >> b) & 1) ? '1' : '0');
    }
    const int cal = it->cal.packed();
    for (int b = kCalBits - 1; b >= 0; --b) {
      bits.push_back(((cal >> b) & 1) ? '1' : '0');
    }
  }
  return bits;
}

ControlFrame decode_frame(std::string_view bits, int n_rows) {
  if (n_rows < 1) {
    throw ProtocolError("frame must have at least one row");
  }
  const std::size_t expected = static_cast<std::size_t>(n_rows) * kRowBits;
  if (bits.size() != expected) {
    throw ProtocolError("bitstring length " + std::to_string(bits.size()) +
                        " does not match " + std::to_string(expected) +
                        " bits for " + std::to_string(n_rows) + " rows");
  }
  ControlFrame frame;
  frame.rows.resize(n_rows);
  std::size_t pos = 0;
  const auto take_bit = [&]() -> int {
    const char c = bits[pos++];
    if (c == '0') return 0;
    if (c == '1') return 1;
    throw ProtocolError("bitstring contains a character other than '0'/'1'");
  };
  for (int r = n_rows - 1; r >= 0; --r) {
    int ipot = 0;
    for (int b = 0; b < kIpotBits; ++b) ipot = (ipot << 1) | take_bit();
    int cal = 0;
    for (int b = 0; b < kCalBits; ++b) cal = (cal << 1) | take_bit();
    frame.rows[r] = {ipot, CalCode::from_packed(cal)};
  }
  return frame;
}

ShiftRegister::ShiftRegister(int n_rows, double clock_period_s)
    : n_rows_(n_rows), clock_period_s_(clock_period_s) {
  if (n_rows < 1) throw ProtocolError("shift register needs at least one row");
  if (!(clock_period_s > 0.0)) {
    throw ProtocolError("clock period must be positive");
  }
  reg_.assign(static_cast<std::size_t>(n_rows) * kRowBits, '0');
  out_ = reg_;
}

void ShiftRegister::step(bool bit_in, ClockEdge edge) {
  if (edge != ClockEdge::Rising) return;
  // Drop the oldest bit, append the new one: reg <- reg[1:] + bit_in.
  reg_[head_] = bit_in ? '1' : '0';
  head_ = (head_ + 1) % reg_.size();
  ++rising_edges_;
}

void ShiftRegister::latch_outputs() {
  const std::size_t n = reg_.size();
  for (std::size_t i = 0; i < n; ++i) {
    out_[i] = reg_[(head_ + i) % n];
  }
}

std::string ShiftRegister::register_bits() const {
  const std::size_t n = reg_.size();
  std::string bits(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = reg_[(head_ + i) % n];
  }
  return bits;
}

std::string ShiftRegister::output_bits() const {
  return std::string(out_.begin(), out_.end());
}

ControlFrame ShiftRegister::latched_frame() const {
  return decode_frame(output_bits(), n_rows_);
}

void ShiftRegister::load(std::string_view bits) {
  if (bits.size() != reg_.size()) {
    throw ProtocolError("stream length does not match the register length");
  }
  for (const char c : bits) {
    if (c != '0' && c != '1') {
      throw ProtocolError("stream contains a character other than '0'/'1'");
    }
    step(c == '1', ClockEdge::Rising);
    step(false, ClockEdge::Falling);
  }
  latch_outputs();
}

MemOp decode_opselect(const OpSelect& op) {
  const int hot = (op.a ? 1 : 0) + (op.b ? 1 : 0) + (op.c ? 1 : 0);
  if (hot == 0) return MemOp::Read;
  if (hot > 1) {
    throw ProtocolError("invalid (A,B,C) operation select: multiple lines on");
  }
  if (op.a) return MemOp::Form;
  if (op.b) return MemOp::Set;
  return MemOp::Reset;
}

OpSelect encode_opselect(MemOp op) {
  switch (op) {
    case MemOp::Read: return {false, false, false};
    case MemOp::Form: return {true, false, false};
    case MemOp::Set: return {false, true, false};
    case MemOp::Reset: return {false, false, true};
  }
  throw ProtocolError("unknown operation");
}

}  // namespace oxcal
