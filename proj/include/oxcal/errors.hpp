#pragma once

#include <stdexcept>
#include <string>

namespace oxcal {

// Invalid parameters or malformed configuration. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Control-frame codec and opcode violations. CLI exit code 3.
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Device state-machine violations and model-validity limits. CLI exit code 4.
struct DeviceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-fatal model warnings (linearity range, selector leakage) go through a
// replaceable handler so tests can capture them. Default writes to stderr.
using WarningHandler = void (*)(const std::string&);
void set_warning_handler(WarningHandler handler);  // nullptr restores default
void warn(const std::string& message);

}  // namespace oxcal
