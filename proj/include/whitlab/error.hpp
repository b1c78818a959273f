#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace whitlab {

/// Raised when an enumeration or closure would exceed a configured cap.
/// The CLI maps this to exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string cap_name, std::uint64_t cap, std::string estimate)
      : std::runtime_error(cap_name + " exceeded (cap " + std::to_string(cap) +
                           ", reached " + estimate + ")"),
        cap_name_(std::move(cap_name)),
        cap_(cap) {}

  const std::string& cap_name() const noexcept { return cap_name_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::string cap_name_;
  std::uint64_t cap_;
};

}  // namespace whitlab
