// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VBMEM_ERROR_HPP
#define VBMEM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vbmem {

enum class ErrorKind {
    ZeroVector,
    NonPhysicalDensity,
    OutsideBall,
    UnsupportedCharge,
    VacuumOutput,
    NegativeTime,
    RangeError,
    InsufficientCounts,
    DomainError,
    InfeasibleEfficiency,
    ChargeOutOfRange,
    ConfigError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NonPhysicalDensity: return "NonPhysicalDensity";
        case ErrorKind::OutsideBall: return "OutsideBall";
        case ErrorKind::UnsupportedCharge: return "UnsupportedCharge";
        case ErrorKind::VacuumOutput: return "VacuumOutput";
        case ErrorKind::NegativeTime: return "NegativeTime";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::InsufficientCounts: return "InsufficientCounts";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InfeasibleEfficiency: return "InfeasibleEfficiency";
        case ErrorKind::ChargeOutOfRange: return "ChargeOutOfRange";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers can branch without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace vbmem

#endif  // VBMEM_ERROR_HPP
