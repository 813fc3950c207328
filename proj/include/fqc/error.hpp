/*
   Copyright 2026 The fqc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqc {

enum class ErrorCode {
    InvalidArgument,
    NotNormalized,
    NoFunctionalEquation,
    ZeroTopCoefficient,
    NotUnitary,
    ZeroColumnSum,
    Unsupported,
    EntryOutOfRange,
    NotSymmetric,
    DegenerateInput,
    WrongArity,
    WindowTooCoarse,
    TailTooLarge,
    NotSelfDual,
    WindowExceeded,
    TooFewAtoms,
    PrecisionUnattainable,
    ConfigInvalid,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NoFunctionalEquation: return "NoFunctionalEquation";
        case ErrorCode::ZeroTopCoefficient: return "ZeroTopCoefficient";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::ZeroColumnSum: return "ZeroColumnSum";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::WindowTooCoarse: return "WindowTooCoarse";
        case ErrorCode::TailTooLarge: return "TailTooLarge";
        case ErrorCode::NotSelfDual: return "NotSelfDual";
        case ErrorCode::WindowExceeded: return "WindowExceeded";
        case ErrorCode::TooFewAtoms: return "TooFewAtoms";
        case ErrorCode::PrecisionUnattainable: return "PrecisionUnattainable";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

/// Numerical failures are the ones a caller can usually fix by asking for
/// more resolution (larger oversample, window, or degree).
constexpr bool is_numerical_failure(ErrorCode code) noexcept {
    return code == ErrorCode::WindowTooCoarse || code == ErrorCode::TailTooLarge ||
           code == ErrorCode::PrecisionUnattainable;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fqc
