/*
  Copyright (c) the slfact contributors.

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

#ifndef SLFACT_ERRORS_HPP
#define SLFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slfact {

/// Failure categories surfaced by the library. Refusals describe inputs the
/// algorithms cannot certify; they are distinct from malformed input.
enum class ErrorKind {
    config_mismatch,     // operands built over different algebra configs
    dimension_mismatch,  // matrix/factorization shapes disagree
    index_out_of_range,  // factor index outside 1..n or i == j
    domain_error,        // argument outside the operation's domain (r, point, cap, ...)
    dimension_too_large, // determinant guard n > 8
    division_by_zero,    // polynomial division by (numerically) zero
    not_invertible,      // reciprocal certification failed
    not_near_identity,   // Neumann inversion requires ||F - I|| < 1
    near_identity_diverged, // elimination pivot drifted out of the certified zone
    not_unimodular,      // determinant is not 1 within tolerance
    pivot_breakdown,     // a whole working column vanished
    not_invertible_diagonal, // a final diagonal unit failed certification
    inverse_unavailable, // dilation split needs a certified inverse and has none
    unreachable,         // requested dilation gap is below the tail floor
    unsupported,         // outside the constructive subclasses this library covers
    malformed_input,     // JSON schema violation
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors that reject a well-formed input (CLI exit code 2),
    /// false for structural/schema problems (CLI exit code 3).
    bool is_refusal() const noexcept {
        switch (kind_) {
            case ErrorKind::config_mismatch:
            case ErrorKind::dimension_mismatch:
            case ErrorKind::index_out_of_range:
            case ErrorKind::malformed_input:
                return false;
            default:
                return true;
        }
    }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

} // namespace slfact

#endif // SLFACT_ERRORS_HPP
