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

#include "slfact/errors.hpp"

namespace slfact {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::config_mismatch: return "ConfigMismatch";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::index_out_of_range: return "IndexOutOfRange";
        case ErrorKind::domain_error: return "DomainError";
        case ErrorKind::dimension_too_large: return "DimensionTooLarge";
        case ErrorKind::division_by_zero: return "DivisionByZero";
        case ErrorKind::not_invertible: return "NotInvertible";
        case ErrorKind::not_near_identity: return "NotNearIdentity";
        case ErrorKind::near_identity_diverged: return "NearIdentityDiverged";
        case ErrorKind::not_unimodular: return "NotUnimodular";
        case ErrorKind::pivot_breakdown: return "PivotBreakdown";
        case ErrorKind::not_invertible_diagonal: return "NotInvertibleDiagonal";
        case ErrorKind::inverse_unavailable: return "InverseUnavailable";
        case ErrorKind::unreachable: return "Unreachable";
        case ErrorKind::unsupported: return "Unsupported";
        case ErrorKind::malformed_input: return "MalformedInput";
    }
    return "Unknown";
}

} // namespace slfact
