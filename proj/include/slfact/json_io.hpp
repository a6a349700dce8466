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

// JSON interchange for series, matrices and factorizations. Emission uses
// insertion-ordered objects and round-trip-exact doubles; parsing reports
// schema violations with the JSON path in the message.

#ifndef SLFACT_JSON_IO_HPP
#define SLFACT_JSON_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "slfact/elementary.hpp"
#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact {

using OrderedJson = nlohmann::ordered_json;

OrderedJson series_to_json(const TruncatedSeries& f);
OrderedJson matrix_to_json(const AlgMatrix& F);
OrderedJson factorization_to_json(const Factorization& fac);

/// Parses {"vars", "tail", "coeffs"} with the given cap and slack. `where`
/// prefixes diagnostics, e.g. "entries[3]".
TruncatedSeries series_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                                 double float_slack, const std::string& where);

AlgMatrix matrix_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                           double float_slack);

Factorization factorization_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                                      double float_slack);

}  // namespace slfact

#endif  // SLFACT_JSON_IO_HPP
