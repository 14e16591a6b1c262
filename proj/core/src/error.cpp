/*
 * Copyright (C) 2026 The k1guard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "k1guard/error.hpp"

namespace k1guard {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::NotEncodable: return "NotEncodable";
    case Errc::MalformedKey: return "MalformedKey";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DegenerateKey: return "DegenerateKey";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IncomparableTraces: return "IncomparableTraces";
  }
  return "Unknown";
}

}  // namespace k1guard
