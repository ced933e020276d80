//
// Copyright 2026 The Campus AR Authors
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
//

#pragma once

#include <string_view>

#include "campus/error.hpp"

namespace campus::qr {

enum class QrErrc {
  DivisionByZero,
  BadEcLength,
  Uncorrectable,
  PayloadTooLarge,
  BadForcedConfig,
  BadMatrixSize,
  MalformedMatrixText,
  NoFinderOrientation,
  BadFormatInfo,
  MalformedBitstream,
};

constexpr std::string_view to_string(QrErrc code) {
  switch (code) {
    case QrErrc::DivisionByZero: return "DivisionByZero";
    case QrErrc::BadEcLength: return "BadEcLength";
    case QrErrc::Uncorrectable: return "Uncorrectable";
    case QrErrc::PayloadTooLarge: return "PayloadTooLarge";
    case QrErrc::BadForcedConfig: return "BadForcedConfig";
    case QrErrc::BadMatrixSize: return "BadMatrixSize";
    case QrErrc::MalformedMatrixText: return "MalformedMatrixText";
    case QrErrc::NoFinderOrientation: return "NoFinderOrientation";
    case QrErrc::BadFormatInfo: return "BadFormatInfo";
    case QrErrc::MalformedBitstream: return "MalformedBitstream";
  }
  return "QrError";
}

using QrError = CodedError<QrErrc>;

}  // namespace campus::qr
