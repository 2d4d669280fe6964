// Copyright 2026 The Driftfilt Authors.
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

#ifndef DRIFTFILT_SRC_WAVELET_TABLES_H_
#define DRIFTFILT_SRC_WAVELET_TABLES_H_

#include <vector>

#include "driftfilt/wavelet_packet.h"

namespace driftfilt::internal {

struct WaveletTableEntry {
  WaveletFamily family;
  const char* order_tag;
  std::vector<double> dec_lo;
  std::vector<double> rec_lo;
};

// Raw low-pass coefficient tables, 17 significant digits.
const std::vector<WaveletTableEntry>& WaveletTable();

}  // namespace driftfilt::internal

#endif  // DRIFTFILT_SRC_WAVELET_TABLES_H_
