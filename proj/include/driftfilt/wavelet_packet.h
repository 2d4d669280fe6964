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

#ifndef DRIFTFILT_WAVELET_PACKET_H_
#define DRIFTFILT_WAVELET_PACKET_H_

#include <string>
#include <string_view>
#include <vector>

#include "driftfilt/common.h"

namespace driftfilt {

enum class WaveletFamily { kDb, kSym, kCoif, kBior, kRbio };

// "db", "sym", "coif", "bior", "rbio".
std::string_view WaveletFamilyName(WaveletFamily family);
bool IsOrthogonal(WaveletFamily family);

// Two-channel filter bank. All four filters have the same length. The
// high-pass pair follows from the low-pass pair:
//   dec_hi[k] = (-1)^(k+1) rec_lo[k],   rec_hi[k] = (-1)^k dec_lo[k].
struct WaveletBasis {
  WaveletFamily family = WaveletFamily::kDb;
  std::string order_tag;
  Vector dec_lo;
  Vector dec_hi;
  Vector rec_lo;
  Vector rec_hi;

  // Family name followed by the tag, e.g. "db3" or "bior3.1".
  std::string Name() const;
  Index Length() const { return dec_lo.size(); }
};

// Throws Error(kValidation) unless the bank satisfies the orthogonality
// identities (db, sym, coif) or reconstructs perfectly (bior, rbio), both
// to 1e-10.
void ValidateBasis(const WaveletBasis& basis);

// Shipped members: db1-10, sym2-8, coif1-5 and bior/rbio 1.1, 1.3, 1.5,
// 2.2, 2.4, 2.6, 2.8, 3.1, 3.3, 3.5. Every table entry passes
// ValidateBasis when the registry is first built. Throws
// Error(kUnknownBasis) naming the available members.
const WaveletBasis& LoadBasis(WaveletFamily family, std::string_view order_tag);
const WaveletBasis& LoadBasis(std::string_view name);

std::vector<std::string> AvailableBases();
// db1-5, sym2-5, coif1-5, bior3.1/3.3/3.5, rbio3.1/3.3/3.5.
std::vector<std::string> DefaultSweepBases();

// Node index is the path of low (0) / high (1) choices read as a binary
// number, most significant bit first.
enum class NodeOrder { kNatural };
enum class Boundary { kPeriodic };

struct WptNodeSet {
  int level = 0;
  std::vector<Vector> nodes;
  NodeOrder node_order = NodeOrder::kNatural;
  WaveletBasis basis;
  Boundary boundary = Boundary::kPeriodic;

  Index NodeCount() const { return static_cast<Index>(nodes.size()); }
  Index CoefficientsPerNode() const {
    return nodes.empty() ? 0 : nodes.front().size();
  }
};

// Periodic analysis step: low[n] = sum_k dec_lo[k] x[(2n - k) mod L] and
// likewise for the high-pass, for n in [0, L/2).
void AnalysisStep(const Eigen::Ref<const Vector>& x, const WaveletBasis& basis,
                  Vector& low, Vector& high);
// Inverse of AnalysisStep.
Vector SynthesisStep(const Eigen::Ref<const Vector>& low,
                     const Eigen::Ref<const Vector>& high,
                     const WaveletBasis& basis);

// Full packet tree to `level`: every node at every level is split.
// Throws Error(kInvalidArgument) for level < 1, Error(kLengthIndivisible)
// when the length is not a multiple of 2^level, Error(kSegmentTooShort)
// when it is below twice the filter length.
WptNodeSet WptDecompose(const Eigen::Ref<const Vector>& segment,
                        const WaveletBasis& basis, int level);

// Throws Error(kShapeMismatch) unless the set has 2^level equally sized
// nonempty nodes.
Vector WptReconstruct(const WptNodeSet& nodes);

}  // namespace driftfilt

#endif  // DRIFTFILT_WAVELET_PACKET_H_
