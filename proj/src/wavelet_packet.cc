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

#include "driftfilt/wavelet_packet.h"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "wavelet_tables.h"

namespace driftfilt {
namespace {

constexpr double kBankTolerance = 1e-10;

Index Mod(Index a, Index n) {
  const Index r = a % n;
  return r < 0 ? r + n : r;
}

WaveletBasis FromTable(const internal::WaveletTableEntry& entry) {
  WaveletBasis basis;
  basis.family = entry.family;
  basis.order_tag = entry.order_tag;
  const Index n = static_cast<Index>(entry.dec_lo.size());
  basis.dec_lo = Eigen::Map<const Vector>(entry.dec_lo.data(), n);
  basis.rec_lo = Eigen::Map<const Vector>(entry.rec_lo.data(), n);
  basis.dec_hi.resize(n);
  basis.rec_hi.resize(n);
  for (Index k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    basis.dec_hi[k] = -sign * basis.rec_lo[k];
    basis.rec_hi[k] = sign * basis.dec_lo[k];
  }
  return basis;
}

struct Registry {
  std::map<std::string, WaveletBasis> by_name;
  std::vector<std::string> names;  // table order
};

const Registry& GetRegistry() {
  static const Registry* const kRegistry = [] {
    auto* registry = new Registry;
    for (const internal::WaveletTableEntry& entry : internal::WaveletTable()) {
      WaveletBasis basis = FromTable(entry);
      ValidateBasis(basis);
      std::string name = basis.Name();
      registry->names.push_back(name);
      registry->by_name.emplace(std::move(name), std::move(basis));
    }
    return registry;
  }();
  return *kRegistry;
}

std::string JoinedNames() {
  std::string out;
  for (const std::string& name : GetRegistry().names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

[[noreturn]] void ThrowUnknown(std::string_view name) {
  throw Error(ErrorCode::kUnknownBasis, "unknown wavelet basis '" +
                                            std::string(name) +
                                            "'; available: " + JoinedNames());
}

}  // namespace

std::string_view WaveletFamilyName(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::kDb: return "db";
    case WaveletFamily::kSym: return "sym";
    case WaveletFamily::kCoif: return "coif";
    case WaveletFamily::kBior: return "bior";
    case WaveletFamily::kRbio: return "rbio";
  }
  return "unknown";
}

bool IsOrthogonal(WaveletFamily family) {
  return family == WaveletFamily::kDb || family == WaveletFamily::kSym ||
         family == WaveletFamily::kCoif;
}

std::string WaveletBasis::Name() const {
  return std::string(WaveletFamilyName(family)) + order_tag;
}

void ValidateBasis(const WaveletBasis& basis) {
  const Index n = basis.Length();
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kValidation, basis.Name() + ": " + what);
  };
  if (n < 2 || n % 2 != 0 || basis.dec_hi.size() != n ||
      basis.rec_lo.size() != n || basis.rec_hi.size() != n) {
    fail("filters must share one even length");
  }
  if (IsOrthogonal(basis.family)) {
    const Vector& h = basis.dec_lo;
    if (std::abs(h.sum() - std::sqrt(2.0)) > kBankTolerance) fail("sum(h) != sqrt(2)");
    for (Index m = 0; 2 * m < n; ++m) {
      double acc = 0.0;
      for (Index k = 0; k + 2 * m < n; ++k) acc += h[k] * h[k + 2 * m];
      if (std::abs(acc - (m == 0 ? 1.0 : 0.0)) > kBankTolerance) {
        fail("low-pass not orthonormal to its even shifts");
      }
    }
    for (Index k = 0; k < n; ++k) {
      if (std::abs(basis.rec_lo[k] - h[n - 1 - k]) > kBankTolerance) {
        fail("reconstruction low-pass is not the reversed decomposition low-pass");
      }
    }
  }
  // Perfect reconstruction on a fixed probe long enough to wrap every tap.
  const Index len = 4 * n;
  Vector probe(len);
  for (Index i = 0; i < len; ++i) probe[i] = std::sin(1.7 * i * i + 0.3 * i) + (i == 1);
  Vector low, high;
  AnalysisStep(probe, basis, low, high);
  const Vector back = SynthesisStep(low, high, basis);
  if ((back - probe).cwiseAbs().maxCoeff() >
      kBankTolerance * probe.cwiseAbs().maxCoeff()) {
    fail("filter bank does not reconstruct perfectly");
  }
}

const WaveletBasis& LoadBasis(WaveletFamily family, std::string_view order_tag) {
  return LoadBasis(std::string(WaveletFamilyName(family)) + std::string(order_tag));
}

const WaveletBasis& LoadBasis(std::string_view name) {
  const Registry& registry = GetRegistry();
  const auto it = registry.by_name.find(std::string(name));
  if (it == registry.by_name.end()) ThrowUnknown(name);
  return it->second;
}

std::vector<std::string> AvailableBases() { return GetRegistry().names; }

std::vector<std::string> DefaultSweepBases() {
  return {"db1",     "db2",     "db3",     "db4",     "db5",     "sym2",
          "sym3",    "sym4",    "sym5",    "coif1",   "coif2",   "coif3",
          "coif4",   "coif5",   "bior3.1", "bior3.3", "bior3.5", "rbio3.1",
          "rbio3.3", "rbio3.5"};
}

void AnalysisStep(const Eigen::Ref<const Vector>& x, const WaveletBasis& basis,
                  Vector& low, Vector& high) {
  const Index len = x.size();
  const Index half = len / 2;
  const Index taps = basis.Length();
  low.setZero(half);
  high.setZero(half);
  for (Index n = 0; n < half; ++n) {
    double lo = 0.0, hi = 0.0;
    for (Index k = 0; k < taps; ++k) {
      const double v = x[Mod(2 * n - k, len)];
      lo += basis.dec_lo[k] * v;
      hi += basis.dec_hi[k] * v;
    }
    low[n] = lo;
    high[n] = hi;
  }
}

Vector SynthesisStep(const Eigen::Ref<const Vector>& low,
                     const Eigen::Ref<const Vector>& high,
                     const WaveletBasis& basis) {
  const Index half = low.size();
  const Index len = 2 * half;
  const Index taps = basis.Length();
  Vector x = Vector::Zero(len);
  // Adjoint-aligned: the tap delay of analysis is undone by starting each
  // output block taps - 1 samples earlier.
  for (Index n = 0; n < half; ++n) {
    for (Index k = 0; k < taps; ++k) {
      x[Mod(2 * n - taps + 1 + k, len)] +=
          low[n] * basis.rec_lo[k] + high[n] * basis.rec_hi[k];
    }
  }
  return x;
}

WptNodeSet WptDecompose(const Eigen::Ref<const Vector>& segment,
                        const WaveletBasis& basis, int level) {
  if (level < 1 || level > 30) {
    throw Error(ErrorCode::kInvalidArgument,
                "decomposition level must be in [1, 30], got " + std::to_string(level));
  }
  const Index len = segment.size();
  const Index blocks = Index{1} << level;
  if (len % blocks != 0) {
    throw Error(ErrorCode::kLengthIndivisible,
                "segment length " + std::to_string(len) +
                    " is not divisible by 2^" + std::to_string(level));
  }
  if (len < 2 * basis.Length()) {
    throw Error(ErrorCode::kSegmentTooShort,
                "segment length " + std::to_string(len) + " is below twice the " +
                    basis.Name() + " filter length");
  }
  std::vector<Vector> current{segment};
  for (int depth = 0; depth < level; ++depth) {
    std::vector<Vector> next(2 * current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      AnalysisStep(current[i], basis, next[2 * i], next[2 * i + 1]);
    }
    current = std::move(next);
  }
  WptNodeSet out;
  out.level = level;
  out.nodes = std::move(current);
  out.basis = basis;
  return out;
}

Vector WptReconstruct(const WptNodeSet& nodes) {
  if (nodes.level < 1 || nodes.level > 30 ||
      nodes.NodeCount() != (Index{1} << nodes.level)) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected 2^level nodes, got " + std::to_string(nodes.NodeCount()) +
                    " at level " + std::to_string(nodes.level));
  }
  const Index per_node = nodes.CoefficientsPerNode();
  for (const Vector& node : nodes.nodes) {
    if (node.size() != per_node || per_node == 0) {
      throw Error(ErrorCode::kShapeMismatch, "nodes must be equally sized and nonempty");
    }
  }
  std::vector<Vector> current = nodes.nodes;
  while (current.size() > 1) {
    std::vector<Vector> parent(current.size() / 2);
    for (std::size_t i = 0; i < parent.size(); ++i) {
      parent[i] = SynthesisStep(current[2 * i], current[2 * i + 1], nodes.basis);
    }
    current = std::move(parent);
  }
  return current.front();
}

}  // namespace driftfilt
