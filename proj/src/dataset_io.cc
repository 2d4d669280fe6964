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

#include "driftfilt/dataset_io.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "driftfilt/wavelet_packet.h"

namespace driftfilt {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string Where(const fs::path& path, int line) {
  return path.string() + ":" + std::to_string(line);
}

std::vector<std::string> SplitOn(std::string_view line, char delimiter) {
  if (delimiter == ',') return SplitCsvLine(line);
  std::vector<std::string> fields;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(delimiter, start);
    std::string_view f = line.substr(start, end == std::string_view::npos ? line.npos : end - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
    fields.emplace_back(f);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

double ParseField(const std::string& field, const std::string& where, const char* what) {
  double v;
  if (!ParseDouble(field, v) || !std::isfinite(v)) {
    throw Error(ErrorCode::kMalformedRow,
                where + ": " + what + " '" + field + "' is not a finite number");
  }
  return v;
}

std::string SafeName(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

json ManifestEntryToJson(const ManifestEntry& e) {
  json j = {{"file", e.file},
            {"experiment_id", e.experiment_id},
            {"channel_id", e.channel_id},
            {"sample_rate_hz", e.sample_rate_hz},
            {"stimulus_time_s", e.stimulus_time_s},
            {"stimulus_label", e.stimulus_label}};
  if (!e.UsesDefaultLayout()) {
    j["time_column"] = e.time_column;
    j["value_column"] = e.value_column;
    j["header_rows"] = e.header_rows;
    j["delimiter"] = std::string(1, e.delimiter);
  }
  return j;
}

ManifestEntry ManifestEntryFromJson(const json& j) {
  ManifestEntry e;
  e.file = j.at("file").get<std::string>();
  e.experiment_id = j.at("experiment_id").get<std::string>();
  e.channel_id = j.at("channel_id").get<std::string>();
  e.sample_rate_hz = j.at("sample_rate_hz").get<double>();
  e.stimulus_time_s = j.at("stimulus_time_s").get<double>();
  e.stimulus_label = j.value("stimulus_label", std::string());
  e.time_column = j.value("time_column", 0);
  e.value_column = j.value("value_column", 1);
  e.header_rows = j.value("header_rows", 1);
  const std::string delimiter = j.value("delimiter", std::string(","));
  if (delimiter.size() != 1) throw Error(ErrorCode::kMalformedRow, "delimiter must be one character");
  e.delimiter = delimiter[0];
  if (e.value_column < 0 || e.header_rows < 0 || e.time_column == e.value_column) {
    throw Error(ErrorCode::kMalformedRow, "entry " + e.file + ": bad column adapter fields");
  }
  return e;
}

json ParamBoundsToJson(const ParamBounds& b) {
  return {{"cutoff_lo_hz", b.cutoff_lo_hz}, {"cutoff_hi_hz", b.cutoff_hi_hz},
          {"rp_lo_db", b.rp_lo_db},         {"rp_hi_db", b.rp_hi_db},
          {"rs_lo_db", b.rs_lo_db},         {"rs_hi_db", b.rs_hi_db},
          {"order_lo", b.order_lo},         {"order_hi", b.order_hi}};
}

// Copies present keys of j into the fields; rejects unknown keys.
template <typename Fn>
void ForEachKey(const json& j, const std::string& context, Fn&& fn) {
  if (!j.is_object()) throw Error(ErrorCode::kValidation, context + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!fn(it.key(), it.value())) {
      throw Error(ErrorCode::kValidation, "unknown key '" + it.key() + "' in " + context);
    }
  }
}

std::string_view OrderModeName(OrderMode m) {
  return m == OrderMode::kDiscreteSweep ? "discrete" : "continuous";
}

OrderMode ParseOrderMode(const std::string& s) {
  if (s == "discrete") return OrderMode::kDiscreteSweep;
  if (s == "continuous") return OrderMode::kContinuousRelaxation;
  throw Error(ErrorCode::kValidation, "order_mode must be discrete or continuous, got '" + s + "'");
}

void RequireHeader(std::istream& in, const std::string& expected, const std::string& what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMalformedRow, what + " line 1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected) {
    throw Error(ErrorCode::kMalformedRow,
                what + " line 1: expected header '" + expected + "', got '" + line + "'");
  }
}

}  // namespace

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  return ss.str();
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<ManifestEntry> ReadManifest(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    const json j = json::parse(text);
    if (!j.is_array()) throw Error(ErrorCode::kMalformedRow, path.string() + ": manifest must be a JSON array");
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 0; i < j.size(); ++i) {
      try {
        entries.push_back(ManifestEntryFromJson(j[i]));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kMalformedRow,
                    path.string() + ": entry " + std::to_string(i) + ": " + e.what());
      }
    }
    return entries;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": " + e.what());
  }
}

void WriteManifest(const fs::path& path, const std::vector<ManifestEntry>& entries) {
  json j = json::array();
  for (const ManifestEntry& e : entries) j.push_back(ManifestEntryToJson(e));
  WriteTextFile(path, j.dump(2) + "\n");
}

Vector ReadSignalCsv(const fs::path& path, const ManifestEntry& entry) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open signal file " + path.string());
  std::string line;
  int line_no = 0;
  for (int h = 0; h < entry.header_rows; ++h) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kMalformedRow, Where(path, line_no + 1) + ": missing header");
    }
    ++line_no;
    if (h == 0 && entry.UsesDefaultLayout()) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line != "time_s,value_mv") {
        throw Error(ErrorCode::kMalformedRow,
                    Where(path, 1) + ": expected header 'time_s,value_mv', got '" + line + "'");
      }
    }
  }
  std::vector<double> values, times;
  const std::size_t needed =
      static_cast<std::size_t>(std::max(entry.time_column, entry.value_column)) + 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = SplitOn(line, entry.delimiter);
    const std::string where = Where(path, line_no);
    if (fields.size() < needed) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected at least " +
                                                std::to_string(needed) + " fields, got " +
                                                std::to_string(fields.size()));
    }
    if (entry.time_column >= 0) {
      times.push_back(ParseField(fields[static_cast<std::size_t>(entry.time_column)], where, "time"));
    }
    values.push_back(ParseField(fields[static_cast<std::size_t>(entry.value_column)], where, "sample"));
  }
  if (values.empty()) throw Error(ErrorCode::kValidation, path.string() + ": no samples");
  if (times.size() >= 2) {
    const double span = times.back() - times.front();
    const double expected = static_cast<double>(times.size() - 1) / entry.sample_rate_hz;
    if (std::abs(span - expected) > 0.01 * expected) {
      throw Error(ErrorCode::kValidation,
                  path.string() + ": time column spans " + FormatDouble(span) +
                      " s but " + std::to_string(times.size()) + " samples at " +
                      FormatDouble(entry.sample_rate_hz) + " Hz span " + FormatDouble(expected) + " s");
    }
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

void WriteSignalCsv(const fs::path& path, const Recording& recording) {
  std::ostringstream out;
  out << "time_s,value_mv\n";
  for (Index i = 0; i < recording.samples.size(); ++i) {
    out << FormatDouble(static_cast<double>(i) / recording.sample_rate_hz) << ','
        << FormatDouble(recording.samples[i]) << '\n';
  }
  WriteTextFile(path, out.str());
}

std::vector<Recording> LoadDataset(const fs::path& manifest_path,
                                   std::optional<double> expected_rate_hz) {
  const std::vector<ManifestEntry> entries = ReadManifest(manifest_path);
  const fs::path base = manifest_path.parent_path();
  std::vector<Recording> out;
  for (const ManifestEntry& e : entries) {
    if (!(e.sample_rate_hz > 0.0)) {
      throw Error(ErrorCode::kValidation, e.file + ": sample_rate_hz must be positive");
    }
    if (expected_rate_hz && e.sample_rate_hz != *expected_rate_hz) {
      throw Error(ErrorCode::kValidation,
                  e.file + ": sample rate " + FormatDouble(e.sample_rate_hz) +
                      " Hz differs from the configured " + FormatDouble(*expected_rate_hz) + " Hz");
    }
    const fs::path file = fs::path(e.file).is_absolute() ? fs::path(e.file) : base / e.file;
    Recording r;
    r.experiment_id = e.experiment_id;
    r.channel_id = e.channel_id;
    r.sample_rate_hz = e.sample_rate_hz;
    r.stimulus_label = e.stimulus_label;
    r.samples = ReadSignalCsv(file, e);
    const double index = std::round(e.stimulus_time_s * e.sample_rate_hz);
    const double n = static_cast<double>(r.samples.size());
    if (!std::isfinite(index) || index <= 0.0 || index >= n) {
      throw Error(ErrorCode::kValidation,
                  e.file + ": stimulus time " + FormatDouble(e.stimulus_time_s) +
                      " s lies outside the record of " + FormatDouble(n / e.sample_rate_hz) + " s");
    }
    r.stimulus_index = static_cast<Index>(index);
    r.Validate();
    out.push_back(std::move(r));
  }
  return out;
}

fs::path WriteDataset(const fs::path& dir, const std::vector<Recording>& recordings) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<ManifestEntry> entries;
  for (const Recording& r : recordings) {
    r.Validate();
    ManifestEntry e;
    e.file = SafeName(r.experiment_id) + "_" + SafeName(r.channel_id) + ".csv";
    e.experiment_id = r.experiment_id;
    e.channel_id = r.channel_id;
    e.sample_rate_hz = r.sample_rate_hz;
    e.stimulus_time_s = static_cast<double>(r.stimulus_index) / r.sample_rate_hz;
    e.stimulus_label = r.stimulus_label;
    WriteSignalCsv(dir / e.file, r);
    entries.push_back(std::move(e));
  }
  const fs::path manifest = dir / "manifest.json";
  WriteManifest(manifest, entries);
  return manifest;
}

std::string FilterToJson(const DigitalFilter& filter) {
  json j;
  j["sample_rate_hz"] = filter.sample_rate_hz;
  j["gain"] = filter.gain;
  json sections = json::array();
  for (const SecondOrderSection& s : filter.sections) {
    sections.push_back({{"b", {s.b0, s.b1, s.b2}}, {"a", {1.0, s.a1, s.a2}}});
  }
  j["sections"] = std::move(sections);
  if (filter.spec) {
    const FilterSpec& s = *filter.spec;
    j["spec"] = {{"family", std::string(FamilyName(s.family))},
                 {"cutoff_hz", s.cutoff_hz},
                 {"order", s.order},
                 {"rp_db", s.passband_ripple_db ? json(*s.passband_ripple_db) : json(nullptr)},
                 {"rs_db", s.stopband_atten_db ? json(*s.stopband_atten_db) : json(nullptr)},
                 {"sample_rate_hz", s.sample_rate_hz}};
  }
  return j.dump(2) + "\n";
}

DigitalFilter FilterFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    DigitalFilter f;
    f.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    f.gain = j.at("gain").get<double>();
    for (const json& s : j.at("sections")) {
      const auto b = s.at("b").get<std::vector<double>>();
      const auto a = s.at("a").get<std::vector<double>>();
      if (b.size() != 3 || a.size() != 3 || a[0] != 1.0) {
        throw Error(ErrorCode::kMalformedRow,
                    "filter JSON: each section needs b[3] and a[3] with a[0] = 1");
      }
      f.sections.push_back({b[0], b[1], b[2], a[1], a[2]});
    }
    if (j.contains("spec") && !j["spec"].is_null()) {
      const json& s = j["spec"];
      FilterSpec spec;
      spec.family = ParseFamily(s.at("family").get<std::string>());
      spec.cutoff_hz = s.at("cutoff_hz").get<double>();
      spec.order = s.at("order").get<int>();
      if (!s.at("rp_db").is_null()) spec.passband_ripple_db = s["rp_db"].get<double>();
      if (!s.at("rs_db").is_null()) spec.stopband_atten_db = s["rs_db"].get<double>();
      spec.sample_rate_hz = s.at("sample_rate_hz").get<double>();
      f.spec = spec;
    }
    if (!(f.sample_rate_hz > 0.0) || !std::isfinite(f.gain)) {
      throw Error(ErrorCode::kValidation, "filter JSON: bad sample rate or gain");
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("filter JSON: ") + e.what());
  }
}

void WriteFilterJson(const fs::path& path, const DigitalFilter& filter) {
  WriteTextFile(path, FilterToJson(filter));
}

DigitalFilter ReadFilterJson(const fs::path& path) {
  try {
    return FilterFromJson(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<ResponsePoint> ResponseCurve(const DigitalFilter& filter, int points) {
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "response curve needs 2 or more points");
  const double nyquist = filter.sample_rate_hz / 2.0;
  std::vector<double> freqs(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) freqs[k] = nyquist * k / (points - 1);
  const std::vector<Complex> h = FrequencyResponse(filter, freqs);
  std::vector<ResponsePoint> curve(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    curve[k].freq_hz = freqs[k];
    curve[k].magnitude_db = 20.0 * std::log10(std::abs(h[k]));
    curve[k].phase_deg = std::arg(h[k]) * 180.0 / std::numbers::pi;
  }
  return curve;
}

void WriteResponseCsv(std::ostream& out, const std::vector<ResponsePoint>& curve) {
  out << "freq_hz,magnitude_db,phase_deg\n";
  for (const ResponsePoint& p : curve) {
    out << FormatDouble(p.freq_hz) << ',' << FormatDouble(p.magnitude_db) << ','
        << FormatDouble(p.phase_deg) << '\n';
  }
}

std::vector<ResponsePoint> ReadResponseCsv(std::istream& in) {
  RequireHeader(in, "freq_hz,magnitude_db,phase_deg", "response CSV");
  std::vector<ResponsePoint> curve;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    const std::string where = "response CSV line " + std::to_string(line_no);
    if (f.size() != 3) throw Error(ErrorCode::kMalformedRow, where + ": expected 3 fields");
    ResponsePoint p;
    p.freq_hz = ParseField(f[0], where, "frequency");
    // A zero of the response reads back as -inf dB.
    if (!ParseDouble(f[1], p.magnitude_db) || std::isnan(p.magnitude_db)) {
      throw Error(ErrorCode::kMalformedRow, where + ": bad magnitude '" + f[1] + "'");
    }
    p.phase_deg = ParseField(f[2], where, "phase");
    curve.push_back(p);
  }
  return curve;
}

void PipelineConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "pipeline config: " + what);
  };
  if (families.empty()) fail("families is empty");
  if (segment_lengths.empty()) fail("segments is empty");
  for (Index m : segment_lengths) {
    if (m <= 0 || (m & (m - 1)) != 0) fail("segment length " + std::to_string(m) + " is not a power of two");
  }
  if (bases.empty()) fail("bases is empty");
  for (const std::string& b : bases) LoadBasis(b);
  LoadBasis(objective_basis);
  if (level < 1 || level > 30) fail("level must be in [1, 30]");
  const NelderMeadOptions& nm = optimizer.nelder_mead;
  if (!(nm.tol_x > 0.0) || !(nm.tol_f >= 0.0) || nm.max_iter < 1) {
    fail("optimizer tolerances must be positive and max_iter at least 1");
  }
  const ParamBounds& b = optimizer.bounds;
  if (!(b.cutoff_lo_hz > 0.0 && b.cutoff_lo_hz < b.cutoff_hi_hz) || !(b.rp_lo_db > 0.0 && b.rp_lo_db < b.rp_hi_db) ||
      !(b.rs_lo_db > 0.0 && b.rs_lo_db < b.rs_hi_db) || !(b.order_lo >= 1 && b.order_lo <= b.order_hi)) {
    fail("optimizer bounds must be positive, ordered intervals");
  }
}

std::string PipelineConfigToJson(const PipelineConfig& c) {
  json families = json::array();
  for (FilterFamily f : c.families) families.push_back(std::string(FamilyName(f)));
  const NelderMeadOptions& nm = c.optimizer.nelder_mead;
  json j = {{"families", families},
            {"segments", c.segment_lengths},
            {"bases", c.bases},
            {"objective_basis", c.objective_basis},
            {"level", c.level},
            {"grouping", std::string(GroupingName(c.grouping))},
            {"optimizer",
             {{"tol_x", nm.tol_x},
              {"tol_f", nm.tol_f},
              {"max_iter", nm.max_iter},
              {"order_mode", std::string(OrderModeName(c.optimizer.order_mode))},
              {"freeze_elliptic_rs", c.optimizer.freeze_elliptic_rs},
              {"frozen_rs_db", c.optimizer.frozen_rs_db},
              {"bounds", ParamBoundsToJson(c.optimizer.bounds)}}}};
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfigFromJson(const std::string& text) {
  PipelineConfig c;
  try {
    const json j = json::parse(text);
    ForEachKey(j, "pipeline config", [&](const std::string& k, const json& v) {
      if (k == "families") {
        c.families.clear();
        for (const json& f : v) c.families.push_back(ParseFamily(f.get<std::string>()));
      } else if (k == "segments") {
        c.segment_lengths = v.get<std::vector<Index>>();
      } else if (k == "bases") {
        c.bases = v.get<std::vector<std::string>>();
      } else if (k == "objective_basis") {
        c.objective_basis = v.get<std::string>();
      } else if (k == "level") {
        c.level = v.get<int>();
      } else if (k == "grouping") {
        c.grouping = ParseGrouping(v.get<std::string>());
      } else if (k == "optimizer") {
        OptimizerOptions& o = c.optimizer;
        ForEachKey(v, "optimizer", [&](const std::string& ok, const json& ov) {
          if (ok == "tol_x") o.nelder_mead.tol_x = ov.get<double>();
          else if (ok == "tol_f") o.nelder_mead.tol_f = ov.get<double>();
          else if (ok == "max_iter") o.nelder_mead.max_iter = ov.get<int>();
          else if (ok == "order_mode") o.order_mode = ParseOrderMode(ov.get<std::string>());
          else if (ok == "freeze_elliptic_rs") o.freeze_elliptic_rs = ov.get<bool>();
          else if (ok == "frozen_rs_db") o.frozen_rs_db = ov.get<double>();
          else if (ok == "bounds") {
            ParamBounds& b = o.bounds;
            ForEachKey(ov, "bounds", [&](const std::string& bk, const json& bv) {
              if (bk == "cutoff_lo_hz") b.cutoff_lo_hz = bv.get<double>();
              else if (bk == "cutoff_hi_hz") b.cutoff_hi_hz = bv.get<double>();
              else if (bk == "rp_lo_db") b.rp_lo_db = bv.get<double>();
              else if (bk == "rp_hi_db") b.rp_hi_db = bv.get<double>();
              else if (bk == "rs_lo_db") b.rs_lo_db = bv.get<double>();
              else if (bk == "rs_hi_db") b.rs_hi_db = bv.get<double>();
              else if (bk == "order_lo") b.order_lo = bv.get<int>();
              else if (bk == "order_hi") b.order_hi = bv.get<int>();
              else return false;
              return true;
            });
          } else {
            return false;
          }
          return true;
        });
      } else {
        return false;
      }
      return true;
    });
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("pipeline config: ") + e.what());
  }
  c.Validate();
  return c;
}

PipelineConfig ReadPipelineConfig(const fs::path& path) {
  try {
    return PipelineConfigFromJson(ReadTextFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SynthConfigToJson(const SynthConfig& c) {
  json j = {{"num_experiments", c.num_experiments},
            {"duration_s", c.duration_s},
            {"sample_rate_hz", c.sample_rate_hz},
            {"stimulus_time_s", c.stimulus_time_s},
            {"drift",
             {{"kind", std::string(DriftKindName(c.drift.kind))},
              {"amplitude", c.drift.amplitude},
              {"cutoff_hz", c.drift.cutoff_hz}}},
            {"noise_sigma", c.noise_sigma},
            {"burst",
             {{"band_low_hz", c.burst.band_low_hz},
              {"band_high_hz", c.burst.band_high_hz},
              {"amplitude", c.burst.amplitude},
              {"duration_s", c.burst.duration_s}}},
            {"seed", c.seed}};
  return j.dump(2) + "\n";
}

SynthConfig SynthConfigFromJson(const std::string& text) {
  SynthConfig c;
  try {
    const json j = json::parse(text);
    ForEachKey(j, "synthetic config", [&](const std::string& k, const json& v) {
      if (k == "num_experiments") c.num_experiments = v.get<int>();
      else if (k == "duration_s") c.duration_s = v.get<double>();
      else if (k == "sample_rate_hz") c.sample_rate_hz = v.get<double>();
      else if (k == "stimulus_time_s") c.stimulus_time_s = v.get<double>();
      else if (k == "noise_sigma") c.noise_sigma = v.get<double>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "drift") {
        ForEachKey(v, "drift", [&](const std::string& dk, const json& dv) {
          if (dk == "kind") {
            try {
              c.drift.kind = ParseDriftKind(dv.get<std::string>());
            } catch (const Error& e) {
              throw Error(ErrorCode::kValidation, e.what());
            }
          } else if (dk == "amplitude") c.drift.amplitude = dv.get<double>();
          else if (dk == "cutoff_hz") c.drift.cutoff_hz = dv.get<double>();
          else return false;
          return true;
        });
      } else if (k == "burst") {
        ForEachKey(v, "burst", [&](const std::string& bk, const json& bv) {
          if (bk == "band_low_hz") c.burst.band_low_hz = bv.get<double>();
          else if (bk == "band_high_hz") c.burst.band_high_hz = bv.get<double>();
          else if (bk == "amplitude") c.burst.amplitude = bv.get<double>();
          else if (bk == "duration_s") c.burst.duration_s = bv.get<double>();
          else return false;
          return true;
        });
      } else {
        return false;
      }
      return true;
    });
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("synthetic config: ") + e.what());
  }
  c.Validate();
  return c;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepEntry>& entries) {
  out << "family,basis,M,J\n";
  for (const SweepEntry& e : entries) {
    out << FamilyName(e.family) << ',' << e.basis << ',' << e.segment_len << ','
        << FormatDouble(e.j) << '\n';
  }
}

std::vector<SweepEntry> ReadSweepCsv(std::istream& in) {
  RequireHeader(in, "family,basis,M,J", "sweep CSV");
  std::vector<SweepEntry> entries;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    const std::string where = "sweep CSV line " + std::to_string(line_no);
    if (f.size() != 4) throw Error(ErrorCode::kMalformedRow, where + ": expected 4 fields");
    SweepEntry e;
    try {
      e.family = ParseFamily(f[0]);
    } catch (const Error&) {
      throw Error(ErrorCode::kMalformedRow, where + ": unknown family '" + f[0] + "'");
    }
    e.basis = f[1];
    const double m = ParseField(f[2], where, "M");
    if (m <= 0.0 || m != std::floor(m)) throw Error(ErrorCode::kMalformedRow, where + ": bad M");
    e.segment_len = static_cast<Index>(m);
    e.j = ParseField(f[3], where, "J");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<fs::path> WriteResults(const ResultBundle& bundle, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto emit = [&](const fs::path& path, const std::string& text) {
    WriteTextFile(path, text);
    written.push_back(path);
  };

  std::ostringstream summary;
  WriteSummaryCsv(summary, bundle.results);
  emit(out_dir / "summary.csv", summary.str());

  for (const OptimizationResult& r : bundle.results) {
    const std::string stem =
        std::string(FamilyName(r.best.family)) + "_M" + std::to_string(r.segment_len);
    const DigitalFilter filter = DesignHighpass(r.best.ToSpec(bundle.sample_rate_hz));
    emit(out_dir / ("filter_" + stem + ".json"), FilterToJson(filter));
    std::ostringstream response;
    WriteResponseCsv(response, ResponseCurve(filter));
    emit(out_dir / ("response_" + stem + ".csv"), response.str());
    emit(out_dir / ("result_" + stem + ".json"), OptimizationResultToJson(r) + "\n");
  }

  for (const ScatterSet& s : bundle.scatter) {
    std::string name = "energy_" + SafeName(s.basis) + "_M" + std::to_string(s.segment_len);
    if (!s.tag.empty()) name += "_" + SafeName(s.tag);
    std::ostringstream csv;
    WriteFeaturesCsv(csv, s.features);
    emit(out_dir / (name + ".csv"), csv.str());
  }

  if (!bundle.sweep.empty()) {
    std::ostringstream csv;
    WriteSweepCsv(csv, bundle.sweep);
    emit(out_dir / "objective_distribution.csv", csv.str());
  }
  return written;
}

}  // namespace driftfilt
