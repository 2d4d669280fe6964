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

// Command-line front end: design, filter, decompose, optimize, sweep,
// synth and report. Failures print one "error: <code>: <message>" line on
// stderr and exit nonzero.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "driftfilt/dataset_io.h"
#include "driftfilt/energy_features.h"
#include "driftfilt/iir_design.h"
#include "driftfilt/optimizer.h"
#include "driftfilt/pipeline.h"
#include "driftfilt/synth_data.h"
#include "driftfilt/wavelet_packet.h"
#include "driftfilt/zero_phase.h"

namespace driftfilt {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string out;
  std::string config;
  std::string dataset;
  std::string filter;
  std::string input;
  std::vector<std::string> families;
  std::vector<Index> segments;
  std::vector<std::string> bases;
  std::string basis;
  std::optional<int> level;
  std::optional<std::uint64_t> seed;
  std::string family = "butterworth";
  double fc = 0.0;
  int order = 4;
  std::optional<double> rp;
  std::optional<double> rs;
  double fs = 10.0;
  Index segment = 256;
  std::vector<std::string> inputs;
};

void Report(const std::vector<fs::path>& paths) {
  for (const fs::path& p : paths) std::cout << "wrote " << p.string() << '\n';
}

fs::path PrepareOut(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out + ": " + ec.message());
  return fs::path(out);
}

PipelineConfig LoadConfig(const Flags& f) {
  PipelineConfig c = f.config.empty() ? PipelineConfig{} : ReadPipelineConfig(f.config);
  if (!f.families.empty()) {
    c.families.clear();
    for (const std::string& name : f.families) c.families.push_back(ParseFamily(name));
  }
  if (!f.segments.empty()) c.segment_lengths = f.segments;
  if (!f.bases.empty()) c.bases = f.bases;
  if (!f.basis.empty()) c.objective_basis = f.basis;
  if (f.level) c.level = *f.level;
  c.Validate();
  return c;
}

ObjectiveProblem MakeProblem(const std::vector<Recording>& data, const PipelineConfig& c,
                             const WaveletBasis& basis, Index segment_len) {
  ObjectiveProblem p;
  p.dataset = &data;
  p.basis = &basis;
  p.level = c.level;
  p.grouping = c.grouping;
  p.plan.segment_len = segment_len;
  p.plan.Validate(basis, c.level);
  return p;
}

// Features of every group in one region; an empty list when the region is
// shorter than one segment.
std::vector<EnergyFeatures> RegionFeatures(const DigitalFilter& filter, ObjectiveProblem p,
                                           Region region) {
  p.plan.region = region;
  try {
    return ExtractFeatures(filter, p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRegionTooShort) throw;
    std::cerr << "note: no " << RegionName(region) << " scatter: " << e.what() << '\n';
    return {};
  }
}

void AddScatter(ResultBundle& bundle, const DigitalFilter& filter, const ObjectiveProblem& p,
                const std::string& tag) {
  for (Region region : {Region::kPreStimulus, Region::kPostStimulus}) {
    std::vector<EnergyFeatures> features = RegionFeatures(filter, p, region);
    if (features.empty()) continue;
    bundle.scatter.push_back({p.basis->Name(), p.plan.segment_len,
                              tag + "_" + std::string(RegionName(region)), std::move(features)});
  }
}

void PrintResult(const OptimizationResult& r) {
  std::cout << FamilyName(r.best.family) << " M=" << r.segment_len
            << " J_min=" << FormatDouble(r.j_min) << " wc_hz=" << FormatDouble(r.best.cutoff_hz)
            << " N=" << r.best.order;
  if (r.best.rp_db) std::cout << " Rp_dB=" << FormatDouble(*r.best.rp_db);
  if (r.best.rs_db) std::cout << " Rs_dB=" << FormatDouble(*r.best.rs_db);
  std::cout << '\n';
}

int RunDesign(const Flags& f) {
  FilterSpec spec;
  spec.family = ParseFamily(f.family);
  spec.cutoff_hz = f.fc;
  spec.order = f.order;
  spec.sample_rate_hz = f.fs;
  if (UsesPassbandRipple(spec.family)) spec.passband_ripple_db = f.rp;
  if (UsesStopbandAttenuation(spec.family)) spec.stopband_atten_db = f.rs;
  const DigitalFilter filter = DesignHighpass(spec);
  const fs::path out = PrepareOut(f.out);
  WriteFilterJson(out / "filter.json", filter);
  std::ostringstream csv;
  WriteResponseCsv(csv, ResponseCurve(filter));
  WriteTextFile(out / "response.csv", csv.str());
  std::cout << "cutoff_magnitude_db "
            << FormatDouble(20.0 * std::log10(std::abs(FrequencyResponseAt(filter, f.fc))))
            << '\n';
  Report({out / "filter.json", out / "response.csv"});
  return 0;
}

int RunFilter(const Flags& f) {
  const DigitalFilter filter = ReadFilterJson(f.filter);
  std::vector<Recording> data = LoadDataset(f.dataset, filter.sample_rate_hz);
  for (Recording& r : data) r.samples = FiltFilt(filter, r.samples).samples;
  Report({WriteDataset(PrepareOut(f.out), data)});
  return 0;
}

int RunDecompose(const Flags& f) {
  ManifestEntry entry;
  entry.file = f.input;
  entry.sample_rate_hz = f.fs;
  const Vector x = ReadSignalCsv(f.input, entry);
  const WaveletBasis& basis = LoadBasis(f.basis.empty() ? "db3" : f.basis);
  const int level = f.level.value_or(2);
  SegmentationPlan plan;
  plan.segment_len = f.segment;
  plan.Validate(basis, level);
  std::vector<Vector> segments;
  for (Index start : SegmentStarts(x.size(), x.size(), plan)) {
    segments.emplace_back(x.segment(start, plan.segment_len));
  }
  const std::string stem = fs::path(f.input).stem().string();
  const EnergyFeatures features = ComputeFeatures(stem, segments, basis, level);
  const fs::path out = PrepareOut(f.out) / ("energy_" + basis.Name() + "_M" +
                                            std::to_string(plan.segment_len) + "_" + stem + ".csv");
  std::ostringstream csv;
  WriteFeaturesCsv(csv, {features});
  WriteTextFile(out, csv.str());
  Report({out});
  return 0;
}

int RunOptimize(const Flags& f) {
  const PipelineConfig config = LoadConfig(f);
  const std::vector<Recording> data = LoadDataset(f.dataset);
  if (data.empty()) throw Error(ErrorCode::kVacuousProblem, "dataset has no recordings");
  const WaveletBasis& basis = LoadBasis(config.objective_basis);
  ResultBundle bundle;
  bundle.sample_rate_hz = data.front().sample_rate_hz;
  for (Index m : config.segment_lengths) {
    const ObjectiveProblem problem = MakeProblem(data, config, basis, m);
    AddScatter(bundle, DigitalFilter::Identity(bundle.sample_rate_hz), problem, "unfiltered");
    for (FilterFamily family : config.families) {
      OptimizationResult r = OptimizeFilter(family, problem, config.optimizer);
      PrintResult(r);
      AddScatter(bundle, DesignHighpass(r.best.ToSpec(bundle.sample_rate_hz)), problem,
                 std::string(FamilyName(family)));
      bundle.results.push_back(std::move(r));
    }
  }
  Report(WriteResults(bundle, PrepareOut(f.out)));
  return 0;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int RunSweep(const Flags& f) {
  const PipelineConfig config = LoadConfig(f);
  const std::vector<Recording> data = LoadDataset(f.dataset);
  if (data.empty()) throw Error(ErrorCode::kVacuousProblem, "dataset has no recordings");
  const WaveletBasis& objective_basis = LoadBasis(config.objective_basis);
  std::vector<const WaveletBasis*> bases;
  for (const std::string& name : config.bases) bases.push_back(&LoadBasis(name));

  std::optional<DigitalFilter> fixed;
  std::vector<FilterFamily> families;
  if (!f.filter.empty()) {
    fixed = ReadFilterJson(f.filter);
    if (!fixed->spec) {
      throw Error(ErrorCode::kInvalidArgument, f.filter + ": filter JSON carries no design spec");
    }
    families = {fixed->spec->family};
  } else if (!f.families.empty()) {
    families = config.families;
  } else {
    families = {FilterFamily::kChebyshevII};
  }

  ResultBundle bundle;
  bundle.sample_rate_hz = data.front().sample_rate_hz;
  for (Index m : config.segment_lengths) {
    for (FilterFamily family : families) {
      DigitalFilter filter;
      if (fixed) {
        filter = *fixed;
      } else {
        OptimizationResult r =
            OptimizeFilter(family, MakeProblem(data, config, objective_basis, m), config.optimizer);
        PrintResult(r);
        filter = DesignHighpass(r.best.ToSpec(bundle.sample_rate_hz));
        bundle.results.push_back(std::move(r));
      }
      for (const WaveletBasis* basis : bases) {
        const ObjectiveProblem problem = MakeProblem(data, config, *basis, m);
        std::vector<EnergyFeatures> features = ExtractFeatures(filter, problem);
        const double j = ObjectiveJ(Centroids(features));
        bundle.sweep.push_back({family, basis->Name(), m, j});
        bundle.scatter.push_back({basis->Name(), m, std::string(FamilyName(family)),
                                  std::move(features)});
      }
    }
  }
  std::map<std::pair<int, Index>, std::vector<double>> cells;
  for (const SweepEntry& e : bundle.sweep) {
    cells[{static_cast<int>(e.family), e.segment_len}].push_back(e.j);
  }
  for (const auto& [key, js] : cells) {
    std::cout << FamilyName(static_cast<FilterFamily>(key.first)) << " M=" << key.second
              << " median_J=" << FormatDouble(Median(js)) << " bases=" << js.size() << '\n';
  }
  Report(WriteResults(bundle, PrepareOut(f.out)));
  return 0;
}

int RunSynth(const Flags& f) {
  SynthConfig config =
      f.config.empty() ? SynthConfig{} : SynthConfigFromJson(ReadTextFile(f.config));
  config.seed = *f.seed;
  const SynthDataset ds = Generate(config);
  const fs::path out = PrepareOut(f.out);
  const fs::path manifest = WriteDataset(out, ds.recordings);
  WriteTextFile(out / "synth_config.json", SynthConfigToJson(config));
  Report({manifest, out / "synth_config.json"});
  return 0;
}

int RunReport(const Flags& f) {
  std::vector<SummaryRow> rows;
  for (const std::string& path : f.inputs) {
    std::istringstream in(ReadTextFile(path));
    try {
      for (SummaryRow& r : ReadSummaryCsv(in)) rows.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    if (a.segment_len != b.segment_len) return a.segment_len < b.segment_len;
    return static_cast<int>(a.family) < static_cast<int>(b.family);
  });
  std::map<Index, const SummaryRow*> best;
  for (const SummaryRow& r : rows) {
    auto [it, inserted] = best.try_emplace(r.segment_len, &r);
    if (!inserted && r.j_min < it->second->j_min) it->second = &r;
  }
  for (const auto& [m, r] : best) {
    std::cout << "M=" << m << " best_family=" << FamilyName(r->family)
              << " J_min=" << FormatDouble(r->j_min) << '\n';
  }
  std::ostringstream csv;
  WriteSummaryRows(csv, rows);
  const fs::path out = PrepareOut(f.out) / "summary.csv";
  WriteTextFile(out, csv.str());
  Report({out});
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Drift-removal filter design and wavelet-packet feature analysis."};
  app.require_subcommand(1, 1);
  Flags f;

  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", f.out, "Output directory (created if missing)")->required();
  };
  auto add_pipeline = [&](CLI::App* c) {
    c->add_option("--dataset", f.dataset, "Dataset manifest JSON")->required();
    c->add_option("--config", f.config, "Pipeline config JSON; flags override its fields");
    c->add_option("--families", f.families, "Comma-separated filter families")->delimiter(',');
    c->add_option("--segments", f.segments, "Comma-separated segment lengths M")->delimiter(',');
    c->add_option("--basis", f.basis, "Wavelet basis of the objective (default db3)");
    c->add_option("--level", f.level, "Wavelet packet decomposition level (default 2)");
  };

  CLI::App* design = app.add_subcommand("design", "Design a high-pass filter and its response curve");
  design->add_option("--family", f.family,
                     "butterworth, chebyshev1, chebyshev2 or elliptic (default butterworth)");
  design->add_option("--fc", f.fc, "Cutoff in Hz (stopband edge for chebyshev2)")->required();
  design->add_option("--order", f.order, "Filter order (default 4)");
  design->add_option("--rp", f.rp, "Passband ripple in dB (chebyshev1, elliptic)");
  design->add_option("--rs", f.rs, "Stopband attenuation in dB (chebyshev2, elliptic)");
  design->add_option("--fs", f.fs, "Sample rate in Hz (default 10)");
  add_out(design);

  CLI::App* filter = app.add_subcommand("filter", "Apply a saved filter to a dataset, zero-phase");
  filter->add_option("--filter", f.filter, "Filter JSON written by design or optimize")->required();
  filter->add_option("--dataset", f.dataset, "Dataset manifest JSON")->required();
  add_out(filter);

  CLI::App* decompose = app.add_subcommand("decompose", "Wavelet packet energies of one signal CSV");
  decompose->add_option("--input", f.input, "Signal CSV (time_s,value_mv)")->required();
  decompose->add_option("--fs", f.fs, "Sample rate in Hz (default 10)");
  decompose->add_option("--basis", f.basis, "Wavelet basis (default db3)");
  decompose->add_option("--level", f.level, "Decomposition level (default 2)");
  decompose->add_option("--segment", f.segment, "Segment length M (default 256)");
  add_out(decompose);

  CLI::App* optimize = app.add_subcommand("optimize", "Optimize filters per family and segment length");
  add_pipeline(optimize);
  add_out(optimize);

  CLI::App* sweep = app.add_subcommand("sweep", "Objective across wavelet bases and segment lengths");
  add_pipeline(sweep);
  sweep->add_option("--bases", f.bases, "Comma-separated wavelet bases to sweep")->delimiter(',');
  sweep->add_option("--filter", f.filter, "Fixed filter JSON instead of optimizing chebyshev2");
  add_out(sweep);

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--seed", f.seed, "Random seed")->required();
  synth->add_option("--config", f.config, "Synthetic config JSON");
  add_out(synth);

  CLI::App* report = app.add_subcommand("report", "Merge summary CSVs");
  report->add_option("summaries", f.inputs, "Summary CSV files")->required();
  add_out(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*design) return RunDesign(f);
    if (*filter) return RunFilter(f);
    if (*decompose) return RunDecompose(f);
    if (*optimize) return RunOptimize(f);
    if (*sweep) return RunSweep(f);
    if (*synth) return RunSynth(f);
    if (*report) return RunReport(f);
  } catch (const Error& e) {
    std::cerr << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace driftfilt

int main(int argc, char** argv) { return driftfilt::Main(argc, argv); }
