// Copyright 2026 The pdbench Authors. All Rights Reserved.
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

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "internal.h"
#include "json.hpp"
#include "pdbench/cli.h"
#include "pdbench/csv.h"
#include "pdbench/fr_metrics.h"
#include "pdbench/niqe.h"
#include "pdbench/scores.h"

namespace pdbench::cli {
namespace {

struct ImageScores {
  double mse = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  std::optional<double> niqe;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// is rethrown after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<MethodSummary> RunEvaluate(const EvaluateConfig& config) {
  RequireDirectory(config.hr_dir, "--hr");
  RequireDirectory(config.sr_root, "--sr");
  if (config.out_dir.empty()) throw ValidationError("--out is required");
  const bool want_niqe = !config.niqe_model.empty();
  if (want_niqe) RequireFile(config.niqe_model, "--niqe-model");
  if (!config.skip_pi) {
    if (!want_niqe || config.ma_dir.empty()) {
      throw ValidationError(
          "the perceptual index needs --niqe-model and --ma-dir (Ma et al. "
          "scores are not computed by this tool); pass --skip-pi to omit it");
    }
    RequireDirectory(config.ma_dir, "--ma-dir");
  }
  if (config.jobs < 1) throw ValidationError("--jobs must be >= 1");

  const std::vector<std::string> roster = PngStems(config.hr_dir);
  if (roster.empty()) {
    throw Error(ErrorKind::kMissingData,
                "no PNG images in " + config.hr_dir.string());
  }
  const std::vector<std::string> methods =
      config.methods.empty() ? Subdirectories(config.sr_root) : config.methods;
  if (methods.empty()) {
    throw Error(ErrorKind::kMissingData,
                "no method directories in " + config.sr_root.string());
  }

  std::string missing;
  for (const auto& method : methods) {
    for (const auto& stem : roster) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(
              config.sr_root / method / (stem + ".png"), ec)) {
        missing += (missing.empty() ? "" : ", ") + method + "/" + stem;
      }
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissingData,
                "estimates without a counterpart: " + missing);
  }

  ScoreSet ma_scores(roster);
  if (!config.skip_pi) {
    for (const auto& method : methods) {
      const auto path = config.ma_dir / (method + ".csv");
      std::error_code ec;
      if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorKind::kMissingData,
                    "missing Ma scores for method " + method + " (" +
                        path.string() + ")");
      }
      ma_scores.Merge(LoadScores(path, method, "ma", roster));
    }
  }
  std::optional<niqe::MvgModel> model;
  if (want_niqe) model = niqe::LoadModel(config.niqe_model);

  std::vector<YPlane> hr(roster.size());
  ParallelFor(roster.size(), config.jobs, [&](std::size_t i) {
    hr[i] = CropBorder(RgbToY(LoadImage(config.hr_dir / (roster[i] + ".png")),
                              config.luma),
                       config.border);
  });

  const std::size_t per_method = roster.size();
  std::vector<ImageScores> results(methods.size() * per_method);
  ParallelFor(results.size(), config.jobs, [&](std::size_t task) {
    const std::size_t m = task / per_method;
    const std::size_t i = task % per_method;
    const RgbImage sr =
        LoadImage(config.sr_root / methods[m] / (roster[i] + ".png"));
    YPlane estimate = CropBorder(RgbToY(sr, config.luma), config.border);
    if (estimate.rows() != hr[i].rows() || estimate.cols() != hr[i].cols()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  methods[m] + "/" + roster[i] +
                      " differs in size from the ground truth");
    }
    ImageScores& s = results[task];
    s.mse = MeanSquaredError(hr[i], estimate);
    s.psnr = PsnrFromMse(s.mse);
    s.ssim = Ssim(hr[i], estimate);
    if (model) s.niqe = niqe::NiqeScore(estimate, *model);
  });

  CanonicalConfig canon;
  canon.Add("hr", config.hr_dir.string())
      .Add("sr", config.sr_root.string())
      .Add("methods", methods)
      .Add("ma_dir", config.ma_dir.string())
      .Add("niqe_model", config.niqe_model.string())
      .Add("skip_pi", config.skip_pi ? "1" : "0")
      .Add("border", static_cast<double>(config.border))
      .Add("luma", config.luma == LumaRange::kFull ? "full" : "studio")
      .Add("thresholds", std::vector<std::string>{
                             FormatDouble(config.regions.thresholds[0]),
                             FormatDouble(config.regions.thresholds[1]),
                             FormatDouble(config.regions.thresholds[2])});
  const std::string provenance =
      ProvenanceJson("evaluate", canon.str(), config.seed);

  std::string long_csv = ProvenanceCsvComment("evaluate", canon.str(), config.seed) +
                         "method,image_id,metric,value\n";
  std::vector<MethodSummary> summaries;
  ScoreSet all(roster);
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const std::string& method = methods[m];
    MethodSummary summary;
    summary.method = method;
    summary.images = per_method;
    std::vector<double> mse;
    double ssim_sum = 0.0, niqe_sum = 0.0;
    for (std::size_t i = 0; i < per_method; ++i) {
      const ImageScores& s = results[m * per_method + i];
      const std::string& image = roster[i];
      mse.push_back(s.mse);
      ssim_sum += s.ssim;
      all.Add({method, image, "mse", s.mse});
      all.Add({method, image, "ssim", s.ssim});
      long_csv += method + "," + image + ",mse," + FormatDouble(s.mse) + "\n";
      long_csv += method + "," + image + ",psnr," +
                  (std::isinf(s.psnr) ? std::string("inf") : FormatDouble(s.psnr)) +
                  "\n";
      long_csv += method + "," + image + ",ssim," + FormatDouble(s.ssim) + "\n";
      if (s.niqe) {
        niqe_sum += *s.niqe;
        all.Add({method, image, "niqe", *s.niqe});
        long_csv += method + "," + image + ",niqe," + FormatDouble(*s.niqe) + "\n";
      }
      if (!config.skip_pi) {
        const double ma = *ma_scores.Find(method, image, "ma");
        const double pi = PerceptualIndex(ma, *s.niqe);
        all.Add({method, image, "ma", ma});
        all.Add({method, image, "pi", pi});
        long_csv += method + "," + image + ",ma," + FormatDouble(ma) + "\n";
        long_csv += method + "," + image + ",pi," + FormatDouble(pi) + "\n";
      }
    }
    summary.rmse = DatasetRmse(mse);
    summary.mean_ssim = ssim_sum / static_cast<double>(per_method);
    if (model) summary.mean_niqe = niqe_sum / static_cast<double>(per_method);
    if (!config.skip_pi) {
      const DatasetPi dpi = ComputeDatasetPi(all, method);
      summary.pi = dpi.pi;
      summary.mean_ma = dpi.mean_ma;
    }
    summary.region = AssignRegion(summary.rmse, config.regions);
    summaries.push_back(summary);
  }

  WriteTextFile(config.out_dir / "scores.csv", long_csv);
  for (const auto& method : methods) {
    for (const char* metric : {"mse", "ssim", "niqe", "ma", "pi"}) {
      std::vector<std::pair<std::string, double>> column;
      try {
        column = all.Column(method, metric);
      } catch (const Error&) {
        continue;
      }
      if (column.empty()) continue;
      WriteTextFile(config.out_dir / "scores" / method / (std::string(metric) + ".csv"),
                    FormatScoreCsv(all, method, metric));
    }
  }

  nlohmann::ordered_json summary_json;
  summary_json["provenance"] = nlohmann::ordered_json::parse(provenance);
  auto& jmethods = summary_json["methods"] = nlohmann::ordered_json::array();
  nlohmann::ordered_json submissions = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json j;
    j["method"] = s.method;
    j["images"] = s.images;
    j["rmse"] = s.rmse;
    j["mean_ssim"] = s.mean_ssim;
    if (s.mean_niqe) j["mean_niqe"] = *s.mean_niqe;
    if (s.mean_ma) j["mean_ma"] = *s.mean_ma;
    if (s.pi) j["pi"] = *s.pi;
    j["region"] = s.region ? nlohmann::ordered_json(*s.region)
                           : nlohmann::ordered_json(nullptr);
    jmethods.push_back(j);
    if (s.pi) {
      submissions.push_back({{"team", s.method}, {"pi", *s.pi}, {"rmse", s.rmse}});
    }
  }
  WriteTextFile(config.out_dir / "summary.json", summary_json.dump(2) + "\n");
  if (!config.skip_pi) {
    WriteTextFile(config.out_dir / "submissions.json", submissions.dump(2) + "\n");
  }
  return summaries;
}

}  // namespace pdbench::cli
