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

#include <ostream>

#include "CLI11.hpp"
#include "pdbench/cli.h"
#include "pdbench/error.h"

namespace pdbench::cli {
namespace {

void AddLuma(CLI::App* cmd, LumaRange* luma) {
  const std::map<std::string, LumaRange> names = {
      {"studio", LumaRange::kStudio}, {"full", LumaRange::kFull}};
  cmd->add_option("--luma", *luma,
                  "RGB->Y conversion: studio (BT.601, default) or full")
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

void AddRegions(CLI::App* cmd, RegionSpec* regions) {
  cmd->add_option("--thresholds", regions->thresholds,
                  "RMSE bounds of regions 1/2/3")
      ->expected(3)
      ->capture_default_str();
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{
      "pdbench: perception-distortion benchmark harness (RMSE, NIQE, "
      "perceptual index, region leaderboards, rating studies, MOS "
      "correlation)"};
  app.set_config("--config", "", "INI/TOML config file; flags override it");
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed recorded in every output")
      ->capture_default_str();

  EvaluateConfig eval;
  auto* evaluate = app.add_subcommand(
      "evaluate",
      "Score SR outputs against ground truth on the border-cropped luma "
      "channel. Ma et al. scores are NOT computed here: supply them per "
      "method with --ma-dir, or pass --skip-pi.");
  evaluate->add_option("--hr", eval.hr_dir, "Ground-truth PNG directory")->required();
  evaluate->add_option("--sr", eval.sr_root, "Directory with one subdirectory of PNGs per method")->required();
  evaluate->add_option("--methods", eval.methods, "Methods to evaluate (default: all)")->delimiter(',');
  evaluate->add_option("--ma-dir", eval.ma_dir, "Directory of <method>.csv Ma scores (image_id,value)");
  evaluate->add_option("--niqe-model", eval.niqe_model, "Pristine NIQE model file");
  evaluate->add_flag("--skip-pi", eval.skip_pi, "Do not compute the perceptual index");
  evaluate->add_option("--border", eval.border, "Border pixels removed before scoring")->capture_default_str();
  evaluate->add_option("--jobs,-j", eval.jobs, "Worker threads")->capture_default_str();
  evaluate->add_option("--out", eval.out_dir, "Output directory")->required();
  AddLuma(evaluate, &eval.luma);
  AddRegions(evaluate, &eval.regions);

  RankConfig rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank submissions within RMSE regions");
  rank_cmd->add_option("--input", rank.input, "JSON array of {team, pi, rmse[, region]}")->required();
  rank_cmd->add_option("--region", rank.region, "Region to rank (0 = all)")->capture_default_str();
  rank_cmd->add_option("--eps-pi", rank.options.eps_pi, "Marginal PI difference")->capture_default_str();
  rank_cmd->add_option("--eps-rmse", rank.options.eps_rmse, "Marginal RMSE difference for shared ranks")->capture_default_str();
  rank_cmd->add_option("--markdown", rank.markdown_out, "Markdown output (default: stdout)");
  rank_cmd->add_option("--csv", rank.csv_out, "CSV leaderboard output");
  rank_cmd->add_option("--plane", rank.plane_out, "Perception-distortion scatter CSV output");
  AddRegions(rank_cmd, &rank.regions);

  auto* niqe_cmd = app.add_subcommand("niqe", "Train or apply a NIQE pristine model");
  niqe_cmd->require_subcommand(1);
  NiqeTrainConfig train;
  auto* train_cmd = niqe_cmd->add_subcommand("train", "Fit a pristine model to a corpus of natural images");
  train_cmd->add_option("--corpus", train.corpus_dir, "Directory of pristine PNGs")->required();
  train_cmd->add_option("--out", train.model_out, "Model file to write")->required();
  train_cmd->add_option("--patch", train.patch_size, "Patch size")->capture_default_str();
  train_cmd->add_option("--sharpness", train.sharpness_fraction, "Sharpness selection fraction")->capture_default_str();
  train_cmd->add_option("--min-images", train.min_images, "Minimum corpus size")->capture_default_str();
  train_cmd->add_option("--border", train.border, "Border pixels removed first")->capture_default_str();
  AddLuma(train_cmd, &train.luma);
  NiqeScoreConfig score;
  auto* score_cmd = niqe_cmd->add_subcommand("score", "Score images against a model");
  score_cmd->add_option("--model", score.model, "Model file")->required();
  score_cmd->add_option("images", score.images, "PNG images")->required();
  score_cmd->add_option("--border", score.border, "Border pixels removed first")->capture_default_str();
  AddLuma(score_cmd, &score.luma);

  auto* study_cmd = app.add_subcommand("study", "Human-opinion rating study");
  study_cmd->require_subcommand(1);
  StudyPlanConfig plan;
  auto* plan_cmd = study_cmd->add_subcommand("plan", "Build a balanced, blinded rating plan");
  plan_cmd->add_option("--methods", plan.methods, "Method names")->delimiter(',');
  plan_cmd->add_option("--images", plan.images, "Image ids")->delimiter(',');
  plan_cmd->add_option("--image-root", plan.image_root, "Directory <method>/<image>.png to take names from");
  plan_cmd->add_option("--raters", plan.raters, "Number of raters")->capture_default_str();
  plan_cmd->add_option("--per-rater", plan.images_per_rater, "Images shown to each rater")->capture_default_str();
  plan_cmd->add_option("--out", plan.plan_out, "Plan JSON")->required();
  plan_cmd->add_option("--client-out", plan.client_out, "Blinded plan JSON for clients");
  StudyServeConfig serve;
  auto* serve_cmd = study_cmd->add_subcommand("serve", "Serve the rating API");
  serve_cmd->add_option("--plan", serve.plan, "Plan JSON")->required();
  serve_cmd->add_option("--log", serve.log, "Append-only event log")->required();
  serve_cmd->add_option("--image-root", serve.image_root, "Directory <method>/<image>.png")->required();
  serve_cmd->add_option("--static", serve.static_root, "Rater UI assets served at /");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "0 picks a free port")->capture_default_str();
  StudyReportConfig report;
  auto* report_cmd = study_cmd->add_subcommand("report", "Aggregate an event log");
  report_cmd->add_option("--plan", report.plan, "Plan JSON")->required();
  report_cmd->add_option("--log", report.log, "Event log")->required();
  report_cmd->add_option("--out", report.report_out, "Report JSON (default: stdout)");

  AnalyzeConfig analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Correlate quality measures with MOS");
  analyze_cmd->add_option("--report", analyze.report, "Study report JSON")->required();
  analyze_cmd->add_option("--scores", analyze.scores_dir, "Directory <method>/<metric>.csv")->required();
  analyze_cmd->add_option("--metrics", analyze.metrics, "Metrics to analyze")->delimiter(',')->capture_default_str();
  analyze_cmd->add_option("--threshold", analyze.threshold, "High-quality MOS threshold")->capture_default_str();
  analyze_cmd->add_option("--out", analyze.out_dir, "Output directory")->required();
  analyze_cmd->add_flag("--svg", analyze.svg, "Also write SVG scatter plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*evaluate) {
      eval.seed = seed;
      const auto summaries = RunEvaluate(eval);
      for (const auto& s : summaries) {
        out << s.method << ": rmse=" << s.rmse;
        if (s.pi) out << " pi=" << *s.pi;
        out << " region=" << (s.region ? std::to_string(*s.region) : "none") << "\n";
      }
    } else if (*rank_cmd) {
      rank.seed = seed;
      RunRank(rank, out);
    } else if (*train_cmd) {
      RunNiqeTrain(train, out);
    } else if (*score_cmd) {
      RunNiqeScore(score, out);
    } else if (*plan_cmd) {
      plan.seed = seed;
      RunStudyPlan(plan, out);
    } else if (*serve_cmd) {
      return RunStudyServe(serve, out);
    } else if (*report_cmd) {
      RunStudyReport(report, out);
    } else if (*analyze_cmd) {
      analyze.seed = seed;
      RunAnalyze(analyze, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace pdbench::cli
