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

#include <cmath>

#include <Eigen/Eigenvalues>

#include "json.hpp"
#include "pdbench/csv.h"
#include "pdbench/hash.h"
#include "pdbench/niqe.h"

namespace pdbench::niqe {

namespace {
constexpr const char* kModelFormat = "pdbench-niqe-mvg";
constexpr int kModelVersion = 1;
}  // namespace

MvgModel FitMvg(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 1) {
    throw Error(ErrorKind::kDegenerateInput, "cannot fit an MVG to no rows");
  }
  MvgModel model;
  model.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - model.mean.transpose();
  if (rows.rows() > 1) {
    model.covariance = (centered.transpose() * centered) /
                       static_cast<double>(rows.rows() - 1);
  } else {
    model.covariance = Eigen::MatrixXd::Zero(rows.cols(), rows.cols());
  }
  return model;
}

MvgModel FitPristineModel(std::span<const YPlane> corpus,
                          const TrainOptions& options) {
  if (static_cast<int>(corpus.size()) < options.min_images) {
    throw Error(ErrorKind::kInvalidArgument,
                "pristine corpus needs at least " +
                    std::to_string(options.min_images) + " images, got " +
                    std::to_string(corpus.size()));
  }
  Fnv1a64 fingerprint;
  fingerprint.Update(static_cast<std::uint64_t>(options.features.patch_size))
      .Update(options.features.sharpness_fraction);
  std::vector<Eigen::MatrixXd> per_image;
  Eigen::Index total = 0;
  for (const YPlane& y : corpus) {
    fingerprint.Update(static_cast<std::uint64_t>(y.rows()))
        .Update(static_cast<std::uint64_t>(y.cols()));
    for (Eigen::Index i = 0; i < y.size(); ++i) fingerprint.Update(y.data()[i]);
    per_image.push_back(ExtractFeatures(y, options.features).rows);
    total += per_image.back().rows();
  }
  if (total < kFeatureDim + 1) {
    throw Error(ErrorKind::kDegenerateInput,
                "pristine corpus yields " + std::to_string(total) +
                    " patches; at least " + std::to_string(kFeatureDim + 1) +
                    " are needed");
  }
  Eigen::MatrixXd all(total, kFeatureDim);
  Eigen::Index offset = 0;
  for (const auto& rows : per_image) {
    all.middleRows(offset, rows.rows()) = rows;
    offset += rows.rows();
  }
  MvgModel model = FitMvg(all);
  model.corpus_fingerprint = fingerprint.hex();
  model.patch_size = options.features.patch_size;
  model.sharpness_fraction = options.features.sharpness_fraction;
  return model;
}

Eigen::MatrixXd SymmetricPseudoInverse(const Eigen::MatrixXd& m,
                                       double relative_cutoff) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double largest = values.cwiseAbs().maxCoeff();
  const double cutoff = relative_cutoff * std::max(largest, 0.0);
  Eigen::VectorXd inverted(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    inverted(i) = values(i) > cutoff ? 1.0 / values(i) : 0.0;
  }
  return solver.eigenvectors() * inverted.asDiagonal() *
         solver.eigenvectors().transpose();
}

double MvgDistance(const MvgModel& pristine, const MvgModel& test) {
  if (pristine.feature_dim() != test.feature_dim() ||
      pristine.covariance.rows() != test.covariance.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "model feature dimensions differ");
  }
  const Eigen::VectorXd diff = pristine.mean - test.mean;
  if (diff.isZero(0.0)) return 0.0;
  const Eigen::MatrixXd pooled = 0.5 * (pristine.covariance + test.covariance);
  const double quad = diff.dot(SymmetricPseudoInverse(pooled) * diff);
  return std::sqrt(std::max(quad, 0.0));
}

double NiqeScore(const YPlane& y, const MvgModel& pristine) {
  FeatureOptions options;
  options.patch_size = pristine.patch_size;
  options.sharpness_fraction = kNoSharpnessSelection;
  return MvgDistance(pristine, FitMvg(ExtractFeatures(y, options).rows));
}

std::string SerializeModel(const MvgModel& model) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["feature_dim"] = model.feature_dim();
  j["patch_size"] = model.patch_size;
  j["sharpness_fraction"] = model.sharpness_fraction;
  j["corpus_fingerprint"] = model.corpus_fingerprint;
  j["mean"] = std::vector<double>(model.mean.data(),
                                  model.mean.data() + model.mean.size());
  std::vector<double> cov;
  cov.reserve(static_cast<std::size_t>(model.covariance.size()));
  for (Eigen::Index r = 0; r < model.covariance.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.covariance.cols(); ++c) {
      cov.push_back(model.covariance(r, c));
    }
  }
  j["covariance"] = cov;
  return j.dump(1) + "\n";
}

MvgModel DeserializeModel(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("model file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kModelFormat) {
      throw Error(ErrorKind::kParse, "not a NIQE model file");
    }
    if (j.at("version").get<int>() != kModelVersion) {
      throw Error(ErrorKind::kParse, "unsupported model version " +
                                         j.at("version").dump());
    }
    const int dim = j.at("feature_dim").get<int>();
    const auto mean = j.at("mean").get<std::vector<double>>();
    const auto cov = j.at("covariance").get<std::vector<double>>();
    if (dim < 1 || static_cast<int>(mean.size()) != dim ||
        static_cast<long>(cov.size()) != static_cast<long>(dim) * dim) {
      throw Error(ErrorKind::kParse, "model dimensions are inconsistent");
    }
    MvgModel model;
    model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), dim);
    model.covariance.resize(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) model.covariance(r, c) = cov[r * dim + c];
    }
    model.corpus_fingerprint = j.value("corpus_fingerprint", "");
    model.patch_size = j.value("patch_size", 96);
    model.sharpness_fraction = j.value("sharpness_fraction", 0.75);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("model file: ") + e.what());
  }
}

void SaveModel(const MvgModel& model, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeModel(model));
}

MvgModel LoadModel(const std::filesystem::path& path) {
  return DeserializeModel(ReadTextFile(path));
}

}  // namespace pdbench::niqe
