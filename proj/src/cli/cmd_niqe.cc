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

#include "internal.h"
#include "pdbench/cli.h"
#include "pdbench/csv.h"
#include "pdbench/niqe.h"

namespace pdbench::cli {

void RunNiqeTrain(const NiqeTrainConfig& config, std::ostream& out) {
  RequireDirectory(config.corpus_dir, "--corpus");
  if (config.model_out.empty()) throw ValidationError("--out is required");
  const auto stems = PngStems(config.corpus_dir);
  std::vector<YPlane> corpus;
  corpus.reserve(stems.size());
  for (const auto& stem : stems) {
    YPlane y = RgbToY(LoadImage(config.corpus_dir / (stem + ".png")), config.luma);
    if (config.border > 0) y = CropBorder(y, config.border);
    corpus.push_back(std::move(y));
  }
  niqe::TrainOptions options;
  options.features.patch_size = config.patch_size;
  options.features.sharpness_fraction = config.sharpness_fraction;
  options.min_images = config.min_images;
  const niqe::MvgModel model = niqe::FitPristineModel(corpus, options);
  niqe::SaveModel(model, config.model_out);
  out << "trained on " << corpus.size() << " images, fingerprint "
      << model.corpus_fingerprint << " -> " << config.model_out.string() << "\n";
}

void RunNiqeScore(const NiqeScoreConfig& config, std::ostream& out) {
  RequireFile(config.model, "--model");
  if (config.images.empty()) throw ValidationError("no images to score");
  for (const auto& image : config.images) RequireFile(image, "image");
  const niqe::MvgModel model = niqe::LoadModel(config.model);
  out << "image,niqe\n";
  for (const auto& image : config.images) {
    YPlane y = RgbToY(LoadImage(image), config.luma);
    if (config.border > 0) y = CropBorder(y, config.border);
    out << image.string() << "," << FormatDouble(niqe::NiqeScore(y, model))
        << "\n";
  }
}

}  // namespace pdbench::cli
