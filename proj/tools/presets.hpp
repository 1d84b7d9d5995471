// Copyright 2026 The hyperhit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"

namespace hyperhit::cli {

/// Knobs shared by all presets; zero means "preset default".
struct PresetOptions {
  std::uint64_t seed = 0;
  Format format = Format::kCsv;
  int n = 0;
  double m = 0;
  bool m_cube = false;
  double rho = 0;
  std::uint64_t size = 0;
  std::uint64_t trials = 0;
  int seeds = 0;
  int starts = 0;
};

const std::vector<std::string>& preset_names();

/// Runs one preset, writing artifacts through `artifacts` and one verdict
/// line per covered criterion to stdout. Returns 0 when every asserted
/// tolerance is met and 1 otherwise.
int run_preset(const std::string& name, const PresetOptions& options, Artifacts& artifacts);

}  // namespace hyperhit::cli
