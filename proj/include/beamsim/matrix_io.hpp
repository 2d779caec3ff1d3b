// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "beamsim/channel.hpp"

namespace beamsim {

/// Versioned little-endian dump of a stack of equally-shaped complex
/// matrices, used for test fixtures. Layout:
///   char[4] magic "BSMX" | u32 version (1) | u32 n_mats | u32 rows | u32 cols
///   | u32 n_meta | n_mats * rows * cols complex<double>, column-major
///   | n_meta doubles (e.g. per-subcarrier frequencies)
void save_matrix_stack(const std::string& path, const std::vector<CMat>& mats,
                       const std::vector<double>& meta = {});

struct MatrixStack {
  std::vector<CMat> mats;
  std::vector<double> meta;
};

MatrixStack load_matrix_stack(const std::string& path);

void save_channel(const std::string& path, const BeamspaceChannel& ch);
BeamspaceChannel load_channel(const std::string& path);

}  // namespace beamsim
