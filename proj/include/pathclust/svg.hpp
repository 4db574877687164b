#pragma once

#include "pathclust/changepoint.hpp"
#include "pathclust/evaluation.hpp"
#include "pathclust/geometry.hpp"

#include <optional>
#include <string>

namespace pathclust {

// Line-and-scatter plot of the gap sequence versus visit index. Points are
// colored by class when a labeling (in original row order) is given; each
// change-point position gets a vertical rule with a triangle marker. Output
// is a pure function of the inputs, byte for byte.
std::string render_sequence_svg(const HamiltonianPath& path,
                                const std::optional<ClusterLabeling>& classes,
                                const ChangePointSet& cps);

}  // namespace pathclust
