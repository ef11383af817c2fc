#pragma once

#include <string>

#include "pts/sim.hpp"

// Trajectory files: header row "t,x1,...,xn,norm", then one row per sample
// with every value printed at 17 significant digits, so reading a file back
// reproduces the stored doubles bit for bit.

namespace pts::csv {

void write_trajectory(const std::string& path, const sim::Trajectory& traj);

// Restores times/states/norms; metadata only carries the source path as the
// label.  Throws std::runtime_error with a line diagnostic on malformed rows.
sim::Trajectory read_trajectory(const std::string& path);

}  // namespace pts::csv
