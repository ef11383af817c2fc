#include "pts/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pts::csv {

void write_trajectory(const std::string& path, const sim::Trajectory& traj) {
  if (traj.times.empty())
    throw std::invalid_argument("write_trajectory: empty trajectory");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f)
    throw std::runtime_error("write_trajectory: cannot open " + path +
                             " for writing");
  Eigen::Index dim = traj.dim();
  std::fputs("t", f);
  for (Eigen::Index j = 0; j < dim; ++j) std::fprintf(f, ",x%lld", static_cast<long long>(j + 1));
  std::fputs(",norm\n", f);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::fprintf(f, "%.17g", traj.times[i]);
    for (Eigen::Index j = 0; j < dim; ++j)
      std::fprintf(f, ",%.17g", traj.states[i][j]);
    std::fprintf(f, ",%.17g\n", traj.norms[i]);
  }
  if (std::fclose(f) != 0)
    throw std::runtime_error("write_trajectory: failed to flush " + path);
}

sim::Trajectory read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_trajectory: cannot open " + path);

  sim::Trajectory traj;
  traj.meta.label = path;

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_trajectory: " + path + " is empty");
  std::size_t columns = 1;
  for (char c : line)
    if (c == ',') ++columns;
  if (columns < 3)
    throw std::runtime_error("read_trajectory: " + path +
                             ": header needs at least t, one state, norm");
  Eigen::Index dim = static_cast<Eigen::Index>(columns) - 2;

  std::size_t line_no = 1;
  std::vector<double> row(columns);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.c_str();
    for (std::size_t j = 0; j < columns; ++j) {
      char* end = nullptr;
      row[j] = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error("read_trajectory: " + path + ":" +
                                 std::to_string(line_no) +
                                 ": expected a number in column " +
                                 std::to_string(j + 1));
      p = end;
      bool last = j + 1 == columns;
      if (!last) {
        if (*p != ',')
          throw std::runtime_error("read_trajectory: " + path + ":" +
                                   std::to_string(line_no) +
                                   ": expected ',' after column " +
                                   std::to_string(j + 1));
        ++p;
      } else if (*p != '\0' && *p != '\r') {
        throw std::runtime_error("read_trajectory: " + path + ":" +
                                 std::to_string(line_no) +
                                 ": trailing characters after the last column");
      }
    }
    traj.times.push_back(row[0]);
    Eigen::VectorXd state(dim);
    for (Eigen::Index j = 0; j < dim; ++j) state[j] = row[1 + j];
    traj.states.push_back(std::move(state));
    traj.norms.push_back(row[columns - 1]);
  }
  if (traj.times.empty())
    throw std::runtime_error("read_trajectory: " + path + " has no data rows");
  return traj;
}

}  // namespace pts::csv
