#include "direst/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "direst/errors.hpp"
#include "direst/format.hpp"

namespace direst {

Trajectory::Trajectory(std::vector<std::string> names, double dt)
    : names_(std::move(names)), dt_(dt) {
  if (names_.empty()) throw InvalidDimensionError("trajectory needs at least one signal");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("trajectory step must be finite and > 0");
}

std::size_t Trajectory::col_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("trajectory has no column named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool Trajectory::has_col(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void Trajectory::append(double t, std::span<const double> row) {
  if (row.size() != cols()) throw InvalidDimensionError("trajectory row width mismatch");
  if (!times_.empty()) {
    const double expected = times_.front() + static_cast<double>(times_.size()) * dt_;
    if (!(t > times_.back()) || std::fabs(t - expected) > 1e-6 * dt_)
      throw Error("trajectory rows must advance on the fixed grid t0 + i*dt");
  }
  times_.push_back(t);
  data_.insert(data_.end(), row.begin(), row.end());
}

void Trajectory::write_csv(std::ostream& os, int decimation) const {
  if (decimation < 1) throw Error("decimation must be >= 1");
  os << "t";
  for (const std::string& n : names_) os << "," << n;
  os << "\n";
  for (std::size_t i = 0; i < size(); ++i) {
    const bool keep = (i % static_cast<std::size_t>(decimation) == 0) || (i + 1 == size());
    if (!keep) continue;
    os << fmt_g17(times_[i]);
    for (std::size_t c = 0; c < cols(); ++c) os << "," << fmt_g17(value(i, c));
    os << "\n";
  }
}

Trajectory Trajectory::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("empty trajectory file");
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string cell;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) {
        if (cell != "t") throw Error("trajectory header must start with 't'");
        first = false;
      } else {
        names.push_back(cell);
      }
    }
  }
  std::vector<double> times;
  std::vector<double> data;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      const double v = std::strtod(cell.c_str(), nullptr);
      if (c == 0)
        times.push_back(v);
      else
        data.push_back(v);
      ++c;
    }
    if (c != names.size() + 1) throw Error("trajectory row width mismatch in file");
  }
  Trajectory tr;
  tr.names_ = std::move(names);
  tr.dt_ = times.size() >= 2 ? times[1] - times[0] : 1.0;
  tr.times_ = std::move(times);
  tr.data_ = std::move(data);
  return tr;
}

}  // namespace direst
