#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace direst {

// Uniformly sampled multi-signal record. Rows live on the grid t0 + i*dt;
// appends enforce the grid so exports are exactly reproducible.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<std::string> names, double dt);

  const std::vector<std::string>& names() const { return names_; }
  double dt() const { return dt_; }
  std::size_t size() const { return times_.size(); }
  std::size_t cols() const { return names_.size(); }
  bool empty() const { return times_.empty(); }

  double time(std::size_t row) const { return times_[row]; }
  double value(std::size_t row, std::size_t col) const { return data_[row * cols() + col]; }

  // Index of a named column; throws if absent.
  std::size_t col_index(const std::string& name) const;
  bool has_col(const std::string& name) const;

  void append(double t, std::span<const double> row);

  // CSV with a header row of signal names, full double precision. With
  // decimation > 1 every decimation-th row is kept, plus always the last.
  void write_csv(std::ostream& os, int decimation = 1) const;
  static Trajectory read_csv(std::istream& is);

 private:
  std::vector<std::string> names_;
  double dt_ = 0.0;
  std::vector<double> times_;
  std::vector<double> data_;  // row-major, size() * cols()
};

}  // namespace direst
