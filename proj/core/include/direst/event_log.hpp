#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace direst {

// One record per update instant. List-valued fields are serialized strings
// (items ';'-separated, sample:value pairs with ':') so a record round-trips
// byte-identically.
struct EventRecord {
  std::int64_t k = 0;          // instant index (t = k * T_d)
  double t = 0.0;
  std::size_t n_observers = 0; // bank size on [t_k, t_{k+1})
  std::size_t sigma = 0;
  bool single_mode = false;
  std::string window_mu;           // sample:mu over the window that just ended
  std::string potentially_optimal; // rect ids divided at this instant
  std::string new_samples;         // normalized|physical per spawned observer
};

void write_events(std::ostream& os, const std::vector<EventRecord>& events);
std::vector<EventRecord> read_events(std::istream& is);

}  // namespace direst
