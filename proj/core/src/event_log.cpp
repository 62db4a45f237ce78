#include "direst/event_log.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "direst/errors.hpp"
#include "direst/format.hpp"

namespace direst {

void write_events(std::ostream& os, const std::vector<EventRecord>& events) {
  os << "# direst events v1\n";
  for (const EventRecord& e : events) {
    os << "event k=" << e.k << " t=" << fmt_g17(e.t) << " N=" << e.n_observers
       << " sigma=" << e.sigma << " mode=" << (e.single_mode ? "single" : "multi")
       << " mu=" << e.window_mu << " po=" << e.potentially_optimal
       << " new=" << e.new_samples << "\n";
  }
}

std::vector<EventRecord> read_events(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# direst events v1")
    throw Error("unrecognized event log header");
  std::vector<EventRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok != "event") throw Error("malformed event line: " + line);
    EventRecord e;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw Error("malformed event field: " + tok);
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "k")
        e.k = std::strtoll(val.c_str(), nullptr, 10);
      else if (key == "t")
        e.t = std::strtod(val.c_str(), nullptr);
      else if (key == "N")
        e.n_observers = static_cast<std::size_t>(std::strtoull(val.c_str(), nullptr, 10));
      else if (key == "sigma")
        e.sigma = static_cast<std::size_t>(std::strtoull(val.c_str(), nullptr, 10));
      else if (key == "mode")
        e.single_mode = (val == "single");
      else if (key == "mu")
        e.window_mu = val;
      else if (key == "po")
        e.potentially_optimal = val;
      else if (key == "new")
        e.new_samples = val;
      else
        throw Error("unknown event field '" + key + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace direst
