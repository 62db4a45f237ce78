#include "direst/observer.hpp"

#include "direst/errors.hpp"

namespace direst {

std::size_t select(const std::vector<ObserverInstance>& bank,
                   std::optional<std::size_t> previous) {
  if (bank.empty()) throw Error("cannot select from an empty bank");
  double best = bank[0].mu;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < bank.size(); ++i) {
    if (bank[i].mu < best) {
      best = bank[i].mu;
      arg = i;
    }
  }
  if (previous && *previous < bank.size() && bank[*previous].mu == best) return *previous;
  return arg;
}

}  // namespace direst
