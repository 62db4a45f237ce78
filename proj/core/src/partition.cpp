#include "direst/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>
#include <set>

#include "direst/errors.hpp"
#include "direst/format.hpp"

namespace direst {

Partition::Partition(int n_p, double eps) : n_p_(n_p), eps_(eps) {
  if (n_p < 1) throw InvalidDimensionError("parameter dimension must be >= 1");
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw InvalidResolutionError("epsilon must be finite and >= 0");

  HyperRect root;
  root.id = next_id_++;
  root.center = GridPoint::center(n_p);
  root.side_exp.assign(static_cast<std::size_t>(n_p), 0);
  center_to_rect_[root.center] = 0;
  rects_.push_back(std::move(root));

  root_center_pending_ = true;
  for (std::size_t d = 0; d < static_cast<std::size_t>(n_p); ++d) {
    PendingEntry e;
    e.rect_id = 0;
    e.dim = d;
    e.minus = rects_[0].center.with_offset(d, -1, 0);
    e.plus = rects_[0].center.with_offset(d, +1, 0);
    pending_.push_back(std::move(e));
  }
}

std::size_t Partition::index_of(std::uint64_t id) const {
  // Ids are assigned densely in creation order and rects are never removed.
  if (id < rects_.size() && rects_[id].id == id) return static_cast<std::size_t>(id);
  for (std::size_t i = 0; i < rects_.size(); ++i)
    if (rects_[i].id == id) return i;
  throw Error("unknown rect id " + std::to_string(id));
}

const HyperRect& Partition::rect_by_id(std::uint64_t id) const {
  return rects_[index_of(id)];
}

std::optional<std::uint64_t> Partition::rect_id_at(const GridPoint& center) const {
  auto it = center_to_rect_.find(center);
  if (it == center_to_rect_.end()) return std::nullopt;
  return rects_[it->second].id;
}

std::vector<GridPoint> Partition::sample_points() const {
  std::vector<GridPoint> pts;
  pts.reserve(rects_.size());
  for (const HyperRect& r : rects_) pts.push_back(r.center);
  return pts;
}

std::vector<GridPoint> Partition::pending_points() const {
  std::vector<GridPoint> pts;
  if (root_center_pending_) pts.push_back(rects_[0].center);
  for (const PendingEntry& e : pending_) {
    pts.push_back(e.minus);
    pts.push_back(e.plus);
  }
  return pts;
}

namespace {

double checked_cost(const CostMap& costs, const GridPoint& p) {
  auto it = costs.find(p);
  if (it == costs.end())
    throw IncompleteEvaluationError("no cost supplied for pending point " + p.to_string());
  return it->second;
}

}  // namespace

void Partition::complete_pending_divisions(const CostMap& costs) {
  if (pending_.empty() && !root_center_pending_)
    throw Error("no pending divisions to complete");
  for (const auto& [pt, c] : costs) {
    if (!std::isfinite(c) || c < 0.0)
      throw InvalidCostError("cost at " + pt.to_string() + " must be finite and >= 0, got " +
                             fmt_g17(c));
  }
  if (root_center_pending_) {
    // The root center itself is part of the very first evaluation batch.
    checked_cost(costs, rects_[0].center);
  }
  // Look up all pending costs before mutating anything.
  for (const PendingEntry& e : pending_) {
    checked_cost(costs, e.minus);
    checked_cost(costs, e.plus);
  }

  // Refresh the cost of every existing rect whose center was re-evaluated.
  for (const auto& [pt, c] : costs) {
    auto it = center_to_rect_.find(pt);
    if (it != center_to_rect_.end()) rects_[it->second].last_cost = c;
  }

  // Group pending entries per rect, preserving emission order.
  std::size_t i = 0;
  while (i < pending_.size()) {
    std::size_t j = i;
    while (j < pending_.size() && pending_[j].rect_id == pending_[i].rect_id) ++j;

    struct DimPlan {
      const PendingEntry* entry;
      double w;
    };
    std::vector<DimPlan> plan;
    for (std::size_t k = i; k < j; ++k) {
      const PendingEntry& e = pending_[k];
      plan.push_back({&e, std::min(checked_cost(costs, e.minus), checked_cost(costs, e.plus))});
    }
    // Divide the dimension whose best offspring is cheapest first; ties go to
    // the lower dimension index (plan is already dim-ascending, sort stable).
    std::stable_sort(plan.begin(), plan.end(),
                     [](const DimPlan& a, const DimPlan& b) { return a.w < b.w; });

    // Copy, not a reference: the push_backs below may reallocate rects_.
    std::vector<std::uint32_t> working = rects_[index_of(pending_[i].rect_id)].side_exp;
    for (const DimPlan& p : plan) {
      const std::size_t d = p.entry->dim;
      ++working[d];
      for (const GridPoint* c : {&p.entry->minus, &p.entry->plus}) {
        HyperRect child;
        child.id = next_id_++;
        child.center = *c;
        child.side_exp = working;
        child.last_cost = costs.at(*c);
        center_to_rect_[child.center] = rects_.size();
        rects_.push_back(std::move(child));
      }
    }
    // The middle third of every split keeps the parent's center and id.
    rects_[index_of(pending_[i].rect_id)].side_exp = working;
    i = j;
  }
  pending_.clear();
  root_center_pending_ = false;

  if (iteration_ == 0) {
    mu_hat_ = costs.at(rects_[0].center);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const HyperRect& r : rects_) best = std::min(best, *r.last_cost);
    mu_hat_ = best;
  }
  ++iteration_;
}

std::vector<std::uint64_t> Partition::identify_potentially_optimal() const {
  if (rects_.empty()) throw Error("empty partition");
  if (!mu_hat_) throw Error("running best cost unset; complete a division round first");
  for (const HyperRect& r : rects_)
    if (!r.last_cost)
      throw IncompleteEvaluationError("rect " + std::to_string(r.id) + " has no cost");

  // One group per distinct half-diagonal, each holding its best cost and the
  // rects attaining it. Keying by the long double value keeps group identity
  // consistent with the pairwise-slope view of the same numbers.
  struct Group {
    long double d;
    double m;
    std::vector<std::uint64_t> argmin;
  };
  std::map<long double, Group> by_d;
  for (const HyperRect& r : rects_) {
    const long double d = r.half_diagonal();
    const double c = *r.last_cost;
    auto [it, fresh] = by_d.try_emplace(d, Group{d, c, {}});
    Group& g = it->second;
    if (fresh || c < g.m) {
      g.m = c;
      g.argmin.assign(1, r.id);
    } else if (c == g.m) {
      g.argmin.push_back(r.id);
    }
  }
  std::vector<Group> gs;
  gs.reserve(by_d.size());
  for (auto& [d, g] : by_d) gs.push_back(std::move(g));

  // Lower hull of (d, m), d ascending, collinear points kept: pop the middle
  // point only when the chain turns strictly concave.
  std::vector<std::size_t> chain;
  for (std::size_t idx = 0; idx < gs.size(); ++idx) {
    while (chain.size() >= 2) {
      const Group& a = gs[chain[chain.size() - 2]];
      const Group& b = gs[chain[chain.size() - 1]];
      const Group& c = gs[idx];
      const long double lhs = (static_cast<long double>(b.m) - a.m) * (c.d - b.d);
      const long double rhs = (static_cast<long double>(c.m) - b.m) * (b.d - a.d);
      if (lhs > rhs)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(idx);
  }

  // Points left of the best-cost vertex see a non-positive slope toward it,
  // which no positive weight satisfies; keep the suffix from the last minimum.
  std::size_t cut = 0;
  for (std::size_t pos = 1; pos < chain.size(); ++pos)
    if (gs[chain[pos]].m <= gs[chain[cut]].m) cut = pos;

  const double thr = *mu_hat_ - eps_ * std::fabs(*mu_hat_);
  std::vector<std::uint64_t> out;
  for (std::size_t pos = cut; pos < chain.size(); ++pos) {
    const Group& g = gs[chain[pos]];
    bool ok = true;
    if (pos + 1 < chain.size()) {
      // Largest usable weight: the slope to the next hull point. Cross-
      // multiplied so both selection routes compare identical products.
      const Group& nx = gs[chain[pos + 1]];
      const long double den = nx.d - g.d;
      const long double num = static_cast<long double>(nx.m) - g.m;
      ok = static_cast<long double>(g.m) * den - num * g.d <=
           static_cast<long double>(thr) * den;
    }
    if (ok) out.insert(out.end(), g.argmin.begin(), g.argmin.end());
  }

  if (out.empty()) {
    // Unreachable with nonnegative costs (the largest group has no upper
    // slope constraint), but the selection must never stall the sampler.
    std::cerr << "warning: improvement filter rejected every rect; "
                 "dividing the largest-cell best rect\n";
    out = gs[chain.back()].argmin;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GridPoint> Partition::request_divisions(const std::vector<std::uint64_t>& ids) {
  std::vector<std::uint64_t> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (std::uint64_t id : sorted) {
    index_of(id);  // throws on unknown id
    for (const PendingEntry& e : pending_)
      if (e.rect_id == id)
        throw DoubleDivisionError("rect " + std::to_string(id) + " already has pending children");
  }

  std::vector<GridPoint> requested;
  std::set<GridPoint> seen;
  for (std::uint64_t id : sorted) {
    const HyperRect& r = rects_[index_of(id)];
    const std::uint32_t j = r.min_side_exp();
    for (std::size_t d : r.longest_dims()) {
      PendingEntry e;
      e.rect_id = id;
      e.dim = d;
      e.minus = r.center.with_offset(d, -1, j);
      e.plus = r.center.with_offset(d, +1, j);
      for (const GridPoint* p : {&e.minus, &e.plus})
        if (seen.insert(*p).second) requested.push_back(*p);
      pending_.push_back(std::move(e));
    }
  }
  return requested;
}

bool Partition::volume_sums_to_one() const {
  std::uint64_t dmax = 0;
  for (const HyperRect& r : rects_) dmax = std::max(dmax, r.divisions());
  BigInt sum = 0;
  for (const HyperRect& r : rects_)
    sum += pow3(static_cast<std::uint32_t>(dmax - r.divisions()));
  return sum == pow3(static_cast<std::uint32_t>(dmax));
}

bool Partition::interiors_pairwise_disjoint() const {
  const std::size_t n = rects_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool disjoint = false;
      for (std::size_t d = 0; d < static_cast<std::size_t>(n_p_) && !disjoint; ++d) {
        const auto [alo, ahi] = rects_[a].interval(d);
        const auto [blo, bhi] = rects_[b].interval(d);
        const std::uint32_t ja = rects_[a].side_exp[d];
        const std::uint32_t jb = rects_[b].side_exp[d];
        const std::uint32_t m = std::max(ja, jb);
        const BigInt fa = pow3(m - ja), fb = pow3(m - jb);
        if (ahi * fa <= blo * fb || bhi * fb <= alo * fa) disjoint = true;
      }
      if (!disjoint) return false;
    }
  }
  return true;
}

void Partition::write_snapshot(std::ostream& os) const {
  os << "# direst partition snapshot v1\n";
  os << "n_p=" << n_p_ << " iteration=" << iteration_ << " eps=" << fmt_g17(eps_)
     << " mu_hat=" << (mu_hat_ ? fmt_g17(*mu_hat_) : "unset") << " rects=" << rects_.size()
     << " pending=" << pending_points().size() << "\n";
  for (const HyperRect& r : rects_) {
    os << "rect id=" << r.id << " center=" << r.center.to_string() << " sides=";
    for (std::size_t d = 0; d < r.side_exp.size(); ++d) {
      if (d) os << ",";
      os << r.side_exp[d];
    }
    os << " divisions=" << r.divisions()
       << " cost=" << (r.last_cost ? fmt_g17(*r.last_cost) : "unset") << "\n";
  }
}

std::int64_t termination_iterations(int n_p, double d_star) {
  if (n_p < 1) throw InvalidDimensionError("parameter dimension must be >= 1");
  if (!(d_star > 0.0) || !std::isfinite(d_star))
    throw InvalidResolutionError("target resolution must be finite and > 0");

  std::uint32_t i = 0;
  while (sqrtl(static_cast<long double>(n_p)) / (2.0L * pow3(i).convert_to<long double>()) >
         static_cast<long double>(d_star))
    ++i;

  const std::uint32_t np = static_cast<std::uint32_t>(n_p);
  const BigInt k = pow3(np - 1) * (pow3(np * (i + 1)) - 1) / (pow3(np) - 1);
  if (k > std::numeric_limits<std::int64_t>::max())
    throw InvalidResolutionError("iteration budget overflows a 64-bit counter");
  return k.convert_to<std::int64_t>();
}

double min_distance_to_samples(const std::vector<double>& p_star,
                               const std::vector<GridPoint>& samples) {
  if (samples.empty()) throw Error("no sample points to measure against");
  double best = std::numeric_limits<double>::infinity();
  for (const GridPoint& s : samples) {
    if (static_cast<std::size_t>(s.dim()) != p_star.size())
      throw InvalidDimensionError("sample/point dimension mismatch");
    double dist = 0.0;
    for (std::size_t d = 0; d < p_star.size(); ++d)
      dist = std::max(dist, std::fabs(p_star[d] - s[d].to_double()));
    best = std::min(best, dist);
  }
  return best;
}

}  // namespace direst
