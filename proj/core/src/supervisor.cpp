#include "direst/supervisor.hpp"

#include <cmath>
#include <utility>

#include "direst/errors.hpp"
#include "direst/format.hpp"
#include "direst/monitor.hpp"

namespace direst {

namespace {

double sup_norm_sq_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double m = (a - b).cwiseAbs().maxCoeff();
  return m * m;
}

std::string fmt_mu_list(const std::vector<ObserverInstance>& bank) {
  std::string out;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (i) out += ";";
    out += bank[i].p_norm.to_string() + ":" + fmt_g17(bank[i].mu);
  }
  return out;
}

std::string fmt_id_list(const std::vector<std::uint64_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string fmt_point_list(const std::vector<GridPoint>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ";";
    out += pts[i].to_string();
  }
  return out;
}

std::vector<std::string> column_names(const EstimationModel& model) {
  std::vector<std::string> names;
  names.push_back("u");
  const int ny = model.output_dim();
  for (int i = 0; i < ny; ++i)
    names.push_back(ny == 1 ? "y" : "y" + std::to_string(i + 1));
  for (int i = 0; i < ny; ++i)
    names.push_back(ny == 1 ? "y_hat" : "y_hat" + std::to_string(i + 1));
  for (int i = 0; i < model.state_dim(); ++i) names.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < model.state_dim(); ++i) names.push_back("xhat" + std::to_string(i + 1));
  for (int i = 0; i < model.param_dim(); ++i) names.push_back("phat" + std::to_string(i + 1));
  names.push_back("perr_inf");
  names.push_back("xerr_inf");
  names.push_back("sigma");
  names.push_back("n_obs");
  names.push_back("single");
  return names;
}

}  // namespace

Supervisor::Supervisor(const EstimationModel& model, ParamBox box, SupervisorConfig cfg)
    : model_(model), box_(std::move(box)), cfg_(std::move(cfg)) {
  validate_config();
  x_ = cfg_.x0;
  traj_ = Trajectory(column_names(model_), cfg_.dt);

  std::vector<GridPoint> initial;
  if (cfg_.k_star == 0) {
    single_mode_ = true;
    initial.push_back(GridPoint::center(box_.dim()));
  } else {
    partition_.emplace(box_.dim(), cfg_.eps);
    initial = partition_->pending_points();
  }
  init_outputs_and_monitors();
  for (const GridPoint& p : initial) spawn(p, cfg_.xhat0, 0.0);
  // All first-round observers share xhat0, so they share the squared output
  // error at t = 0 as well.
  model_.output(cfg_.xhat0, yhat_);
  const double q_init = sup_norm_sq_diff(yhat_, y_);
  for (ObserverInstance& o : bank_) o.q_prev = q_init;
  if (partition_) {
    for (ObserverInstance& o : bank_)
      if (auto id = partition_->rect_id_at(o.p_norm)) o.rect_id = *id;
  }
  sigma_ = select(bank_, std::nullopt);

  EventRecord ev;
  ev.k = 0;
  ev.t = 0.0;
  ev.n_observers = bank_.size();
  ev.sigma = sigma_;
  ev.single_mode = single_mode_;
  ev.new_samples = fmt_point_list(initial);
  events_.push_back(std::move(ev));
}

Supervisor::Supervisor(const EstimationModel& model, ParamBox box, SupervisorConfig cfg,
                       const std::vector<GridPoint>& bank_points)
    : model_(model), box_(std::move(box)), cfg_(std::move(cfg)) {
  validate_config();
  if (bank_points.empty()) throw Error("fixed bank needs at least one point");
  x_ = cfg_.x0;
  traj_ = Trajectory(column_names(model_), cfg_.dt);

  init_outputs_and_monitors();
  for (const GridPoint& p : bank_points) spawn(p, cfg_.xhat0, 0.0);
  model_.output(cfg_.xhat0, yhat_);
  const double q_init = sup_norm_sq_diff(yhat_, y_);
  for (ObserverInstance& o : bank_) o.q_prev = q_init;
  sigma_ = select(bank_, std::nullopt);

  EventRecord ev;
  ev.k = 0;
  ev.t = 0.0;
  ev.n_observers = bank_.size();
  ev.sigma = sigma_;
  ev.single_mode = single_mode_;
  ev.new_samples = fmt_point_list(bank_points);
  events_.push_back(std::move(ev));
}

void Supervisor::validate_config() {
  if (!(cfg_.dt > 0.0) || !std::isfinite(cfg_.dt)) throw ConfigError("dt must be finite and > 0");
  if (!(cfg_.T_d > 0.0) || !std::isfinite(cfg_.T_d))
    throw ConfigError("update window must be finite and > 0");
  const auto steps = static_cast<std::int64_t>(std::llround(cfg_.T_d / cfg_.dt));
  if (steps < 1 || std::fabs(cfg_.T_d - static_cast<double>(steps) * cfg_.dt) > 1e-6 * cfg_.dt)
    throw ConfigError("update window must be a whole number of steps");
  steps_per_window_ = steps;
  if (!(cfg_.lambda > 0.0) || !std::isfinite(cfg_.lambda))
    throw ConfigError("forgetting rate must be finite and > 0");
  if (!(cfg_.eps >= 0.0) || !std::isfinite(cfg_.eps))
    throw ConfigError("epsilon must be finite and >= 0");
  if (cfg_.k_star < 0) throw ConfigError("iteration budget must be >= 0");
  if (cfg_.x0.size() != model_.state_dim() || cfg_.xhat0.size() != model_.state_dim())
    throw ConfigError("initial state size mismatch");
  if (cfg_.p_true.size() != model_.param_dim() || box_.dim() != model_.param_dim())
    throw ConfigError("parameter size mismatch");
  if (!(cfg_.state_bound > 0.0)) throw ConfigError("state bound must be > 0");
  for (Eigen::Index i = 0; i < cfg_.x0.size(); ++i)
    if (!std::isfinite(cfg_.x0[i]) || !std::isfinite(cfg_.xhat0[i]))
      throw ConfigError("initial states must be finite");
}

void Supervisor::init_outputs_and_monitors() {
  model_.output(x_, y_);
}

void Supervisor::spawn(const GridPoint& p_norm, const Eigen::VectorXd& xhat_init, double q_init) {
  ObserverInstance o;
  o.p_norm = p_norm;
  o.p_phys = box_.denormalize(p_norm);
  o.xhat = xhat_init;
  o.mu = 0.0;
  o.q_prev = q_init;
  o.spawn_time = time();
  bank_.push_back(std::move(o));
}

void Supervisor::stage_deriv(const InputSignal& input, double ts, const Eigen::VectorXd& X,
                             Eigen::VectorXd& dX) {
  const double u = input.value(ts);
  const Eigen::Index n = model_.state_dim();
  model_.plant_deriv(X.head(n), cfg_.p_true, u, dX.head(n));
  // Observers see the measured output of this very stage, not a held sample.
  model_.output(X.head(n), ys_);
  for (std::size_t i = 0; i < bank_.size(); ++i) {
    const Eigen::Index off = n * static_cast<Eigen::Index>(1 + i);
    model_.observer_deriv(X.segment(off, n), bank_[i].p_phys, u, ys_, dX.segment(off, n));
  }
}

void Supervisor::advance(const InputSignal& input) {
  if (traj_.empty()) record_row(input.value(0.0));

  const double dt = cfg_.dt;
  const double t = time();
  const Eigen::Index n = model_.state_dim();
  const Eigen::Index total = n * static_cast<Eigen::Index>(1 + bank_.size());

  X_.resize(total);
  Xs_.resize(total);
  k1_.resize(total);
  k2_.resize(total);
  k3_.resize(total);
  k4_.resize(total);
  X_.head(n) = x_;
  for (std::size_t i = 0; i < bank_.size(); ++i)
    X_.segment(n * static_cast<Eigen::Index>(1 + i), n) = bank_[i].xhat;

  stage_deriv(input, t, X_, k1_);
  Xs_ = X_ + (0.5 * dt) * k1_;
  stage_deriv(input, t + 0.5 * dt, Xs_, k2_);
  Xs_ = X_ + (0.5 * dt) * k2_;
  stage_deriv(input, t + 0.5 * dt, Xs_, k3_);
  Xs_ = X_ + dt * k3_;
  stage_deriv(input, t + dt, Xs_, k4_);
  Xs_ = X_ + (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);

  if (!Xs_.allFinite()) {
    const double tb = t + dt;
    if (!Xs_.head(n).allFinite()) throw BlowupError("plant state became non-finite", tb);
    for (std::size_t i = 0; i < bank_.size(); ++i)
      if (!Xs_.segment(n * static_cast<Eigen::Index>(1 + i), n).allFinite())
        throw BlowupError("observer state became non-finite", tb, static_cast<int>(i));
    throw BlowupError("state became non-finite", tb);
  }

  x_ = Xs_.head(n);
  for (std::size_t i = 0; i < bank_.size(); ++i)
    bank_[i].xhat = Xs_.segment(n * static_cast<Eigen::Index>(1 + i), n);
  ++step_;
  model_.output(x_, y_);

  for (ObserverInstance& o : bank_) {
    model_.output(o.xhat, yhat_);
    const double q_next = sup_norm_sq_diff(yhat_, y_);
    o.mu = monitor_update(o.mu, o.q_prev, q_next, cfg_.lambda, dt);
    o.q_prev = q_next;
  }

  if (!bound_exceeded_ && x_.cwiseAbs().maxCoeff() > cfg_.state_bound) {
    bound_exceeded_ = true;
    bound_time_ = time();
  }

  sigma_ = select(bank_, sigma_);
  record_row(input.value(time()));
}

void Supervisor::on_update_instant() {
  if (steps_per_window_ <= 0 || step_ == 0 || step_ % steps_per_window_ != 0)
    throw ScheduleError("update requested off the window grid at step " + std::to_string(step_));
  if (last_instant_step_ == step_)
    throw ScheduleError("update instant at step " + std::to_string(step_) + " already processed");
  last_instant_step_ = step_;

  EventRecord ev;
  ev.k = step_ / steps_per_window_;
  ev.t = time();
  ev.window_mu = fmt_mu_list(bank_);

  if (partition_ && !single_mode_) {
    if (partition_->has_pending()) {
      CostMap costs;
      for (const ObserverInstance& o : bank_) costs[o.p_norm] = o.mu;
      partition_->complete_pending_divisions(costs);
      for (ObserverInstance& o : bank_)
        if (auto id = partition_->rect_id_at(o.p_norm)) o.rect_id = *id;
    }

    if (partition_->iteration() >= cfg_.k_star) {
      // Budget spent: keep only the selected observer from here on.
      ObserverInstance keep = std::move(bank_[sigma_]);
      bank_.clear();
      bank_.push_back(std::move(keep));
      sigma_ = 0;
      single_mode_ = true;
    } else {
      std::vector<std::uint64_t> po = partition_->identify_potentially_optimal();
      std::erase_if(po, [this](std::uint64_t id) {
        return partition_->rect_by_id(id).min_side_exp() >= kMaxDivisionDepth;
      });
      ev.potentially_optimal = fmt_id_list(po);
      const std::vector<GridPoint> fresh = partition_->request_divisions(po);
      ev.new_samples = fmt_point_list(fresh);
      // Copies, not references: spawn() grows the bank.
      const Eigen::VectorXd xhat_init = bank_[sigma_].xhat;
      const double q_init = bank_[sigma_].q_prev;
      for (const GridPoint& p : fresh) spawn(p, xhat_init, q_init);
      if (cfg_.reinitialize_all) {
        for (ObserverInstance& o : bank_) {
          o.xhat = xhat_init;
          o.q_prev = q_init;
        }
      }
    }
  }

  for (ObserverInstance& o : bank_) o.mu = 0.0;

  ev.n_observers = bank_.size();
  ev.sigma = sigma_;
  ev.single_mode = single_mode_;
  events_.push_back(std::move(ev));
}

void Supervisor::record_row(double u) {
  model_.output(bank_[sigma_].xhat, yhat_);
  row_.clear();
  row_.push_back(u);
  for (Eigen::Index i = 0; i < y_.size(); ++i) row_.push_back(y_[i]);
  for (Eigen::Index i = 0; i < yhat_.size(); ++i) row_.push_back(yhat_[i]);
  for (Eigen::Index i = 0; i < x_.size(); ++i) row_.push_back(x_[i]);
  const Eigen::VectorXd& xh = bank_[sigma_].xhat;
  for (Eigen::Index i = 0; i < xh.size(); ++i) row_.push_back(xh[i]);
  const Eigen::VectorXd& ph = bank_[sigma_].p_phys;
  for (Eigen::Index i = 0; i < ph.size(); ++i) row_.push_back(ph[i]);
  row_.push_back((ph - cfg_.p_true).cwiseAbs().maxCoeff());
  row_.push_back((xh - x_).cwiseAbs().maxCoeff());
  row_.push_back(static_cast<double>(sigma_));
  row_.push_back(static_cast<double>(bank_.size()));
  row_.push_back(single_mode_ ? 1.0 : 0.0);
  traj_.append(time(), row_);
}

}  // namespace direst
