#include "azema/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace azema::mc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

double unit_open(std::uint32_t bits) { return (static_cast<double>(bits) + 0.5) / 4294967296.0; }

struct PathResult {
  std::vector<double> deflated;
  std::vector<double> stopped;
  std::vector<double> deflator;
  bool frozen = false;
  std::size_t nonpositive = 0;
};

std::size_t grid_index(double t, double dt) { return static_cast<std::size_t>(std::llround(t / dt)); }

void check_finite(double v, std::size_t path, std::size_t step, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "non-finite " << what << " on path " << path << " at step " << step;
    throw std::runtime_error(msg.str());
  }
}

/// Probability that W vanishes inside a step of length dt given its
/// endpoints x and y (Brownian bridge).
double zero_probability(double x, double y, double dt) {
  if (x == 0.0 || y == 0.0 || (x > 0) != (y > 0)) return 1.0;
  return std::exp(-2.0 * x * y / dt);
}

PathResult simulate_path(const McModel& model, std::size_t path,
                         const std::vector<std::size_t>& checkpoints, std::vector<double>& w) {
  const double dt = model.dt;
  const double sqdt = std::sqrt(dt);
  const std::size_t steps = grid_index(model.horizon, dt);
  const bool has_tau = model.id == "CAT-1";

  // Last step containing a zero of W; tau lies in it, and the path is
  // stopped at the end of that step.
  std::size_t tau_step = steps;
  if (has_tau) {
    w.assign(steps + 1, 0.0);
    tau_step = 0;
    for (std::size_t k = 0; k < steps; ++k) {
      const StepDraws d = draws(model.seed, path, k);
      w[k + 1] = w[k] + sqdt * d.normal2;
      if (d.uniform < zero_probability(w[k], w[k + 1], dt)) tau_step = k;
    }
  }

  PathResult r;
  const std::size_t last = checkpoints.empty() ? 0 : checkpoints.back();
  double log_s = std::log(model.s0);
  double deflator = 1.0;
  bool alive = true;
  std::size_t c = 0;
  for (std::size_t k = 0; k <= last; ++k) {
    while (c < checkpoints.size() && checkpoints[c] == k) {
      const double s = std::exp(log_s);
      r.deflated.push_back(deflator * s);
      r.stopped.push_back(s);
      r.deflator.push_back(deflator);
      ++c;
    }
    if (k == last || !alive) continue;
    const StepDraws d = draws(model.seed, path, k);
    log_s += sqdt * d.normal1 - 0.5 * dt;
    check_finite(log_s, path, k, "price");
    if (k == tau_step) alive = false;
    if (!has_tau) continue;

    const double t = static_cast<double>(k) * dt;
    const double z = z_closed_form(t, w[k]);
    if (z < model.z_floor) {
      r.frozen = true;
      alive = false;
      continue;
    }
    // Z~_{k+1} = P(tau > t_k | W_k, W_{k+1}); dm = Z~_{k+1} - Z_k.
    const double q = zero_probability(w[k], w[k + 1], dt);
    const double z_tilde = q + (1.0 - q) * z_closed_form(t + dt, w[k + 1]);
    const double dm = z_tilde - z;
    double dbracket = dm * dm;
    if (model.bracket == Bracket::kClosedForm) {
      const double fx = z_closed_form_dx(t, w[k]);
      dbracket = fx * fx * dt;
    }
    const double dl = -(dm - dbracket / z) / z;
    if (1.0 + dl <= 0.0) ++r.nonpositive;
    deflator *= 1.0 + dl;
    check_finite(deflator, path, k, "deflator");
  }
  return r;
}

void mean_and_se(const std::vector<PathResult>& results, std::size_t c,
                 std::vector<double> PathResult::*field, double& mean, double& se) {
  const double n = static_cast<double>(results.size());
  double sum = 0.0;
  for (const auto& r : results) sum += (r.*field)[c];
  mean = sum / n;
  double sq = 0.0;
  for (const auto& r : results) {
    const double d = (r.*field)[c] - mean;
    sq += d * d;
  }
  se = results.size() > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

StepDraws draws(std::uint64_t seed, std::uint64_t path, std::uint64_t step, std::uint32_t stream) {
  const auto bits = philox4x32(
      {static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32),
       static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32) ^ (stream << 16)},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const double radius = std::sqrt(-2.0 * std::log(unit_open(bits[0])));
  const double angle = 2.0 * std::numbers::pi * unit_open(bits[1]);
  return {radius * std::cos(angle), radius * std::sin(angle), unit_open(bits[2])};
}

bool in_catalog(const std::string& id) { return id == "CAT-1" || id == "CAT-1-INF"; }

double z_closed_form(double t, double x) { return std::erfc(std::abs(x) / std::sqrt(2.0 * (1.0 - t))); }

double z_closed_form_dx(double t, double x) {
  if (x == 0.0) return 0.0;
  const double s = 1.0 - t;
  const double sign = x > 0 ? 1.0 : -1.0;
  return -sign * std::sqrt(2.0 / (std::numbers::pi * s)) * std::exp(-x * x / (2.0 * s));
}

PathEstimate simulate(const McModel& model, const std::vector<double>& checkpoints,
                      std::size_t threads) {
  if (!in_catalog(model.id)) throw std::runtime_error("unknown model '" + model.id + "'");
  if (!(model.dt > 0) || model.paths == 0) throw std::runtime_error("need dt > 0 and paths >= 1");
  std::vector<std::size_t> grid;
  for (double t : checkpoints) {
    if (t < 0 || t >= model.horizon) throw std::runtime_error("checkpoint outside [0, horizon)");
    grid.push_back(grid_index(t, model.dt));
  }
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::runtime_error("checkpoints must ascend");

  std::vector<PathResult> results(model.paths);
  threads = std::clamp<std::size_t>(threads, 1, model.paths);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t id = 0; id < threads; ++id) {
    pool.emplace_back([&, id] {
      try {
        std::vector<double> w;
        for (std::size_t p = id; p < model.paths; p += threads) {
          results[p] = simulate_path(model, p, grid, w);
        }
      } catch (...) {
        errors[id] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  PathEstimate out;
  out.times = checkpoints;
  out.paths = model.paths;
  out.s0 = model.s0;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    double mean, se;
    mean_and_se(results, c, &PathResult::deflated, mean, se);
    out.estimate.push_back(mean);
    out.se.push_back(se);
    mean_and_se(results, c, &PathResult::stopped, mean, se);
    out.control.push_back(mean);
    out.control_se.push_back(se);
    mean_and_se(results, c, &PathResult::deflator, mean, se);
    out.deflator.push_back(mean);
    out.deflator_se.push_back(se);
  }
  for (const auto& r : results) {
    out.frozen_paths += r.frozen ? 1 : 0;
    out.nonpositive_steps += r.nonpositive;
  }
  return out;
}

bool ZValidation::agrees(double k) const {
  const double gap = std::abs(estimate - closed_form);
  return se == 0.0 ? gap == 0.0 : gap <= k * se;
}

ZValidation validate_Z_formula(const McModel& model, double t, double x, std::size_t sub_paths) {
  ZValidation out{t, x, z_closed_form(t, x), 0.0, 0.0};
  const std::size_t start = grid_index(t, model.dt);
  const std::size_t steps = grid_index(model.horizon, model.dt);
  // First step may be partial when t is off-grid.
  const double first = static_cast<double>(start + 1) * model.dt - t;
  std::size_t hits = 0;
  for (std::size_t p = 0; p < sub_paths; ++p) {
    double w = x;
    for (std::size_t k = start; k < steps; ++k) {
      const double h = k == start ? first : model.dt;
      if (h <= 0) continue;
      const StepDraws d = draws(model.seed, p, k, 1);
      const double next = w + std::sqrt(h) * d.normal1;
      if (d.uniform < zero_probability(w, next, h)) {
        ++hits;
        break;
      }
      w = next;
    }
  }
  const double n = static_cast<double>(sub_paths);
  out.estimate = static_cast<double>(hits) / n;
  out.se = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

std::string to_csv(const PathEstimate& e) {
  std::ostringstream out;
  out.precision(17);
  out << "t,estimate,se,control,control_se,deflator,deflator_se\n";
  for (std::size_t c = 0; c < e.times.size(); ++c) {
    out << e.times[c] << ',' << e.estimate[c] << ',' << e.se[c] << ',' << e.control[c] << ','
        << e.control_se[c] << ',' << e.deflator[c] << ',' << e.deflator_se[c] << '\n';
  }
  return out.str();
}

}  // namespace azema::mc
