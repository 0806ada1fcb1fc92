#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace azema::mc {

/// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Draws for one (path, step): two independent standard normals and one
/// uniform in (0, 1), a pure function of (seed, path, step, stream).
struct StepDraws {
  double normal1;
  double normal2;
  double uniform;
};
StepDraws draws(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                std::uint32_t stream = 0);

/// d<m> on a grid step: the realized (dm)^2, or f_x(t, W)^2 dt from the
/// closed-form derivative.
enum class Bracket { kRealized, kClosedForm };

/// Catalog:
///   "CAT-1"      S = E(B), tau = last zero of an independent Brownian W
///                before time 1, Z_t = erfc(|W_t| / sqrt(2 (1 - t))).
///   "CAT-1-INF"  same S with tau = inf (Z = 1).
struct McModel {
  std::string id = "CAT-1";
  double dt = 1e-3;
  std::size_t paths = 100000;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  double s0 = 1.0;
  double z_floor = 1e-6;
  Bracket bracket = Bracket::kRealized;
};

bool in_catalog(const std::string& id);

/// erfc(|x| / sqrt(2 (1 - t))) for t < 1.
double z_closed_form(double t, double x);
/// d/dx of z_closed_form.
double z_closed_form_dx(double t, double x);

struct PathEstimate {
  std::vector<double> times;
  std::vector<double> estimate;       ///< E[E(L)_t S_{t^tau}]
  std::vector<double> se;
  std::vector<double> control;        ///< E[S_{t^tau}], undeflated
  std::vector<double> control_se;
  std::vector<double> deflator;       ///< E[E(L)_{t^tau}]
  std::vector<double> deflator_se;
  std::size_t paths = 0;
  std::size_t frozen_paths = 0;       ///< Z fell below the floor before tau
  std::size_t nonpositive_steps = 0;  ///< steps with 1 + dL <= 0
  double s0 = 1.0;
};

/// On the grid k * dt: dm = Z~_{k+1} - Z_k with Z~_{k+1} = P(tau > t_k | W_k, W_{k+1}),
/// dL = -(dm - d<m> / Z_k) / Z_k until the step containing tau. Throws std::runtime_error on
/// non-finite path arithmetic or an unknown model.
PathEstimate simulate(const McModel& model, const std::vector<double>& checkpoints = {0.25, 0.5, 0.75},
                      std::size_t threads = 1);

struct ZValidation {
  double t = 0;
  double x = 0;
  double closed_form = 0;
  double estimate = 0;
  double se = 0;
  /// |estimate - closed_form| <= k SE (exact equality when SE = 0).
  bool agrees(double k = 4.0) const;
};

/// Nested simulation of P(W has a zero in (t, 1) | W_t = x) on the model's
/// grid with exact Brownian-bridge crossing detection inside each step.
ZValidation validate_Z_formula(const McModel& model, double t, double x, std::size_t sub_paths);

std::string to_csv(const PathEstimate& estimate);

}  // namespace azema::mc
