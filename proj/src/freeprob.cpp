// Copyright 2026 The whrflab Authors
// SPDX-License-Identifier: Apache-2.0

#include "whrflab/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "whrflab/parallel.hpp"

namespace whrflab::freeprob {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailThreshold = 1e-8;

cplx cubic_eval(cplx a, cplx b, cplx c, cplx d, cplx t) {
  return ((a * t + b) * t + c) * t + d;
}

cplx newton_polish(cplx a, cplx b, cplx c, cplx d, cplx t) {
  for (int it = 0; it < 3; ++it) {
    const cplx f = cubic_eval(a, b, c, d, t);
    const cplx df = (3.0 * a * t + 2.0 * b) * t + c;
    if (std::abs(df) == 0.0) break;
    const cplx step = f / df;
    t -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
  }
  return t;
}

std::vector<cplx> solve_quadratic(cplx a, cplx b, cplx c) {
  if (std::abs(a) == 0.0) {
    if (std::abs(b) == 0.0) throw std::invalid_argument("solve_cubic: degenerate equation");
    return {-c / b};
  }
  const cplx sq = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation in -b -+ sq.
  const cplx bp = std::real(std::conj(b) * sq) >= 0.0 ? b + sq : b - sq;
  if (std::abs(bp) == 0.0) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  const cplx r1 = -bp / (2.0 * a);
  const cplx r2 = -2.0 * c / bp;
  return {r1, r2};
}

}  // namespace

void FreeModelParams::validate() const {
  if (gamma <= 0.0 || r < 1 || x < 0.0) {
    throw std::invalid_argument("FreeModelParams: out of range");
  }
}

std::vector<cplx> solve_cubic(cplx a, cplx b, cplx c, cplx d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) throw std::invalid_argument("solve_cubic: zero polynomial");
  if (std::abs(a) <= 1e-14 * scale) return solve_quadratic(b, c, d);

  const cplx bb = b / a;
  const cplx cc = c / a;
  const cplx dd = d / a;
  // Depressed form t = s - bb/3:  s^3 + p s + q.
  const cplx p = cc - bb * bb / 3.0;
  const cplx q = 2.0 * bb * bb * bb / 27.0 - bb * cc / 3.0 + dd;

  const cplx half_q = 0.5 * q;
  const cplx disc = half_q * half_q + p * p * p / 27.0;
  const cplx sq = std::sqrt(disc);
  // u^3 = -q/2 +- sq, branch chosen to avoid cancellation.
  cplx u3 = std::real(std::conj(-half_q) * sq) >= 0.0 ? -half_q + sq : -half_q - sq;
  std::vector<cplx> roots;
  if (std::abs(u3) == 0.0) {
    // p == 0 and q == 0 up to rounding: triple root.
    const cplx s = -std::pow(q, 1.0 / 3.0);
    roots = {s, s, s};
  } else {
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx v = -p / (3.0 * u);
    const cplx w(-0.5, 0.5 * std::sqrt(3.0));  // primitive cube root of unity
    roots = {u + v, w * u + std::conj(w) * v, std::conj(w) * u + w * v};
  }
  for (auto& root : roots) {
    root -= bb / 3.0;
    root = newton_polish(a, b, c, d, root);
  }
  return roots;
}

CubicCoeffs stieltjes_cubic_coeffs(cplx z, const FreeModelParams& params) {
  const double r = params.r;
  const double g = params.gamma;
  const double x = params.x;
  CubicCoeffs c;
  c.a = 8.0 * r * r * r * g * g * x;
  c.b = -2.0 * r * g * (z + 2.0 * r * x);
  c.c = z - 2.0 * r * (1.0 - g);
  c.d = -1.0;
  return c;
}

std::vector<cplx> stieltjes_roots(cplx z, const FreeModelParams& params) {
  params.validate();
  const auto co = stieltjes_cubic_coeffs(z, params);
  if (params.x == 0.0) return solve_quadratic(co.b, co.c, co.d);
  return solve_cubic(co.a, co.b, co.c, co.d);
}

cplx stieltjes(cplx z, const FreeModelParams& params) {
  const auto roots = stieltjes_roots(z, params);
  cplx best = roots.front();
  for (const auto& root : roots) {
    if (root.imag() < best.imag()) best = root;
  }
  return best;
}

namespace {

double point_density(double lambda, const FreeModelParams& params, const GridSpec& gs) {
  const cplx ga = stieltjes(cplx(lambda, gs.eps_a), params);
  const cplx gb = stieltjes(cplx(lambda, gs.eps_b), params);
  const double fa = -ga.imag() / kPi;
  const double fb = -gb.imag() / kPi;
  // Linear extrapolation to eps = 0.
  const double f0 = (gs.eps_a * fb - gs.eps_b * fa) / (gs.eps_a - gs.eps_b);
  return f0 > 0.0 ? f0 : 0.0;
}

// Nearest-root continuation along the grid; used to cross-check the
// per-point smallest-imaginary-part rule.
double tracked_density_fill(const FreeModelParams& params, const GridSpec& gs,
                            const std::vector<double>& grid, std::vector<double>& out) {
  cplx prev{0.0, 0.0};
  bool have_prev = false;
  double max_gap = 0.0;
  out.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto roots = stieltjes_roots(cplx(grid[i], gs.eps_a), params);
    cplx sel = roots.front();
    if (have_prev) {
      for (const auto& root : roots) {
        if (std::abs(root - prev) < std::abs(sel - prev)) sel = root;
      }
    } else {
      for (const auto& root : roots) {
        if (root.imag() < sel.imag()) sel = root;
      }
    }
    const double dens = -sel.imag() / kPi;
    out[i] = dens > 0.0 ? dens : 0.0;
    if (dens > 1e-4) {
      if (have_prev) max_gap = std::max(max_gap, std::abs(sel - prev));
      prev = sel;
      have_prev = true;
    } else {
      have_prev = false;
    }
  }
  return max_gap;
}

}  // namespace

double SpectralMeasure::continuous_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    s += 0.5 * (density[i] + density[i + 1]) * (grid[i + 1] - grid[i]);
  }
  return s;
}

double SpectralMeasure::total_mass() const {
  double s = continuous_mass();
  for (const auto& a : atoms) s += a.mass;
  return s;
}

double SpectralMeasure::cdf(double lambda) const {
  double s = 0.0;
  for (const auto& a : atoms) {
    if (a.location <= lambda) s += a.mass;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i + 1] <= lambda) {
      s += 0.5 * (density[i] + density[i + 1]) * (grid[i + 1] - grid[i]);
    } else if (grid[i] < lambda) {
      const double t = (lambda - grid[i]) / (grid[i + 1] - grid[i]);
      const double dl = density[i] + t * (density[i + 1] - density[i]);
      s += 0.5 * (density[i] + dl) * (lambda - grid[i]);
      break;
    } else {
      break;
    }
  }
  return s;
}

double SpectralMeasure::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double fa = density[i] > 0.0 ? f(grid[i]) * density[i] : 0.0;
    const double fb = density[i + 1] > 0.0 ? f(grid[i + 1]) * density[i + 1] : 0.0;
    s += 0.5 * (fa + fb) * (grid[i + 1] - grid[i]);
  }
  for (const auto& a : atoms) s += a.mass * f(a.location);
  return s;
}

double SpectralMeasure::support_min() const {
  double lo = kInf;
  for (const auto& a : atoms) lo = std::min(lo, a.location);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (density[i] > kTailThreshold) {
      lo = std::min(lo, grid[i]);
      break;
    }
  }
  return lo;
}

double SpectralMeasure::support_max() const {
  double hi = -kInf;
  for (const auto& a : atoms) hi = std::max(hi, a.location);
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (density[i] > kTailThreshold) {
      hi = std::max(hi, grid[i]);
      break;
    }
  }
  return hi;
}

SpectralMeasure density(const FreeModelParams& params, const GridSpec& gs) {
  params.validate();
  const double r = params.r;
  const double g = params.gamma;
  const double sg = std::sqrt(g);

  // Bulk bracket: scaled Marchenko-Pastur edges widened by the semicircle
  // broadening ~ 4 r sqrt(gamma x), then expanded until the tails die.
  const double mp_lo = 2.0 * r * (1.0 - sg) * (1.0 - sg);
  const double mp_hi = 2.0 * r * (1.0 + sg) * (1.0 + sg);
  const double widen = 4.0 * r * std::sqrt(g * params.x) * 1.5 + 0.05 * (mp_hi - mp_lo) + 1e-3;
  double lo = std::min(mp_lo, 0.0) - widen;
  double hi = mp_hi + widen;
  for (int it = 0; it < 200 && point_density(lo, params, gs) > gs.tail_threshold; ++it) {
    lo -= 0.25 * (hi - lo);
  }
  for (int it = 0; it < 200 && point_density(hi, params, gs) > gs.tail_threshold; ++it) {
    hi += 0.25 * (hi - lo);
  }

  std::vector<double> grid(static_cast<std::size_t>(gs.points));
  const double step = (hi - lo) / static_cast<double>(gs.points - 1);
  for (int i = 0; i < gs.points; ++i) grid[static_cast<std::size_t>(i)] = lo + step * i;

  std::vector<double> dens(grid.size());
  parallel::for_each_index(grid.size(), [&](std::size_t i) {
    dens[i] = point_density(grid[i], params, gs);
  });

  // Geometric refinement at the threshold crossings resolves the
  // square-root edges for the mass quadrature.
  std::vector<double> extra;
  const int depth = std::min(gs.edge_refine, 48);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const bool in_a = dens[i] > gs.tail_threshold;
    const bool in_b = dens[i + 1] > gs.tail_threshold;
    if (in_a == in_b) continue;
    const double width = grid[i + 1] - grid[i];
    double frac = 0.5;
    for (int k = 0; k < depth; ++k, frac *= 0.5) {
      extra.push_back(grid[i] + width * frac);
      extra.push_back(grid[i + 1] - width * frac);
    }
  }
  if (!extra.empty()) {
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    dens.resize(grid.size());
    parallel::for_each_index(grid.size(), [&](std::size_t i) {
      dens[i] = point_density(grid[i], params, gs);
    });
  }

  SpectralMeasure out;
  out.grid = std::move(grid);
  out.density = std::move(dens);

  const double cmass = out.continuous_mass();
  if (cmass < 1.0 - 1e-3) {
    // Rank deficiency: the weight missing from the continuous part sits in a
    // point mass at zero (x = 0) or at the lower end of the resolved support.
    SpectralMeasure::Atom atom;
    atom.mass = 1.0 - cmass;
    atom.location = params.x == 0.0 ? 0.0 : std::min(0.0, out.support_min());
    out.atoms.push_back(atom);
  }
  if (std::fabs(out.total_mass() - 1.0) > 1e-4) {
    throw std::runtime_error("freeprob::density: mass normalization failed");
  }
  return out;
}

double support_edge_min(const FreeModelParams& params) {
  params.validate();
  const double r = params.r;
  const double g = params.gamma;
  const double sg = std::sqrt(g);
  const double mp_lo = 2.0 * r * (1.0 - sg) * (1.0 - sg);
  if (params.x == 0.0) {
    return g > 1.0 ? 0.0 : mp_lo;  // atom at zero once the bulk is rank-deficient
  }

  GridSpec gs;
  // Coarse scan upward until the density lights up.
  const double widen = 4.0 * r * std::sqrt(g * params.x) * 1.5 + 0.1 * r + 1e-3;
  double lo = std::min(mp_lo, 0.0) - widen;
  for (int it = 0; it < 200 && point_density(lo, params, gs) > kTailThreshold; ++it) {
    lo -= widen;
  }
  const double hi = 2.0 * r * (1.0 + sg) * (1.0 + sg) + widen;
  const int steps = 4000;
  const double step = (hi - lo) / steps;
  double bracket_lo = lo, bracket_hi = hi;
  bool found = false;
  for (int i = 1; i <= steps; ++i) {
    const double lambda = lo + step * i;
    if (point_density(lambda, params, gs) > kTailThreshold) {
      bracket_lo = lambda - step;
      bracket_hi = lambda;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("support_edge_min: no support located");

  // Refine on the real-root-count transition of the cubic.
  auto discriminant = [&](double z) {
    const auto co = stieltjes_cubic_coeffs(cplx(z, 0.0), params);
    const double a = co.a.real(), b = co.b.real(), c = co.c.real(), d = co.d.real();
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
  };
  double da = discriminant(bracket_lo);
  double db = discriminant(bracket_hi);
  if (da * db > 0.0) {
    // Crossing sits closer than one scan step; fall back to a density bisection.
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (bracket_lo + bracket_hi);
      if (point_density(mid, params, gs) > kTailThreshold) {
        bracket_hi = mid;
      } else {
        bracket_lo = mid;
      }
    }
    return 0.5 * (bracket_lo + bracket_hi);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    const double dm = discriminant(mid);
    if (da * dm <= 0.0) {
      bracket_hi = mid;
      db = dm;
    } else {
      bracket_lo = mid;
      da = dm;
    }
    if (bracket_hi - bracket_lo < 1e-12 * (1.0 + std::fabs(bracket_hi))) break;
  }
  return 0.5 * (bracket_lo + bracket_hi);
}

std::optional<double> band_edge_e0(double gamma, int r) {
  if (gamma <= 0.0 || r < 1) throw std::invalid_argument("band_edge_e0: bad parameters");
  if (gamma >= 1.0) return std::nullopt;  // support never clears 2rE at positive energy
  auto gap = [&](double e) {
    FreeModelParams params{gamma, r, e};
    return support_edge_min(params) - 2.0 * r * e;
  };
  double lo = 1e-6;
  if (gap(lo) <= 0.0) return std::nullopt;
  double hi = 0.25;
  int it = 0;
  while (gap(hi) > 0.0) {
    hi *= 2.0;
    if (++it > 12) throw std::runtime_error("band_edge_e0: bracketing failed");
  }
  for (int k = 0; k < 100; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-10) break;
  }
  return 0.5 * (lo + hi);
}

double asymptotic_log_crt0(double e, double gamma, int r, double q) {
  if (e <= 0.0) throw std::invalid_argument("asymptotic_log_crt0: energy must be positive");
  if (gamma <= 0.0 || r < 1 || q <= 0.0) {
    throw std::invalid_argument("asymptotic_log_crt0: bad parameters");
  }
  FreeModelParams params{gamma, r, e};
  if (gamma >= 1.0) return -kInf;
  const double edge = support_edge_min(params);
  if (edge / r < 2.0 * e) return -kInf;
  const SpectralMeasure mu = density(params);
  const double integral = mu.integrate([&](double lambda) {
    const double arg = std::fabs(lambda / r - 2.0 * e);
    return std::log(std::max(arg, 1e-300));
  });
  return 0.5 * std::log(kPi * q / (2.0 * gamma)) + (1.0 - e) / (2.0 * gamma) +
         0.5 * (1.0 / gamma - 1.0) * std::log(e) + integral;
}

double mp_density_at(double lambda, double gamma) {
  const double sg = std::sqrt(gamma);
  const double lo = (1.0 - sg) * (1.0 - sg);
  const double hi = (1.0 + sg) * (1.0 + sg);
  if (lambda <= lo || lambda >= hi || lambda <= 0.0) return 0.0;
  return std::sqrt((hi - lambda) * (lambda - lo)) / (2.0 * kPi * gamma * lambda);
}

SpectralMeasure mp_density(double gamma, int points) {
  if (gamma <= 0.0) throw std::invalid_argument("mp_density: gamma <= 0");
  const double sg = std::sqrt(gamma);
  const double lo = (1.0 - sg) * (1.0 - sg);
  const double hi = (1.0 + sg) * (1.0 + sg);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points) + 120);
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(lo + step * i);
  double frac = 0.5;
  for (int k = 0; k < 50; ++k, frac *= 0.5) {  // resolve the sqrt (or 1/sqrt) edges
    grid.push_back(lo + step * frac);
    grid.push_back(hi - step * frac);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  SpectralMeasure out;
  out.grid = grid;
  out.density.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.density[i] = mp_density_at(grid[i], gamma);
  if (gamma > 1.0) out.atoms.push_back({0.0, 1.0 - 1.0 / gamma});
  return out;
}

double sc_density_at(double lambda) {
  if (lambda <= -2.0 || lambda >= 2.0) return 0.0;
  return std::sqrt(4.0 - lambda * lambda) / (2.0 * kPi);
}

SpectralMeasure sc_density(int points) {
  SpectralMeasure out;
  out.grid.resize(static_cast<std::size_t>(points));
  out.density.resize(static_cast<std::size_t>(points));
  const double step = 4.0 / (points - 1);
  for (int i = 0; i < points; ++i) {
    out.grid[static_cast<std::size_t>(i)] = -2.0 + step * i;
    out.density[static_cast<std::size_t>(i)] = sc_density_at(out.grid[static_cast<std::size_t>(i)]);
  }
  return out;
}

// Exposed for the branch-tracking consistency test.
double tracked_density(const FreeModelParams& params, const GridSpec& gs,
                       const std::vector<double>& grid, std::vector<double>& out) {
  return tracked_density_fill(params, gs, grid, out);
}

}  // namespace whrflab::freeprob
