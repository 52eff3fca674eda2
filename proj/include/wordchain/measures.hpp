#pragma once

// Probability measures on the line: step densities with rational data, atomic
// (empirical) measures and exponential laws. Canonical pairs (mu, nu) with
// (mu + nu)/2 = Lebesgue on [0,1], and exact pattern probabilities
// mu^{⊗m} ⊗ nu^{⊗m}(S(w)).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wordchain/errors.hpp"
#include "wordchain/random.hpp"
#include "wordchain/rational.hpp"
#include "wordchain/stats.hpp"
#include "wordchain/words.hpp"

namespace wordchain {

inline constexpr std::size_t kDefaultStepPatternCap = 6;
inline constexpr std::size_t kDefaultAtomicPatternCap = 4;

/// Piecewise-constant density on [t_0, t_K] with rational breakpoints.
class StepMeasure {
 public:
  StepMeasure(std::vector<Rational> breakpoints, std::vector<Rational> densities)
      : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
    if (breakpoints_.size() < 2 || densities_.size() + 1 != breakpoints_.size())
      throw invalid_argument("step measure needs K+1 breakpoints for K densities, K >= 1");
    Rational total = 0;
    for (std::size_t k = 0; k < densities_.size(); ++k) {
      if (!(breakpoints_[k] < breakpoints_[k + 1]))
        throw invalid_argument("step measure breakpoints must be strictly increasing");
      if (densities_[k] < 0) throw invalid_argument("step measure density is negative");
      total += densities_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
    }
    if (total != 1)
      throw invalid_argument("step measure has total mass " + to_string(total) + ", expected 1");
    cumulative_.reserve(breakpoints_.size());
    Rational acc = 0;
    cumulative_.push_back(0.0);
    for (std::size_t k = 0; k < densities_.size(); ++k) {
      acc += cell_mass(k);
      cumulative_.push_back(to_double(acc));
      density_d_.push_back(to_double(densities_[k]));
    }
    for (const auto& t : breakpoints_) breakpoint_d_.push_back(to_double(t));
  }

  /// Uniform law on [lo, hi].
  static StepMeasure uniform(const Rational& lo = 0, const Rational& hi = 1) {
    return StepMeasure({lo, hi}, {1 / (hi - lo)});
  }

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& densities() const { return densities_; }
  std::size_t cells() const { return densities_.size(); }
  const Rational& lower() const { return breakpoints_.front(); }
  const Rational& upper() const { return breakpoints_.back(); }

  Rational cell_mass(std::size_t k) const {
    return densities_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
  }

  /// Density at x using right-continuous cell lookup; zero outside the support.
  Rational density_at(const Rational& x) const {
    if (x < lower() || x >= upper()) return 0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return densities_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  Rational cdf(const Rational& x) const {
    if (x <= lower()) return 0;
    if (x >= upper()) return 1;
    Rational acc = 0;
    for (std::size_t k = 0; k < cells(); ++k) {
      if (x >= breakpoints_[k + 1]) {
        acc += cell_mass(k);
      } else {
        acc += densities_[k] * (x - breakpoints_[k]);
        break;
      }
    }
    return acc;
  }

  double cdf(double x) const {
    if (x <= breakpoint_d_.front()) return 0.0;
    if (x >= breakpoint_d_.back()) return 1.0;
    auto it = std::upper_bound(breakpoint_d_.begin(), breakpoint_d_.end(), x);
    auto k = static_cast<std::size_t>(it - breakpoint_d_.begin()) - 1;
    return std::min(1.0, cumulative_[k] + density_d_[k] * (x - breakpoint_d_[k]));
  }

  double quantile(double u) const {
    // first cell whose cumulative mass exceeds u; zero-mass cells are skipped
    auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), u);
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()) - 1,
                                          cells() - 1);
    while (density_d_[k] == 0.0 && k + 1 < cells()) ++k;
    double lo = breakpoint_d_[k];
    double hi = breakpoint_d_[k + 1];
    double x = lo + (u - cumulative_[k]) / density_d_[k];
    return std::clamp(x, lo, hi);
  }

  double sample(Rng& rng) const { return quantile(uniform01(rng)); }

  /// Exact ∫ x^n dμ.
  Rational moment(unsigned n) const {
    Rational acc = 0;
    for (std::size_t k = 0; k < cells(); ++k)
      acc += densities_[k] *
             (rational_pow(breakpoints_[k + 1], n + 1) - rational_pow(breakpoints_[k], n + 1));
    return acc / (n + 1);
  }

  /// Same measure on a finer breakpoint set covering [lower(), upper()].
  StepMeasure refine(const std::vector<Rational>& finer) const {
    std::vector<Rational> dens;
    dens.reserve(finer.size() - 1);
    for (std::size_t k = 0; k + 1 < finer.size(); ++k) dens.push_back(density_at(finer[k]));
    return StepMeasure(finer, std::move(dens));
  }

  friend bool operator==(const StepMeasure& x, const StepMeasure& y) {
    return x.breakpoints_ == y.breakpoints_ && x.densities_ == y.densities_;
  }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
  std::vector<double> cumulative_;
  std::vector<double> breakpoint_d_;
  std::vector<double> density_d_;
};

/// Sorted union of two breakpoint sets.
inline std::vector<Rational> merge_breakpoints(const std::vector<Rational>& x,
                                               const std::vector<Rational>& y) {
  std::vector<Rational> out;
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Atom {
  Rational location;
  Rational mass;
};

/// Finitely many atoms with rational locations and masses summing to 1.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    Rational total = 0;
    for (auto& a : atoms) {
      if (a.mass < 0) throw invalid_argument("atom with negative mass");
      total += a.mass;
      if (a.mass == 0) continue;
      if (!atoms_.empty() && atoms_.back().location == a.location)
        atoms_.back().mass += a.mass;
      else
        atoms_.push_back(std::move(a));
    }
    if (total != 1)
      throw invalid_argument("discrete measure has total mass " + to_string(total) +
                             ", expected 1");
    double acc = 0.0;
    for (const auto& a : atoms_) {
      acc += to_double(a.mass);
      cumulative_.push_back(acc);
      locations_.push_back(to_double(a.location));
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

  Rational cdf(const Rational& x) const {
    Rational acc = 0;
    for (const auto& a : atoms_) {
      if (a.location > x) break;
      acc += a.mass;
    }
    return acc;
  }

  double sample(Rng& rng) const {
    double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return locations_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

  Rational moment(unsigned n) const {
    Rational acc = 0;
    for (const auto& a : atoms_) acc += a.mass * rational_pow(a.location, n);
    return acc;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::vector<double> locations_;
};

/// Exponential law with a positive rational rate.
struct Exponential {
  Rational rate;

  explicit Exponential(Rational r) : rate(std::move(r)) {
    if (rate <= 0) throw invalid_argument("exponential rate must be positive");
  }
  double cdf(double x) const { return x <= 0 ? 0.0 : -std::expm1(-to_double(rate) * x); }
  double quantile(double u) const { return -std::log1p(-u) / to_double(rate); }
  double sample(Rng& rng) const { return exponential_draw(rng, to_double(rate)); }
};

/// Diffuse source measure on the real line.
using ParametricMeasure = std::variant<Exponential, StepMeasure>;

inline double cdf(const ParametricMeasure& m, double x) {
  return std::visit([x](const auto& d) { return d.cdf(x); }, m);
}

/// Inverse-CDF sample from any supported measure.
template <typename Measure>
double sample_measure(const Measure& m, Rng& rng) {
  return m.sample(rng);
}

inline double sample_measure(const ParametricMeasure& m, Rng& rng) {
  return std::visit([&rng](const auto& d) { return d.sample(rng); }, m);
}

/// Diffuse measures mu, nu on [0,1] on a shared breakpoint grid with
/// density(mu) + density(nu) = 2 on every cell.
class CanonicalPair {
 public:
  CanonicalPair(const StepMeasure& mu, const StepMeasure& nu)
      : mu_(mu.refine(merge_breakpoints(mu.breakpoints(), nu.breakpoints()))),
        nu_(nu.refine(mu_.breakpoints())) {
    if (mu.lower() != 0 || mu.upper() != 1 || nu.lower() != 0 || nu.upper() != 1)
      throw invalid_argument("canonical pair measures must live on [0,1]");
    for (std::size_t k = 0; k < mu_.cells(); ++k)
      if (mu_.densities()[k] + nu_.densities()[k] != 2)
        throw invalid_argument("canonical pair violates density(mu) + density(nu) = 2");
  }

  /// nu := 2λ - mu; requires mu ≤ 2λ on [0,1].
  static CanonicalPair from_mu(const StepMeasure& mu) {
    std::vector<Rational> nu_dens;
    for (const auto& d : mu.densities()) {
      if (d > 2) throw invalid_argument("mu density exceeds 2");
      nu_dens.push_back(2 - d);
    }
    return CanonicalPair(mu, StepMeasure(mu.breakpoints(), std::move(nu_dens)));
  }

  static CanonicalPair lebesgue() { return from_mu(StepMeasure::uniform()); }

  /// mu = 2λ on [0,1/2], nu = 2λ on [1/2,1]: every a precedes every b.
  static CanonicalPair separated() {
    return from_mu(StepMeasure({0, Rational(1, 2), 1}, {2, 0}));
  }

  const StepMeasure& mu() const { return mu_; }
  const StepMeasure& nu() const { return nu_; }

  friend bool operator==(const CanonicalPair& x, const CanonicalPair& y) {
    return x.mu_ == y.mu_ && x.nu_ == y.nu_;
  }

 private:
  StepMeasure mu_;
  StepMeasure nu_;
};

/// Empirical pair (mu_k, nu_k) read off a balanced word.
struct AtomicPair {
  BalancedWord source;
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

/// The map W: sorts the 2m values and reads x-values as a, y-values as b.
/// Returns nullopt when two values coincide (W is defined on distinct entries only).
inline std::optional<BalancedWord> interleave(const std::vector<double>& xs,
                                              const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw invalid_argument("interleave: sample counts differ");
  std::vector<std::pair<double, char>> tagged;
  tagged.reserve(xs.size() + ys.size());
  for (double x : xs) tagged.emplace_back(x, 'a');
  for (double y : ys) tagged.emplace_back(y, 'b');
  std::sort(tagged.begin(), tagged.end());
  std::string out;
  out.reserve(tagged.size());
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (i > 0 && tagged[i].first == tagged[i - 1].first) return std::nullopt;
    out.push_back(tagged[i].second);
  }
  return BalancedWord(out);
}

/// μ^{⊗m} ⊗ ν^{⊗m}(S(w)) for step measures, by splitting w into one contiguous
/// block per cell of the common refinement. A block with i a's and j b's in a
/// cell of masses (p, q) contributes p^i q^j / (i+j)!; the total carries m!^2.
inline Rational pattern_prob_exact(const StepMeasure& mu, const StepMeasure& nu,
                                   const BalancedWord& w,
                                   std::size_t cap = kDefaultStepPatternCap) {
  const std::size_t m = w.n();
  if (m > cap)
    throw cap_exceeded("pattern_prob_exact: N(w) = " + std::to_string(m) + " exceeds cap " +
                       std::to_string(cap));
  auto grid = merge_breakpoints(mu.breakpoints(), nu.breakpoints());
  const std::size_t len = w.size();

  std::vector<std::size_t> a_prefix(len + 1, 0);
  for (std::size_t i = 0; i < len; ++i) a_prefix[i + 1] = a_prefix[i] + (w[i] == Letter::A);

  std::vector<Rational> inv_fact(len + 1);
  for (std::size_t k = 0; k <= len; ++k) inv_fact[k] = Rational(1, factorial(static_cast<unsigned>(k)));

  std::vector<Rational> reach(len + 1);
  reach[0] = 1;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    Rational width = grid[k + 1] - grid[k];
    Rational p = mu.density_at(grid[k]) * width;
    Rational q = nu.density_at(grid[k]) * width;
    std::vector<Rational> p_pow(m + 1), q_pow(m + 1);
    p_pow[0] = q_pow[0] = 1;
    for (std::size_t e = 1; e <= m; ++e) {
      p_pow[e] = p_pow[e - 1] * p;
      q_pow[e] = q_pow[e - 1] * q;
    }
    std::vector<Rational> next(len + 1);
    for (std::size_t start = 0; start <= len; ++start) {
      if (reach[start] == 0) continue;
      for (std::size_t stop = start; stop <= len; ++stop) {
        std::size_t i = a_prefix[stop] - a_prefix[start];
        std::size_t j = (stop - start) - i;
        Rational weight = p_pow[i] * q_pow[j];
        if (weight == 0) continue;
        next[stop] += reach[start] * weight * inv_fact[stop - start];
      }
    }
    reach = std::move(next);
  }
  BigInt mf = factorial(static_cast<unsigned>(m));
  return reach[len] * Rational(mf * mf);
}

inline Rational pattern_prob_exact(const CanonicalPair& pair, const BalancedWord& w,
                                   std::size_t cap = kDefaultStepPatternCap) {
  return pattern_prob_exact(pair.mu(), pair.nu(), w, cap);
}

/// μ^{⊗m} ⊗ ν^{⊗m}(S(w)) for atomic measures. Tuples with a repeated coordinate
/// lie outside S(w), so each location contributes at most one letter: a
/// mass-weighted subsequence count over the merged atoms, times m!^2.
inline Rational pattern_prob_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const BalancedWord& w,
                                   std::size_t cap = kDefaultAtomicPatternCap) {
  const std::size_t m = w.n();
  if (m > cap)
    throw cap_exceeded("pattern_prob_exact: N(w) = " + std::to_string(m) + " exceeds cap " +
                       std::to_string(cap));
  struct Site {
    Rational location;
    Rational a_mass;
    Rational b_mass;
  };
  std::vector<Site> sites;
  for (const auto& atom : mu.atoms()) sites.push_back({atom.location, atom.mass, 0});
  for (const auto& atom : nu.atoms()) sites.push_back({atom.location, 0, atom.mass});
  std::sort(sites.begin(), sites.end(),
            [](const Site& x, const Site& y) { return x.location < y.location; });

  const std::size_t len = w.size();
  std::vector<Rational> ways(len + 1);
  ways[0] = 1;
  for (std::size_t s = 0; s < sites.size();) {
    Rational a_mass = 0, b_mass = 0;
    std::size_t t = s;
    for (; t < sites.size() && sites[t].location == sites[s].location; ++t) {
      a_mass += sites[t].a_mass;
      b_mass += sites[t].b_mass;
    }
    s = t;
    for (std::size_t j = len; j >= 1; --j) {
      const Rational& mass = w[j - 1] == Letter::A ? a_mass : b_mass;
      if (mass != 0 && ways[j - 1] != 0) ways[j] += ways[j - 1] * mass;
    }
  }
  BigInt mf = factorial(static_cast<unsigned>(m));
  return ways[len] * Rational(mf * mf);
}

inline Rational pattern_prob_exact(const AtomicPair& pair, const BalancedWord& w,
                                   std::size_t cap = kDefaultAtomicPatternCap) {
  return pattern_prob_exact(pair.mu, pair.nu, w, cap);
}

/// Monte Carlo estimate of μ^{⊗m} ⊗ ν^{⊗m}(S(w)) through the map W.
template <typename MuMeasure, typename NuMeasure>
Estimate pattern_prob_mc(const MuMeasure& mu, const NuMeasure& nu, const BalancedWord& w,
                         std::size_t trials, Rng& rng) {
  if (trials == 0) throw invalid_argument("pattern_prob_mc: trials must be >= 1");
  const std::size_t m = w.n();
  std::size_t hits = 0;
  std::vector<double> xs(m), ys(m);
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& x : xs) x = sample_measure(mu, rng);
    for (auto& y : ys) y = sample_measure(nu, rng);
    auto word = interleave(xs, ys);
    if (word && *word == w) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, binomial_sigma(p, trials), trials};
}

inline Estimate pattern_prob_mc(const CanonicalPair& pair, const BalancedWord& w,
                                std::size_t trials, Rng& rng) {
  return pattern_prob_mc(pair.mu(), pair.nu(), w, trials, rng);
}

inline Estimate pattern_prob_mc(const AtomicPair& pair, const BalancedWord& w, std::size_t trials,
                                Rng& rng) {
  return pattern_prob_mc(pair.mu, pair.nu, w, trials, rng);
}

/// mu_k has mass 1/N at ℓ/(2N) for every a in position ℓ; nu_k likewise for b.
inline AtomicPair empirical_pair(const BalancedWord& y) {
  if (y.n() == 0) throw invalid_argument("empirical_pair: empty word");
  const auto big_n = static_cast<long long>(y.n());
  Rational mass(1, big_n);
  std::vector<Atom> mu_atoms, nu_atoms;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Atom atom{Rational(static_cast<long long>(i + 1), 2 * big_n), mass};
    (y[i] == Letter::A ? mu_atoms : nu_atoms).push_back(std::move(atom));
  }
  return {y, DiscreteMeasure(std::move(mu_atoms)), DiscreteMeasure(std::move(nu_atoms))};
}

struct EmpiricalIdentityViolation {
  BalancedWord w;
  Rational lhs;  ///< (N^m)^2 μ_k^{⊗m} ⊗ ν_k^{⊗m}(S(w))
  Rational rhs;  ///< (m!)^2 binom(y, w)
};

struct EmpiricalIdentityReport {
  BalancedWord y;
  std::size_t m = 0;
  std::size_t checked = 0;
  std::vector<EmpiricalIdentityViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Checks (N^m)^2 μ_k^{⊗m} ⊗ ν_k^{⊗m}(S(w)) = (m!)^2 binom(y, w) for every w in W_m.
inline EmpiricalIdentityReport empirical_identity_check(const BalancedWord& y, std::size_t m) {
  if (m > y.n()) throw invalid_argument("empirical_identity_check: m > N(y)");
  auto pair = empirical_pair(y);
  EmpiricalIdentityReport report{y, m, 0, {}};
  const BigInt nm = boost::multiprecision::pow(BigInt(y.n()), static_cast<unsigned>(m));
  const BigInt mf = factorial(static_cast<unsigned>(m));
  for (const auto& w : enumerate_balanced(m)) {
    Rational lhs = Rational(nm * nm) * pattern_prob_exact(pair, w, m);
    Rational rhs = Rational(mf * mf * subword_count(y, w));
    ++report.checked;
    if (lhs != rhs) report.violations.push_back({w, lhs, rhs});
  }
  return report;
}

/// z ↦ ½(ζ+η)((-∞, z]).
inline double canonical_map(const ParametricMeasure& zeta, const ParametricMeasure& eta,
                            double z) {
  return 0.5 * (cdf(zeta, z) + cdf(eta, z));
}

struct Canonicalization {
  CanonicalPair pair;
  bool exact = false;
  std::size_t resolution = 0;  ///< grid cells for approximate results, 0 when exact
};

namespace detail {

inline Canonicalization canonicalize_steps(const StepMeasure& zeta, const StepMeasure& eta) {
  auto grid = merge_breakpoints(zeta.breakpoints(), eta.breakpoints());
  std::vector<Rational> out_bps{0};
  std::vector<Rational> mu_dens;
  Rational level = 0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    Rational p = zeta.density_at(grid[k]);
    Rational q = eta.density_at(grid[k]);
    if (p + q == 0) continue;  // F is flat here and carries no mass
    level += (p + q) / 2 * (grid[k + 1] - grid[k]);
    out_bps.push_back(level);
    mu_dens.push_back(2 * p / (p + q));
  }
  return {CanonicalPair::from_mu(StepMeasure(std::move(out_bps), std::move(mu_dens))), true, 0};
}

inline double support_lower(const ParametricMeasure& m) {
  if (const auto* s = std::get_if<StepMeasure>(&m)) return to_double(s->lower());
  return 0.0;
}

}  // namespace detail

/// Push-forward of (ζ, η) under z ↦ ½(ζ+η)((-∞, z]).
/// Exact for two step measures; otherwise a step approximation with
/// `resolution` equal cells whose masses come from the closed-form CDFs.
inline Canonicalization canonicalize(const ParametricMeasure& zeta, const ParametricMeasure& eta,
                                     std::size_t resolution) {
  if (resolution < 2) throw invalid_argument("canonicalize: resolution must be >= 2");
  const auto* zs = std::get_if<StepMeasure>(&zeta);
  const auto* es = std::get_if<StepMeasure>(&eta);
  if (zs && es) return detail::canonicalize_steps(*zs, *es);

  auto mixed_cdf = [&](double z) { return canonical_map(zeta, eta, z); };
  const double lo = std::min(detail::support_lower(zeta), detail::support_lower(eta));
  auto inverse = [&](double u) {
    double a = lo, b = lo + 1.0;
    while (mixed_cdf(b) < u) b = lo + 2.0 * (b - lo);
    for (int it = 0; it < 200 && b - a > 0; ++it) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (mixed_cdf(mid) < u ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };

  const std::uint64_t denom = static_cast<std::uint64_t>(resolution) << 32;
  const Rational cell(1, static_cast<long long>(resolution));
  std::vector<Rational> g(resolution + 1);
  g[0] = 0;
  g[resolution] = 1;
  for (std::size_t i = 1; i < resolution; ++i) {
    double u = static_cast<double>(i) / static_cast<double>(resolution);
    g[i] = rational_from_double(cdf(zeta, inverse(u)), denom);
  }
  // 0 <= mu cell mass <= 2/resolution, keeping the endpoints pinned
  for (std::size_t i = 1; i < resolution; ++i) g[i] = std::clamp(g[i], g[i - 1], g[i - 1] + 2 * cell);
  for (std::size_t i = resolution; i-- > 1;) g[i] = std::clamp(g[i], g[i + 1] - 2 * cell, g[i + 1]);

  std::vector<Rational> bps, dens;
  for (std::size_t i = 0; i <= resolution; ++i) bps.push_back(Rational(static_cast<long long>(i)) * cell);
  for (std::size_t i = 0; i < resolution; ++i) dens.push_back((g[i + 1] - g[i]) / cell);
  return {CanonicalPair::from_mu(StepMeasure(std::move(bps), std::move(dens))), false, resolution};
}

/// Measures on [0,1] whose CDFs can be compared exactly.
using Measure01 = std::variant<StepMeasure, DiscreteMeasure>;

namespace detail {

inline std::vector<Rational> cdf_knots(const Measure01& m) {
  if (const auto* s = std::get_if<StepMeasure>(&m)) return s->breakpoints();
  std::vector<Rational> out;
  for (const auto& a : std::get<DiscreteMeasure>(m).atoms()) out.push_back(a.location);
  return out;
}

/// CDF values at the sorted knots: (left limit, value) pairs.
inline std::vector<std::pair<Rational, Rational>> cdf_at_knots(const Measure01& m,
                                                               const std::vector<Rational>& knots) {
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(knots.size());
  if (const auto* s = std::get_if<StepMeasure>(&m)) {
    for (const auto& x : knots) {
      Rational v = s->cdf(x);
      out.emplace_back(v, v);
    }
    return out;
  }
  const auto& atoms = std::get<DiscreteMeasure>(m).atoms();
  Rational acc = 0;
  std::size_t a = 0;
  for (const auto& x : knots) {
    while (a < atoms.size() && atoms[a].location < x) acc += atoms[a++].mass;
    Rational left = acc;
    Rational right = acc;
    if (a < atoms.size() && atoms[a].location == x) right += atoms[a].mass;
    out.emplace_back(left, right);
  }
  return out;
}

}  // namespace detail

/// Kolmogorov distance sup_x |F_p(x) - F_q(x)|, evaluated exactly at every
/// breakpoint and atom (both CDFs are linear or constant in between).
inline double weak_distance(const Measure01& p, const Measure01& q) {
  auto knots = merge_breakpoints(detail::cdf_knots(p), detail::cdf_knots(q));
  auto fp = detail::cdf_at_knots(p, knots);
  auto fq = detail::cdf_at_knots(q, knots);
  Rational best = 0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    best = std::max({best, abs(fp[i].first - fq[i].first), abs(fp[i].second - fq[i].second)});
  }
  return to_double(best);
}

}  // namespace wordchain
