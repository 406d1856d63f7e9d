#include "razak/traces.hpp"

#include <algorithm>
#include <cmath>

#include "razak/parallel.hpp"

namespace razak {

Trace::Trace(const BuildingBlock& block, const std::vector<Atom>& atoms) : block_(block) {
  for (const auto& atom : atoms) add(atom.t, atom.weight);
}

Trace Trace::point(const BuildingBlock& block, double t, double weight) {
  Trace tau(block);
  tau.add(t, weight);
  return tau;
}

void Trace::add(double t, double weight) {
  if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
    throw Error(ErrorKind::DimensionMismatch, "atom location outside [0,1]");
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    throw Error(ErrorKind::DimensionMismatch, "atom weight must be finite and non-negative");
  }
  if (weight == 0.0) return;
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const Atom& atom, double v) { return atom.t < v; });
  if (it != atoms_.end() && it->t == t) {
    it->weight += weight;
  } else {
    atoms_.insert(it, Atom{t, weight});
  }
}

double Trace::total_mass() const {
  double mass = 0.0;
  for (const auto& atom : atoms_) mass += atom.weight;
  return mass;
}

double eval_trace(const Trace& tau, const BlockElement& e) {
  if (!(tau.block() == e.block())) {
    throw Error(ErrorKind::ContextMismatch,
                "trace on " + to_string(tau.block()) + " evaluated on an element of " + to_string(e.block()));
  }
  const auto& atoms = tau.atoms();
  std::vector<double> terms(atoms.size());
  parallel_for(atoms.size(), [&](std::size_t i) {
    terms[i] = atoms[i].weight * normalized_trace(e.at(atoms[i].t));
  });
  double sum = 0.0;
  for (double v : terms) sum += v;
  return sum;
}

Trace pushforward_trace(const ConnectingMap& phi, const Trace& tau) {
  if (!(tau.block() == phi.target)) {
    throw Error(ErrorKind::ContextMismatch, "trace does not live on the target of the map");
  }
  Trace out(phi.source);
  const double m = static_cast<double>(phi.multiplicity());
  for (const auto& atom : tau.atoms()) {
    for (const auto& xi : phi.branches) out.add(xi(atom.t), atom.weight / m);
  }
  return out;
}

double trace_norm(const Trace& tau) {
  const double at_zero = static_cast<double>(tau.block().a) / static_cast<double>(tau.block().a + 1);
  double norm = 0.0;
  for (const auto& atom : tau.atoms()) norm += atom.weight * (atom.t == 0.0 ? at_zero : 1.0);
  return norm;
}

double trace_norm_at(const Trace& tau, int n) {
  if (n < 1) throw Error(ErrorKind::ConfigError, "root order must be >= 1");
  // h is diagonal, so h^{1/n} is diag(1_n ×a, t^{1/n}·1_n) in closed form.
  const BuildingBlock& b = tau.block();
  const double inv = 1.0 / static_cast<double>(n);
  double value = 0.0;
  for (const auto& atom : tau.atoms()) {
    const double root = atom.t == 0.0 ? 0.0 : std::pow(atom.t, inv);
    value += atom.weight * (static_cast<double>(b.a) + root) / static_cast<double>(b.a + 1);
  }
  return value;
}

double trace_norm_extrapolated(const Trace& tau, int n) {
  return 2.0 * trace_norm_at(tau, 2 * n) - trace_norm_at(tau, n);
}

RealGridFunction affine_image(const BlockElement& e) {
  if (hermitian_defect(e.boundary()) > kHermitianTol) {
    throw Error(ErrorKind::NotSelfAdjoint, "boundary datum is not self-adjoint");
  }
  std::vector<double> values(e.grid_size() + 1);
  std::vector<char> bad(values.size(), 0);
  parallel_for(values.size(), [&](std::size_t j) {
    const CMatrix f = e.sample(j);
    bad[j] = hermitian_defect(f) > kHermitianTol;
    values[j] = normalized_trace(f);
  });
  if (std::find(bad.begin(), bad.end(), 1) != bad.end()) {
    throw Error(ErrorKind::NotSelfAdjoint, "element is not self-adjoint on the grid");
  }
  return RealGridFunction(e.grid_size(), std::move(values));
}

OscillationGap oscillation_gap(const ConnectingMap& phi, const BlockElement& f) {
  if (!(f.block() == phi.source)) {
    throw Error(ErrorKind::ContextMismatch, "element does not live on the source of the map");
  }
  const std::size_t n = phi.grid_size;
  const std::size_t refine = std::size_t{1} << phi.depth;
  const std::size_t fine = n * refine;

  // g(t) = tr(f(t)) on the fine grid, where every branch value lands.
  std::vector<double> g(fine + 1);
  parallel_for(fine + 1, [&](std::size_t j) {
    g[j] = normalized_trace(f.at(RealGridFunction::point(fine, j)));
  });
  auto g_at = [&](double t) {
    const double scaled = t * static_cast<double>(fine);
    const double idx = std::round(scaled);
    if (idx == scaled) return g[static_cast<std::size_t>(idx)];
    return normalized_trace(f.at(t));
  };

  std::vector<double> values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Trace tau = pushforward_trace(phi, Trace::point(phi.target, RealGridFunction::point(n, j)));
    double v = 0.0;
    for (const auto& atom : tau.atoms()) v += atom.weight * g_at(atom.t);
    values[j] = v;
  }

  OscillationGap out;
  out.min_value = *std::min_element(values.begin(), values.end());
  out.max_value = *std::max_element(values.begin(), values.end());
  out.gap = out.max_value - out.min_value;

  // ω_g(2^{−depth}): pairs of fine points at most `n` steps apart.
  std::vector<double> window(fine + 1, 0.0);
  parallel_for(fine + 1, [&](std::size_t s) {
    double worst = 0.0;
    for (std::size_t t = s + 1; t <= std::min(fine, s + n); ++t) worst = std::max(worst, std::abs(g[t] - g[s]));
    window[s] = worst;
  });
  out.modulus = *std::max_element(window.begin(), window.end());
  return out;
}

}  // namespace razak
