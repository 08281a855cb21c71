#include "isqeig/sector_solver.hpp"

#include "isqeig/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isq {

double beta_sector(int n, double c, double gamma) {
  if (n < 1) throw std::invalid_argument("beta_sector: n must be >= 1");
  return std::sqrt(c * c + gamma * gamma * n * n);
}

RadialMode assemble_sector(Method method, int n, double c, double gamma, int K) {
  if (!(gamma >= 0.5)) throw std::invalid_argument("sector: gamma must be >= 1/2");
  if (!(c >= 0.0)) throw std::invalid_argument("sector: c must be >= 0");
  if (K < 1) throw std::invalid_argument("sector: K must be >= 1");
  if (method != Method::I && method != Method::II)
    throw std::invalid_argument("sector: only methods I and II are available");
  RadialMode m;
  m.n = n;
  m.beta = beta_sector(n, c, gamma);
  m.multiplicity = 1;
  m.first_k = 1;
  RadialPair p = radial_closed_form(method == Method::I ? RadialBasis::Q : RadialBasis::P, m.beta, 2,
                                    1, K, std::numbers::pi / (2.0 * gamma));
  m.A = std::move(p.A);
  m.B = std::move(p.B);
  return m;
}

Spectrum solve_sector(const SectorProblem& p, int want) {
  if (want < 1) throw std::invalid_argument("solve_sector: count must be >= 1");
  if (p.N < 1) throw std::invalid_argument("solve_sector: N must be >= 1");
  if (static_cast<long>(want) > static_cast<long>(p.K) * p.N)
    throw std::invalid_argument("solve_sector: requested " + std::to_string(want) +
                                " eigenvalues, trial space has " + std::to_string(p.K * p.N));
  Spectrum all;
  for (int n = 1; n <= p.N; ++n) {
    const Spectrum s = solve_mode(assemble_sector(p.method, n, p.c, p.gamma, p.K), want);
    for (std::size_t i = 0; i < s.size(); ++i) all.add(s[i], s.tags()[i]);
  }
  all.sort();
  all.truncate(static_cast<std::size_t>(want));
  return all;
}

}  // namespace isq
