#include "isqeig/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace isq;
using oracle::kPi;

TEST_CASE("bessel_j closed forms") {
  CHECK(std::abs(bessel_j(0.5, kPi)) <= 1e-15);
  CHECK(bessel_j(0.5, kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.3, 0.0) == 0.0);
  double worst = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double x = 50.0 * i / 1000.0;
    worst = std::max(worst, std::abs(bessel_j(0.5, x) * std::sqrt(kPi * x / 2) - std::sin(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel_j against the ascending series") {
  CHECK(std::abs(bessel_j(2.0 / 3.0, 3.376) - oracle::bessel_series(2.0 / 3.0, 3.376)) <= 1e-12);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> nu(0.0, 30.0), x(0.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double n = nu(gen), t = x(gen);
    const double ref = oracle::bessel_series(n, t, 80);
    CHECK(std::abs(bessel_j(n, t) - ref) <= 1e-13 * std::max(1e-3, std::abs(ref)));
  }
}

TEST_CASE("bessel_j against the standard library in the oscillatory range") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> nu(0.0, 60.0), x(5.0, 400.0);
  for (int i = 0; i < 300; ++i) {
    const double n = nu(gen), t = x(gen);
    CHECK(std::abs(bessel_j(n, t) - std::cyl_bessel_j(n, t)) <= 1e-10);
  }
}

TEST_CASE("derivative and recurrence") {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> nu(1.0, 40.0), x(0.5, 200.0);
  for (int i = 0; i < 100; ++i) {
    const double n = nu(gen), t = x(gen);
    const BesselValue v = bessel_j_with_derivative(n, t);
    CHECK(v.j == doctest::Approx(bessel_j(n, t)).epsilon(1e-13));
    const double ref = 0.5 * (bessel_j(n - 1, t) - bessel_j(n + 1, t));
    CHECK(std::abs(v.dj - ref) <= 1e-12);
    // three-term recurrence J_{n-1} + J_{n+1} = 2n/x J_n
    CHECK(std::abs(bessel_j(n - 1, t) + bessel_j(n + 1, t) - 2 * n / t * v.j) <= 1e-12 * std::max(1.0, 2 * n / t));
  }
}

TEST_CASE("lanczos gamma") {
  double worst = 0.0;
  for (int i = 1; i < 250; ++i) {
    const double x = i - 0.37;
    if (x <= 0) continue;
    if (x < 170) worst = std::max(worst, std::abs(lanczos_gamma(x) / std::tgamma(x) - 1.0));
    worst = std::max(worst, std::abs(lanczos_log_gamma(x) - std::lgamma(x)) / std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("bessel zeros") {
  CHECK(bessel_zero(0.5, 1) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(bessel_zero(0.5, 3) == doctest::Approx(3 * kPi).epsilon(1e-15));
  CHECK(bessel_zero(0.0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-15));
  const double nu = std::sqrt(5.0) / 2.0;
  const double j = bessel_zero(nu, 1);
  const double ref = oracle::bisect([&](double t) { return oracle::bessel_series(nu, t, 80); }, 3.0, 4.5);
  CHECK(j == doctest::Approx(ref).epsilon(1e-14));
  CHECK(j * j == doctest::Approx(15.92051342647588).epsilon(1e-14));

  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> nd(0.0, 100.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double n = nd(gen);
    const std::vector<double> z = bessel_zeros(n, 25);
    for (int k = 0; k < 25; ++k) {
      CHECK(z[k] == doctest::Approx(bessel_zero(n, k + 1)).epsilon(1e-15));
      // simple zero: sign change across it
      const double h = 1e-9 * z[k];
      CHECK(bessel_j(n, z[k] - h) * bessel_j(n, z[k] + h) < 0.0);
      if (k > 0) CHECK(z[k] - z[k - 1] > kPi * 0.9);
    }
    CHECK(z[0] > n);
  }
  // large index through the McMahon branch
  CHECK(std::abs(bessel_j(2.5, bessel_zero(2.5, 5000))) <= 1e-14);
}

TEST_CASE("reference spectra") {
  const Spectrum d1 = reference_spectrum(Geometry::ball(2), 0.5, 1);
  CHECK(d1[0] == doctest::Approx(9.869604401089358).epsilon(1e-15));
  const Spectrum d3 = reference_spectrum(Geometry::ball(2), 0.5, 3);
  CHECK(d3[1] == d3[2]);
  CHECK(d3[1] == doctest::Approx(std::pow(bessel_zero(std::sqrt(1.25), 1), 2)).epsilon(1e-15));
  CHECK(d3.tags()[1].n == 1);
  CHECK(d3.multiplicity_at(1) == 2);
  CHECK(reference_spectrum(Geometry::ball(3), 0.0, 1)[0] == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(reference_spectrum(Geometry::sector(2.0 / 3.0), 0.0, 1)[0] ==
        doctest::Approx(std::pow(bessel_zero(2.0 / 3.0, 1), 2)).epsilon(1e-15));
  CHECK(reference_spectrum(Geometry::sector(0.5), 0.5, 1)[0] ==
        doctest::Approx(std::pow(bessel_zero(std::sqrt(0.5), 1), 2)).epsilon(1e-15));

  // completeness against a brute-force enumeration
  const Spectrum s = reference_spectrum(Geometry::ball(3), 2.0 / 3.0, 60);
  std::vector<double> brute;
  for (int n = 0; n < 30; ++n) {
    const double b = std::sqrt(4.0 / 9.0 + (n + 0.5) * (n + 0.5));
    for (int k = 1; k <= 20; ++k) brute.insert(brute.end(), 2 * n + 1, std::pow(bessel_zero(b, k), 2));
  }
  std::sort(brute.begin(), brute.end());
  for (int i = 0; i < 60; ++i) CHECK(s[i] == doctest::Approx(brute[i]).epsilon(1e-14));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1]);
}

TEST_CASE("Weyl growth on the disk") {
  const Spectrum s = reference_spectrum(Geometry::ball(2), 0.0, 400);
  auto count = [&](double L) {
    int c = 0;
    for (double v : s.values()) c += v <= L;
    return c;
  };
  REQUIRE(s[s.size() - 1] > 800.0);
  const double ratio = static_cast<double>(count(800)) / count(200);
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(bessel_j(-0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(201.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_zero(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(reference_spectrum(Geometry::ball(2), -1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(reference_spectrum(Geometry::sector(0.3), 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(reference_spectrum(Geometry::ball(2), 0.0, 0), std::invalid_argument);
}
