#include <cmath>
#include <complex>

#include "doctest.h"
#include "nonparax/model.hpp"

using namespace nonparax;

namespace {
constexpr double kPi = GridSpec::pi;
}

TEST_CASE("parameter factories and conversions") {
  const PropagationParams p = PropagationParams::direct(0.25, 2.0);
  CHECK(p.epsilon == 0.25);
  CHECK(p.k0 == 2.0);
  CHECK(p.origin == PropagationParams::Origin::Direct);

  CHECK(epsilon_from_spatial(2.0, 5.0) == doctest::Approx(0.1).epsilon(1e-15));
  const PropagationParams s = PropagationParams::spatial(2.0, 5.0);
  CHECK(s.epsilon == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(s.origin == PropagationParams::Origin::Spatial);

  // -beta4/(3 beta2 T0^2): anomalous beta4 with normal beta2 gives eps > 0.
  CHECK(epsilon_from_temporal(1.0, -6.0, 2.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(epsilon_from_temporal(1.0, 6.0, 2.0) ==
        doctest::Approx(-0.5).epsilon(1e-15));
  const PropagationParams t = PropagationParams::temporal(1.0, -6.0, 2.0);
  CHECK(t.epsilon == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(PropagationParams::direct(-1e-6), DomainError);
  CHECK_THROWS_AS(PropagationParams::direct(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(PropagationParams::direct(std::nan("")), DomainError);
  // sign combination yielding eps < 0 is fine for the converter, not here
  CHECK_THROWS_AS(PropagationParams::temporal(1.0, 6.0, 2.0), DomainError);

  CHECK(beta_from_epsilon(p) == doctest::Approx(0.25 / 8.0).epsilon(1e-15));
  CHECK(minimal_length(0.04) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("grid layout and dual grid") {
  const GridSpec g(16, -4.0, 4.0);
  CHECK(g.dx() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.dk() == doctest::Approx(2.0 * kPi / 8.0).epsilon(1e-15));
  CHECK(g.k_nyquist() == doctest::Approx(kPi / 0.5).epsilon(1e-15));
  CHECK(g.x(0) == -4.0);
  CHECK(g.x(8) == doctest::Approx(0.0));
  // FFT ordering: 0, dk, ..., then negative half starting at -n/2 dk
  CHECK(g.k(0) == 0.0);
  CHECK(g.k(1) == doctest::Approx(g.dk()).epsilon(1e-15));
  CHECK(g.k(8) == doctest::Approx(-8.0 * g.dk()).epsilon(1e-15));
  CHECK(g.k(15) == doctest::Approx(-g.dk()).epsilon(1e-15));

  CHECK_THROWS_AS(GridSpec(1000, -1.0, 1.0), ConfigError);  // not a power of two
  CHECK_THROWS_AS(GridSpec(4, -1.0, 1.0), ConfigError);     // too small
  CHECK_THROWS_AS(GridSpec(16, 1.0, 1.0), ConfigError);     // empty interval
}

TEST_CASE("gaussian packet normalization and width") {
  const GridSpec g(2048, -40.0, 40.0);
  const ComplexField psi = gaussian_packet(g, 1.5, 2.0, 3.0);
  CHECK(norm_sq(psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rms(psi) == doctest::Approx(1.5).epsilon(1e-6));

  // centered spot value: (2 pi sigma^2)^(-1/4) at x = x0
  const ComplexField c = gaussian_packet(g, 1.0);
  const int mid = 1024;  // x = 0
  CHECK(c.grid.x(mid) == doctest::Approx(0.0));
  CHECK(std::abs(c.values[mid]) ==
        doctest::Approx(std::pow(2.0 * kPi, -0.25)).epsilon(1e-14));

  CHECK_THROWS_AS(gaussian_packet(g, 0.05), ConfigError);  // under-resolved
  CHECK_THROWS_AS(gaussian_packet(g, 1.0, 0.0, g.k_nyquist()), ConfigError);
}

TEST_CASE("transform round trip and Parseval") {
  const GridSpec g(1024, -30.0, 30.0);
  const ComplexField psi = gaussian_packet(g, 2.0, -1.0, 1.5);
  const SpectralField spec = to_spectral(psi);
  const ComplexField back = to_physical(spec);
  double err = 0.0;
  for (int i = 0; i < g.n; ++i)
    err = std::max(err, std::abs(back.values[i] - psi.values[i]));
  CHECK(err < 1e-14);
  CHECK(norm_sq(spec) ==
        doctest::Approx(2.0 * kPi * norm_sq(psi)).epsilon(1e-12));

  // forward convention: psi~(0) = integral of psi; for the centered carrier-
  // free Gaussian that is (2 pi sigma^2)^(-1/4) * 2 sigma sqrt(pi)
  const ComplexField c = gaussian_packet(g, 1.0);
  const SpectralField cs = to_spectral(c);
  const double expected = std::pow(2.0 * kPi, -0.25) * 2.0 * std::sqrt(kPi);
  CHECK(std::abs(cs.values[0] - Complex(expected, 0.0)) < 1e-12);
}
