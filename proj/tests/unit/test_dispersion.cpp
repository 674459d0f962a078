#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qosp/dispersion.hpp"

using namespace qosp;

TEST_CASE("refractive_index of diamond") {
  const auto diamond = diamond_sellmeier();

  SUBCASE("index at 800 nm matches tabulated data") {
    const double n = refractive_index(diamond, 800.0);
    CHECK(std::abs(n - 2.4000608021041216) < 1e-9); // frozen model value
    CHECK(n > 2.38);
    CHECK(n < 2.41);
  }

  SUBCASE("strictly decreasing and finite across the working band") {
    double prev = refractive_index(diamond, 690.0);
    CHECK(std::isfinite(prev));
    for (double lam = 690.5; lam <= 860.0; lam += 0.5) {
      const double n = refractive_index(diamond, lam);
      CHECK(std::isfinite(n));
      CHECK(n < prev);
      prev = n;
    }
  }

  SUBCASE("no extrapolation outside the validity window") {
    CHECK_THROWS_AS(refractive_index(diamond, 100.0), DomainError);
    CHECK_THROWS_AS(refractive_index(diamond, 5000.0), DomainError);
  }
}

TEST_CASE("wavevector") {
  SUBCASE("constant-index model reproduces 2 pi n / lambda") {
    // n = 2.39 for all wavelengths: single pole at zero, strength n^2 - 1.
    const SellmeierModel flat{{{2.39 * 2.39 - 1.0, 0.0}}, 200.0, 2000.0};
    const double k = wavevector(flat, 800.0);
    CHECK(std::abs(k - 1.8771016105199017e7) / 1.8771016105199017e7 < 1e-12);
  }

  SUBCASE("vanishing strength gives the vacuum wavevector") {
    const SellmeierModel vacuum{{{1e-30, 0.0}}, 200.0, 2000.0};
    const double k = wavevector(vacuum, 500.0);
    CHECK(std::abs(k - 2.0 * std::numbers::pi / 500e-9) / k < 1e-12);
  }

  SUBCASE("strictly decreasing in wavelength") {
    const auto diamond = diamond_sellmeier();
    double prev = wavevector(diamond, 690.0);
    for (double lam = 691.0; lam <= 860.0; lam += 1.0) {
      const double k = wavevector(diamond, lam);
      CHECK(k < prev);
      prev = k;
    }
  }
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(1e-5) - (1.0 - 1e-10 / 6.0)) < 1e-18);
  CHECK(std::abs(sinc(std::numbers::pi)) < 1e-15);
  for (double x : {0.3, 1.7, 4.4}) CHECK(sinc(x) == sinc(-x));
}

TEST_CASE("phase_mismatch") {
  const auto diamond = diamond_sellmeier();
  const ExperimentConfig cfg;

  SUBCASE("zero detuning cancels exactly") {
    const auto pm = phase_mismatch(diamond, cfg.write_pulse.center_nm, cfg);
    CHECK(pm.delta_k == 0.0);
    CHECK(pm.sinc2 == 1.0);
  }

  SUBCASE("frozen fixture at 792 nm") {
    const auto pm = phase_mismatch(diamond, 792.0, cfg);
    CHECK(std::abs(pm.delta_k - (-1116.1732553094625)) < 1e-6);
    CHECK(std::abs(pm.sinc2 - 0.5582336297874662) < 1e-12);
  }

  SUBCASE("frozen fixture at 808 nm") {
    const auto pm = phase_mismatch(diamond, 808.0, cfg);
    CHECK(std::abs(pm.delta_k - 1082.2239042930305) < 1e-6);
    CHECK(std::abs(pm.sinc2 - 0.5792997784628892) < 1e-12);
  }

  SUBCASE("sign change across zero detuning") {
    CHECK(phase_mismatch(diamond, 797.0, cfg).delta_k < 0.0);
    CHECK(phase_mismatch(diamond, 803.0, cfg).delta_k > 0.0);
  }

  SUBCASE("first envelope zero sits at |delta_k| L / 2 = pi") {
    const auto pm = phase_mismatch(diamond, 780.8461492756978, cfg);
    CHECK(std::abs(std::abs(pm.delta_k) * cfg.crystal_length_m / 2.0 - std::numbers::pi) < 1e-6);
    CHECK(pm.sinc2 < 1e-18);
  }

  SUBCASE("delta_k field consistency") {
    const auto pm = phase_mismatch(diamond, 795.5, cfg);
    CHECK(pm.delta_k == pm.k_input - pm.k_output + pm.k_read - pm.k_write);
    CHECK(pm.sinc2 >= 0.0);
    CHECK(pm.sinc2 <= 1.0);
  }
}

TEST_CASE("conversion_efficiency") {
  const auto diamond = diamond_sellmeier();
  const ExperimentConfig cfg;

  CHECK(conversion_efficiency(diamond, 800.0, cfg) == cfg.eta_fc0);
  CHECK(std::abs(conversion_efficiency(diamond, 792.0, cfg) - 0.006140569927662127) < 1e-12);
  CHECK(conversion_efficiency(diamond, 780.8461492756978, cfg) < 1e-18);

  SUBCASE("bounded by the zero-detuning efficiency") {
    for (double read = 784.0; read <= 812.0; read += 0.5) {
      const double eta = conversion_efficiency(diamond, read, cfg);
      CHECK(eta >= 0.0);
      if (read != 800.0) CHECK(eta < cfg.eta_fc0);
    }
  }
}
