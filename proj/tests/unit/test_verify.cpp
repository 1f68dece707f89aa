#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "twistor/errors.hpp"
#include "twistor/verify.hpp"

using namespace twistor;

namespace {

Quad log1p_sq(const Quad& r) { return boost::multiprecision::log1p(r * r); }

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("Fornberg weights are exact on polynomials") {
  const std::vector<Quad> nodes{-0.3, 0.0, 0.2, 0.5, 0.9, 1.4};
  const Quad z = 0.35;
  const auto w = fornberg_weights(z, nodes, 3);
  // p(x) = x⁵ has p''' = 60x²; six nodes reproduce degree 5 exactly.
  Quad d3 = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) d3 += w[3][j] * boost::multiprecision::pow(nodes[j], 5);
  CHECK(static_cast<double>(abs(d3 - 60 * z * z)) < 1e-25);
}

TEST_CASE("radial Laplacian of r² is 8") {
  const RadialProfile p = RadialProfile::uniform(2.0, 41, [](const Quad& r) { return r * r; });
  const auto lap = radial_laplacian(p.r_values, p.samples, 4);
  for (const Quad& v : lap) CHECK(static_cast<double>(v) == doctest::Approx(8.0).epsilon(1e-20));
}

TEST_CASE("biharmonic matches the autodiff oracle") {
  const RadialProfile p = RadialProfile::uniform(8.0, 400, log1p_sq);
  const StencilOptions opts;
  for (int i : {0, 10, 50, 150, 300}) {
    const double r = static_cast<double>(p.r_values[i]);
    const double expect = i == 0 ? -96.0 : oracle::radial_biharmonic([](const auto& x) { return log(1.0 + x * x); }, r);
    CAPTURE(r);
    CHECK(std::abs(biharmonic_radial(p, r, opts) - expect) < 1e-6 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("five-point stencil converges at fourth order") {
  const double r = 1.0;
  const double expect = oracle::radial_biharmonic([](const auto& x) { return exp(-x * x); }, r);
  StencilOptions opts;
  opts.half_width = 2;
  opts.check_consistency = false;
  auto error = [&](int n) {
    const RadialProfile p = RadialProfile::uniform(4.0, n, [](const Quad& x) { return exp(-x * x); });
    return std::abs(biharmonic_radial(p, r, opts) - expect);
  };
  const double coarse = error(41), fine = error(81);  // h = 0.1, 0.05; r = 1 is a node of both
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("coarse grid is detected") {
  const RadialProfile p = RadialProfile::uniform(8.0, 20, log1p_sq);
  CHECK_THROWS_AS(biharmonic_radial(p, static_cast<double>(p.r_values[8]), {}), GridTooCoarse);
}

TEST_CASE("non-node radius is rejected") {
  const RadialProfile p = RadialProfile::uniform(8.0, 400, log1p_sq);
  CHECK_THROWS(biharmonic_radial(p, 0.123456, {}));
}

TEST_CASE("malformed profiles are rejected") {
  RadialProfile p = RadialProfile::uniform(1.0, 10, log1p_sq);
  p.samples.pop_back();
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  RadialProfile q = RadialProfile::uniform(1.0, 10, log1p_sq);
  std::swap(q.r_values[3], q.r_values[4]);
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::uniform(1.0, 3, log1p_sq).validate(), std::invalid_argument);
}

TEST_CASE("stretched grids are monotone and end at r_max") {
  const RadialProfile p = RadialProfile::stretched(10.0, 100, 3.0, log1p_sq);
  CHECK(p.r_values.front() == 0);
  CHECK(static_cast<double>(p.r_values.back()) == doctest::Approx(10.0));
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.r_values[i] > p.r_values[i - 1]);
}

TEST_CASE("theorem holds with series and analytic T") {
  for (auto mode : {TransgressionMode::series, TransgressionMode::analytic})
    for (double rho : {1.0, 2.0}) {
      TheoremConfig c;
      c.mode = mode;
      c.rho = rho;
      c.r_max = 8.0 * rho;
      const VerificationReport r = verify_theorem(c);
      CHECK(r.all_passed());
      CHECK(r.checks().size() >= 392);
      CHECK(r.max_residual("theorem[") < (mode == TransgressionMode::series ? 1e-3 : 1e-6));
      CHECK(r.max_residual("anchor_r0") < 1e-6);
    }
}

TEST_CASE("wrong orientation sign fails") {
  TheoremConfig c;
  c.sigma = 1;
  CHECK_FALSE(verify_theorem(c).all_passed());
}

TEST_CASE("corrupted epsilon fails") {
  TheoremConfig c;
  c.eps = Epsilon::corrupted();
  CHECK_FALSE(verify_theorem(c).all_passed());
}

TEST_CASE("bad theorem configuration") {
  TheoremConfig c;
  c.r_max = 2.0;
  CHECK_THROWS_AS(verify_theorem(c), std::invalid_argument);
  c = {};
  c.n = 10;
  CHECK_THROWS_AS(verify_theorem(c), std::invalid_argument);
}

TEST_CASE("four-dimensional stencil agrees with the radial reduction") {
  const Vec4 x(0.3, -0.2, 0.5, 0.1);
  const double expect = oracle::radial_biharmonic(oracle::Transgression{1.0}, x.norm());
  CHECK(static_cast<double>(biharmonic_4d_closed_form(x, 1.0, 0.02)) == doctest::Approx(expect).epsilon(1e-6));
}

}
