#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twistor/errors.hpp"
#include "twistor/gauge.hpp"

using namespace twistor;

namespace {

Vec4 random_point(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  return Vec4(g(rng), g(rng), g(rng), g(rng)) * scale;
}

FieldFunction bpst(double rho, const Epsilon& eps = Epsilon::standard()) {
  return [rho, eps](const Vec4& x) { return bpst_connection(x, rho, eps); };
}

}  // namespace

TEST_SUITE("gauge") {

TEST_CASE("BPST connection is su(2) valued") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) CHECK(bpst_connection(random_point(rng, 1.0), 1.0).algebra_residual() < 1e-14);
}

TEST_CASE("cartesian round trip") {
  const GaugeField a = bpst_connection(Vec4(0.2, -0.4, 0.9, 1.1), 1.3);
  const GaugeField b = GaugeField::from_cartesian(a.cartesian(), a.point, a.rho);
  CHECK(a.distance(b) < 1e-15);
}

TEST_CASE("self-duality") {
  std::mt19937_64 rng(12);
  for (double rho : {0.5, 1.0, 2.0})
    for (int i = 0; i < 10; ++i) {
      const CurvatureTensor f = curvature(bpst(rho), random_point(rng, rho));
      CHECK(f.dotted_norm() < 1e-5 * f.undotted_norm());
      CHECK(f.undotted_symmetry_residual() < 1e-8 * f.undotted_norm());
    }
}

TEST_CASE("density matches the closed form") {
  CHECK(chern_density(curvature(bpst(1.0), Vec4::Zero())) == doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const Vec4 x = random_point(rng, 1.5);
    const double d = chern_density(curvature(bpst(1.5), x));
    CHECK(d == doctest::Approx(oracle::instanton_density(x.norm(), 1.5)).epsilon(1e-8));
  }
}

TEST_CASE("density is gauge invariant") {
  Mat2c g;
  g << cdouble(0.6, 0.0), cdouble(0.0, 0.8), cdouble(0.0, 0.8), cdouble(0.6, 0.0);
  const Vec4 x(0.4, 0.1, -0.7, 0.3);
  const double d0 = chern_density(curvature(bpst(1.0), x));
  const double d1 = chern_density(curvature([&](const Vec4& y) { return bpst_connection(y, 1.0).conjugated(g); }, x));
  CHECK(d1 == doctest::Approx(d0).epsilon(1e-10));
}

TEST_CASE("field strength is antisymmetric") {
  const auto f = field_strength(bpst(1.0), Vec4(0.3, 0.2, 0.1, -0.5), 1e-4, 1e-4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) CHECK((f[m][n] + f[n][m]).norm() < 1e-12);
}

TEST_CASE("oversized step is rejected") {
  CHECK_THROWS_AS(curvature(bpst(0.1), Vec4(0.05, 0.0, 0.0, 0.0), 0.2), StepTooLarge);
}

TEST_CASE("topological charge is one for every size") {
  for (double rho : {0.5, 1.0, 2.0}) {
    const ChargeResult q = topological_charge(rho, 100.0 * rho, 4000);
    CHECK(std::abs(q.charge - 1.0) < 1e-4);
  }
}

TEST_CASE("charge converges with the grid") {
  const double coarse = topological_charge(1.0, 100.0, 200).charge;
  const double fine = topological_charge(1.0, 100.0, 4000).charge;
  CHECK(std::abs(fine - 1.0) < std::abs(coarse - 1.0));
}

TEST_CASE("best fit conjugation recovers a known rotation") {
  std::mt19937_64 rng(14);
  Mat2c g;
  const double c = std::cos(0.7), s = std::sin(0.7);
  g << cdouble(c, 0.0), cdouble(0.0, s), cdouble(0.0, s), cdouble(c, 0.0);
  std::vector<GaugeField> a, b;
  for (int i = 0; i < 5; ++i) {
    b.push_back(bpst_connection(random_point(rng, 1.0), 1.0));
    a.push_back(b.back().conjugated(g));
  }
  const Mat2c fit = best_fit_conjugation(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].distance(b[i].conjugated(fit)) < 1e-12);
}

}
