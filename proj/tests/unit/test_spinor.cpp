#include <random>

#include "doctest.h"
#include "twistor/frame.hpp"
#include "twistor/spinor.hpp"

using namespace twistor;

namespace {

Vec4 random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

}  // namespace

TEST_SUITE("spinor") {

TEST_CASE("epsilon conventions") {
  const Epsilon& e = Epsilon::standard();
  CHECK(e.consistency_residual() == 0.0);
  CHECK(e.undotted_lower(0, 1) == cdouble(1.0));
  CHECK(e.dotted_upper(0, 1) == cdouble(-1.0));
  CHECK((e.undotted_upper * e.undotted_lower - Mat2c::Identity()).norm() == 0.0);
  CHECK((e.dotted_upper * e.dotted_lower - Mat2c::Identity()).norm() == 0.0);
  CHECK(Epsilon::corrupted().consistency_residual() > 0.5);
}

TEST_CASE("bispinor norm and reality") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = random_point(rng);
    const Bispinor b = to_bispinor(x);
    CHECK(b.norm2() == doctest::Approx(x.squaredNorm()).epsilon(1e-14));
    CHECK(b.reality_residual() < 1e-15);
  }
}

TEST_CASE("coordinate maps are inverse") {
  CHECK((coordinate_map() * inverse_coordinate_map()).isApprox(Eigen::Matrix4cd::Identity(), 1e-15));
  const Vec4 x(0.3, -1.2, 0.7, 2.0);
  const Eigen::Vector4cd flat = coordinate_map() * x.cast<cdouble>();
  const Mat2c m = to_bispinor(x).entries;
  for (int a = 0; a < 2; ++a)
    for (int ad = 0; ad < 2; ++ad) CHECK(std::abs(flat(2 * a + ad) - m(a, ad)) < 1e-15);
}

TEST_CASE("raise and lower are inverse for every kind and chirality") {
  const Spinor s(cdouble(0.4, -1.0), cdouble(2.0, 0.5));
  for (auto kind : {IndexKind::dotted, IndexKind::undotted})
    for (auto chir : {Chirality::plus, Chirality::minus}) {
      CHECK((raise_index(lower_index(s, kind, chir), kind, chir) - s).norm() == 0.0);
      CHECK((lower_index(raise_index(s, kind, chir), kind, chir) - s).norm() == 0.0);
    }
}

TEST_CASE("harmonic projections") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = random_point(rng);
    const HarmonicFrame u = HarmonicFrame::random(rng);
    const Bispinor b = to_bispinor(x);
    const Spinor pu = project(b, u, Chirality::plus, true), pl = project(b, u, Chirality::plus, false);
    const Spinor mu = project(b, u, Chirality::minus, true);
    CHECK(std::abs(contract(pl, pu)) < 1e-14 * x.squaredNorm());
    CHECK(std::abs(contract(pl, mu) - x.squaredNorm()) < 1e-13 * x.squaredNorm());
  }
}

TEST_CASE("corrupted epsilon breaks the projection identity") {
  const Epsilon bad = Epsilon::corrupted();
  const Vec4 x(0.3, 0.4, -0.5, 0.6);
  const HarmonicFrame u(cdouble(0.6, 0.0), cdouble(0.0, 0.8));
  const Bispinor b = to_bispinor(x);
  const cdouble v = contract(project(b, u, Chirality::plus, false, bad), project(b, u, Chirality::minus, true, bad));
  CHECK(std::abs(v - x.squaredNorm()) > 1e-3);
}

}

TEST_SUITE("frame") {

TEST_CASE("normalization and reality") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const HarmonicFrame u = HarmonicFrame::random(rng);
    CHECK(u.normalization_residual() < 1e-15);
    CHECK(u.reality_residual() < 1e-15);
    CHECK(u.generator(0) == u.u_plus()(0));
    CHECK(u.generator(3) == u.u_minus()(1));
  }
}

TEST_CASE("constructor normalizes") {
  const HarmonicFrame u(cdouble(3.0), cdouble(0.0, 4.0));
  CHECK(u.u_plus().norm() == doctest::Approx(1.0));
  CHECK(u.u_minus()(0) == std::conj(u.u_plus()(1)));
  CHECK(u.u_minus()(1) == -std::conj(u.u_plus()(0)));
}

TEST_CASE("angle chart") {
  const HarmonicFrame u = HarmonicFrame::from_angles(0.3, 1.0, -2.0);
  CHECK(std::abs(u.u_plus()(0) - std::polar(std::cos(0.3), 1.0)) < 1e-15);
  CHECK(std::abs(u.u_plus()(1) - std::polar(std::sin(0.3), -2.0)) < 1e-15);
}

TEST_CASE("random frames are Haar distributed") {
  std::mt19937_64 rng(4);
  double a2 = 0.0, a4 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(HarmonicFrame::random(rng).u_plus()(0));
    a2 += p;
    a4 += p * p;
  }
  // E|a|² = 1/2, E|a|⁴ = 1/3
  CHECK(a2 / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(a4 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

}
