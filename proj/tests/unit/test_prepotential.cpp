#include <random>

#include "doctest.h"
#include "twistor/gauge.hpp"
#include "twistor/prepotential.hpp"

using namespace twistor;

namespace {

struct Fixture {
  std::mt19937_64 rng{15};
  double rho = 1.0;
  Prepotential vpp = instanton_prepotential(rho);
  Bridge bridge = instanton_bridge(rho);
  ConjugatePotential vmm = v_minus_minus(bridge);

  Vec4 point() {
    std::normal_distribution<double> g;
    return Vec4(g(rng), g(rng), g(rng), g(rng)) * rho;
  }
  HarmonicFrame frame() { return HarmonicFrame::random(rng); }
};

}  // namespace

TEST_SUITE("prepotential") {

TEST_CASE_FIXTURE(Fixture, "prepotential has charge two and is quadratic") {
  const HarmonicPolynomial v = vpp.at(point());
  CHECK(v.charge() == 2);
  CHECK(v.max_degree() == 2);
  CHECK(v.rank() == 2);
}

TEST_CASE_FIXTURE(Fixture, "bridge inverse") {
  for (int i = 0; i < 10; ++i) {
    const Vec4 x = point();
    const HarmonicFrame u = frame();
    CHECK((bridge(x, u) * bridge.inverse_at(x).evaluate(u) - Mat2c::Identity()).norm() < 1e-13);
  }
}

TEST_CASE_FIXTURE(Fixture, "flatness") {
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = point();
    CHECK(flatness_residual(vpp.at(x), vmm.at(x), frame()) < 1e-10);
  }
}

TEST_CASE_FIXTURE(Fixture, "flatness fails for mismatched points") {
  CHECK(flatness_residual(vpp.at(Vec4(1, 0, 0, 0)), vmm.at(Vec4(0, 1, 0, 0)), frame()) > 1e-3);
}

TEST_CASE_FIXTURE(Fixture, "analyticity") {
  for (int i = 0; i < 50; ++i) CHECK(analyticity_residual(vpp, point(), frame()) < 1e-8);
}

TEST_CASE_FIXTURE(Fixture, "bridge produces both potentials") {
  for (int i = 0; i < 20; ++i) {
    const Vec4 x = point();
    const HarmonicFrame u = frame();
    CHECK(bridge_residual(bridge, vpp, x, u) < 1e-12);
    CHECK(frame_relation_residual(bridge, x, u) < 1e-12);
    CHECK((bridge_potential(bridge, x, HarmonicOperator::Dmm) - vmm.at(x)).coefficient_norm() < 1e-14);
  }
}

TEST_CASE_FIXTURE(Fixture, "proof chain and covariant constancy") {
  for (int i = 0; i < 10; ++i) {
    const Vec4 x = point();
    const HarmonicFrame u = frame();
    CHECK(proof_chain_residual(vpp, vmm, x, u) < 1e-6);
    CHECK(covariant_constancy_residual(vpp, vmm, x, u) < 1e-5);
  }
}

TEST_CASE_FIXTURE(Fixture, "Bianchi identity") {
  double scale = 0.0;
  const double r = bianchi_residual(vmm, point(), frame(), 0.0, &scale);
  CHECK(scale > 0.0);
  CHECK(r < 1e-5 * scale);
}

TEST_CASE_FIXTURE(Fixture, "central curvature is frame independent and matches BPST") {
  const Mat2c e = Epsilon::standard().undotted_lower;
  for (int i = 0; i < 5; ++i) {
    const Vec4 x = point();
    const auto a = curvature_from_prepotential(vmm, x, frame());
    const auto b = curvature_from_prepotential(vmm, x, frame());
    const CurvatureTensor f = curvature([&](const Vec4& y) { return bpst_connection(y, rho); }, x);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        const double s = f.f_undotted[al][be].norm() + 1e-12;
        CHECK((a.central[al][be] - b.central[al][be]).norm() < 1e-6 * s);
        CHECK((a.central[al][be] - e * f.f_undotted[al][be] * e.inverse()).norm() < 1e-4 * s);
      }
  }
}

TEST_CASE_FIXTURE(Fixture, "reconstruction reproduces BPST after one alignment") {
  std::vector<GaugeField> rec, ref;
  for (int i = 0; i < 20; ++i) {
    const Vec4 x = point();
    rec.push_back(reconstruct_gauge_field(bridge, x));
    ref.push_back(bpst_connection(x, rho));
  }
  const Mat2c g = best_fit_conjugation(rec, ref);
  CHECK((g.adjoint() * g - Mat2c::Identity()).norm() < 1e-10);
  for (std::size_t i = 0; i < rec.size(); ++i) CHECK(rec[i].distance(ref[i].conjugated(g)) < 1e-5);
}

TEST_CASE_FIXTURE(Fixture, "scaling with rho") {
  const Vec4 x(0.3, 0.1, -0.2, 0.4);
  const Prepotential big = instanton_prepotential(2.0);
  const HarmonicFrame u = frame();
  CHECK((big(2.0 * x, u) - vpp(x, u)).norm() < 1e-14);
}

}
