#include <stdexcept>

#include "twistor/errors.hpp"
#include "twistor/verify.hpp"

namespace twistor {

RadialProfile RadialProfile::uniform(double r_max, int n, const std::function<Quad(const Quad&)>& f,
                                     std::string label) {
  if (n < 2 || !(r_max > 0.0)) throw std::invalid_argument("RadialProfile: need n >= 2 and r_max > 0");
  RadialProfile p;
  p.label = std::move(label);
  p.spacing = Spacing::uniform;
  const Quad h = Quad(r_max) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const Quad r = h * i;
    p.r_values.push_back(r);
    p.samples.push_back(f(r));
  }
  return p;
}

RadialProfile RadialProfile::stretched(double r_max, int n, double beta, const std::function<Quad(const Quad&)>& f,
                                       std::string label) {
  if (n < 2 || !(r_max > 0.0) || !(beta > 0.0)) throw std::invalid_argument("RadialProfile: bad stretched grid");
  RadialProfile p;
  p.label = std::move(label);
  p.spacing = Spacing::tanh_stretched;
  p.stretch = beta;
  const Quad tb = tanh(Quad(beta));
  for (int i = 0; i < n; ++i) {
    const Quad s = Quad(i) / (n - 1);
    const Quad r = Quad(r_max) * (1 - tanh(Quad(beta) * (1 - s)) / tb);
    p.r_values.push_back(r);
    p.samples.push_back(f(r));
  }
  return p;
}

void RadialProfile::validate(int min_points) const {
  if (r_values.size() != samples.size()) throw std::invalid_argument("RadialProfile: size mismatch");
  if (static_cast<int>(r_values.size()) < min_points) throw std::invalid_argument("RadialProfile: too few points");
  if (r_values.front() != 0) throw std::invalid_argument("RadialProfile: grid must start at r = 0");
  for (std::size_t i = 1; i < r_values.size(); ++i)
    if (!(r_values[i] > r_values[i - 1])) throw std::invalid_argument("RadialProfile: r must be strictly increasing");
}

std::vector<std::vector<Quad>> fornberg_weights(const Quad& z, const std::vector<Quad>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<Quad>> c(static_cast<std::size_t>(m + 1), std::vector<Quad>(x.size(), Quad(0)));
  Quad c1 = 1;
  Quad c4 = x[0] - z;
  c[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    Quad c2 = 1;
    const Quad c5 = c4;
    c4 = x[static_cast<std::size_t>(i)] - z;
    for (int j = 0; j < i; ++j) {
      const Quad c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// Node i of the even extension: negative indices mirror the grid through 0.
struct Extended {
  const std::vector<Quad>& r;
  const std::vector<Quad>& f;
  bool has_origin;

  Quad node(long i) const {
    if (i >= 0) return r[static_cast<std::size_t>(i)];
    const long j = has_origin ? -i : -i - 1;
    return -r[static_cast<std::size_t>(j)];
  }
  Quad value(long i) const {
    if (i >= 0) return f[static_cast<std::size_t>(i)];
    const long j = has_origin ? -i : -i - 1;
    return f[static_cast<std::size_t>(j)];
  }
};

}  // namespace

std::vector<Quad> radial_laplacian(const std::vector<Quad>& r, const std::vector<Quad>& f, int half_width) {
  if (half_width < 1) throw std::invalid_argument("radial_laplacian: half_width must be >= 1");
  if (r.size() != f.size()) throw std::invalid_argument("radial_laplacian: size mismatch");
  const long n = static_cast<long>(r.size());
  const Extended ext{r, f, r.front() == 0};
  std::vector<Quad> out;
  for (long i = 0; i + half_width < n; ++i) {
    std::vector<Quad> nodes;
    for (long k = i - half_width; k <= i + half_width; ++k) nodes.push_back(ext.node(k));
    const auto w = fornberg_weights(r[static_cast<std::size_t>(i)], nodes, 2);
    Quad d1 = 0, d2 = 0;
    for (long k = 0; k <= 2 * half_width; ++k) {
      const Quad v = ext.value(i - half_width + k);
      d1 += w[1][static_cast<std::size_t>(k)] * v;
      d2 += w[2][static_cast<std::size_t>(k)] * v;
    }
    const Quad& ri = r[static_cast<std::size_t>(i)];
    out.push_back(ri == 0 ? Quad(4 * d2) : Quad(d2 + 3 * d1 / ri));
  }
  return out;
}

std::vector<Quad> biharmonic_radial_all(const RadialProfile& profile, int half_width) {
  profile.validate(4 * half_width + 1);
  const std::vector<Quad> lap = radial_laplacian(profile.r_values, profile.samples, half_width);
  const std::vector<Quad> r(profile.r_values.begin(), profile.r_values.begin() + static_cast<long>(lap.size()));
  return radial_laplacian(r, lap, half_width);
}

double biharmonic_radial(const RadialProfile& profile, double r, const StencilOptions& options) {
  const auto fine = biharmonic_radial_all(profile, options.half_width);
  long index = -1;
  for (std::size_t i = 0; i < profile.r_values.size(); ++i) {
    if (abs(profile.r_values[i] - Quad(r)) <= 1e-12 * (1 + abs(Quad(r)))) {
      index = static_cast<long>(i);
      break;
    }
  }
  if (index < 0) throw std::invalid_argument("biharmonic_radial: r is not a grid node");
  if (index >= static_cast<long>(fine.size()))
    throw std::invalid_argument("biharmonic_radial: r is too close to the end of the grid for the stencil");
  const Quad value = fine[static_cast<std::size_t>(index)];
  if (!options.check_consistency) return static_cast<double>(value);

  // Same stencil on the nodes with the parity of r; even reflection still applies.
  RadialProfile coarse;
  for (std::size_t i = static_cast<std::size_t>(index % 2); i < profile.size(); i += 2) {
    coarse.r_values.push_back(profile.r_values[i]);
    coarse.samples.push_back(profile.samples[i]);
  }
  const bool has_origin = coarse.r_values.front() == 0;
  const long coarse_index = index / 2;
  std::vector<Quad> lap = radial_laplacian(coarse.r_values, coarse.samples, options.half_width);
  if (!has_origin && lap.empty()) throw GridTooCoarse("biharmonic_radial: subgrid too short");
  const std::vector<Quad> r2(coarse.r_values.begin(), coarse.r_values.begin() + static_cast<long>(lap.size()));
  const std::vector<Quad> coarse_values = radial_laplacian(r2, lap, options.half_width);
  if (coarse_index >= static_cast<long>(coarse_values.size()))
    throw GridTooCoarse("biharmonic_radial: coarse stencil does not reach r");
  const Quad other = coarse_values[static_cast<std::size_t>(coarse_index)];

  // Natural scale of Δ²f is max|f|/r_max⁴.
  Quad fmax = 0;
  for (const auto& s : profile.samples) fmax = std::max(fmax, Quad(abs(s)));
  const Quad rmax = profile.r_values.back();
  const Quad floor = Quad(1e-12) * fmax / (rmax * rmax * rmax * rmax);
  if (abs(value - other) > Quad(options.consistency_rel_tol) * abs(value) + floor)
    throw GridTooCoarse("biharmonic_radial: stencil results on the grid and its coarsening disagree at r = " +
                        std::to_string(r));
  return static_cast<double>(value);
}

}  // namespace twistor
