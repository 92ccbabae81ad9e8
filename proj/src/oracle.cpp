#include "hopflax/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hopflax {
namespace oracle {

namespace {

// Visit every grid point; the callback also learns whether the point lies
// on the boundary of the grid.
template <typename F>
void scan_grid(const GridSearchSpec& spec, F&& visit) {
  const int dim = static_cast<int>(spec.center.size());
  const int half = static_cast<int>(std::round(spec.radius / spec.spacing));
  std::vector<int> idx(dim, -half);
  Vec point(dim);
  for (;;) {
    bool boundary = false;
    for (int k = 0; k < dim; ++k) {
      point[k] = spec.center[k] + idx[k] * spec.spacing;
      boundary = boundary || idx[k] == -half || idx[k] == half;
    }
    visit(point, boundary);
    int k = 0;
    while (k < dim && ++idx[k] > half) idx[k++] = -half;
    if (k == dim) break;
  }
}

}  // namespace

HopfLaxResult classical_hopf_lax(
    const std::function<double(const Vec&)>& hamiltonian,
    const std::function<double(const Vec&)>& initial, const Vec& x, double t,
    const GridSearchSpec& outer, const GridSearchSpec& inner) {
  HopfLaxResult result;
  result.value = std::numeric_limits<double>::infinity();
  scan_grid(outer, [&](const Vec& xs, bool) {
    double sup = -std::numeric_limits<double>::infinity();
    bool sup_on_boundary = false;
    const double gx = initial(xs);
    const Vec diff = x - xs;
    scan_grid(inner, [&](const Vec& ps, bool boundary) {
      const double val = gx + diff.dot(ps) - t * hamiltonian(ps);
      if (val > sup) {
        sup = val;
        sup_on_boundary = boundary;
      }
    });
    if (sup_on_boundary) {
      ++result.excluded;
      return;
    }
    if (sup < result.value) {
      result.value = sup;
      result.argmin = xs;
      result.feasible = true;
    }
  });
  return result;
}

Vec prox_grid_oracle(const std::function<double(const Vec&)>& objective,
                     const GridSearchSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  Vec argmin = spec.center;
  scan_grid(spec, [&](const Vec& p, bool) {
    const double val = objective(p);
    if (val < best) {
      best = val;
      argmin = p;
    }
  });
  return argmin;
}

Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& x, double h) {
  Vec g(x.size());
  for (int k = 0; k < x.size(); ++k) {
    Vec hi = x, lo = x;
    hi[k] += h;
    lo[k] -= h;
    g[k] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

}  // namespace oracle
}  // namespace hopflax
