#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

namespace logspiral::quad {

namespace detail {

// Kronrod 15-point abscissae and weights; even indices 1,3,5,7 are the
// embedded 7-point Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> x) { return std::abs(x); }

}  // namespace detail

template <class T>
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  T value{};
  double error = 0.0;
};

// One G7/K15 pair on [lo, hi]; error is |K15 - G7|.
template <class F>
auto gauss_kronrod_15(F&& f, double lo, double hi) {
  using T = decltype(f(lo));
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const T fc = f(c);
  T kronrod = fc * detail::kKronrodWeights[7];
  T gauss = fc * detail::kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * detail::kNodes[i];
    const T sum = f(c - dx) + f(c + dx);
    kronrod += sum * detail::kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * detail::kGaussWeights[i / 2];
  }
  return Segment<T>{lo, hi, kronrod * h, detail::magnitude((kronrod - gauss) * h)};
}

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int splits = 0;
  bool converged = false;
};

/// Globally adaptive G7/K15 integration over the union of consecutive
/// intervals given by breakpoints (sorted, at least two). Bisects the
/// segment with the largest error estimate until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|) or max_splits is reached.
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, double abs_tol, double rel_tol,
               int max_splits = 20000) {
  using T = decltype(f(breakpoints[0]));
  using Seg = Segment<T>;
  auto cmp = [](const Seg& x, const Seg& y) { return x.error < y.error; };
  std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> heap(cmp);

  Result<T> out;
  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    Seg s = gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  while (!heap.empty()) {
    if (err <= std::max(abs_tol, rel_tol * detail::magnitude(total))) {
      out.converged = true;
      break;
    }
    if (out.splits >= max_splits) break;
    Seg s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.lo + s.hi);
    if (!(mid > s.lo && mid < s.hi)) {
      // Interval has collapsed to adjacent doubles; accept its estimate.
      heap.push(Seg{s.lo, s.hi, s.value, 0.0});
      err -= s.error;
      ++out.splits;
      continue;
    }
    Seg left = gauss_kronrod_15(f, s.lo, mid);
    Seg right = gauss_kronrod_15(f, mid, s.hi);
    total += left.value + right.value - s.value;
    err += left.error + right.error - s.error;
    heap.push(left);
    heap.push(right);
    ++out.splits;
  }
  if (heap.empty()) out.converged = true;
  // Re-sum from the leaves to shed the drift of incremental updates.
  T resum{};
  double reerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    reerr += heap.top().error;
    heap.pop();
  }
  out.value = resum;
  out.error = reerr;
  return out;
}

template <class F>
auto integrate(F&& f, double lo, double hi, double abs_tol, double rel_tol, int max_splits = 20000) {
  const std::array<double, 2> bp{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(bp), abs_tol, rel_tol, max_splits);
}

}  // namespace logspiral::quad
