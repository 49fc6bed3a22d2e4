#include "ksep/linsep.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <thread>

#include "ksep/enumeration.hpp"

namespace ksep {

namespace {

using Q = boost::multiprecision::cpp_rational;

// Margin LP over variables (w+, w-, th+, th-, eps), all >= 0:
//   maximize eps
//   per true vertex v:   -(w.v) + th + eps <= 0    (w.v >= th + eps)
//   per false vertex v:    w.v  - th + eps <= 0    (w.v <= th - eps)
//   w+_i, w-_i <= 1; th+, th- <= n+1; eps <= 1
// with w = w+ - w-, th = th+ - th-. b >= 0 throughout, so the all-slack
// basis is feasible and a single primal phase suffices. Bland's rule keeps
// the (heavily degenerate) pivoting finite. Separable iff the optimum is
// positive; any separating plane can be rescaled into the box, so the
// bounds cost no generality.
bool separable_lp(int n, std::uint32_t truth) {
  const int pts = 1 << n;
  const int nv = 2 * n + 3;
  const int m = pts + 2 * n + 3;
  const int cols = nv + m + 1;  // structural + slack + rhs

  std::vector<std::vector<Q>> t(m, std::vector<Q>(cols, 0));
  std::vector<Q> cost(cols, 0);
  cost[2 * n + 2] = 1;  // eps

  int r = 0;
  for (int v = 0; v < pts; ++v, ++r) {
    const int sign = ((truth >> v) & 1) ? -1 : 1;
    for (int i = 0; i < n; ++i) {
      if (!((v >> (n - 1 - i)) & 1)) continue;
      t[r][i] = sign;
      t[r][n + i] = -sign;
    }
    t[r][2 * n] = -sign;
    t[r][2 * n + 1] = sign;
    t[r][2 * n + 2] = 1;
  }
  for (int i = 0; i < 2 * n; ++i, ++r) {
    t[r][i] = 1;
    t[r][cols - 1] = 1;
  }
  t[r][2 * n] = 1;
  t[r][cols - 1] = n + 1;
  ++r;
  t[r][2 * n + 1] = 1;
  t[r][cols - 1] = n + 1;
  ++r;
  t[r][2 * n + 2] = 1;
  t[r][cols - 1] = 1;
  ++r;
  for (int i = 0; i < m; ++i) t[i][nv + i] = 1;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = nv + i;

  Q z = 0;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j)
      if (cost[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) return false;  // optimal, eps stayed at 0

    int leave = -1;
    Q best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Q ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("unbounded margin LP");  // eps <= 1 forbids this

    Q piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Q factor = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    Q cf = cost[enter];
    z += cf * t[leave][cols - 1];
    for (int j = 0; j < cols; ++j) cost[j] -= cf * t[leave][j];
    basis[leave] = enter;

    if (z > 0) return true;  // the margin is already positive; no need to maximize fully
  }
}

}  // namespace

bool linearly_separable(const BooleanFunction& f) {
  if (f.n() > 4) throw std::out_of_range("oracle sweeps are limited to n <= 4");
  return separable_lp(f.n(), static_cast<std::uint32_t>(f.to_index()));
}

std::vector<bool> linearly_separable_map(int n, int threads) {
  if (n < 1 || n > 4) throw std::out_of_range("oracle sweeps are limited to n <= 4");
  const std::uint64_t fn_count = std::uint64_t{1} << (std::uint64_t{1} << n);
  const std::uint32_t fn_mask = static_cast<std::uint32_t>(fn_count - 1);
  std::vector<char> result(fn_count, 0);

  // Swapping the classes negates (w, th): f and its complement agree, so
  // only the lexicographically smaller of each pair is solved.
  const int nthreads = resolve_thread_count(threads);
  auto worker = [&](int t) {
    for (std::uint64_t f = t; f < fn_count; f += nthreads) {
      std::uint32_t fc = static_cast<std::uint32_t>(~f) & fn_mask;
      if (fc < f) continue;
      result[f] = separable_lp(n, static_cast<std::uint32_t>(f)) ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();

  std::vector<bool> out(fn_count);
  for (std::uint64_t f = 0; f < fn_count; ++f) {
    std::uint32_t fc = static_cast<std::uint32_t>(~f) & fn_mask;
    out[f] = result[fc < f ? fc : f] != 0;
  }
  return out;
}

std::uint64_t count_linearly_separable(int n, int threads) {
  auto map = linearly_separable_map(n, threads);
  std::uint64_t count = 0;
  for (std::uint64_t f = 1; f + 1 < map.size(); ++f)  // skip the two constants
    if (map[f]) ++count;
  return count;
}

}  // namespace ksep
