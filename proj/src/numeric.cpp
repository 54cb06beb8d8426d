#include "pellclass/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <thread>

namespace pellclass {

void NeumaierSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& body, std::size_t grain) {
  if (n == 0) return;
  if (grain == 0) grain = 1;
  const std::size_t blocks = (n + grain - 1) / grain;
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, blocks));
  if (workers == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b0 = blocks * w / workers;
    const std::size_t b1 = blocks * (w + 1) / workers;
    const std::size_t begin = b0 * grain;
    const std::size_t end = std::min(n, b1 * grain);
    if (begin >= end) continue;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

double deterministic_sum(std::size_t n, unsigned threads, const std::function<double(std::size_t)>& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin / kReductionBlock; b * kReductionBlock < end; ++b) {
      NeumaierSum s;
      const std::size_t stop = std::min(end, (b + 1) * kReductionBlock);
      for (std::size_t i = b * kReductionBlock; i < stop; ++i) s.add(term(i));
      partial[b] = s.value();
    }
  });
  NeumaierSum total;
  for (const double p : partial) total.add(p);
  return total.value();
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                           unsigned max_depth) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &error);
  return {value, error};
}

}  // namespace pellclass
