#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pellclass {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// Neumaier-compensated accumulator.
class NeumaierSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Block size used by every deterministic reduction in the library. Results
/// depend on this constant, never on the thread count.
inline constexpr std::size_t kReductionBlock = 4096;

/// Runs body(begin, end) over [0, n) split into contiguous chunks, one chunk per
/// worker. Chunk boundaries are multiples of `grain`.
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& body,
                     std::size_t grain = kReductionBlock);

/// Sum of term(i) for i in [0, n): each fixed block is summed with compensation,
/// block partials are then combined in block order. Bit-identical for any thread count.
double deterministic_sum(std::size_t n, unsigned threads, const std::function<double(std::size_t)>& term);

/// Adaptive Gauss-Kronrod integral of f over [a, b].
struct QuadratureResult {
  double value;
  double error;
};
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                           unsigned max_depth = 25);

}  // namespace pellclass
