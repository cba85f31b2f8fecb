#pragma once

#include <cmath>
#include <span>

namespace ktuple {

/// Neumaier's variant of Kahan summation. The running compensation is kept
/// separately so partial sums from independent blocks can be merged without
/// discarding it.
class compensated_sum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  void merge(const compensated_sum &other) {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise tree merge of block partials in index order; the grouping depends
/// only on the number of blocks.
inline compensated_sum tree_merge(std::span<const compensated_sum> parts) {
  if (parts.empty())
    return {};
  if (parts.size() == 1)
    return parts.front();
  const std::size_t half = parts.size() / 2;
  compensated_sum left = tree_merge(parts.first(half));
  left.merge(tree_merge(parts.subspan(half)));
  return left;
}

} // namespace ktuple
