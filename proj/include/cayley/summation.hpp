// Compensated floating-point accumulation.
//
// The series and measure estimators add up to a few hundred million terms of
// wildly different magnitudes; plain += loses the small tail.  Kahan-Babuska
// (Neumaier's variant) keeps a running compensation term, and the final value
// is deterministic for a fixed order of additions.

#pragma once

#include <cmath>

namespace cayley {

class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace cayley
