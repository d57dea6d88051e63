#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adversim {

// Exact binary fraction in [0,1]. Stored MSB-first as fraction bits; supports
// arbitrarily deep nested halving (interval bisection appends one bit), which
// double arithmetic cannot represent past ~53 levels.
class Dyadic {
 public:
  Dyadic() = default;  // value 0

  static Dyadic from_double(double v) {
    if (std::isnan(v) || v < 0.0 || v > 1.0)
      throw std::invalid_argument("Dyadic::from_double expects v in [0,1]");
    Dyadic d;
    if (v == 1.0) {
      d.is_one_ = true;
      return d;
    }
    // binary expansion; any finite double in [0,1) terminates
    while (v != 0.0 && d.nbits_ < 1200) {
      v *= 2.0;
      int b = v >= 1.0 ? 1 : 0;
      if (b) v -= 1.0;
      d.append_bit(b);
    }
    d.trim();
    return d;
  }

  double to_double() const {
    if (is_one_) return 1.0;
    double acc = 0.0;
    int upto = nbits_ < 64 ? nbits_ : 64;
    for (int i = 0; i < upto; ++i)
      if (bit(i)) acc += std::ldexp(1.0, -(i + 1));
    return acc;
  }

  // numeric comparison: -1, 0, +1
  int cmp(const Dyadic& o) const {
    if (is_one_ || o.is_one_) {
      if (is_one_ && o.is_one_) return 0;
      return is_one_ ? +1 : -1;
    }
    int n = nbits_ > o.nbits_ ? nbits_ : o.nbits_;
    for (int i = 0; i < n; ++i) {
      int a = bit(i), b = o.bit(i);
      if (a != b) return a < b ? -1 : +1;
    }
    return 0;
  }

  bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
  bool operator==(const Dyadic& o) const { return cmp(o) == 0; }

  void append_bit(int b) {
    if (is_one_) throw std::logic_error("append_bit on Dyadic(1)");
    int limb = nbits_ / 64, pos = 63 - (nbits_ % 64);
    if (limb >= static_cast<int>(limbs_.size())) limbs_.push_back(0);
    if (b) limbs_[limb] |= (1ull << pos);
    ++nbits_;
  }

  int bit(int i) const {
    if (i >= nbits_) return 0;
    return (limbs_[i / 64] >> (63 - (i % 64))) & 1ull;
  }

  int nbits() const { return nbits_; }
  bool is_one() const { return is_one_; }

 private:
  void trim() {
    while (nbits_ > 0 && bit(nbits_ - 1) == 0) --nbits_;
    limbs_.resize((nbits_ + 63) / 64);
  }
  std::vector<uint64_t> limbs_;
  int nbits_ = 0;
  bool is_one_ = false;
};

}  // namespace adversim
