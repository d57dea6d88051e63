#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adversim/dyadic.hpp"

namespace adversim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainMismatchError : Error {
  using Error::Error;
};
struct BudgetError : Error {
  using Error::Error;
};

// z-coordinate for supervised/threshold games. Plain double everywhere except
// halving-adversary midpoints, which carry an exact dyadic so that ordering
// and comparator consistency survive thousands of bisections.
struct ZValue {
  double d = 0.0;
  std::shared_ptr<const Dyadic> exact;  // value in [0,1] when set

  ZValue() = default;
  ZValue(double v) : d(v) {}  // NOLINT: implicit by design
  explicit ZValue(std::shared_ptr<const Dyadic> e) : d(e->to_double()), exact(std::move(e)) {}

  double approx() const { return exact ? exact->to_double() : d; }

  int cmp(const ZValue& o) const {
    if (exact && o.exact) return exact->cmp(*o.exact);
    if (exact) return -cmp_double_vs_exact(o.d, *exact);
    if (o.exact) return cmp_double_vs_exact(d, *o.exact);
    return d < o.d ? -1 : (d > o.d ? +1 : 0);
  }
  bool operator<(const ZValue& o) const { return cmp(o) < 0; }
  bool operator==(const ZValue& o) const { return cmp(o) == 0; }

 private:
  static int cmp_double_vs_exact(double a, const Dyadic& b) {
    if (a < 0.0) return -1;
    if (a > 1.0) return +1;
    return Dyadic::from_double(a).cmp(b);
  }
};

// labeled example for the supervised protocol; y in {0,1}
struct Labeled {
  ZValue z;
  int y = 0;
};

// Domain point: finite-domain index, scalar, real vector, or labeled pair.
using Point = std::variant<int, double, std::vector<double>, Labeled>;

inline const char* point_kind(const Point& p) {
  switch (p.index()) {
    case 0: return "index";
    case 1: return "scalar";
    case 2: return "vector";
    default: return "labeled";
  }
}

inline int as_index(const Point& p) {
  if (auto* v = std::get_if<int>(&p)) return *v;
  throw DomainMismatchError(std::string("expected index point, got ") + point_kind(p));
}
inline double as_scalar(const Point& p) {
  if (auto* v = std::get_if<double>(&p)) return *v;
  throw DomainMismatchError(std::string("expected scalar point, got ") + point_kind(p));
}
inline const std::vector<double>& as_vector(const Point& p) {
  if (auto* v = std::get_if<std::vector<double>>(&p)) return *v;
  throw DomainMismatchError(std::string("expected vector point, got ") + point_kind(p));
}
inline const Labeled& as_labeled(const Point& p) {
  if (auto* v = std::get_if<Labeled>(&p)) return *v;
  throw DomainMismatchError(std::string("expected labeled point, got ") + point_kind(p));
}

// small vector helpers used across modules
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const std::vector<double>& a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace adversim
