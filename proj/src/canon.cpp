#include "modwig/canon.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "modwig/errors.hpp"

namespace modwig::canon {

std::string format(double x) {
  if (!std::isfinite(x)) throw Error("cannot canonicalize a non-finite value");
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double snap(double x) { return std::strtod(format(x).c_str(), nullptr); }

Complex snap(Complex z) { return Complex(snap(z.real()), snap(z.imag())); }

void snap_in_place(Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = snap(m(i, j));
}

std::string element_key(const ModuleElement& f) {
  const Mat& s = f.slots();
  std::string key =
      std::to_string(f.dim()) + "x" + std::to_string(f.slot_count());
  for (Index k = 0; k < s.cols(); ++k) {
    for (Index i = 0; i < s.rows(); ++i) {
      key += (i == 0) ? '|' : ';';
      key += format(s(i, k).real());
      key += ',';
      key += format(s(i, k).imag());
    }
  }
  return key;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace modwig::canon
