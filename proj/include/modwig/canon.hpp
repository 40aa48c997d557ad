#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "modwig/hmodule.hpp"
#include "modwig/types.hpp"

namespace modwig::canon {

/// Formats a double with 12 significant digits (the canonical precision for
/// documents and table keys). Negative zero collapses to zero.
std::string format(double x);

/// Rounds through the canonical text form: parse(format(x)). Idempotent.
double snap(double x);
Complex snap(Complex z);

/// Snaps every entry of a matrix in place.
void snap_in_place(Mat& m);

/// Canonical text key of a module element: shape header plus every entry in
/// slot-major order at canonical precision. Bit-identical keys identify
/// bit-identical post-canonicalization elements.
std::string element_key(const ModuleElement& f);

/// FNV-1a 64-bit over bytes.
std::uint64_t fnv1a(std::string_view bytes);

/// 64-bit mix (splitmix64 finalizer).
std::uint64_t mix(std::uint64_t x);

}  // namespace modwig::canon
