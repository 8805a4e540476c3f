#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oz {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Formats a double with 12 significant digits, dot decimal. All CSV output
// goes through this so reruns are byte-identical.
std::string fmt12(double x);
std::string fmt12(Complex z);

// FNV-1a 64-bit, used for run-manifest file hashes.
std::uint64_t fnv1a64(const void* data, std::size_t n);

// Worker threads for partitionable scans: hardware concurrency capped by the
// ORBITZETA_THREADS environment variable.
int thread_cap();

inline BigInt ipow(BigInt base, unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= base;
  return r;
}

}  // namespace oz
