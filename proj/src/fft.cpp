#include "fft.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace lqid::detail {

bool is_pow2(std::uint64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

namespace {

// Radix-2 in-place transform of one length-m line. twiddle[t] = e^{sign*2*pi*i*t/m},
// computed directly per entry so roundoff does not accumulate across stages.
void fft_line(std::complex<double>* x, int m, const std::vector<std::complex<double>>& twiddle) {
  for (int i = 1, j = 0; i < m; ++i) {
    int bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (int len = 2; len <= m; len <<= 1) {
    int step = m / len;
    for (int i = 0; i < m; i += len) {
      for (int t = 0; t < len / 2; ++t) {
        std::complex<double> w = twiddle[static_cast<std::size_t>(t) * step];
        std::complex<double> u = x[i + t];
        std::complex<double> v = x[i + t + len / 2] * w;
        x[i + t] = u + v;
        x[i + t + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

void dft_pow2(std::vector<std::complex<double>>& a, int dim, int m, int sign) {
  if (dim < 1 || m < 2 || !is_pow2(static_cast<std::uint64_t>(m)))
    throw Error(errc::invalid_argument, "dft_pow2: grid size must be a power of two >= 2");
  std::uint64_t expect = 1;
  for (int i = 0; i < dim; ++i) expect *= static_cast<std::uint64_t>(m);
  if (a.size() != expect)
    throw Error(errc::invalid_argument, "dft_pow2: array length does not match m^dim");

  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t)
    twiddle[static_cast<std::size_t>(t)] =
        std::polar(1.0, sign * 2.0 * std::numbers::pi * t / m);

  std::vector<std::complex<double>> line(static_cast<std::size_t>(m));
  const std::size_t n = a.size();
  // Axis k has stride m^(dim-1-k) in the row-major layout.
  std::size_t stride = n / static_cast<std::size_t>(m);
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t block = stride * static_cast<std::size_t>(m);
    for (std::size_t base = 0; base < n; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        std::complex<double>* first = a.data() + base + off;
        if (stride == 1) {
          fft_line(first, m, twiddle);
        } else {
          for (int t = 0; t < m; ++t) line[static_cast<std::size_t>(t)] = first[stride * static_cast<std::size_t>(t)];
          fft_line(line.data(), m, twiddle);
          for (int t = 0; t < m; ++t) first[stride * static_cast<std::size_t>(t)] = line[static_cast<std::size_t>(t)];
        }
      }
    }
    stride /= static_cast<std::size_t>(m);
  }
}

}  // namespace lqid::detail
