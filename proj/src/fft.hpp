#ifndef LQID_FFT_HPP
#define LQID_FFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace lqid::detail {

bool is_pow2(std::uint64_t n);

/// In-place unnormalized DFT along every axis of a row-major m^dim array
/// (first axis slowest). sign=+1 uses the kernel e^{+2 pi i <j,k>/m},
/// sign=-1 the conjugate. m must be a power of two.
void dft_pow2(std::vector<std::complex<double>>& a, int dim, int m, int sign);

}  // namespace lqid::detail

#endif
