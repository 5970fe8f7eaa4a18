#pragma once

// LAPACKE with std::complex as the complex type. Must be included before any
// other header that pulls in lapacke.h.
#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
