// tolerances.hpp — numerical tolerances and size limits used across the library
#pragma once

#include <cstddef>

namespace corrproj::tol {

// max-norm Hermiticity defect accepted before an operator is rejected
inline constexpr double hermiticity = 1e-10;

// eigenvalues above this (negative) floor are treated as nonnegative
inline constexpr double psd_floor = -1e-9;

// defect threshold for the biorthogonality / trace / idempotence conditions
inline constexpr double condition = 1e-10;

// relative singular-value threshold for numerical rank decisions
inline constexpr double rank_rel = 1e-8;

// band weight tr{Pi rho0 Pi} below this is a degenerate band
inline constexpr double band_weight = 1e-12;

// idempotence / Hermiticity-preservation defect accepted for map-matrix input
inline constexpr double map_input = 1e-9;

// states along a trajectory are flagged when violations exceed this
inline constexpr double state_flag = 1e-9;

// default cap on the vectorized dimension of dense superoperator solves,
// and on the total Hilbert-space dimension of exact model evolution;
// override with the CORRPROJ_SIZE_CAP environment variable
inline constexpr std::size_t default_size_cap = 4096;

// reads CORRPROJ_SIZE_CAP if set and parseable, otherwise default_size_cap
std::size_t size_cap();

} // namespace corrproj::tol
