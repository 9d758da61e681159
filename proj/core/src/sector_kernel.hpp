#pragma once

// Per-sector diagonal evaluation shared by the trace engine and the XY
// thermal averages.
//
// Words are evaluated in the rescaled ladder basis e_m with S- e_m = e_{m-1}
// and S+ e_m = c(m) e_{m+1}, c(m) = j(j+1) - m(m+1). It is a diagonal
// similarity transform of the orthonormal basis, so diagonal matrix elements
// are unchanged and every amplitude is rational. All quantities are kept in
// doubled units (twice_j, twice_m); a word with p raising letters and z Z
// letters has diagonal element D / (4^p 2^z) with D an integer.

#include <cmath>
#include <cstdint>
#include <vector>

#include "spinboson/spin_polynomial.hpp"

namespace spinboson::detail {

struct WordJob {
  SpinWord word;             // representative (general path)
  bool blocks = false;       // product of S+S-, S-S+ and Sz blocks
  int plus_minus = 0;        // number of S+S- blocks
  int minus_plus = 0;        // number of S-S+ blocks
  int raises = 0;
  int z_count = 0;
  std::size_t length = 0;
  GaussRational coefficient;
};

/// Groups the polynomial's words into evaluation jobs. Words whose raising and
/// lowering counts differ shift m and have zero diagonal; they are dropped.
std::vector<WordJob> plan_jobs(const SpinPolynomial& poly);

/// log2 bound on |D| summed over one sector.
double sector_sum_bits(const WordJob& job, unsigned sites);

inline long long ladder_up(int twice_j, int twice_m) {
  return static_cast<long long>(twice_j) * (twice_j + 2) -
         static_cast<long long>(twice_m) * (twice_m + 2);
}

inline long long ladder_down(int twice_j, int twice_m) {
  return static_cast<long long>(twice_j) * (twice_j + 2) -
         static_cast<long long>(twice_m) * (twice_m - 2);
}

template <class Int>
Int int_pow(Int base, int e) {
  Int r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

/// Scaled diagonal element D of `job` at (twice_j, twice_m).
template <class Int>
Int scaled_diagonal(const WordJob& job, int twice_j, int twice_m) {
  if (job.blocks) {
    Int acc = 1;
    if (job.plus_minus != 0) acc *= int_pow<Int>(Int(ladder_down(twice_j, twice_m)), job.plus_minus);
    if (job.minus_plus != 0) acc *= int_pow<Int>(Int(ladder_up(twice_j, twice_m)), job.minus_plus);
    if (job.z_count != 0) acc *= int_pow<Int>(Int(twice_m), job.z_count);
    return acc;
  }
  Int acc = 1;
  int tm = twice_m;
  const auto& letters = job.word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    switch (*it) {
      case SpinLetter::Plus:
        if (tm >= twice_j) return Int(0);
        acc *= Int(ladder_up(twice_j, tm));
        tm += 2;
        break;
      case SpinLetter::Minus:
        if (tm <= -twice_j) return Int(0);
        tm -= 2;
        break;
      case SpinLetter::Z:
        if (tm == 0) return Int(0);
        acc *= Int(tm);
        break;
    }
  }
  return tm == twice_m ? acc : Int(0);
}

/// Double-precision version of the above (no exactness).
double scaled_diagonal_double(const WordJob& job, int twice_j, int twice_m);

}  // namespace spinboson::detail
