#include "spinboson/dense_oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include "spinboson/errors.hpp"

namespace spinboson {

namespace {

// Product basis: bit i of a state is 1 when site i is up. States are grouped
// into sectors by the number of up spins, which S+ and S- shift by one.
class ProductBasis {
 public:
  explicit ProductBasis(unsigned sites) : sites_(sites), index_(std::size_t{1} << sites) {
    sectors_.resize(sites + 1);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << sites); ++s) {
      auto& sector = sectors_[static_cast<std::size_t>(std::popcount(s))];
      index_[s] = static_cast<std::uint32_t>(sector.size());
      sector.push_back(s);
    }
  }

  unsigned sites() const { return sites_; }
  const std::vector<std::uint32_t>& sector(unsigned ups) const { return sectors_[ups]; }
  std::uint32_t index(std::uint32_t state) const { return index_[state]; }

 private:
  unsigned sites_;
  std::vector<std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> sectors_;
};

// Row-major block: rows are states of sector `ups`, columns are start states.
template <class Int>
struct Block {
  unsigned ups = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;

  Int* row(std::size_t r) { return data.data() + r * cols; }
  const Int* row(std::size_t r) const { return data.data() + r * cols; }
};

template <class Int>
Block<Int> identity_block(const ProductBasis& basis, unsigned ups) {
  Block<Int> b;
  b.ups = ups;
  b.rows = b.cols = basis.sector(ups).size();
  b.data.assign(b.rows * b.cols, Int(0));
  for (std::size_t k = 0; k < b.rows; ++k) b.row(k)[k] = Int(1);
  return b;
}

// Applies sum_i s_i^+ (raise) or sum_i s_i^- (lower) from the left.
template <class Int>
Block<Int> apply_ladder(const ProductBasis& basis, const Block<Int>& in, bool raise) {
  Block<Int> out;
  out.ups = raise ? in.ups + 1 : in.ups - 1;
  out.cols = in.cols;
  out.rows = basis.sector(out.ups).size();
  out.data.assign(out.rows * out.cols, Int(0));
  const auto& states = basis.sector(in.ups);
  for (std::size_t r = 0; r < states.size(); ++r) {
    const std::uint32_t s = states[r];
    const Int* src = in.row(r);
    for (unsigned site = 0; site < basis.sites(); ++site) {
      const std::uint32_t bit = std::uint32_t{1} << site;
      const bool up = (s & bit) != 0;
      if (up == raise) continue;
      Int* dst = out.row(basis.index(s ^ bit));
      for (std::size_t c = 0; c < in.cols; ++c) dst[c] += src[c];
    }
  }
  return out;
}

// Multiplies by 2*Sz (diagonal: ups - downs).
template <class Int>
void apply_twice_sz(const ProductBasis& basis, Block<Int>& b) {
  const Int twice_m = Int(2 * static_cast<int>(b.ups) - static_cast<int>(basis.sites()));
  for (std::size_t r = 0; r < b.rows; ++r) {
    Int* row = b.row(r);
    for (std::size_t c = 0; c < b.cols; ++c) row[c] *= twice_m;
  }
}

// Applies a word to the identity block of sector `ups`. Returns false when the
// word leaves the space (raising past all-up or lowering past all-down).
template <class Int>
bool apply_word(const ProductBasis& basis, const SpinWord& word, Block<Int>& b) {
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    switch (*it) {
      case SpinLetter::Plus:
        if (b.ups == basis.sites()) return false;
        b = apply_ladder(basis, b, true);
        break;
      case SpinLetter::Minus:
        if (b.ups == 0) return false;
        b = apply_ladder(basis, b, false);
        break;
      case SpinLetter::Z:
        apply_twice_sz(basis, b);
        break;
    }
  }
  return true;
}

template <class Int>
Int block_trace(const Block<Int>& b) {
  Int t = 0;
  for (std::size_t k = 0; k < b.rows; ++k) t += b.row(k)[k];
  return t;
}

void check_cap(unsigned sites, unsigned cap) {
  if (sites < 1) throw DomainError("dense oracle: N must be at least 1");
  if (sites > cap) {
    throw ResourceError("dense oracle: N=" + std::to_string(sites) + " exceeds the oracle cap " +
                        std::to_string(cap) + " (the product basis has 2^N states)");
  }
}

bool balanced(const SpinWord& w) { return w.count(SpinLetter::Plus) == w.count(SpinLetter::Minus); }

}  // namespace

TraceResult dense_oracle_trace(unsigned sites, const SpinPolynomial& poly,
                               const DenseOracleOptions& options) {
  check_cap(sites, options.site_cap);
  const ProductBasis basis(sites);
  ExactTrace exact;
  exact.sites = sites;
  for (const auto& [word, coeff] : poly.terms()) {
    // Unbalanced words move every product state to a different sector, so all
    // their diagonal entries vanish.
    if (!balanced(word)) continue;
    if (static_cast<double>(word.size()) * std::log2(static_cast<double>(sites) + 1.0) > 60.0) {
      throw ResourceError("dense oracle: word " + to_string(word) + " may overflow 64-bit entries");
    }
    std::int64_t raw = 0;
    for (unsigned ups = 0; ups <= sites; ++ups) {
      auto block = identity_block<std::int64_t>(basis, ups);
      if (apply_word(basis, word, block) && block.ups == ups) raw += block_trace(block);
    }
    if (raw == 0) continue;
    const Rational value = Rational(raw) * power(Rational(2), -static_cast<int>(sites)) *
                           power(Rational(2), -static_cast<int>(word.count(SpinLetter::Z)));
    exact += scale_by_sites(coeff * GaussRational(value), word.size(), sites);
  }
  TraceResult result;
  result.exact = exact;
  result.approx = exact.to_complex();
  result.digits = options.digits;
  result.decimal = exact.to_decimal(options.digits);
  return result;
}

std::vector<ProjectedTrace> dense_projected_traces(unsigned sites, const SpinPolynomial& poly,
                                                   unsigned site_cap) {
  check_cap(sites, site_cap);
  const ProductBasis basis(sites);
  const int n = static_cast<int>(sites);

  std::map<std::pair<int, int>, ExactTrace> acc;
  for (int ups = 0; ups <= n; ++ups) {
    const int tm = 2 * ups - n;
    for (int tj = std::abs(tm); tj <= n; tj += 2) acc[{tj, tm}].sites = sites;
  }

  for (const auto& [word, coeff] : poly.terms()) {
    if (!balanced(word)) continue;
    for (unsigned ups = 0; ups <= sites; ++ups) {
      const int tm = 2 * static_cast<int>(ups) - n;
      std::vector<int> twice_js;
      for (int tj = std::abs(tm); tj <= n; tj += 2) twice_js.push_back(tj);
      const auto powers = twice_js.size();
      const double bits = static_cast<double>(word.size()) * std::log2(n + 1.0) +
                          static_cast<double>(powers) * std::log2(6.0 * n * n + 1.0) +
                          std::log2(static_cast<double>(basis.sector(ups).size()) + 1.0);
      if (bits > 120.0) {
        throw ResourceError("dense_projected_traces: entries may overflow 128-bit integers");
      }

      auto block = identity_block<__int128>(basis, ups);
      if (!apply_word(basis, word, block) || block.ups != ups) continue;

      // t[p] = tr((4 S^2)^p W) with 4 S^2 = 4 S- S+ + (2Sz)^2 + 2 (2Sz).
      std::vector<__int128> t(powers);
      for (std::size_t p = 0; p < powers; ++p) {
        t[p] = block_trace(block);
        if (p + 1 == powers) break;
        Block<__int128> next = block;
        if (ups < sites) {
          auto up = apply_ladder(basis, block, true);
          next = apply_ladder(basis, up, false);
          for (auto& v : next.data) v *= 4;
        } else {
          std::fill(next.data.begin(), next.data.end(), __int128(0));
        }
        const __int128 tmv = tm;
        for (std::size_t k = 0; k < next.data.size(); ++k) next.data[k] += (tmv * tmv + 2 * tmv) * block.data[k];
        block = std::move(next);
      }

      const Rational letter_scale = power(Rational(2), -static_cast<int>(word.count(SpinLetter::Z)));
      for (int tj : twice_js) {
        // Lagrange projector onto the eigenvalue tj(tj+2) of 4 S^2.
        RationalPolynomial projector(std::vector<Rational>{Rational(1)});
        const long long lambda = static_cast<long long>(tj) * (tj + 2);
        for (int other : twice_js) {
          if (other == tj) continue;
          const long long mu = static_cast<long long>(other) * (other + 2);
          projector *= RationalPolynomial(std::vector<Rational>{Rational(-mu), Rational(1)});
          projector *= Rational(1) / Rational(lambda - mu);
        }
        Rational value = 0;
        for (std::size_t p = 0; p < powers; ++p) {
          const Rational c = projector.coefficient(static_cast<unsigned>(p));
          if (c != 0) value += c * Rational(to_bigint(t[p]));
        }
        if (value == 0) continue;
        acc[{tj, tm}] += scale_by_sites(coeff * GaussRational(value * letter_scale), word.size(), sites);
      }
    }
  }

  std::vector<ProjectedTrace> out;
  out.reserve(acc.size());
  for (auto& [key, trace] : acc) out.push_back({key.first, key.second, std::move(trace)});
  return out;
}

}  // namespace spinboson
