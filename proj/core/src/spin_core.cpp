#include "spinboson/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "sector_kernel.hpp"
#include "spinboson/errors.hpp"

namespace spinboson {

namespace detail {

namespace {

bool decompose_blocks(const SpinWord& w, int& pm, int& mp, int& z) {
  const auto& l = w.letters();
  pm = mp = z = 0;
  std::size_t i = 0;
  while (i < l.size()) {
    if (l[i] == SpinLetter::Z) {
      ++z;
      ++i;
    } else if (i + 1 < l.size() && l[i] == SpinLetter::Plus && l[i + 1] == SpinLetter::Minus) {
      ++pm;
      i += 2;
    } else if (i + 1 < l.size() && l[i] == SpinLetter::Minus && l[i + 1] == SpinLetter::Plus) {
      ++mp;
      i += 2;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<WordJob> plan_jobs(const SpinPolynomial& poly) {
  std::vector<WordJob> jobs;
  std::map<std::tuple<int, int, int>, std::size_t> block_index;
  for (const auto& [word, coeff] : poly.terms()) {
    const auto raises = word.count(SpinLetter::Plus);
    if (raises != word.count(SpinLetter::Minus)) continue;
    WordJob job;
    job.word = word;
    job.raises = static_cast<int>(raises);
    job.z_count = static_cast<int>(word.count(SpinLetter::Z));
    job.length = word.size();
    job.coefficient = coeff;
    int pm = 0;
    int mp = 0;
    int z = 0;
    if (decompose_blocks(word, pm, mp, z)) {
      job.blocks = true;
      job.plus_minus = pm;
      job.minus_plus = mp;
      const auto key = std::make_tuple(pm, mp, z);
      if (auto it = block_index.find(key); it != block_index.end()) {
        jobs[it->second].coefficient += coeff;
        continue;
      }
      block_index.emplace(key, jobs.size());
    }
    jobs.push_back(std::move(job));
  }
  std::erase_if(jobs, [](const WordJob& j) { return j.coefficient.is_zero(); });
  return jobs;
}

double sector_sum_bits(const WordJob& job, unsigned sites) {
  const double n = sites;
  return job.raises * std::log2(n * (n + 2.0) + 1.0) + job.z_count * std::log2(n + 1.0) +
         std::log2(n + 2.0) + 1.0;
}

double scaled_diagonal_double(const WordJob& job, int twice_j, int twice_m) {
  return scaled_diagonal<double>(job, twice_j, twice_m);
}

}  // namespace detail

BigInt irrep_multiplicity(unsigned sites, int twice_j) {
  if (sites < 1) throw DomainError("irrep_multiplicity: N must be at least 1");
  if (twice_j < 0 || twice_j > static_cast<int>(sites)) {
    throw DomainError("irrep_multiplicity: 2j=" + std::to_string(twice_j) + " outside [0, " +
                      std::to_string(sites) + "]");
  }
  if ((static_cast<int>(sites) - twice_j) % 2 != 0) {
    throw DomainError("irrep_multiplicity: 2j=" + std::to_string(twice_j) +
                      " has the wrong parity for N=" + std::to_string(sites));
  }
  const auto k = static_cast<unsigned>((static_cast<int>(sites) - twice_j) / 2);
  BigInt d = binomial(sites, k);
  if (k > 0) d -= binomial(sites, k - 1);
  return d;
}

std::vector<IrrepSpec> irrep_decomposition(unsigned sites) {
  std::vector<IrrepSpec> out;
  for (int tj = static_cast<int>(sites % 2); tj <= static_cast<int>(sites); tj += 2) {
    out.push_back({tj, irrep_multiplicity(sites, tj)});
  }
  return out;
}

double WordImage::to_double() const {
  if (is_zero()) return 0.0;
  return coefficient.convert_to<double>() * std::sqrt(radicand.convert_to<double>());
}

WordImage apply_word_in_irrep(const SpinWord& word, int twice_j, int index) {
  if (twice_j < 0) throw DomainError("apply_word_in_irrep: negative 2j");
  if (index < 0 || index > twice_j) {
    throw DomainError("apply_word_in_irrep: basis index " + std::to_string(index) +
                      " outside [0, " + std::to_string(twice_j) + "]");
  }
  int tm = twice_j - 2 * index;
  Rational coeff = 1;
  std::map<int, int> edge_crossings;  // keyed by the lower end of the edge
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    switch (*it) {
      case SpinLetter::Plus:
        if (tm >= twice_j) return {};
        ++edge_crossings[tm];
        tm += 2;
        break;
      case SpinLetter::Minus:
        if (tm <= -twice_j) return {};
        tm -= 2;
        ++edge_crossings[tm];
        break;
      case SpinLetter::Z:
        if (tm == 0) return {};
        coeff *= Rational(tm, 2);
        break;
    }
  }
  Rational radicand = 1;
  for (const auto& [lower, crossings] : edge_crossings) {
    const Rational c(detail::ladder_up(twice_j, lower), 4);
    coeff *= power(c, crossings / 2);
    if (crossings % 2 != 0) radicand *= c;
  }
  WordImage image;
  image.index = (twice_j - tm) / 2;
  image.coefficient = std::move(coeff);
  image.radicand = std::move(radicand);
  return image;
}

// ExactTrace

namespace {

bool perfect_square(unsigned n, unsigned& root) {
  auto r = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  root = r;
  return r * r == n;
}

}  // namespace

ExactTrace scale_by_sites(const GaussRational& value, std::size_t word_length, unsigned sites) {
  ExactTrace out;
  out.sites = sites;
  if (value.is_zero()) return out;
  const auto half = static_cast<int>(word_length / 2);
  if (word_length % 2 == 0) {
    out.rational = value * GaussRational(power(Rational(sites), -half));
    return out;
  }
  // N^{-L/2} = sqrt(N) * N^{-(L+1)/2}
  GaussRational root = value * GaussRational(power(Rational(sites), -(half + 1)));
  unsigned r = 0;
  if (perfect_square(sites, r)) {
    out.rational = root * GaussRational(Rational(r));
  } else {
    out.root_coefficient = std::move(root);
  }
  return out;
}

ExactTrace& ExactTrace::operator+=(const ExactTrace& o) {
  sites = o.sites;
  rational += o.rational;
  root_coefficient += o.root_coefficient;
  return *this;
}

std::complex<double> ExactTrace::to_complex() const {
  const double s = std::sqrt(static_cast<double>(sites));
  return rational.to_complex() + root_coefficient.to_complex() * s;
}

std::pair<Real, Real> ExactTrace::to_real() const {
  const Real s = boost::multiprecision::sqrt(Real(sites));
  Real re = Real(rational.real()) + Real(root_coefficient.real()) * s;
  Real im = Real(rational.imag()) + Real(root_coefficient.imag()) * s;
  return {re, im};
}

namespace {

std::string join_complex(const std::string& re, const std::string& im, bool has_imag) {
  if (!has_imag) return re;
  if (!im.empty() && im.front() == '-') return re + im + "i";
  return re + "+" + im + "i";
}

std::string real_fixed(const Real& x, int digits) {
  std::string s = x.str(digits, std::ios_base::fixed);
  if (s.find_first_not_of("-0.") == std::string::npos && !s.empty() && s.front() == '-') {
    s.erase(0, 1);
  }
  return s;
}

}  // namespace

std::string ExactTrace::to_decimal(int digits) const {
  if (is_rational()) {
    return join_complex(spinboson::to_decimal(rational.real(), digits),
                        spinboson::to_decimal(rational.imag(), digits), !rational.is_real());
  }
  PrecisionGuard guard(static_cast<unsigned>(digits) + 40);
  auto [re, im] = to_real();
  const bool has_imag = !rational.is_real() || !root_coefficient.is_real();
  return join_complex(real_fixed(re, digits), real_fixed(im, digits), has_imag);
}

// Trace engine

std::uint64_t trace_work_estimate(unsigned sites, const SpinPolynomial& poly) {
  std::uint64_t letters = 0;
  for (const auto& job : detail::plan_jobs(poly)) letters += std::max<std::size_t>(job.length, 1);
  std::uint64_t states = 0;
  for (int tj = static_cast<int>(sites % 2); tj <= static_cast<int>(sites); tj += 2) {
    states += static_cast<std::uint64_t>(tj) + 1;
  }
  return states * letters;
}

namespace {

unsigned resolve_threads(unsigned requested, std::size_t sectors) {
  unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
  t = std::max(1U, t);
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(sectors, 1)));
}

// Per-job totals sum_j d(N,j) * sum_m D_job(j,m) over the sectors assigned to
// one worker (sector index % stride == offset).
std::vector<BigInt> exact_partial(unsigned sites, const std::vector<detail::WordJob>& jobs,
                                  const std::vector<bool>& use_int128, unsigned offset,
                                  unsigned stride) {
  std::vector<BigInt> totals(jobs.size(), BigInt(0));
  unsigned sector = 0;
  for (int tj = static_cast<int>(sites % 2); tj <= static_cast<int>(sites); tj += 2, ++sector) {
    if (sector % stride != offset) continue;
    const BigInt mult = irrep_multiplicity(sites, tj);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      BigInt sector_sum;
      if (use_int128[k]) {
        __int128 acc = 0;
        for (int tm = -tj; tm <= tj; tm += 2) acc += detail::scaled_diagonal<__int128>(jobs[k], tj, tm);
        sector_sum = to_bigint(acc);
      } else {
        for (int tm = -tj; tm <= tj; tm += 2) sector_sum += detail::scaled_diagonal<BigInt>(jobs[k], tj, tm);
      }
      if (sector_sum != 0) totals[k] += mult * sector_sum;
    }
  }
  return totals;
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

TraceResult floating_trace(unsigned sites, const std::vector<detail::WordJob>& jobs, int digits) {
  std::vector<CompensatedSum> totals(jobs.size());
  const Rational two_n = power(Rational(2), static_cast<int>(sites));
  for (int tj = static_cast<int>(sites % 2); tj <= static_cast<int>(sites); tj += 2) {
    const double weight = (Rational(irrep_multiplicity(sites, tj)) / two_n).convert_to<double>();
    if (weight == 0.0) continue;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      CompensatedSum sector;
      for (int tm = -tj; tm <= tj; tm += 2) {
        sector.add(detail::scaled_diagonal_double(jobs[k], tj, tm));
      }
      totals[k].add(weight * sector.value());
    }
  }
  std::complex<double> value{};
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& job = jobs[k];
    const double scale = std::pow(4.0, -job.raises) * std::pow(2.0, -job.z_count) *
                         std::pow(static_cast<double>(sites), -0.5 * static_cast<double>(job.length));
    value += job.coefficient.to_complex() * (totals[k].value() * scale);
  }
  TraceResult result;
  result.approximate = true;
  result.approx = value;
  result.digits = digits;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << value.real();
  if (value.imag() != 0.0) os << (value.imag() < 0 ? "" : "+") << value.imag() << "i";
  result.decimal = os.str();
  return result;
}

}  // namespace

TraceResult normalized_trace(unsigned sites, const SpinPolynomial& poly, const TraceOptions& options) {
  if (sites < 1) throw DomainError("normalized_trace: N must be at least 1");
  if (options.digits < 0) throw DomainError("normalized_trace: negative digit count");
  const std::uint64_t work = trace_work_estimate(sites, poly);
  if (work > options.work_budget) {
    throw ResourceError("normalized_trace: estimated work " + std::to_string(work) +
                        " letter steps exceeds budget " + std::to_string(options.work_budget));
  }
  const auto jobs = detail::plan_jobs(poly);
  if (options.floating) return floating_trace(sites, jobs, options.digits);

  std::vector<bool> use_int128(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    use_int128[k] = detail::sector_sum_bits(jobs[k], sites) < 120.0;
  }

  const std::size_t sectors = sites / 2 + 1;
  const unsigned workers = resolve_threads(options.threads, sectors);
  std::vector<BigInt> totals(jobs.size(), BigInt(0));
  if (workers == 1) {
    totals = exact_partial(sites, jobs, use_int128, 0, 1);
  } else {
    std::vector<std::vector<BigInt>> partials(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] { partials[w] = exact_partial(sites, jobs, use_int128, w, workers); });
      }
    }
    for (const auto& part : partials) {
      for (std::size_t k = 0; k < jobs.size(); ++k) totals[k] += part[k];
    }
  }

  ExactTrace exact;
  exact.sites = sites;
  const Rational inv_two_n = power(Rational(2), -static_cast<int>(sites));
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (totals[k] == 0) continue;
    const auto& job = jobs[k];
    const Rational raw = Rational(totals[k]) * inv_two_n * power(Rational(4), -job.raises) *
                         power(Rational(2), -job.z_count);
    exact += scale_by_sites(job.coefficient * GaussRational(raw), job.length, sites);
  }

  TraceResult result;
  result.exact = exact;
  result.approx = exact.to_complex();
  result.digits = options.digits;
  result.decimal = exact.to_decimal(options.digits);
  return result;
}

}  // namespace spinboson
