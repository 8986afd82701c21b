#include "arakelov/rigor/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arakelov::rigor {

namespace {

thread_local mpfr_prec_t g_precision = kDefaultPrecision;

// Scratch value with RAII cleanup.
struct Scratch {
  explicit Scratch(mpfr_prec_t bits) { mpfr_init2(v, bits); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

void require_finite(const Interval& x, const char* what) {
  if (!mpfr_number_p(x.lo()) || !mpfr_number_p(x.hi())) {
    throw DomainError(std::string(what) + ": non-finite endpoint");
  }
}

}  // namespace

mpfr_prec_t working_precision() noexcept { return g_precision; }

void set_working_precision(mpfr_prec_t bits) {
  if (bits < 53 || bits > MPFR_PREC_MAX) {
    throw std::invalid_argument("working precision must be at least 53 bits");
  }
  g_precision = bits;
}

PrecisionGuard::PrecisionGuard(mpfr_prec_t bits) : saved_(g_precision) {
  set_working_precision(bits);
}

PrecisionGuard::~PrecisionGuard() { g_precision = saved_; }

Interval::Interval(Uninit, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
}

Interval::Interval() : Interval(Uninit{}, g_precision) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value) : Interval(Uninit{}, g_precision) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval Interval::exact(double value) {
  if (!std::isfinite(value)) throw DomainError("Interval::exact: non-finite value");
  Interval r(Uninit{}, g_precision);
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::ratio(long num, long den) {
  if (den == 0) throw DomainError("Interval::ratio: zero denominator");
  return from(mpq_class(mpz_class(num), mpz_class(den)));
}

Interval Interval::from(const mpz_class& value) {
  Interval r(Uninit{}, g_precision);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  Interval r(Uninit{}, g_precision);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::decimal(std::string_view text) {
  std::string s(text);
  Interval r(Uninit{}, g_precision);
  if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0) {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  require_finite(r, "Interval::decimal");
  return r;
}

Interval Interval::point(mpfr_srcptr value) {
  Interval r(Uninit{}, g_precision);
  mpfr_set(r.lo_, value, MPFR_RNDD);
  mpfr_set(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::bounds(mpfr_srcptr lo, mpfr_srcptr hi) {
  if (mpfr_cmp(lo, hi) > 0) throw std::invalid_argument("Interval::bounds: lo > hi");
  Interval r(Uninit{}, g_precision);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(Uninit{}, g_precision);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) : Interval(Uninit{}, other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Uninit{}, mpfr_get_prec(other.lo_)) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::width() const {
  Scratch w(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

double Interval::relative_width() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  Scratch w(precision());
  Scratch m(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(lo_) > 0) {
    mpfr_set(m.v, lo_, MPFR_RNDD);
  } else {
    mpfr_neg(m.v, hi_, MPFR_RNDD);
  }
  mpfr_div(w.v, w.v, m.v, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

Interval Interval::midpoint() const {
  Scratch m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return point(m.v);
}

std::pair<Interval, Interval> Interval::bisect() const {
  Scratch m(precision());
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  // Rounding keeps m inside [lo, hi]; clamp anyway for degenerate widths.
  if (mpfr_cmp(m.v, lo_) < 0) mpfr_set(m.v, lo_, MPFR_RNDN);
  if (mpfr_cmp(m.v, hi_) > 0) mpfr_set(m.v, hi_, MPFR_RNDN);
  PrecisionGuard guard(std::max<mpfr_prec_t>(precision(), 53));
  return {bounds(lo_, m.v), bounds(m.v, hi_)};
}

Interval Interval::rounded(mpfr_prec_t bits) const {
  Interval r(Uninit{}, bits);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Interval& x) const {
  return mpfr_lessequal_p(lo_, x.lo_) && mpfr_lessequal_p(x.hi_, hi_);
}

bool Interval::contains(long value) const {
  return mpfr_cmp_si(lo_, value) <= 0 && mpfr_cmp_si(hi_, value) >= 0;
}

bool Interval::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::identical(const Interval& other) const {
  return precision() == other.precision() && mpfr_equal_p(lo_, other.lo_) &&
         mpfr_equal_p(hi_, other.hi_);
}

Interval operator-(const Interval& a) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_precision);
  const mpfr_prec_t bits = g_precision;
  Scratch t(bits);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  Interval r(Interval::Uninit{}, g_precision);
  Scratch t(g_precision);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  }
  return r;
}

Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }
Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

Interval sqr(const Interval& a) { return pow(a, 2); }

Interval pow(const Interval& a, long n) {
  if (n < 0) return Interval(1) / pow(a, -n);
  if (n == 0) return Interval(1);
  const auto un = static_cast<unsigned long>(n);
  Interval r(Interval::Uninit{}, g_precision);
  if (n % 2 == 1 || mpfr_sgn(a.lo_) >= 0) {
    // Monotone increasing on the operand.
    mpfr_pow_ui(r.lo_, a.lo_, un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, un, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi_) <= 0) {
    mpfr_pow_ui(r.lo_, a.hi_, un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.lo_, un, MPFR_RNDU);
  } else {
    Scratch t(g_precision);
    mpfr_set_zero(r.lo_, 1);
    mpfr_pow_ui(r.hi_, a.lo_, un, MPFR_RNDU);
    mpfr_pow_ui(t.v, a.hi_, un, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
  }
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt of an interval with negative points");
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a.rounded(g_precision);
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_set_zero(r.lo_, 1);
  Scratch t(g_precision);
  mpfr_neg(t.v, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t.v, a.hi_, MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval scale2(const Interval& a, long k) {
  Interval r(Interval::Uninit{}, g_precision);
  mpfr_mul_2si(r.lo_, a.lo_, k, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, a.hi_, k, MPFR_RNDU);
  return r;
}

bool certainly_lt(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi(), b.lo()); }
bool certainly_le(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi(), b.lo());
}

std::string decimal_string(mpfr_srcptr value, int digits, mpfr_rnd_t direction) {
  if (mpfr_zero_p(value)) return "0";
  if (mpfr_inf_p(value)) return mpfr_sgn(value) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(value)) return "nan";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value, direction);
  std::string s(raw);
  mpfr_free_str(raw);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.erase(s.begin());
  }
  // value = 0.d1d2... * 10^exp10 = d1.d2... * 10^(exp10 - 1)
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  std::string out = negative ? "-" : "";
  out += s.front();
  if (s.size() > 1) {
    out += '.';
    out.append(s, 1, std::string::npos);
  }
  out += 'e';
  out += std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

std::string to_string(const Interval& x, int digits) {
  return "[" + decimal_string(x.lo(), digits, MPFR_RNDD) + ", " +
         decimal_string(x.hi(), digits, MPFR_RNDU) + "]";
}

std::string short_string(const Interval& x, int digits) {
  const Interval m = x.midpoint();
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, m.lo());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace arakelov::rigor
