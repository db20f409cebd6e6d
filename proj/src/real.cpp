#include "qmoment/real.hpp"

#include <climits>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace qmoment {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;

struct MpfrString {
  char* text = nullptr;
  ~MpfrString() {
    if (text != nullptr) mpfr_free_str(text);
  }
};

std::string format_scientific(mpfr_srcptr x, size_t digits) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x)) return mpfr_signbit(x) ? "-0" : "0";
  mpfr_exp_t exponent = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exponent, 10, digits, x, MPFR_RNDN);
  std::string mantissa(s.text);
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // strip trailing zeros but keep at least one digit
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  const long e = static_cast<long>(exponent) - 1;
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

}  // namespace

Precision Precision::from_digits(int digits) {
  if (digits <= 0) throw std::invalid_argument("precision digits must be positive");
  return Precision{static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10))};
}

int Precision::digits10() const { return static_cast<int>(std::floor(static_cast<double>(bits) / kLog2Of10)); }

Real::Real(Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, Precision p) {
  std::string s(text);
  // trim surrounding whitespace
  const auto first = s.find_first_not_of(" \t\n\r");
  const auto last = s.find_last_not_of(" \t\n\r");
  if (first == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(first, last - first + 1);
  for (char c : s) {
    const bool ok = (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-';
    if (!ok) throw std::invalid_argument("malformed number: '" + s + "'");
  }
  Real r(p);
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0' || !r.is_finite()) {
    throw std::invalid_argument("malformed number: '" + s + "'");
  }
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(Precision p) const {
  Real r(p);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

namespace {
void widen_to(mpfr_ptr target, mpfr_srcptr source) {
  const mpfr_prec_t want = mpfr_get_prec(source);
  if (want > mpfr_get_prec(target)) mpfr_prec_round(target, want, MPFR_RNDN);
}
}  // namespace

Real& Real::operator+=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

long Real::exponent2() const {
  if (!mpfr_regular_p(value_)) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(value_));
}

std::string Real::to_string(int digits) const {
  return format_scientific(value_, static_cast<size_t>(digits < 1 ? 1 : digits));
}

std::string Real::to_exact_string() const {
  // mpfr_get_str with n = 0 picks enough digits for an exact round trip.
  return format_scientific(value_, 0);
}

namespace {
Precision wider(const Real& a, const Real& b) { return max(a.precision(), b.precision()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  return mpfr_cmp(a.get(), b.get()) <=> 0;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log1p(const Real& x) {
  Real r(x.precision());
  mpfr_log1p(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log10(const Real& x) {
  Real r(x.precision());
  mpfr_log10(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(wider(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r(base.precision());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real ceil(const Real& x) {
  Real r(x.precision());
  mpfr_ceil(r.get(), x.get());
  return r;
}

const Real& max(const Real& a, const Real& b) { return (b > a) ? b : a; }
const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }

Real const_pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real zeta(unsigned long n, Precision p) {
  Real r(p);
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}

Real pow10(long k, Precision p) {
  Real r(p);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(k >= 0 ? k : -k), MPFR_RNDN);
  if (k < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

}  // namespace qmoment
