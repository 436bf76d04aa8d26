#include "qslice/rational.hpp"

#include "qslice/errors.hpp"

#include <limits>
#include <ostream>

namespace qslice {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

// INT64_MIN is excluded so that negation never overflows.
inline bool fits(i128 v) noexcept { return v <= kMax && v >= -kMax; }

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline u128 gcd_u128(u128 a, u128 b) noexcept {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t uabs(std::int64_t v) noexcept {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

inline u128 uabs128(i128 v) noexcept { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

mpz_class to_mpz(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  mpq_class q(to_mpz(static_cast<std::int64_t>(num)), to_mpz(static_cast<std::int64_t>(den)));
  q.canonicalize();
  assign_big(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) *big_ = *other.big_;
    else big_ = std::make_unique<mpq_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  // Expects a canonical q; demotes to the inline form when possible.
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    long nl = mpz_get_si(n.get_mpz_t());
    long dl = mpz_get_si(d.get_mpz_t());
    if (nl != std::numeric_limits<long>::min()) {
      num_ = nl;
      den_ = dl;
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  if (big_) *big_ = std::move(q);
  else big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(s, 10);
      return Rational(mpq_class(n));
    }
    mpz_class n(s.substr(0, slash), 10);
    mpz_class d(s.substr(slash + 1), 10);
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    return Rational(mpq_class(n, d));
  } catch (const std::invalid_argument&) {
    throw Error(Errc::ParseError, "not a rational: '" + s + "'");
  }
}

bool Rational::is_integer() const noexcept {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_string() const {
  return big_ ? big_->get_num().get_str(10) : std::to_string(num_);
}

std::string Rational::denominator_string() const {
  return big_ ? big_->get_den().get_str(10) : std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.num_ == 0) return *this;
    if (num_ == 0) return *this = rhs;
    if (den_ == 1 && rhs.den_ == 1) {
      i128 s = static_cast<i128>(num_) + rhs.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    } else {
      // Knuth 4.5.1: reduce through g = gcd(den, rhs.den).
      std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(rhs.den_));
      i128 da = den_ / static_cast<std::int64_t>(g);
      i128 db = rhs.den_ / static_cast<std::int64_t>(g);
      i128 t = static_cast<i128>(num_) * db + static_cast<i128>(rhs.num_) * da;
      if (t == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      u128 g2 = gcd_u128(uabs128(t), g);
      i128 n = t / static_cast<i128>(g2);
      i128 d = da * (rhs.den_ / static_cast<i128>(g2));
      if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        return *this;
      }
    }
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!rhs.big_) {
    if (rhs.num_ == 0) return *this;
    Rational neg;
    neg.num_ = -rhs.num_;
    neg.den_ = rhs.den_;
    return *this += neg;
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0) return *this;
    if (rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      i128 p = static_cast<i128>(num_) * rhs.num_;
      if (fits(p)) {
        num_ = static_cast<std::int64_t>(p);
        return *this;
      }
    } else {
      std::int64_t g1 = static_cast<std::int64_t>(gcd_u64(uabs(num_), static_cast<std::uint64_t>(rhs.den_)));
      std::int64_t g2 = static_cast<std::int64_t>(gcd_u64(uabs(rhs.num_), static_cast<std::uint64_t>(den_)));
      i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
      i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
      if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        return *this;
      }
    }
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  if (!rhs.big_) {
    Rational inv;
    if (rhs.num_ < 0) {
      inv.num_ = -rhs.den_;
      inv.den_ = -rhs.num_;
    } else {
      inv.num_ = rhs.den_;
      inv.den_ = rhs.num_;
    }
    return *this *= inv;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  Rational r(*this);
  if (r.big_) *r.big_ = -*r.big_;
  else r.num_ = -r.num_;
  return r;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical forms: a big value never equals an inline one.
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonUniqueSolution: return "NonUniqueSolution";
    case Errc::InconsistentSystem: return "InconsistentSystem";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::RankTooHigh: return "RankTooHigh";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::SumMismatch: return "SumMismatch";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::EmptyVariety: return "EmptyVariety";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::NotTransversal: return "NotTransversal";
    case Errc::NotStable: return "NotStable";
    case Errc::WrongFraming: return "WrongFraming";
    case Errc::InvalidFlag: return "InvalidFlag";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qslice
