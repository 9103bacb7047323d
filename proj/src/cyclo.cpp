#include "ncgame/cyclo.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ncgame/errors.hpp"

namespace ncgame {

namespace {

using Poly = std::vector<Rational>;  // constant term first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by monic-or-not b; remainder returned through rem.
Poly divmod(Poly a, const Poly& b, Poly* rem) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    if (rem) *rem = a;
    return {};
  }
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    Rational c = a[i] / b[db];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  if (rem) *rem = a;
  trim(q);
  return q;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly cyclotomic(int n, std::map<int, Poly>& cache) {
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly rem;
    num = divmod(num, cyclotomic(d, cache), &rem);
    if (!rem.empty()) throw std::logic_error("cyclotomic division left a remainder");
  }
  cache.emplace(n, num);
  return num;
}

}  // namespace

const CycloField& CycloField::make(int order) {
  if (order < 1) throw UsageError("cyclotomic order must be positive, got " + std::to_string(order));
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CycloField>> fields;
  std::lock_guard lock(mutex);
  auto& slot = fields[order];
  if (!slot) slot.reset(new CycloField(order));
  return *slot;
}

CycloField::CycloField(int order) : order_(order) {
  std::map<int, Poly> cache;
  minpoly_ = cyclotomic(order, cache);
  const std::size_t phi = minpoly_.size() - 1;
  powers_.reserve(order);
  Poly cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < order; ++k) {
    powers_.push_back(cur);
    // multiply by x and reduce with the monic minimal polynomial
    Poly next(phi, 0);
    Rational top = cur[phi - 1];
    for (std::size_t j = phi - 1; j > 0; --j) next[j] = cur[j - 1];
    next[0] = 0;
    if (top != 0)
      for (std::size_t j = 0; j < phi; ++j) next[j] -= top * minpoly_[j];
    cur = std::move(next);
  }
}

const std::vector<Rational>& CycloField::power(long k) const {
  long r = k % order_;
  if (r < 0) r += order_;
  return powers_[static_cast<std::size_t>(r)];
}

Cyclo::Cyclo(const CycloField& field) : field_(&field), coords_(field.degree(), 0) {}

Cyclo::Cyclo(const CycloField& field, const Rational& value) : Cyclo(field) { coords_[0] = value; }

Cyclo::Cyclo(const CycloField& field, std::vector<Rational> coords) : field_(&field) {
  const std::size_t phi = field.degree();
  if (coords.size() <= phi) {
    coords.resize(phi, 0);
    coords_ = std::move(coords);
    return;
  }
  Poly rem;
  divmod(std::move(coords), field.minimal_polynomial(), &rem);
  rem.resize(phi, 0);
  coords_ = std::move(rem);
}

Cyclo Cyclo::root(const CycloField& f, long k) { return Cyclo(f, f.power(k)); }

bool Cyclo::is_zero() const noexcept {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_rational() const noexcept {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

bool Cyclo::is_one() const noexcept { return coords_[0] == 1 && is_rational(); }

void Cyclo::check_field(const Cyclo& o) const {
  if (field_ != o.field_)
    throw UsageError("cyclotomic operands live in different fields (Q(zeta_" +
                     std::to_string(field_->order()) + ") vs Q(zeta_" +
                     std::to_string(o.field_->order()) + "))");
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  check_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  check_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Cyclo& Cyclo::operator*=(const Rational& r) {
  for (auto& c : coords_) c *= r;
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  check_field(o);
  const std::size_t phi = coords_.size();
  if (o.is_rational()) return *this *= o.coords_[0];
  if (is_rational()) {
    Rational r = coords_[0];
    coords_ = o.coords_;
    return *this *= r;
  }
  Poly prod(2 * phi - 1, 0);
  for (std::size_t i = 0; i < phi; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) prod[i + j] += coords_[i] * o.coords_[j];
  }
  const auto& mp = field_->minimal_polynomial();
  for (std::size_t i = prod.size(); i-- > phi;) {
    if (prod[i] == 0) continue;
    Rational c = prod[i];
    for (std::size_t j = 0; j <= phi; ++j) prod[i - phi + j] -= c * mp[j];
  }
  prod.resize(phi);
  coords_ = std::move(prod);
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  return a.field_ == b.field_ && a.coords_ == b.coords_;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(zeta_" + std::to_string(field_->order()) + ")");
  if (is_rational()) return Cyclo(*field_, Rational(1) / coords_[0]);
  // Extended Euclid: track s with s*a == r (mod Phi).
  Poly r0 = field_->minimal_polynomial(), r1 = coords_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    Poly rem;
    Poly q = divmod(r0, r1, &rem);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("cyclotomic polynomial is not irreducible");
  }
  Rational c = Rational(1) / r1[0];
  for (auto& v : s1) v *= c;
  return Cyclo(*field_, std::move(s1));
}

Cyclo Cyclo::conj() const {
  if (is_rational()) return *this;
  Cyclo r(*field_);
  const long n = field_->order();
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    const auto& p = field_->power(n - static_cast<long>(k));
    for (std::size_t j = 0; j < p.size(); ++j) r.coords_[j] += coords_[k] * p[j];
  }
  return r;
}

std::complex<double> Cyclo::to_complex() const {
  std::complex<double> acc = 0;
  const double step = 2.0 * std::numbers::pi / field_->order();
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == 0) continue;
    acc += coords_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
  }
  return acc;
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Rational& c = coords_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z';
    if (k > 1) os << '^' << k;
  }
  if (first) return "0";
  return os.str();
}

Cyclo Cyclo::parse(const CycloField& field, std::string_view text) {
  Cyclo acc(field);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(0, "bad cyclotomic scalar '" + std::string(text) + "': " + why);
  };
  skip();
  if (i == text.size()) throw fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coef(1);
    bool have_num = false;
    std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    if (i > start) {
      have_num = true;
      try {
        coef = Rational(std::string(text.substr(start, i - start)));
        coef.canonicalize();
      } catch (const std::exception&) {
        throw fail("bad rational");
      }
      if (coef.get_den() == 0) throw fail("zero denominator");
    }
    skip();
    long exponent = 0;
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip();
      if (i >= text.size() || text[i] != 'z') throw fail("expected 'z' after '*'");
    }
    if (i < text.size() && text[i] == 'z') {
      ++i;
      exponent = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == s) throw fail("expected exponent");
        exponent = std::stol(std::string(text.substr(s, i - s)));
      }
    } else if (!have_num) {
      throw fail("expected a term");
    }
    Cyclo term = Cyclo::root(field, exponent);
    term *= coef * sign;
    acc += term;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.to_string(); }

}  // namespace ncgame
