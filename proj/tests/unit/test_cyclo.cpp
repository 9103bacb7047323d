#include <doctest.h>

#include <cmath>
#include <complex>

#include "ncgame/cyclo.hpp"
#include "ncgame/errors.hpp"
#include "support.hpp"

using namespace ncgame;
using testing_support::random_cyclo;

namespace {

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9 * (1 + std::abs(a)); }

std::complex<double> zeta(int n, long k) { return std::polar(1.0, 2 * M_PI * static_cast<double>(k) / n); }

}  // namespace

TEST_CASE("cyclotomic polynomials have degree phi(N)") {
  const int phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (int n = 1; n <= 12; ++n) CHECK(CycloField::make(n).degree() == phi[n]);
  CHECK(&CycloField::make(4) == &CycloField::make(4));
}

TEST_CASE("roots of unity match complex exponentials") {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
    const auto& f = CycloField::make(n);
    for (long k = -2 * n; k <= 2 * n; ++k) CHECK(close(Cyclo::root(f, k).to_complex(), zeta(n, k)));
    CHECK(Cyclo::root(f, n).is_one());
  }
}

TEST_CASE("field laws against complex arithmetic") {
  for (int n : {3, 4, 5, 8, 12}) {
    const auto& f = CycloField::make(n);
    for (int it = 0; it < 60; ++it) {
      Cyclo a = random_cyclo(f), b = random_cyclo(f), c = random_cyclo(f);
      CHECK(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
      CHECK(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
      CHECK(close(a.conj().to_complex(), std::conj(a.to_complex())));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a.conj().conj() == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a.norm_squared().conj() == a.norm_squared());
      if (!a.is_zero()) {
        CHECK((a * a.inverse()).is_one());
        CHECK(a / a == Cyclo::one(f));
      }
    }
  }
}

TEST_CASE("inverse of zero is a domain error") {
  CHECK_THROWS_AS(Cyclo::zero(CycloField::make(5)).inverse(), DomainError);
}

TEST_CASE("to_string and parse round trip") {
  for (int n : {1, 4, 6, 7}) {
    const auto& f = CycloField::make(n);
    for (int it = 0; it < 40; ++it) {
      Cyclo a = random_cyclo(f);
      CHECK(Cyclo::parse(f, a.to_string()) == a);
    }
  }
  const auto& f4 = CycloField::make(4);
  CHECK(Cyclo::parse(f4, "z^2") == Cyclo(f4, Rational(-1)));
  CHECK(Cyclo::parse(f4, "0").is_zero());
  CHECK_THROWS(Cyclo::parse(f4, "1 + + z"));
}

TEST_CASE("mixing fields is rejected") {
  Cyclo a = Cyclo::one(CycloField::make(3)), b = Cyclo::one(CycloField::make(4));
  CHECK_THROWS(a + b);
}
