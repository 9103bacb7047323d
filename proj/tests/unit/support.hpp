#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncgame/freealg.hpp"

namespace testing_support {

using namespace ncgame;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261018);
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Cyclo random_cyclo(const CycloField& f, int span = 3) {
  std::vector<Rational> c;
  for (int i = 0; i < f.degree(); ++i) c.emplace_back(uniform(-span, span), uniform(1, 3));
  for (auto& q : c) q.canonicalize();
  return Cyclo(f, c);
}

inline Word random_word(const Ring& r, std::size_t max_len, bool with_aux = false) {
  Word w;
  std::size_t len = static_cast<std::size_t>(uniform(0, static_cast<int>(max_len)));
  std::vector<Letter> ok;
  for (std::size_t l = 0; l < r.alphabet.size(); ++l)
    if (with_aux || !r.alphabet[static_cast<Letter>(l)].auxiliary) ok.push_back(static_cast<Letter>(l));
  for (std::size_t i = 0; i < len; ++i) w.push_back(ok[static_cast<std::size_t>(uniform(0, static_cast<int>(ok.size()) - 1))]);
  return w;
}

inline NCPoly random_poly(const RingPtr& r, std::size_t terms, std::size_t max_len, bool rational = false) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < terms; ++i) {
    Cyclo c = rational ? Cyclo(*r->field, Rational(uniform(-4, 4))) : random_cyclo(*r->field);
    t.push_back({random_word(*r, max_len), c});
  }
  return NCPoly(r, std::move(t));
}

/// sum_i u_i g_{k_i} v_i with random words and coefficients.
inline NCPoly random_ideal_element(const std::vector<NCPoly>& gens, std::size_t summands, std::size_t len) {
  const RingPtr& r = gens.front().ring();
  NCPoly p(r);
  for (std::size_t i = 0; i < summands; ++i) {
    const NCPoly& g = gens[static_cast<std::size_t>(uniform(0, static_cast<int>(gens.size()) - 1))];
    p += g.sandwich(random_word(*r, len), random_word(*r, len)) * random_cyclo(*r->field);
  }
  return p;
}

}  // namespace testing_support
