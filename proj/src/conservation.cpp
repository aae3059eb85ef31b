#include "gksym/conservation.hpp"

#include <map>

namespace gksym {

namespace {

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational literal_multinomial(const JetIndex& m) {
  Rational d = factorial(m.ix) * factorial(m.iy) * factorial(m.it);
  return Rational(m.order()) / d;
}

Rational operator_weight(const JetIndex& I, const JetIndex& K, WeightConvention conv) {
  if (K.order() == 0) return conv == WeightConvention::Corrected ? Rational(1) / multinomial(I) : Rational(1);
  if (conv == WeightConvention::PrintedLiteral) return literal_multinomial(K) / literal_multinomial(I.add(K));
  return multinomial(K) / multinomial(I.add(K));
}

std::vector<JetIndex> indices_up_to(int n) {
  std::vector<JetIndex> out{JetIndex{}};
  for (const auto& j : jet_indices_up_to(n)) out.push_back(j);
  return out;
}

}  // namespace

const char* convention_name(WeightConvention c) {
  switch (c) {
    case WeightConvention::Corrected: return "corrected";
    case WeightConvention::PrintedFactorial: return "printed_factorial";
    case WeightConvention::PrintedLiteral: return "printed_literal";
  }
  return "?";
}

Rational multinomial(const JetIndex& m) {
  return factorial(m.order()) / (factorial(m.ix) * factorial(m.iy) * factorial(m.it));
}

Poly weighted_euler_lagrange(const Poly& L, const JetIndex& I, WeightConvention conv, int max_order) {
  TotalDerivative td;
  std::vector<Poly> parts;
  for (const auto& K : indices_up_to(max_order - I.order())) {
    Poly d = partial(L, jet_atom(U, I.add(K)));
    if (d.is_zero()) continue;
    Poly term = scale(td.multi(d, K), operator_weight(I, K, conv));
    parts.push_back(K.order() % 2 ? -term : term);
  }
  return sum(parts);
}

ConservedVector noether_vector(const Generator& X, const Poly& L, WeightConvention conv) {
  const int order = std::max(max_jet_order(L, U), 1);
  const Poly W = characteristic(X);
  TotalDerivative td;
  std::map<JetIndex, Poly> dW;
  ConservedVector cv;
  for (int i = 0; i < 3; ++i) {
    std::vector<Poly> parts{X.xi[i] * L};
    for (const auto& J : indices_up_to(order - 1)) {
      const JetIndex I = J.plus(i);
      Poly w = weighted_euler_lagrange(L, I, conv, order);
      if (w.is_zero()) continue;
      auto it = dW.find(J);
      if (it == dW.end()) it = dW.emplace(J, td.multi(W, J)).first;
      Poly term = it->second * w;
      if (conv == WeightConvention::Corrected) term = scale(term, multinomial(J));
      parts.push_back(term);
    }
    cv.c[i] = sum(parts);
  }
  return cv;
}

ConservedVector conserved_vector(const Generator& X, const PDEFamily& fam, const Poly& phi, WeightConvention conv,
                                 bool on_solutions) {
  if (phi.is_zero()) throw DomainError("conserved_vector: phi must be nonzero");
  ConservedVector cv = noether_vector(X, phi * fam.delta, conv);
  cv.aux = X.constraints;
  if (on_solutions) {
    Reducer reduce(normal_form(fam));
    for (auto& c : cv.c) c = reduce(c);
  }
  return cv;
}

ConservedVector classical_noether_vector(const Generator& X, const Poly& L) {
  const int order = std::max(max_jet_order(L, U), 1);
  const Poly W = characteristic(X);
  TotalDerivative td;
  std::map<JetIndex, Poly> dW;
  std::map<std::pair<JetIndex, JetIndex>, Poly> dL;  // (K, M) -> D^K(dL/du_M)
  auto sym_partial = [&](const JetIndex& K, const JetIndex& M) -> const Poly& {
    auto key = std::make_pair(K, M);
    auto it = dL.find(key);
    if (it != dL.end()) return it->second;
    Poly d = scale(partial(L, jet_atom(U, M)), Rational(1) / multinomial(M));
    return dL.emplace(key, td.multi(d, K)).first->second;
  };
  // Ordered sequences over {x, y, t}.
  std::vector<std::vector<int>> seqs{{}};
  for (std::size_t k = 0; k < seqs.size(); ++k)
    if (static_cast<int>(seqs[k].size()) < order - 1)
      for (int d = 0; d < 3; ++d) {
        auto s = seqs[k];
        s.push_back(d);
        seqs.push_back(s);
      }
  auto index_of = [](const std::vector<int>& s) {
    JetIndex j;
    for (int d : s) j = j.plus(d);
    return j;
  };
  ConservedVector cv;
  for (int i = 0; i < 3; ++i) {
    std::vector<Poly> parts{X.xi[i] * L};
    for (const auto& sigma : seqs) {
      const JetIndex J = index_of(sigma);
      std::vector<Poly> inner;
      for (const auto& tau : seqs) {
        if (sigma.size() + tau.size() + 1 > static_cast<std::size_t>(order)) continue;
        const JetIndex K = index_of(tau);
        const Poly& d = sym_partial(K, J.add(K).plus(i));
        if (d.is_zero()) continue;
        inner.push_back(tau.size() % 2 ? -d : d);
      }
      Poly bracket = sum(inner);
      if (bracket.is_zero()) continue;
      auto it = dW.find(J);
      if (it == dW.end()) it = dW.emplace(J, td.multi(W, J)).first;
      parts.push_back(it->second * bracket);
    }
    cv.c[i] = sum(parts);
  }
  return cv;
}

Poly raw_divergence(const ConservedVector& cv) {
  TotalDerivative td;
  return sum({td(cv.c[0], X), td(cv.c[1], Y), td(cv.c[2], T)});
}

Poly noether_identity_defect(const Generator& X, const Poly& L, const ConservedVector& cv) {
  TotalDerivative td;
  Prolongation pr(X);
  Poly div_xi = sum({td(X.xi[0], gksym::X), td(X.xi[1], Y), td(X.xi[2], T)});
  return sum({prolonged_action(pr, L), L * div_xi, -(characteristic(X) * euler_lagrange(L, U)),
              -raw_divergence(cv)});
}

Poly reduce_with_constraints(const Poly& e, const PDEFamily& fam, const std::vector<ConstraintRule>& aux) {
  Reducer reduce(normal_form(fam));
  Poly r = reduce(e);
  if (!aux.empty()) {
    ConstraintRewriter rw(aux);
    r = rw(r);
  }
  return pythagorean_reduce(r);
}

Poly divergence(const ConservedVector& cv, const PDEFamily& fam) {
  return reduce_with_constraints(raw_divergence(cv), fam, cv.aux);
}

bool is_trivial(const ConservedVector& cv, const PDEFamily& fam) {
  Poly density = reduce_with_constraints(cv.c[2], fam, cv.aux);
  Poly el = euler_lagrange(density, U);
  if (!cv.aux.empty()) {
    ConstraintRewriter rw(cv.aux);
    el = rw(el);
  }
  return pythagorean_reduce(el).is_zero();
}

bool is_trivial_strict(const ConservedVector& cv, const PDEFamily& fam) {
  if (!raw_divergence(cv).is_zero()) return false;
  for (const auto& c : cv.c)
    if (!reduce_with_constraints(c, fam, cv.aux).is_zero()) return false;
  return true;
}

ConservedVector operator-(const ConservedVector& a, const ConservedVector& b) {
  ConservedVector d;
  for (int i = 0; i < 3; ++i) d.c[i] = a.c[i] - b.c[i];
  d.aux = a.aux;
  d.aux.insert(d.aux.end(), b.aux.begin(), b.aux.end());
  d.source = "difference";
  return d;
}

nlohmann::json vector_to_json(const ConservedVector& cv) {
  return {{"C1", print_poly(cv.c[0])}, {"C2", print_poly(cv.c[1])}, {"C3", print_poly(cv.c[2])}, {"source", cv.source}};
}

}  // namespace gksym
