#include "fuchs/hypergeom.hpp"

#include <algorithm>

namespace fuchs {

void HypergeomParams::validate() const {
  for (const auto& b : lower) {
    if (!b.is_rational()) continue;
    Rat v = b.is_zero() ? Rat(0) : b.rep().coeff(0);
    if (is_integer(v) && v <= 0)
      throw error("hypergeom: lower parameter " + fuchs::to_string(v) +
                  " is a nonpositive integer");
  }
  field();  // throws on mixed fields
}

FieldPtr HypergeomParams::field() const {
  FieldPtr F;
  auto scan = [&](const NFElem& e) {
    if (!e.field()) return;
    if (!F) {
      F = e.field();
      return;
    }
    if (F != e.field() && !F->same_field(*e.field()))
      throw error("hypergeom: parameters live in different number fields");
  };
  for (const auto& e : upper) scan(e);
  for (const auto& e : lower) scan(e);
  return F;
}

std::string HypergeomParams::to_string() const {
  std::string s = std::to_string(upper.size()) + "F" + std::to_string(lower.size()) + "(";
  for (size_t i = 0; i < upper.size(); ++i) s += (i ? "," : "") + upper[i].to_string();
  s += ";";
  for (size_t i = 0; i < lower.size(); ++i) s += (i ? "," : "") + lower[i].to_string();
  return s + ")";
}

HypergeomParams HypergeomParams::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw error("hypergeom spec: missing ':' in " + spec);
  std::string head = spec.substr(0, colon);
  std::string tail = spec.substr(colon + 1);
  auto f = head.find('F');
  if (f == std::string::npos) throw error("hypergeom spec: expected pFq, got " + head);
  long p = 0, q = 0;
  try {
    p = std::stol(head.substr(0, f));
    q = std::stol(head.substr(f + 1));
  } catch (const std::exception&) {
    throw error("hypergeom spec: expected pFq, got " + head);
  }
  auto semi = tail.find(';');
  std::string us = semi == std::string::npos ? tail : tail.substr(0, semi);
  std::string ls = semi == std::string::npos ? "" : tail.substr(semi + 1);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
      auto comma = s.find(',', start);
      if (comma == std::string::npos) {
        if (start < s.size()) out.push_back(s.substr(start));
        break;
      }
      out.push_back(s.substr(start, comma - start));
      start = comma + 1;
    }
    return out;
  };
  HypergeomParams P;
  for (const auto& tok : split(us)) P.upper.emplace_back(rat_from_string(tok));
  for (const auto& tok : split(ls)) P.lower.emplace_back(rat_from_string(tok));
  if (static_cast<long>(P.upper.size()) != p || static_cast<long>(P.lower.size()) != q)
    throw error("hypergeom spec: parameter count does not match " + head);
  P.validate();
  return P;
}

DeltaOpT<NFElem> hypergeom_delta(const HypergeomParams& P) {
  P.validate();
  // Q(lambda) = lambda prod (lambda + b_j - 1), Pn(lambda) = prod (lambda + a_i)
  Poly<NFElem> Q{NFElem(0L), NFElem(1L)};
  for (const auto& b : P.lower) Q = Q * Poly<NFElem>{b - NFElem(1L), NFElem(1L)};
  Poly<NFElem> Pn = Poly<NFElem>::constant(NFElem(1L));
  for (const auto& a : P.upper) Pn = Pn * Poly<NFElem>{a, NFElem(1L)};
  int n = P.order();
  DeltaOpT<NFElem> d;
  d.a.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::vector<NFElem> cs{Q.coeff(k), -Pn.coeff(k)};
    d.a[k] = Poly<NFElem>(std::move(cs));
  }
  while (!d.a.empty() && d.a.back().is_zero()) d.a.pop_back();
  return d;
}

DiffOpT<NFElem> hypergeom_operator(const HypergeomParams& P) {
  return from_delta_form(hypergeom_delta(P));
}

DiffOp hypergeom_operator_q(const HypergeomParams& P) {
  if (P.field()) throw error("hypergeom: parameters are not all rational");
  auto L = hypergeom_operator(P);
  std::vector<Poly<Rat>> p;
  p.reserve(L.p.size());
  for (const auto& pi : L.p) {
    std::vector<Rat> cs;
    cs.reserve(pi.c.size());
    for (const auto& e : pi.c) cs.push_back(e.is_zero() ? Rat(0) : e.rep().coeff(0));
    p.emplace_back(std::move(cs));
  }
  return DiffOp(std::move(p));
}

std::vector<NFElem> hypergeom_series(const HypergeomParams& P, int N) {
  P.validate();
  std::vector<NFElem> c;
  c.reserve(N);
  if (N <= 0) return c;
  c.push_back(NFElem(1L));
  for (long n = 0; n + 1 < N; ++n) {
    NFElem num(1L), den(NFElem(n + 1));
    for (const auto& a : P.upper) num = num * (a + NFElem(n));
    for (const auto& b : P.lower) den = den * (b + NFElem(n));
    c.push_back(c.back() * num * den.inverse());
  }
  return c;
}

DiffOp pullback_hypergeom(const HypergeomParams& P, const RatFunc<Rat>& lambda) {
  return pullback(hypergeom_operator_q(P), lambda);
}

}  // namespace fuchs
