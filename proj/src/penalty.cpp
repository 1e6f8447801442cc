#include "helmdg/penalty.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace helmdg {

double gamma0_scaling_rule(double k, double h, double gamma1) {
  return std::pow(k * k * h, 2.0 / 3.0) * std::cbrt(gamma1);
}

PenaltyConfig::PenaltyConfig(std::string id, double k, PenaltyRule zeta0, PenaltyRule zeta1,
                             PenaltyRule zetaB, double sigma)
    : id_(std::move(id)), k_(k), zeta0_(std::move(zeta0)), zeta1_(std::move(zeta1)),
      zetaB_(std::move(zetaB)), sigma_(sigma) {
  if (!(k > 0.0)) throw InvalidParameter("penalty config needs k > 0");
  if (!std::isfinite(sigma)) throw InvalidParameter("sigma must be finite");
}

PenaltyConfig PenaltyConfig::preset_a(double k, double sigma) {
  static constexpr double gamma1 = 0.1;
  return PenaltyConfig(
      "A", k,
      [](const EdgeContext& c) { return I * gamma0_scaling_rule(c.k, c.h_e, gamma1); },
      [](const EdgeContext&) { return I * gamma1; },
      [](const EdgeContext&) { return I * 1.0; }, sigma);
}

PenaltyConfig PenaltyConfig::preset_b(double k, double sigma) {
  return PenaltyConfig(
      "B", k,
      [](const EdgeContext&) { return I * 100.0; },
      [](const EdgeContext&) { return Complex{-0.07, 0.01}; },
      [](const EdgeContext&) { return I * 1.0; }, sigma);
}

PenaltyConfig PenaltyConfig::preset(const std::string& name, double k) {
  if (name == "A" || name == "a") return preset_a(k);
  if (name == "B" || name == "b") return preset_b(k);
  throw InvalidParameter("unknown penalty preset '" + name + "'");
}

PenaltyConfig PenaltyConfig::constant(double k, Complex gamma0, Complex gamma1, Complex beta1, double sigma,
                                      std::string id) {
  return PenaltyConfig(
      std::move(id), k,
      [z = I * gamma0](const EdgeContext&) { return z; },
      [z = I * gamma1](const EdgeContext&) { return z; },
      [z = I * beta1](const EdgeContext&) { return z; }, sigma);
}

PenaltyConfig PenaltyConfig::none(double k, double sigma) {
  return constant(k, 0.0, 0.0, 0.0, sigma, "none");
}

EdgePenalty PenaltyConfig::at(const Edge& e) const {
  const EdgeContext ctx{e.kind, e.length, k_};
  return {zeta0_(ctx), zeta1_(ctx), zetaB_(ctx)};
}

EdgePenalty PenaltyConfig::norm_weights(const Edge& e) const {
  const auto z = at(e);
  return {std::abs(z.zeta0), std::abs(z.zeta1), std::abs(z.zetaB)};
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidParameter("empty complex number");

  const char* begin = s.c_str();
  char* end = nullptr;
  if (s.back() != 'i' && s.back() != 'j') {
    const double re = std::strtod(begin, &end);
    if (end != begin + s.size()) throw InvalidParameter("cannot parse '" + text + "' as a number");
    return {re, 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_part = [&](const std::string& part, bool imaginary) {
    if (imaginary && (part.empty() || part == "+")) return 1.0;
    if (imaginary && part == "-") return -1.0;
    char* e = nullptr;
    const double v = std::strtod(part.c_str(), &e);
    if (e != part.c_str() + part.size() || part.empty())
      throw InvalidParameter("cannot parse '" + text + "' as a complex number");
    return v;
  };
  if (split == std::string::npos) return {0.0, parse_part(s, true)};
  return {parse_part(s.substr(0, split), false), parse_part(s.substr(split), true)};
}

std::string format_complex(Complex z) {
  char buf[96];
  const double im = z.imag();
  std::snprintf(buf, sizeof buf, "%.12g%s%.12gi", z.real(), std::signbit(im) ? "-" : "+", std::abs(im));
  return buf;
}

}  // namespace helmdg
